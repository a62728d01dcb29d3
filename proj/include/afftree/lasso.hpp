#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace afftree {

/// Brings an eventually periodic sequence `prefix cycle cycle cycle ...` into
/// its unique canonical form: `cycle` is made primitive (not a proper power of
/// a shorter word), then trailing prefix entries equal to the last cycle entry
/// are absorbed into the cycle by rotation.
template <class T>
void canonicalize_lasso(std::vector<T>& prefix, std::vector<T>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("eventually periodic sequence needs a nonempty period");
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - p];
    if (periodic) {
      cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(p), cycle.end());
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    prefix.pop_back();
  }
}

/// Element i (1-based) of the sequence `prefix cycle^inf`.
template <class T>
const T& lasso_at(const std::vector<T>& prefix, const std::vector<T>& cycle, std::size_t i) {
  if (i == 0) throw std::out_of_range("sequence positions are 1-based");
  if (i <= prefix.size()) return prefix[i - 1];
  return cycle[(i - prefix.size() - 1) % cycle.size()];
}

/// Drops the first k elements, keeping the representation canonical if it was.
template <class T>
void shift_lasso(std::vector<T>& prefix, std::vector<T>& cycle, std::size_t k) {
  const std::size_t from_prefix = std::min(k, prefix.size());
  prefix.erase(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(from_prefix));
  k -= from_prefix;
  if (k % cycle.size() != 0)
    std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(k % cycle.size()), cycle.end());
}

}  // namespace afftree
