#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "afftree/residue.hpp"

namespace afftree {

/// Eventually periodic infinite sequence over Z_d, always held in canonical
/// (minimal period, then minimal preperiod) form. Positions are 1-based.
class EpSeq {
public:
  EpSeq(int modulus, std::vector<int> preperiod, std::vector<int> period);

  static EpSeq zero(int modulus) { return EpSeq(modulus, {}, {0}); }
  /// The standard basis vector e_i.
  static EpSeq basis(int modulus, std::size_t i);
  /// Finitely supported sequence with the given leading entries.
  static EpSeq finite(int modulus, std::vector<int> entries) { return EpSeq(modulus, std::move(entries), {0}); }

  int modulus() const noexcept { return d_; }
  const std::vector<int>& preperiod() const noexcept { return pre_; }
  const std::vector<int>& period() const noexcept { return per_; }

  int at(std::size_t i) const;
  Residue entry(std::size_t i) const { return {at(i), d_}; }
  std::vector<int> prefix(std::size_t n) const;
  bool is_zero() const noexcept { return pre_.empty() && per_.size() == 1 && per_[0] == 0; }

  /// sigma^k: removes the first k entries.
  EpSeq shift(std::size_t k = 1) const;
  /// k zeros followed by this sequence.
  EpSeq delayed(std::size_t k) const;
  EpSeq scaled(int factor) const;

  friend EpSeq operator+(const EpSeq& a, const EpSeq& b);
  friend EpSeq operator-(const EpSeq& a, const EpSeq& b);
  EpSeq operator-() const { return scaled(-1); }

  /// `pre:1,0|per:1,1,0`; an empty preperiod renders as `pre:|per:...`.
  std::string to_string() const;
  static EpSeq parse(std::string_view text, int modulus);

  auto operator<=>(const EpSeq&) const = default;

private:
  int d_;
  std::vector<int> pre_;
  std::vector<int> per_;
};

std::size_t lcm_size(std::size_t a, std::size_t b);

}  // namespace afftree
