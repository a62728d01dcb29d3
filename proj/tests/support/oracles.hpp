// Random generators and brute-force reference implementations shared by the
// unit and acceptance tests. Nothing here calls the library code it checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "afftree/epseq.hpp"
#include "afftree/matrix.hpp"
#include "afftree/mealy.hpp"
#include "afftree/residue.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline int random_unit(Rng& rng, int d) {
  while (true) {
    const int v = uniform(rng, 1, d - 1);
    if (afftree::is_unit_mod(v, d)) return v;
  }
}

inline std::vector<int> random_letters(Rng& rng, int d, std::size_t n) {
  std::vector<int> w(n);
  for (auto& x : w) x = uniform(rng, 0, d - 1);
  return w;
}

inline afftree::EpSeq random_epseq(Rng& rng, int d, int max_pre = 4, int max_per = 4) {
  auto pre = random_letters(rng, d, static_cast<std::size_t>(uniform(rng, 0, max_pre)));
  auto per = random_letters(rng, d, static_cast<std::size_t>(uniform(rng, 1, max_per)));
  return afftree::EpSeq(d, std::move(pre), std::move(per));
}

/// Row stored from the diagonal, with a unit leading entry.
inline afftree::EpSeq random_row(Rng& rng, int d, int max_pre = 3, int max_per = 3) {
  auto pre = random_letters(rng, d, static_cast<std::size_t>(uniform(rng, 1, max_pre)));
  pre[0] = random_unit(rng, d);
  auto per = random_letters(rng, d, static_cast<std::size_t>(uniform(rng, 1, max_per)));
  return afftree::EpSeq(d, std::move(pre), std::move(per));
}

inline afftree::DiagPeriodicMatrix random_matrix(Rng& rng, int d, int max_base = 2, int max_templ = 2) {
  std::vector<afftree::EpSeq> base, templ;
  const int nb = uniform(rng, 0, max_base);
  const int nt = uniform(rng, 1, max_templ);
  for (int i = 0; i < nb; ++i) base.push_back(random_row(rng, d));
  for (int i = 0; i < nt; ++i) templ.push_back(random_row(rng, d));
  return afftree::DiagPeriodicMatrix(d, std::move(base), std::move(templ));
}

using Grid = std::vector<std::vector<int>>;

/// n x n upper-left corner, built only from entry().
inline Grid corner_of(const afftree::DiagPeriodicMatrix& A, std::size_t n) {
  Grid g(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = A.entry(i + 1, j + 1);
  return g;
}

/// Corner products are exact for upper-triangular matrices.
inline Grid grid_mul(const Grid& a, const Grid& b, int d) {
  const std::size_t n = a.size();
  Grid c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % d;
  return c;
}

/// First n entries of x*A + b, from corners only.
inline std::vector<int> affine_prefix(const afftree::DiagPeriodicMatrix& A, const afftree::EpSeq& b,
                                      const afftree::EpSeq& x, std::size_t n) {
  const int d = A.modulus();
  std::vector<int> out(n);
  for (std::size_t j = 1; j <= n; ++j) {
    long long s = b.at(j);
    for (std::size_t i = 1; i <= j; ++i) s += static_cast<long long>(x.at(i)) * A.entry(i, j);
    out[j - 1] = static_cast<int>(s % d);
  }
  return out;
}

/// Runs a raw machine from `state` without any canonicalization.
inline std::vector<int> run_machine(const afftree::MealyMachine& m, int state, const std::vector<int>& w) {
  std::vector<int> out;
  std::size_t q = static_cast<std::size_t>(state);
  for (int x : w) {
    out.push_back(m.out[q].images()[static_cast<std::size_t>(x)]);
    q = static_cast<std::size_t>(m.next[q][static_cast<std::size_t>(x)]);
  }
  return out;
}

inline int run_to_state(const afftree::MealyMachine& m, int state, const std::vector<int>& w) {
  for (int x : w) state = m.next[static_cast<std::size_t>(state)][static_cast<std::size_t>(x)];
  return state;
}

inline afftree::MealyMachine random_machine(Rng& rng, int d, int states, double identity_bias = 0.3) {
  afftree::MealyMachine m;
  m.d = d;
  for (int q = 0; q < states; ++q) {
    std::vector<int> row(static_cast<std::size_t>(d));
    for (auto& r : row) r = uniform(rng, 0, states - 1);
    m.next.push_back(row);
    std::vector<int> img(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) img[static_cast<std::size_t>(x)] = x;
    if (std::uniform_real_distribution<double>(0, 1)(rng) >= identity_bias) std::shuffle(img.begin(), img.end(), rng);
    m.out.emplace_back(img);
  }
  return m;
}

/// All words of length n in lexicographic order.
inline std::vector<std::vector<int>> all_words(int d, std::size_t n) {
  std::vector<std::vector<int>> words{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<int>> longer;
    for (const auto& w : words)
      for (int x = 0; x < d; ++x) {
        auto v = w;
        v.push_back(x);
        longer.push_back(std::move(v));
      }
    words.swap(longer);
  }
  return words;
}

/// Tabulated action on all words of length n.
inline std::vector<std::vector<int>> action_table(const afftree::MealyMachine& m, int state, std::size_t n) {
  std::vector<std::vector<int>> table;
  for (const auto& w : all_words(m.d, n)) table.push_back(run_machine(m, state, w));
  return table;
}

/// Coefficients of num/den by long division, with den[0] a unit.
inline std::vector<int> divide_series(const std::vector<int>& num, const std::vector<int>& den, int d, std::size_t n) {
  std::vector<int> work(n, 0), q(n, 0);
  for (std::size_t i = 0; i < n && i < num.size(); ++i) work[i] = ((num[i] % d) + d) % d;
  int inv0 = 1;
  while ((inv0 * den[0]) % d != 1) ++inv0;
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = (work[i] * inv0) % d;
    for (std::size_t k = 0; k < den.size() && i + k < n; ++k)
      work[i + k] = (((work[i + k] - q[i] * den[k]) % d) + d) % d;
  }
  return q;
}

}  // namespace oracle
