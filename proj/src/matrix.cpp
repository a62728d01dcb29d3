#include "afftree/matrix.hpp"

#include <algorithm>
#include <string>

#include "afftree/error.hpp"
#include "afftree/lasso.hpp"
#include "afftree/series.hpp"

namespace afftree {

DiagPeriodicMatrix::DiagPeriodicMatrix(int modulus, std::vector<EpSeq> base_rows, std::vector<EpSeq> template_rows)
    : d_(modulus), base_(std::move(base_rows)), templ_(std::move(template_rows)) {
  check_modulus(d_);
  if (templ_.empty()) throw Error("matrix needs at least one template row");
  auto check = [&](const EpSeq& r) {
    if (r.modulus() != d_) throw ModulusMismatch(d_, r.modulus());
    if (!is_unit_mod(r.at(1), d_))
      throw Error("diagonal entry " + std::to_string(r.at(1)) + " is not a unit in Z_" + std::to_string(d_));
  };
  for (const auto& r : base_) check(r);
  for (const auto& r : templ_) check(r);
  canonicalize_lasso(base_, templ_);
}

DiagPeriodicMatrix DiagPeriodicMatrix::identity(int modulus) {
  return DiagPeriodicMatrix(modulus, {}, {EpSeq::finite(modulus, {1})});
}

DiagPeriodicMatrix DiagPeriodicMatrix::band(const EpSeq& row) { return DiagPeriodicMatrix(row.modulus(), {}, {row}); }

const EpSeq& DiagPeriodicMatrix::row_from_diagonal(std::size_t i) const { return lasso_at(base_, templ_, i); }

EpSeq DiagPeriodicMatrix::row(std::size_t i) const { return row_from_diagonal(i).delayed(i - 1); }

int DiagPeriodicMatrix::entry(std::size_t i, std::size_t j) const {
  if (j < i) return 0;
  return row_from_diagonal(i).at(j - i + 1);
}

std::vector<std::vector<int>> DiagPeriodicMatrix::corner(std::size_t n) const {
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    const EpSeq& r = row_from_diagonal(i);
    for (std::size_t j = i; j <= n; ++j) out[i - 1][j - 1] = r.at(j - i + 1);
  }
  return out;
}

bool DiagPeriodicMatrix::is_identity() const { return *this == identity(d_); }

DiagPeriodicMatrix DiagPeriodicMatrix::shift(std::size_t k) const {
  DiagPeriodicMatrix m = *this;
  shift_lasso(m.base_, m.templ_, k);
  return m;
}

EpSeq mat_vec(const EpSeq& b, const DiagPeriodicMatrix& A) {
  const int d = A.modulus();
  if (b.modulus() != d) throw ModulusMismatch(b.modulus(), d);
  if (b.is_zero()) return b;

  // bA = sum_i b_i t^(i-1) R_i(t) with R_i the from-diagonal row series. Past
  // M both b_i and R_i repeat with period L, so the tail sums to T/(1-t^L).
  const std::size_t M = std::max(b.preperiod().size(), A.preperiod());
  const std::size_t L = lcm_size(b.period().size(), A.period());
  std::size_t P = 1;
  for (std::size_t i = 1; i <= M + L; ++i) P = lcm_size(P, A.row_from_diagonal(i).period().size());

  Poly head(d), tail(d);
  for (std::size_t i = 1; i <= M + L; ++i) {
    const int bi = b.at(i);
    if (bi == 0) continue;
    Poly term = epseq_numerator_over(A.row_from_diagonal(i), P).shifted(i - 1).scaled(bi);
    if (i <= M)
      head = head + term;
    else
      tail = tail + term;
  }
  if (tail.is_zero()) return series_to_epseq(RationalSeries(head, one_minus_t_pow(d, P)));
  const Poly tail_den = one_minus_t_pow(d, L);
  return series_to_epseq(RationalSeries(head * tail_den + tail, one_minus_t_pow(d, P) * tail_den));
}

DiagPeriodicMatrix mat_mul(const DiagPeriodicMatrix& A, const DiagPeriodicMatrix& B) {
  const int d = A.modulus();
  if (B.modulus() != d) throw ModulusMismatch(d, B.modulus());
  // Row i of AB from its diagonal is (row i of A from its diagonal) * sigma^(i-1)(B),
  // and sigma^m(AB) = sigma^m(A) sigma^m(B), so the row sequence of AB repeats
  // with period L from M on. One extra period is computed as a check.
  const std::size_t M = std::max(A.preperiod(), B.preperiod());
  const std::size_t L = lcm_size(A.period(), B.period());
  std::vector<EpSeq> rows;
  rows.reserve(M + 2 * L);
  DiagPeriodicMatrix Bs = B;
  for (std::size_t i = 1; i <= M + 2 * L; ++i) {
    rows.push_back(mat_vec(A.row_from_diagonal(i), Bs));
    Bs = Bs.shift();
  }
  for (std::size_t k = 0; k < L; ++k)
    if (rows[M + k] != rows[M + L + k]) throw std::logic_error("matrix product failed its periodicity check");
  std::vector<EpSeq> base(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(M));
  std::vector<EpSeq> templ(rows.begin() + static_cast<std::ptrdiff_t>(M), rows.begin() + static_cast<std::ptrdiff_t>(M + L));
  return DiagPeriodicMatrix(d, std::move(base), std::move(templ));
}

}  // namespace afftree
