#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "afftree/epseq.hpp"

namespace afftree {

/// Infinite upper triangular matrix over Z_d with unit diagonal, stored as an
/// eventually periodic sequence of rows. Each row is kept from its diagonal
/// entry onward: row i (1-based) is base_rows[i-1] for i <= n and
/// template_rows[(i-n-1) mod p] afterwards. With this storage the shift
/// sigma(A) (drop first row and column) is the shift of the row sequence.
class DiagPeriodicMatrix {
public:
  DiagPeriodicMatrix(int modulus, std::vector<EpSeq> base_rows, std::vector<EpSeq> template_rows);

  static DiagPeriodicMatrix identity(int modulus);
  /// Toeplitz band: every row (from the diagonal) equals `row`.
  static DiagPeriodicMatrix band(const EpSeq& row);

  int modulus() const noexcept { return d_; }
  const std::vector<EpSeq>& base_rows() const noexcept { return base_; }
  const std::vector<EpSeq>& template_rows() const noexcept { return templ_; }
  /// Length of the eventual sigma-period of the matrix.
  std::size_t period() const noexcept { return templ_.size(); }
  std::size_t preperiod() const noexcept { return base_.size(); }

  /// Row i from its diagonal entry onward.
  const EpSeq& row_from_diagonal(std::size_t i) const;
  /// Full row i: i-1 zeros followed by the stored row.
  EpSeq row(std::size_t i) const;
  int entry(std::size_t i, std::size_t j) const;
  /// Top-left n x n block.
  std::vector<std::vector<int>> corner(std::size_t n) const;
  bool is_identity() const;

  DiagPeriodicMatrix shift(std::size_t k = 1) const;

  auto operator<=>(const DiagPeriodicMatrix&) const = default;

private:
  int d_;
  std::vector<EpSeq> base_;
  std::vector<EpSeq> templ_;
};

/// Row vector times matrix: (bA)_j = sum_{i<=j} b_i a_ij, computed exactly.
EpSeq mat_vec(const EpSeq& b, const DiagPeriodicMatrix& A);
DiagPeriodicMatrix mat_mul(const DiagPeriodicMatrix& A, const DiagPeriodicMatrix& B);

}  // namespace afftree
