#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afftree/epseq.hpp"
#include "afftree/matrix.hpp"
#include "afftree/mealy.hpp"
#include "afftree/poly.hpp"
#include "afftree/series.hpp"

namespace afftree {

/// Boundary map x -> b + x*A.
class AffineAutomorphism {
public:
  AffineAutomorphism(DiagPeriodicMatrix A, EpSeq b);

  static AffineAutomorphism identity(int modulus);
  static AffineAutomorphism translation(const EpSeq& b);

  int modulus() const noexcept { return A_.modulus(); }
  const DiagPeriodicMatrix& matrix() const noexcept { return A_; }
  const EpSeq& vector() const noexcept { return b_; }
  bool is_identity() const { return A_.is_identity() && b_.is_zero(); }

  EpSeq apply(const EpSeq& x) const;
  /// pi_{sigma(A), x*sigma(row 1 of A) + sigma(b)}.
  AffineAutomorphism section(Letter x) const;
  /// Root permutation x -> b_1 + x*a_11.
  Permutation root_permutation() const;

  auto operator<=>(const AffineAutomorphism&) const = default;

private:
  DiagPeriodicMatrix A_;
  EpSeq b_;
};

/// pi_{A,b} * pi_{A',b'} = pi_{AA', bA' + b'} (first pi, then pi').
AffineAutomorphism affine_compose(const AffineAutomorphism& p, const AffineAutomorphism& q);
/// Inverse through the automaton: convert, invert, detect, then certify A*A^-1 = I.
AffineAutomorphism affine_inverse(const AffineAutomorphism& p, std::size_t budget = kDefaultStateBudget);
/// Canonical machine whose states are the sections of p.
TreeAutomorphism affine_to_automaton(const AffineAutomorphism& p, std::size_t budget = kDefaultStateBudget);

struct AffineRefutation {
  enum class Kind { non_unit_diagonal, disagreement };
  Kind kind = Kind::disagreement;
  /// 1-based row whose diagonal entry is not a unit (non_unit_diagonal).
  std::size_t basis_index = 0;
  /// non_unit_diagonal: the path 0^(i-1) to that row. disagreement: shortest
  /// word on which the input and the extracted candidate differ.
  Word word;
};

using AffineDetection = std::variant<AffineAutomorphism, AffineRefutation>;

/// Extracts b = g(0^inf) and the rows of A from the 0-path sections of g,
/// then compares the candidate machine with g.
AffineDetection detect_affine(const TreeAutomorphism& g, std::size_t budget = kDefaultStateBudget);

/// g -> b(t) + g(t)*f(t) on Z_d[[t]].
struct PowerSeriesAffine {
  RationalSeries f;
  RationalSeries b;
};
/// Band matrix with every row equal to the coefficients of f, and b as a vector.
AffineAutomorphism from_power_series(const PowerSeriesAffine& tau);

/// sigma^(n): the long cycle on letter n+1, identity elsewhere.
TreeAutomorphism sigma_n(std::size_t n, int d);
/// Translation by the coefficient vector of p.
AffineAutomorphism delta_element(const Poly& p);

/// Spherically homogeneous with every level permutation a power of the long cycle.
bool is_affine_shift(const TreeAutomorphism& g);

struct NormalizerReport {
  std::size_t bound = 0;
  /// conjugate_in_shift[n]: g^-1 sigma^(n) g is an affine shift.
  std::vector<bool> conjugate_in_shift;
  std::optional<std::size_t> first_failure;
  AffineDetection detection;

  bool bounded_pass() const { return !first_failure.has_value(); }
  bool detected() const { return std::holds_alternative<AffineAutomorphism>(detection); }
  /// An affine g normalizes every sigma^(n); failing the bounded check after a
  /// successful detection would be a defect.
  bool consistent() const { return bounded_pass() || !detected(); }
};
NormalizerReport normalizer_certificate(const TreeAutomorphism& g, std::size_t N,
                                        std::size_t budget = kDefaultStateBudget);

struct CycleReport {
  std::size_t matrix_period = 1;
  std::size_t state_count = 0;
  /// Length of the shortest directed cycle in the machine graph.
  std::size_t shortest_cycle = 0;
  bool period_divides_cycle = false;
  bool has_loop = false;
  bool loop_at_start = false;
  /// Constant band from the first row, the matrix of a power-series map.
  bool band_matrix = false;
};
CycleReport cycle_divisibility_check(const AffineAutomorphism& p, std::size_t budget = kDefaultStateBudget);

}  // namespace afftree
