#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

#include "afftree/mealy.hpp"
#include "afftree/poly.hpp"

namespace afftree {

/// Element a^lamp x^shift of the lamplighter group Z_2 wr Z.
/// Product: (p, n)(q, m) = (p + x^-n q, n + m), so that a^x = x^-1 a x.
struct LamplighterElement {
  LaurentPoly lamp{2};
  int shift = 0;

  static LamplighterElement identity() { return {}; }
  static LamplighterElement a() { return {LaurentPoly::monomial(2, 0), 0}; }
  static LamplighterElement x() { return {LaurentPoly(2), 1}; }
  static LamplighterElement a_pow(const LaurentPoly& s) { return {s, 0}; }

  bool is_identity() const { return lamp.is_zero() && shift == 0; }
  /// Membership in H = A_0<x>: lamp vanishes at x = 1.
  bool in_H() const { return lamp.value_at_one() == 0; }
  /// e.g. "a^(1+x) x^2", "x^-1", "1".
  std::string to_string() const;
  /// Accepts "a^(<laurent poly in x>) x^<n>" with either factor optional, "a", "x", "1".
  static LamplighterElement parse(std::string_view text);

  auto operator<=>(const LamplighterElement&) const = default;
};

LamplighterElement ll_mul(const LamplighterElement& g, const LamplighterElement& h);
LamplighterElement ll_inv(const LamplighterElement& g);
LamplighterElement ll_pow(const LamplighterElement& g, long long n);

/// Similarity pair (H, f) with H = A_0<x>, transversal {e, a} and
/// f(a^((1+x)r) x^n) = a^(u r) fx^n.
class SimilarityPair {
public:
  /// Throws Error when u(1) = 0, u is not over Z_2, or fx.shift != 1.
  SimilarityPair(Poly u, LamplighterElement fx);

  const Poly& u() const noexcept { return u_; }
  const LamplighterElement& fx() const noexcept { return fx_; }

private:
  Poly u_;
  LamplighterElement fx_;
};

struct HDecomposition {
  LaurentPoly r{2};
  int n = 0;
  auto operator<=>(const HDecomposition&) const = default;
};
/// h = a^((1+x)r) x^n. Throws Error when h is not in H.
HDecomposition decompose_H(const LamplighterElement& h);
/// Throws Error when h is not in H.
LamplighterElement apply_f(const SimilarityPair& pair, const LamplighterElement& h);

struct WreathDecomposition {
  LamplighterElement g0, g1;
  bool swap = false;
  auto operator<=>(const WreathDecomposition&) const = default;
};
/// phi(g) = (phi(g0), phi(g1)) sigma^swap; letter 0 is the coset H, letter 1 is Ha.
WreathDecomposition wreath_decompose(const SimilarityPair& pair, const LamplighterElement& g);

struct RepPortrait {
  Portrait portrait;
  std::size_t explored_states = 0;
  /// Levels are truncated when the distinct-state budget runs out.
  bool budget_exceeded = false;
};
RepPortrait portrait_rep(const SimilarityPair& pair, const LamplighterElement& g, std::size_t depth,
                         std::size_t budget = 1u << 16);

/// Finite automaton for phi(g) when the reachable states close within budget.
std::optional<TreeAutomorphism> rep_automaton(const SimilarityPair& pair, const LamplighterElement& g,
                                              std::size_t budget = 4096);

struct BaseSHReport {
  std::size_t depth = 0;
  int support_bound = 0;
  std::size_t elements_checked = 0;
  std::size_t max_explored_states = 0;
  bool budget_exceeded = false;
  std::optional<LamplighterElement> first_failure;
  bool passed() const { return !first_failure && !budget_exceeded; }
};
/// Level-constancy of the depth-k portraits of phi(a^s) for all nonzero s
/// with support in [-support_bound, support_bound].
BaseSHReport base_sh_check(const SimilarityPair& pair, std::size_t depth, int support_bound);

}  // namespace afftree
