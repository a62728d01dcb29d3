#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afftree/affine.hpp"
#include "afftree/mealy.hpp"
#include "afftree/poly.hpp"
#include "afftree/wreath_parser.hpp"

namespace afftree {

/// Wreath recursion of the four-state group on the binary tree.
inline constexpr const char* kGDefinition = "a = (d, d) (01)\nb = (c, c)\nc = (a, b)\nd = (b, a)\n";

/// The group with its generators, x = ab, y = cd, t = ac, and a table of
/// conjugates x^{t^k}, y^{t^k} for |k| <= range.
class GGroup {
public:
  explicit GGroup(int range = 16);

  const WreathSystem& system() const noexcept { return sys_; }
  const TreeAutomorphism& a() const noexcept { return a_; }
  const TreeAutomorphism& b() const noexcept { return b_; }
  const TreeAutomorphism& c() const noexcept { return c_; }
  const TreeAutomorphism& d() const noexcept { return d_; }
  const TreeAutomorphism& x() const noexcept { return x_; }
  const TreeAutomorphism& y() const noexcept { return y_; }
  const TreeAutomorphism& t() const noexcept { return t_; }
  const TreeAutomorphism& t_inv() const noexcept { return t_inv_; }
  int range() const noexcept { return range_; }

  /// x^{t^k} and y^{t^k}; throws for |k| > range.
  const TreeAutomorphism& xt(int k) const;
  const TreeAutomorphism& yt(int k) const;
  /// z^{p(t)} for z in {x, y}, as the product of z^{t^i} over the support of p.
  TreeAutomorphism x_pow(const LaurentPoly& p) const;
  TreeAutomorphism y_pow(const LaurentPoly& p) const;

private:
  WreathSystem sys_;
  TreeAutomorphism a_, b_, c_, d_, x_, y_, t_, t_inv_;
  int range_;
  std::vector<TreeAutomorphism> xt_, yt_;
};

/// Shared instance with the default range.
const GGroup& g_group();

/// z^{t^k} = t^-k z t^k by repeated conjugation; z must be spherically homogeneous.
TreeAutomorphism conj_power_t(const GGroup& G, const TreeAutomorphism& z, int k);

/// sign + : x^{p(t)} y^{q(t)};  sign - : x^{p(t^-1)} y^{q(t^-1)}.
struct PQState {
  Poly p{2};
  Poly q{2};
  bool plus = true;

  std::string to_string() const;
  auto operator<=>(const PQState&) const = default;
};

/// First-level section: (p,q)^+ -> (psi_p + q, p)^-,  (p,q)^- -> (t psi_p + q, p)^+.
PQState pq_step(const PQState& s);
/// Throws when a degree exceeds the conjugate table of G.
TreeAutomorphism pq_to_automorphism(const GGroup& G, const PQState& s);

struct RelationCheck {
  std::string name;
  bool holds = false;
  /// Shortest word separating the two sides when the identity fails.
  Word witness;
};
std::vector<RelationCheck> verify_relations(const GGroup& G);

struct NontrivialityReport {
  int degree_bound = 0;
  std::size_t pairs = 0;
  std::size_t trivial_by_automaton = 0;
  std::size_t trivial_by_dynamics = 0;
  std::size_t disagreements = 0;
  /// Degree bookkeeping of the same-degree reduction, per case.
  std::size_t case_one = 0, case_two = 0, case_three = 0;
  std::size_t case_failures = 0;
  /// Conjugation by a maps (p,q)^+ to (p, t q)^-; checked on case-two pairs.
  std::size_t conjugation_checks = 0, conjugation_failures = 0;

  bool passed() const {
    return trivial_by_automaton == 0 && trivial_by_dynamics == 0 && disagreements == 0 && case_failures == 0 &&
           conjugation_failures == 0;
  }
};
/// Every (p,q) != (0,0) with degrees <= D, tested by automata and by the dynamics.
/// `conjugation_samples` bounds the automaton checks of the case-two identity.
NontrivialityReport nontriviality_scan(const GGroup& G, int D, std::size_t conjugation_samples = 64);

/// Verdict of the (p,q) dynamics alone: trivial iff every iterate has p(1) = 0.
bool pq_trivial_by_dynamics(const PQState& s);

struct TAffineReport {
  bool detected = false;
  bool vector_matches = false;
  /// rows_match[i-1] for rows 1..8.
  std::vector<bool> rows_match;
  bool period_two = false;
  bool corner_matches = false;
  std::optional<AffineAutomorphism> data;
  std::vector<std::vector<int>> corner;

  bool passed() const;
};
/// Detection of t, compared against the closed row formulas and the 32x32 corner.
TAffineReport t_affine_data(const GGroup& G);
/// The 32x32 corner generated from the row formulas alone.
std::vector<std::vector<int>> t_matrix_corner_formula(std::size_t n = 32);

struct RankReport {
  int range = 0;
  std::size_t generators = 0;
  bool involutions = false;
  bool pairwise_distinct = false;
  bool commuting = false;
  std::size_t max_subset = 0;
  std::size_t subsets_checked = 0;
  std::size_t trivial_products = 0;
  /// Full 2^n enumeration of subset products, when requested.
  std::optional<std::size_t> distinct_products;

  bool passed() const;
};
/// x^{t^i}, y^{t^j} for |i|,|j| <= range: involutions, distinct, commuting, and
/// no product of at most max_subset of them trivial.
RankReport rank_evidence(const GGroup& G, int range = 3, std::size_t max_subset = 4, bool full = false);

}  // namespace afftree
