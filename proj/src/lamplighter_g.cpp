#include "afftree/lamplighter_g.hpp"

#include <bit>
#include <set>
#include <unordered_set>

namespace afftree {

namespace {

// z^(1) sigma^s: both first-level sections equal z.
TreeAutomorphism doubled(const TreeAutomorphism& z, bool swap) {
  return wreath({z, z}, swap ? Permutation::long_cycle(2) : Permutation::identity(2));
}

}  // namespace

GGroup::GGroup(int range)
    : sys_(parse_wreath(kGDefinition)),
      a_(sys_.element("a")),
      b_(sys_.element("b")),
      c_(sys_.element("c")),
      d_(sys_.element("d")),
      x_(compose(a_, b_)),
      y_(compose(c_, d_)),
      t_(compose(a_, c_)),
      t_inv_(inverse(t_)),
      range_(range) {
  if (range < 0) throw Error("conjugate range must be nonnegative");
  // index k + range holds the conjugate by t^k
  const auto size = static_cast<std::size_t>(2 * range + 1);
  xt_.assign(size, x_);
  yt_.assign(size, y_);
  for (int k = 1; k <= range; ++k) {
    const auto up = static_cast<std::size_t>(range + k), down = static_cast<std::size_t>(range - k);
    xt_[up] = conjugate(xt_[up - 1], t_);
    yt_[up] = conjugate(yt_[up - 1], t_);
    xt_[down] = conjugate(xt_[down + 1], t_inv_);
    yt_[down] = conjugate(yt_[down + 1], t_inv_);
  }
}

const TreeAutomorphism& GGroup::xt(int k) const {
  if (k < -range_ || k > range_) throw Error("conjugate x^{t^" + std::to_string(k) + "} outside the table");
  return xt_[static_cast<std::size_t>(k + range_)];
}

const TreeAutomorphism& GGroup::yt(int k) const {
  if (k < -range_ || k > range_) throw Error("conjugate y^{t^" + std::to_string(k) + "} outside the table");
  return yt_[static_cast<std::size_t>(k + range_)];
}

TreeAutomorphism GGroup::x_pow(const LaurentPoly& p) const {
  TreeAutomorphism r = TreeAutomorphism::identity(2);
  for (int e : p.support()) r = compose(r, xt(e));
  return r;
}

TreeAutomorphism GGroup::y_pow(const LaurentPoly& p) const {
  TreeAutomorphism r = TreeAutomorphism::identity(2);
  for (int e : p.support()) r = compose(r, yt(e));
  return r;
}

const GGroup& g_group() {
  static const GGroup instance;
  return instance;
}

TreeAutomorphism conj_power_t(const GGroup& G, const TreeAutomorphism& z, int k) {
  if (!is_spherically_homogeneous(z).homogeneous) throw Error("conjugation by powers of t needs a spherically homogeneous element");
  TreeAutomorphism r = z;
  const TreeAutomorphism& by = k >= 0 ? G.t() : G.t_inv();
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) r = conjugate(r, by);
  return r;
}

std::string PQState::to_string() const {
  return "(" + p.to_string() + ", " + q.to_string() + ")" + (plus ? "+" : "-");
}

PQState pq_step(const PQState& s) {
  if (s.p.modulus() != 2 || s.q.modulus() != 2) throw Error("(p,q) states live over Z_2");
  if (s.plus) return {psi(s.p) + s.q, s.p, false};
  return {psi(s.p).shifted(1) + s.q, s.p, true};
}

TreeAutomorphism pq_to_automorphism(const GGroup& G, const PQState& s) {
  if (s.p.degree() > G.range() || s.q.degree() > G.range())
    throw Error("degree exceeds the conjugate table (" + std::to_string(G.range()) + ")");
  TreeAutomorphism r = TreeAutomorphism::identity(2);
  const int sign = s.plus ? 1 : -1;
  for (std::size_t i = 0; i < s.p.coefficients().size(); ++i)
    if (s.p.coeff(i)) r = compose(r, G.xt(sign * static_cast<int>(i)));
  for (std::size_t i = 0; i < s.q.coefficients().size(); ++i)
    if (s.q.coeff(i)) r = compose(r, G.yt(sign * static_cast<int>(i)));
  return r;
}

std::vector<RelationCheck> verify_relations(const GGroup& G) {
  std::vector<RelationCheck> out;
  auto check = [&out](std::string name, const TreeAutomorphism& lhs, const TreeAutomorphism& rhs) {
    RelationCheck r{std::move(name), lhs == rhs, {}};
    if (!r.holds) r.witness = distinguishing_word(lhs, rhs).value_or(Word{});
    out.push_back(std::move(r));
  };
  auto check_not = [&out](std::string name, const TreeAutomorphism& lhs, const TreeAutomorphism& rhs) {
    out.push_back({std::move(name), lhs != rhs, {}});
  };
  const auto e = TreeAutomorphism::identity(2);
  const auto &a = G.a(), &b = G.b(), &c = G.c(), &d = G.d();
  const auto &x = G.x(), &y = G.y(), &t = G.t(), &ti = G.t_inv();
  const auto sigma = Permutation::long_cycle(2);

  check("a^2 = 1", compose(a, a), e);
  check("b^2 = 1", compose(b, b), e);
  check("c^2 = 1", compose(c, c), e);
  check("d^2 = 1", compose(d, d), e);
  check("(ab)^2 = 1", compose(x, x), e);
  check_not("a != b", a, b);
  check_not("ab != 1", x, e);
  check("(cd)^2 = 1", compose(y, y), e);
  check_not("c != d", c, d);
  check_not("cd != 1", y, e);
  check("(xy)^2 = 1", compose(compose(x, y), compose(x, y)), e);
  check_not("x != y", x, y);
  check_not("xy != 1", compose(x, y), e);
  check("x = y^(1) s", x, doubled(y, true));
  check("y = x^(1)", y, doubled(x, false));
  check("x^a = x", conjugate(x, a), x);
  check("y^a = y^{t^-1}", conjugate(y, a), G.yt(-1));
  check("t^a = t^-1", conjugate(t, a), ti);
  check_not("t^a != t", conjugate(t, a), t);
  check("t = (x^t y, y)(t^-1)^(1) s", t, wreath({compose(compose(G.xt(1), y), ti), compose(y, ti)}, sigma));
  check("t^-1 = (y^{t^-1}, x y^{t^-1}) t^(1) s", ti,
        wreath({compose(G.yt(-1), t), compose(compose(x, G.yt(-1)), t)}, sigma));
  check("x^t = (x y^{t^-1}, x y^{t^-1}) s", G.xt(1), doubled(compose(x, G.yt(-1)), true));
  check("y^{t^-1} = (x^t, x^t)", G.yt(-1), doubled(G.xt(1), false));
  const auto s0 = sigma_n(0, 2);
  check("(s^(0))^t = (x, x) s", conjugate(s0, t), doubled(x, true));
  check("(s^(0))^{t^-1} = (x^t, x^t) s", conjugate(s0, ti), doubled(G.xt(1), true));
  for (int n = 1; n <= 4; ++n) {
    const std::string ns = std::to_string(n);
    LaurentPoly down(2), up(2);
    for (int i = 0; i < n; ++i) down = down + LaurentPoly::monomial(2, -i);
    for (int i = 1; i <= n; ++i) up = up + LaurentPoly::monomial(2, i);
    check("x^{t^" + ns + "} = (x^{1+...+t^-" + std::to_string(n - 1) + "} y^{t^-" + ns + "})^(1) s", G.xt(n),
          doubled(compose(G.x_pow(down), G.yt(-n)), true));
    check("y^{t^" + ns + "} = (x^{t^-" + ns + "})^(1)", G.yt(n), doubled(G.xt(-n), false));
    check("x^{t^-" + ns + "} = (x^{t+...+t^" + ns + "} y^{t^" + ns + "})^(1) s", G.xt(-n),
          doubled(compose(G.x_pow(up), G.yt(n)), true));
    check("y^{t^-" + ns + "} = (x^{t^" + ns + "})^(1)", G.yt(-n), doubled(G.xt(n), false));
  }
  return out;
}

namespace {

// Bitmask form of the dynamics for the scan: p and q use bits 0..D.
struct MaskDynamics {
  int D;
  std::uint32_t low_mask;

  static std::uint32_t psi_mask(std::uint32_t p) {
    std::uint32_t r = 0, acc = 0;
    for (int i = 31; i >= 1; --i) {
      acc ^= (p >> i) & 1u;
      r |= acc << (i - 1);
    }
    return r;
  }
  std::uint32_t encode(std::uint32_t p, std::uint32_t q, bool plus) const {
    return p | (q << (D + 1)) | (plus ? 0u : 1u << (2 * D + 2));
  }
  std::uint32_t next(std::uint32_t s) const {
    const std::uint32_t p = s & low_mask, q = (s >> (D + 1)) & low_mask;
    const bool plus = ((s >> (2 * D + 2)) & 1u) == 0;
    return plus ? encode(psi_mask(p) ^ q, p, false) : encode((psi_mask(p) << 1) ^ q, p, true);
  }
  static bool root_trivial(std::uint32_t s, std::uint32_t low) { return std::popcount(s & low) % 2 == 0; }
};

// trivial[s]: every iterate of s has a trivial root permutation.
std::vector<bool> trivial_states(const MaskDynamics& dyn) {
  const std::size_t n = std::size_t{1} << (2 * dyn.D + 3);
  std::vector<std::uint8_t> color(n, 0);
  std::vector<bool> trivial(n, false);
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (color[start]) continue;
    path.clear();
    std::uint32_t s = start;
    while (color[s] == 0) {
      color[s] = 1;
      path.push_back(s);
      s = dyn.next(s);
    }
    bool value;
    std::size_t stop = path.size();
    if (color[s] == 1) {
      // closed a new cycle: s is on the path
      std::size_t pos = path.size();
      while (path[pos - 1] != s) --pos;
      --pos;
      value = true;
      for (std::size_t i = pos; i < path.size(); ++i) value = value && MaskDynamics::root_trivial(path[i], dyn.low_mask);
      for (std::size_t i = pos; i < path.size(); ++i) {
        trivial[path[i]] = value;
        color[path[i]] = 2;
      }
      stop = pos;
    } else {
      value = trivial[s];
    }
    for (std::size_t i = stop; i-- > 0;) {
      value = value && MaskDynamics::root_trivial(path[i], dyn.low_mask);
      trivial[path[i]] = value;
      color[path[i]] = 2;
    }
  }
  return trivial;
}

Poly poly_from_mask(std::uint32_t m) {
  std::vector<int> c;
  for (; m; m >>= 1) c.push_back(static_cast<int>(m & 1u));
  return Poly(2, c);
}

}  // namespace

bool pq_trivial_by_dynamics(const PQState& s) {
  std::set<PQState> seen;
  PQState cur = s;
  while (seen.insert(cur).second) {
    if (cur.p.value_at_one() != 0) return false;
    cur = pq_step(cur);
  }
  return true;
}

NontrivialityReport nontriviality_scan(const GGroup& G, int D, std::size_t conjugation_samples) {
  if (D < 0 || D > 12) throw Error("scan degree bound must lie in [0, 12]");
  if (D + 1 > G.range()) throw Error("scan degree bound exceeds the conjugate table");
  NontrivialityReport r;
  r.degree_bound = D;
  const MaskDynamics dyn{D, (1u << (D + 1)) - 1u};
  const auto trivial = trivial_states(dyn);
  const unsigned bits = static_cast<unsigned>(2 * D + 2);
  const std::uint32_t total = 1u << bits;

  // Gray-code walk: each step toggles one factor x^{t^i} or y^{t^i}.
  TreeAutomorphism cur = TreeAutomorphism::identity(2);
  std::uint32_t prev = 0;
  for (std::uint32_t k = 1; k < total; ++k) {
    const std::uint32_t gray = k ^ (k >> 1);
    const int bit = std::countr_zero(gray ^ prev);
    prev = gray;
    cur = compose(cur, bit <= D ? G.xt(bit) : G.yt(bit - D - 1));
    ++r.pairs;
    const bool by_automaton = cur.is_identity();
    const bool by_dynamics = trivial[gray];
    if (by_automaton) ++r.trivial_by_automaton;
    if (by_dynamics) ++r.trivial_by_dynamics;
    if (by_automaton != by_dynamics) ++r.disagreements;
  }

  // Degree accounting of the same-degree reduction on every pair of max degree >= 2.
  std::vector<std::pair<Poly, Poly>> case_two;
  for (std::uint32_t m = 1; m < total; ++m) {
    const Poly p = poly_from_mask(m & dyn.low_mask), q = poly_from_mask(m >> (D + 1));
    const int dp = p.degree(), dq = q.degree();
    if (std::max(dp, dq) < 2) continue;
    const PQState s{p, q, true};
    if (dp < dq) {
      ++r.case_one;
      const PQState two = pq_step(pq_step(s));
      if (two.p.degree() != dq || two.q.degree() != dq) ++r.case_failures;
    } else if (dp == dq + 1) {
      ++r.case_two;
      const PQState conj{p, q.shifted(1), false};
      const PQState next = pq_step(conj);
      if (!(next.p.degree() < dp) || next.q != p) ++r.case_failures;
      case_two.emplace_back(p, q);
    } else if (dp > dq + 1) {
      ++r.case_three;
      const PQState two = pq_step(pq_step(s));
      if (two.p.degree() != dp || two.q.degree() != dp - 1) ++r.case_failures;
    }
  }
  if (!case_two.empty() && conjugation_samples > 0) {
    const std::size_t stride = std::max<std::size_t>(1, case_two.size() / conjugation_samples);
    for (std::size_t i = 0; i < case_two.size() && r.conjugation_checks < conjugation_samples; i += stride) {
      const auto& [p, q] = case_two[i];
      ++r.conjugation_checks;
      if (conjugate(pq_to_automorphism(G, {p, q, true}), G.a()) != pq_to_automorphism(G, {p, q.shifted(1), false}))
        ++r.conjugation_failures;
    }
  }
  return r;
}

std::vector<std::vector<int>> t_matrix_corner_formula(std::size_t n) {
  static constexpr int kOdd[] = {1, 0};
  static constexpr int kEven[] = {1, 1, 1, 0};
  std::vector<std::vector<int>> grid(n, std::vector<int>(n, 0));
  for (std::size_t r = 1; r <= n; ++r)
    for (std::size_t c = r; c <= n; ++c) {
      if (c == r) {
        grid[r - 1][c - 1] = 1;
        continue;
      }
      const std::size_t k = c - r - 1;
      grid[r - 1][c - 1] = r % 2 == 1 ? kOdd[k % 2] : kEven[k % 4];
    }
  return grid;
}

bool TAffineReport::passed() const {
  if (!detected || !vector_matches || !period_two || !corner_matches) return false;
  for (bool ok : rows_match)
    if (!ok) return false;
  return !rows_match.empty();
}

TAffineReport t_affine_data(const GGroup& G) {
  TAffineReport r;
  const auto found = detect_affine(G.t());
  const auto* p = std::get_if<AffineAutomorphism>(&found);
  if (!p) return r;
  r.detected = true;
  r.data = *p;
  r.vector_matches = p->vector() == EpSeq(2, {}, {1, 0, 0, 1, 1, 1, 0, 0});
  for (std::size_t i = 1; i <= 4; ++i) {
    // rows 2i-1 and 2i
    std::vector<int> odd(2 * i - 2, 0), even(2 * i - 1, 0);
    odd.push_back(1);
    even.push_back(1);
    r.rows_match.push_back(p->matrix().row(2 * i - 1) == EpSeq(2, odd, {1, 0}));
    r.rows_match.push_back(p->matrix().row(2 * i) == EpSeq(2, even, {1, 1, 1, 0}));
  }
  r.period_two = p->matrix().shift(2) == p->matrix();
  r.corner = p->matrix().corner(32);
  r.corner_matches = r.corner == t_matrix_corner_formula(32);
  return r;
}

bool RankReport::passed() const {
  return involutions && pairwise_distinct && commuting && trivial_products == 0 &&
         (!distinct_products || *distinct_products == (std::size_t{1} << generators));
}

RankReport rank_evidence(const GGroup& G, int range, std::size_t max_subset, bool full) {
  RankReport r;
  r.range = range;
  r.max_subset = max_subset;
  std::vector<TreeAutomorphism> gens;
  for (int i = -range; i <= range; ++i) gens.push_back(G.xt(i));
  for (int i = -range; i <= range; ++i) gens.push_back(G.yt(i));
  r.generators = gens.size();
  r.involutions = true;
  r.commuting = true;
  r.pairwise_distinct = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!compose(gens[i], gens[i]).is_identity()) r.involutions = false;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i] == gens[j]) r.pairwise_distinct = false;
      if (!commute(gens[i], gens[j])) r.commuting = false;
    }
  }
  // products of 1..max_subset distinct generators
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t from, const TreeAutomorphism& acc) -> void {
    if (!idx.empty()) {
      ++r.subsets_checked;
      if (acc.is_identity()) ++r.trivial_products;
    }
    if (idx.size() == max_subset) return;
    for (std::size_t i = from; i < gens.size(); ++i) {
      idx.push_back(i);
      self(self, i + 1, compose(acc, gens[i]));
      idx.pop_back();
    }
  };
  rec(rec, 0, TreeAutomorphism::identity(2));
  if (full) {
    std::unordered_set<TreeAutomorphism> seen;
    TreeAutomorphism cur = TreeAutomorphism::identity(2);
    seen.insert(cur);
    std::uint32_t prev = 0;
    for (std::uint32_t k = 1; k < (1u << gens.size()); ++k) {
      const std::uint32_t gray = k ^ (k >> 1);
      cur = compose(cur, gens[static_cast<std::size_t>(std::countr_zero(gray ^ prev))]);
      prev = gray;
      seen.insert(cur);
    }
    r.distinct_products = seen.size();
  }
  return r;
}

}  // namespace afftree
