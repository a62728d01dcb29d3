// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "afftree/affine.hpp"
#include "afftree/lamplighter_g.hpp"
#include "afftree/virtual_endo.hpp"
#include "afftree/wreath_parser.hpp"
#include "oracles.hpp"

using namespace afftree;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* title;
  double seconds_limit;
  std::function<void(Result&)> run;
};

std::vector<int> zeros_then(std::size_t zeros, std::vector<int> tail) {
  std::vector<int> v(zeros, 0);
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}

// Rows 2i-1 = [0^(2i-2), 1, (1,0)^inf] and 2i = [0^(2i-1), 1, (1,1,1,0)^inf].
int t_matrix_entry(std::size_t i, std::size_t j) {
  const std::size_t lead = i - 1;
  if (j < lead + 1) return 0;
  if (j == lead + 1) return 1;
  const std::size_t k = j - lead - 2;
  return i % 2 == 1 ? (k % 2 == 0 ? 1 : 0) : (k % 4 == 3 ? 0 : 1);
}

void criterion_1(Result& r) {
  const auto& G = g_group();
  const auto det = detect_affine(G.t());
  r.require(std::holds_alternative<AffineAutomorphism>(det), "t is detected as affine");
  if (!r.pass) return;
  const auto& p = std::get<AffineAutomorphism>(det);
  r.require(p.vector() == EpSeq(2, {}, {1, 0, 0, 1, 1, 1, 0, 0}), "b = (1,0,0,1,1,1,0,0)^inf");
  for (std::size_t i = 1; i <= 4; ++i) {
    r.require(p.matrix().row(2 * i - 1) == EpSeq(2, zeros_then(2 * i - 2, {1}), {1, 0}),
              "row " + std::to_string(2 * i - 1));
    r.require(p.matrix().row(2 * i) == EpSeq(2, zeros_then(2 * i - 1, {1}), {1, 1, 1, 0}),
              "row " + std::to_string(2 * i));
  }
  const auto corner = p.matrix().corner(32);
  bool grid_ok = corner.size() == 32;
  for (std::size_t i = 0; grid_ok && i < 32; ++i)
    for (std::size_t j = 0; j < 32; ++j) grid_ok = grid_ok && corner[i][j] == t_matrix_entry(i + 1, j + 1);
  r.require(grid_ok, "32x32 corner");
  r.detail << "b = " << p.vector().to_string() << ", rows 1..8 and 32x32 corner exact";
}

void criterion_2(Result& r) {
  const auto& G = g_group();
  const auto &a = G.a(), &b = G.b(), &c = G.c(), &d = G.d(), &x = G.x(), &y = G.y(), &t = G.t();
  for (const auto* g : {&a, &b, &c, &d}) {
    r.require(!g->is_identity(), "generator nontrivial");
    r.require(compose(*g, *g).is_identity(), "generator of order 2");
  }
  auto klein = [&](const TreeAutomorphism& u, const TreeAutomorphism& v, const char* name) {
    const auto uv = compose(u, v);
    r.require(u != v && !uv.is_identity() && compose(uv, uv).is_identity() && uv == compose(v, u),
              std::string(name) + " is a Klein four-group");
  };
  klein(a, b, "<a,b>");
  klein(c, d, "<c,d>");
  klein(x, y, "<x,y>");
  r.require(conjugate(x, a) == x, "x^a = x");
  r.require(conjugate(y, a) == conjugate(y, G.t_inv()), "y^a = y^{t^-1}");
  r.require(conjugate(t, a) == G.t_inv(), "t^a = t^-1");
  r.require(G.t_inv() == inverse(t), "t^-1 is the inverse of t");
  r.require(conjugate(t, a) != t, "t^a != t");
  r.detail << "orders, Klein four-groups and three conjugation relations by canonical equality";
}

void criterion_3(Result& r) {
  const auto& G = g_group();
  const auto &t = G.t(), &ti = G.t_inv();
  for (const auto* z : {&G.x(), &G.y()})
    for (const auto* s : {&t, &ti})
      r.require(is_spherically_homogeneous(conjugate(*z, *s)).homogeneous, "conjugate of x or y by t^{+-1} is SH");
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto sn = sigma_n(n, 2);
    r.require(is_affine_shift(conjugate(sn, t)), "(sigma^(" + std::to_string(n) + "))^t in Aff_I");
    r.require(is_affine_shift(conjugate(sn, ti)), "(sigma^(" + std::to_string(n) + "))^{t^-1} in Aff_I");
  }
  r.require(conjugate(sigma_n(0, 2), t) == wreath({G.x(), G.x()}, Permutation::long_cycle(2)),
            "(sigma^(0))^t = (x,x) sigma");
  r.detail << "4 SH conjugates, 18 conjugates of sigma^(n) in Aff_I, (sigma^(0))^t = (x,x)sigma";
}

void criterion_4(Result& r) {
  const auto& G = g_group();
  const auto scan = nontriviality_scan(G, 6);
  r.require(scan.pairs == 16383, "16383 pairs scanned");
  r.require(scan.trivial_by_automaton == 0, "no trivial x^p y^q by automata");
  r.require(scan.trivial_by_dynamics == 0, "no trivial x^p y^q by dynamics");
  r.require(scan.disagreements == 0, "oracles agree");
  r.require(scan.case_failures == 0 && scan.conjugation_failures == 0, "degree reduction bookkeeping");
  // Section coherence: exhaustively to degree 2, then random pairs to degree 6.
  std::size_t coherence = 0;
  auto coherent = [&](const PQState& s) {
    const auto g = pq_to_automorphism(G, s);
    const auto next = pq_to_automorphism(G, pq_step(s));
    r.require(g.section({0}) == next && g.section({1}) == next, "section coherence for " + s.to_string());
    r.require(g.root_permutation().is_identity() == (s.p.value_at_one() == 0), "root permutation of " + s.to_string());
    ++coherence;
  };
  for (unsigned m = 0; m < 64; ++m)
    for (bool plus : {true, false})
      coherent({Poly(2, {int(m & 1), int(m >> 1 & 1), int(m >> 2 & 1)}),
                Poly(2, {int(m >> 3 & 1), int(m >> 4 & 1), int(m >> 5 & 1)}), plus});
  oracle::Rng rng(4);
  for (int k = 0; k < 100; ++k)
    coherent({Poly(2, oracle::random_letters(rng, 2, 7)), Poly(2, oracle::random_letters(rng, 2, 7)), k % 2 == 0});
  r.detail << scan.pairs << " pairs nontrivial by both oracles, " << coherence << " section-coherence checks";
}

AffineAutomorphism random_affine(oracle::Rng& rng, int d) {
  return AffineAutomorphism(oracle::random_matrix(rng, d), oracle::random_epseq(rng, d));
}

void criterion_5(Result& r) {
  oracle::Rng rng(5);
  std::size_t pairs = 0;
  for (int d : {2, 3}) {
    for (int k = 0; k < 200; ++k) {
      const auto p = random_affine(rng, d), q = random_affine(rng, d);
      const auto gp = affine_to_automaton(p), gq = affine_to_automaton(q);
      const auto pq = affine_compose(p, q);
      r.require(affine_to_automaton(pq) == compose(gp, gq), "affine_compose matches composition");
      r.require(pq.matrix() == mat_mul(p.matrix(), q.matrix()) &&
                    pq.vector() == mat_vec(p.vector(), q.matrix()) + q.vector(),
                "composition formula componentwise");
      const auto inv = affine_inverse(p);
      r.require(compose(gp, affine_to_automaton(inv)).is_identity(), "inverse composes to the identity");
      r.require(mat_mul(p.matrix(), inv.matrix()).is_identity() && mat_mul(inv.matrix(), p.matrix()).is_identity(),
                "A A^-1 = I");
      r.require(inv.vector() == -mat_vec(p.vector(), inv.matrix()), "inverse vector is -b A^-1");
      for (Letter x = 0; x < d; ++x) {
        const auto s = p.section(x);
        r.require(affine_to_automaton(s) == gp.section({x}), "affine section matches the machine section");
        r.require(s.matrix() == p.matrix().shift(1) &&
                      s.vector() == p.matrix().row(1).shift(1).scaled(x) + p.vector().shift(1),
                  "section formula componentwise");
      }
      const auto det = detect_affine(gp);
      r.require(std::holds_alternative<AffineAutomorphism>(det) && std::get<AffineAutomorphism>(det) == p,
                "detect_affine round trip");
      ++pairs;
    }
  }
  r.detail << pairs << " random pairs over Z_2 and Z_3";
}

void criterion_6(Result& r) {
  oracle::Rng rng(6);
  std::size_t converted = 0, max_states = 0;
  for (int d : {2, 3, 4, 5}) {
    for (int k = 0; k < 50; ++k) {
      const auto p = random_affine(rng, d);
      try {
        const auto g = affine_to_automaton(p, 1u << 20);
        max_states = std::max(max_states, g.state_count());
        ++converted;
      } catch (const BudgetExceeded&) {
        r.require(false, "conversion within budget");
      }
    }
  }
  const auto tau = from_power_series({RationalSeries(Poly(2, {1, 1})), RationalSeries(Poly(2))});
  const auto lamplighter = parse_wreath("b = (b, c); c = (b, c) (01)").element("b");
  const auto g = affine_to_automaton(tau);
  r.require(g == lamplighter, "tau_{1+t,0} is the machine b = (b, ba)");
  r.require(g.state_count() == 2, "two states");
  r.detail << converted << " random canonical pairs converted (at most " << max_states
           << " states), tau_{1+t,0} = lamplighter";
}

void criterion_7(Result& r) {
  const auto& G = g_group();
  oracle::Rng rng(7);
  const std::size_t N = 4;
  std::vector<TreeAutomorphism> affine{G.t()};
  while (affine.size() < 21) affine.push_back(affine_to_automaton(random_affine(rng, 2)));
  for (const auto& g : affine) {
    const auto rep = normalizer_certificate(g, N);
    r.require(rep.bounded_pass() && rep.detected(), "affine element passes both verdicts");
  }
  std::vector<std::pair<std::string, TreeAutomorphism>> other{{"b", G.b()}};
  while (other.size() < 21) {
    const auto g = minimize(oracle::random_machine(rng, 2, oracle::uniform(rng, 2, 5)), 0);
    if (std::holds_alternative<AffineRefutation>(detect_affine(g)))
      other.emplace_back("random #" + std::to_string(other.size()), g);
  }
  std::size_t caught = 0;
  std::vector<std::string> missed;
  for (const auto& [name, g] : other) {
    const auto rep = normalizer_certificate(g, N);
    r.require(rep.consistent(), "no detected element fails the bounded certificate");
    if (!rep.detected() && !rep.bounded_pass()) {
      ++caught;
    } else {
      missed.push_back(name + (rep.detected() ? " (detected affine)" : " (passes n <= 4)"));
    }
  }
  r.require(missed.empty(), "every listed non-affine element fails the bounded certificate by n <= 4");
  r.detail << affine.size() << " affine elements pass; " << caught << "/" << other.size()
           << " listed elements fail by n <= 4";
  for (const auto& m : missed) r.detail << "; not failing: " << m;
}

void criterion_8(Result& r) {
  using LE = LamplighterElement;
  const SimilarityPair pair(Poly(2, {1}), LE::x());
  const auto da = wreath_decompose(pair, LE::a());
  r.require(da.swap && da.g0.is_identity() && da.g1.is_identity(), "phi(a) = (1,1) sigma");
  r.require(rep_automaton(pair, LE::a()) == wreath({TreeAutomorphism::identity(2), TreeAutomorphism::identity(2)},
                                                   Permutation::long_cycle(2)),
            "phi(a) machine is (1,1) sigma");
  const auto ax = LE::a_pow(LaurentPoly::monomial(2, 1));
  const auto au = LE::a_pow(LaurentPoly(pair.u()));
  const auto dax = wreath_decompose(pair, ax);
  r.require(dax.swap && dax.g0 == au && dax.g1 == au, "phi(a^x) = (phi(a^u), phi(a^u)) sigma");
  const auto m_ax = rep_automaton(pair, ax), m_au = rep_automaton(pair, au);
  r.require(m_ax && m_au && *m_ax == wreath({*m_au, *m_au}, Permutation::long_cycle(2)),
            "phi(a^x) structurally");
  std::set<Portrait> seen;
  std::size_t sampled = 0;
  for (unsigned mask = 0; mask < 128; ++mask) {
    std::vector<int> c(7);
    for (int i = 0; i < 7; ++i) c[static_cast<std::size_t>(i)] = static_cast<int>(mask >> i & 1);
    for (int n = -3; n <= 3; ++n) {
      seen.insert(portrait_rep(pair, LE{LaurentPoly(2, -3, c), n}, 10).portrait);
      ++sampled;
    }
  }
  r.require(seen.size() == sampled, "depth-10 portraits pairwise distinct");
  const auto sh = base_sh_check(pair, 8, 4);
  r.require(sh.passed() && sh.elements_checked == 511, "base group level-constant to depth 8");
  r.detail << sampled << " elements with distinct depth-10 portraits; " << sh.elements_checked
           << " base elements level-constant to depth 8";
}

void criterion_9(Result& r) {
  const auto rep = rank_evidence(g_group(), 3, 4);
  r.require(rep.generators == 14, "14 generators");
  r.require(rep.involutions, "involutions");
  r.require(rep.pairwise_distinct, "pairwise distinct");
  r.require(rep.commuting, "commuting");
  r.require(rep.subsets_checked == 14 + 91 + 364 + 1001, "all subsets of size <= 4");
  r.require(rep.trivial_products == 0, "no trivial product");
  r.detail << rep.subsets_checked << " subset products nontrivial";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> known, only;
  app.add_option("--known-failure", known, "criteria expected to fail, documented in the README");
  app.add_option("--only", only, "run a subset");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "t as an affine map", 1, criterion_1},
      {2, "relations of G", 1, criterion_2},
      {3, "conjugates by t are homogeneous", 2, criterion_3},
      {4, "nontriviality scan to degree 6", 30, criterion_4},
      {5, "affine algebra laws", 30, criterion_5},
      {6, "affine maps are finite state", 5, criterion_6},
      {7, "normalizer certificate", 20, criterion_7},
      {8, "lamplighter representation", 30, criterion_8},
      {9, "lamplighter rank evidence", 20, criterion_9},
  };

  // g_group() is shared; build it once outside the timed sections.
  (void)g_group();
  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.require(secs <= c.seconds_limit, "time limit");
    if (!r.pass) failed.insert(c.id);
    std::printf("criterion %d %s  %-34s %7.2fs  %s\n", c.id, r.pass ? "PASS" : "FAIL", c.title, secs,
                r.detail.str().c_str());
  }
  std::set<int> expected;
  for (int k : known)
    if (only.empty() || std::find(only.begin(), only.end(), k) != only.end()) expected.insert(k);
  if (failed != expected) {
    std::printf("failing criteria differ from the documented known failures\n");
    return 1;
  }
  if (!failed.empty()) std::printf("only documented known failures\n");
  return 0;
}
