#include "afftree/affine.hpp"

#include <deque>
#include <map>

namespace afftree {

AffineAutomorphism::AffineAutomorphism(DiagPeriodicMatrix A, EpSeq b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.modulus() != b_.modulus()) throw ModulusMismatch(A_.modulus(), b_.modulus());
}

AffineAutomorphism AffineAutomorphism::identity(int modulus) {
  return {DiagPeriodicMatrix::identity(modulus), EpSeq::zero(modulus)};
}

AffineAutomorphism AffineAutomorphism::translation(const EpSeq& b) {
  return {DiagPeriodicMatrix::identity(b.modulus()), b};
}

EpSeq AffineAutomorphism::apply(const EpSeq& x) const {
  if (x.modulus() != modulus()) throw ModulusMismatch(modulus(), x.modulus());
  return b_ + mat_vec(x, A_);
}

AffineAutomorphism AffineAutomorphism::section(Letter x) const {
  if (x < 0 || x >= modulus()) throw Error("letter " + std::to_string(x) + " out of range");
  return {A_.shift(), A_.row_from_diagonal(1).shift().scaled(x) + b_.shift()};
}

Permutation AffineAutomorphism::root_permutation() const {
  const int d = modulus();
  const int a = A_.entry(1, 1);
  std::vector<int> img(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) img[static_cast<std::size_t>(x)] = (b_.at(1) + x * a) % d;
  return Permutation(std::move(img));
}

AffineAutomorphism affine_compose(const AffineAutomorphism& p, const AffineAutomorphism& q) {
  if (p.modulus() != q.modulus()) throw ModulusMismatch(p.modulus(), q.modulus());
  return {mat_mul(p.matrix(), q.matrix()), mat_vec(p.vector(), q.matrix()) + q.vector()};
}

TreeAutomorphism affine_to_automaton(const AffineAutomorphism& p, std::size_t budget) {
  // A state is (k, v): the map pi_{sigma^k(A), v}. Shift indices are folded
  // into the lasso of A so equal matrices share an index.
  const auto& A = p.matrix();
  const std::size_t n = A.preperiod(), per = A.period();
  auto fold = [&](std::size_t k) { return k < n ? k : n + (k - n) % per; };
  const int d = p.modulus();

  std::map<std::pair<std::size_t, EpSeq>, int> index;
  std::vector<std::pair<std::size_t, EpSeq>> states{{0, p.vector()}};
  index.emplace(states.front(), 0);
  MealyMachine m;
  m.d = d;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::size_t k = states[s].first;
    const EpSeq v = states[s].second;
    const EpSeq& row = A.row_from_diagonal(k + 1);
    const int diag = row.at(1);
    const EpSeq tail = row.shift();
    const EpSeq vs = v.shift();
    std::vector<int> img(static_cast<std::size_t>(d)), next(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) {
      img[static_cast<std::size_t>(x)] = (v.at(1) + x * diag) % d;
      std::pair<std::size_t, EpSeq> key{fold(k + 1), tail.scaled(x) + vs};
      auto it = index.find(key);
      if (it == index.end()) {
        if (states.size() >= budget) throw BudgetExceeded(budget);
        it = index.emplace(key, static_cast<int>(states.size())).first;
        states.push_back(std::move(key));
      }
      next[static_cast<std::size_t>(x)] = it->second;
    }
    m.next.push_back(std::move(next));
    m.out.emplace_back(std::move(img));
  }
  return minimize(m, 0);
}

AffineDetection detect_affine(const TreeAutomorphism& g, std::size_t budget) {
  const auto& m = g.machine();
  const int d = m.d;
  const EpSeq zero = EpSeq::zero(d);
  const EpSeq e1 = EpSeq::basis(d, 1);
  const EpSeq b = apply_boundary(g, zero);

  std::vector<int> first_seen(m.size(), -1);
  std::vector<int> path;
  int q = 0;
  while (first_seen[static_cast<std::size_t>(q)] < 0) {
    first_seen[static_cast<std::size_t>(q)] = static_cast<int>(path.size());
    path.push_back(q);
    q = m.next[static_cast<std::size_t>(q)][0];
  }
  const auto pre = static_cast<std::size_t>(first_seen[static_cast<std::size_t>(q)]);

  std::vector<EpSeq> base, templ;
  for (std::size_t k = 0; k < path.size(); ++k) {
    // first row of sigma^k(A), stored from its diagonal
    const EpSeq row = apply_boundary(m, path[k], e1) - apply_boundary(m, path[k], zero);
    if (!is_unit_mod(row.at(1), d)) {
      AffineRefutation r;
      r.kind = AffineRefutation::Kind::non_unit_diagonal;
      r.basis_index = k + 1;
      r.word = Word(k, 0);
      return r;
    }
    (k < pre ? base : templ).push_back(row);
  }
  AffineAutomorphism candidate(DiagPeriodicMatrix(d, std::move(base), std::move(templ)), b);
  const TreeAutomorphism machine = affine_to_automaton(candidate, budget);
  if (machine == g) return candidate;
  AffineRefutation r;
  r.kind = AffineRefutation::Kind::disagreement;
  r.word = distinguishing_word(machine, g).value_or(Word{});
  return r;
}

AffineAutomorphism affine_inverse(const AffineAutomorphism& p, std::size_t budget) {
  const auto detected = detect_affine(inverse(affine_to_automaton(p, budget)), budget);
  const auto* inv = std::get_if<AffineAutomorphism>(&detected);
  if (!inv) throw Error("inverse of an affine automorphism was not detected as affine");
  if (!mat_mul(p.matrix(), inv->matrix()).is_identity()) throw Error("extracted inverse matrix fails A*A^-1 = I");
  return *inv;
}

AffineAutomorphism from_power_series(const PowerSeriesAffine& tau) {
  const EpSeq f = series_to_epseq(tau.f);
  if (!is_unit_mod(f.at(1), f.modulus())) throw Error("constant term of f is not a unit");
  return {DiagPeriodicMatrix::band(f), series_to_epseq(tau.b)};
}

TreeAutomorphism sigma_n(std::size_t n, int d) {
  check_modulus(d);
  const TreeAutomorphism e = TreeAutomorphism::identity(d);
  return level_power(wreath(std::vector<TreeAutomorphism>(static_cast<std::size_t>(d), e), Permutation::long_cycle(d)), n);
}

AffineAutomorphism delta_element(const Poly& p) {
  return AffineAutomorphism::translation(EpSeq::finite(p.modulus(), p.coefficients()));
}

bool is_affine_shift(const TreeAutomorphism& g) {
  if (!is_spherically_homogeneous(g).homogeneous) return false;
  const auto sig = sh_signature(g);
  for (const auto* part : {&sig.preperiod, &sig.period})
    for (const auto& perm : *part)
      if (!perm.long_cycle_power()) return false;
  return true;
}

NormalizerReport normalizer_certificate(const TreeAutomorphism& g, std::size_t N, std::size_t budget) {
  NormalizerReport r{N, {}, std::nullopt, detect_affine(g, budget)};
  for (std::size_t n = 0; n <= N; ++n) {
    const bool ok = is_affine_shift(conjugate(sigma_n(n, g.alphabet_size()), g, budget));
    r.conjugate_in_shift.push_back(ok);
    if (!ok && !r.first_failure) r.first_failure = n;
  }
  return r;
}

CycleReport cycle_divisibility_check(const AffineAutomorphism& p, std::size_t budget) {
  const TreeAutomorphism g = affine_to_automaton(p, budget);
  const auto& m = g.machine();
  CycleReport r;
  r.matrix_period = p.matrix().period();
  r.state_count = m.size();
  r.band_matrix = p.matrix().preperiod() == 0 && p.matrix().period() == 1;
  // girth: BFS from each state back to itself
  for (std::size_t s = 0; s < m.size(); ++s) {
    std::vector<std::size_t> dist(m.size(), 0);
    std::deque<std::size_t> queue{s};
    std::vector<bool> seen(m.size(), false);
    bool closed = false;
    while (!queue.empty() && !closed) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (int v : m.next[u]) {
        const auto w = static_cast<std::size_t>(v);
        if (w == s) {
          const std::size_t len = dist[u] + 1;
          if (r.shortest_cycle == 0 || len < r.shortest_cycle) r.shortest_cycle = len;
          closed = true;
          break;
        }
        if (!seen[w]) {
          seen[w] = true;
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int v : m.next[s])
      if (static_cast<std::size_t>(v) == s) {
        r.has_loop = true;
        if (s == 0) r.loop_at_start = true;
      }
  }
  r.period_divides_cycle = r.shortest_cycle != 0 && r.shortest_cycle % r.matrix_period == 0;
  return r;
}

}  // namespace afftree
