#include "afftree/mealy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "afftree/lasso.hpp"

namespace afftree {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int y : images_) {
    if (y < 0 || static_cast<std::size_t>(y) >= images_.size() || hit[static_cast<std::size_t>(y)])
      throw Error("output row is not a permutation");
    hit[static_cast<std::size_t>(y)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> img(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) img[static_cast<std::size_t>(x)] = x;
  return Permutation(std::move(img));
}

Permutation Permutation::long_cycle(int d) {
  std::vector<int> img(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) img[static_cast<std::size_t>(x)] = (x + 1) % d;
  return Permutation(std::move(img));
}

Permutation Permutation::parse_cycles(std::string_view text, int d) {
  Permutation result = identity(d);
  std::size_t i = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, 1, static_cast<int>(i) + 1); };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '(' in cycle notation");
    const std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) fail("unterminated cycle");
    const std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<int> cycle;
    if (body.find(',') != std::string_view::npos) {
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = body.find(',', pos);
        std::string_view item = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size()) fail("bad letter in cycle");
        cycle.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    } else {
      for (char c : body) {
        if (c == ' ') continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad letter in cycle");
        cycle.push_back(c - '0');
      }
    }
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) fail("repeated letter in cycle");
    std::vector<int> img = identity(d).images_;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (cycle[k] < 0 || cycle[k] >= d) fail("letter " + std::to_string(cycle[k]) + " outside the alphabet");
      img[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    result = result.then(Permutation(std::move(img)));
    i = close + 1;
  }
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) img[static_cast<std::size_t>(images_[x])] = static_cast<int>(x);
  return Permutation(std::move(img));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.degree() != degree()) throw ModulusMismatch(degree(), next.degree());
  std::vector<int> img(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) img[x] = next(images_[x]);
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != static_cast<int>(x)) return false;
  return true;
}

std::optional<int> Permutation::long_cycle_power() const {
  const int d = degree();
  const int c = images_[0];
  for (int x = 0; x < d; ++x)
    if (images_[static_cast<std::size_t>(x)] != (x + c) % d) return std::nullopt;
  return c;
}

std::string Permutation::to_cycles() const {
  const bool commas = degree() > 10;
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == static_cast<int>(x)) continue;
    any = true;
    os << '(';
    std::size_t y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first && commas) os << ',';
      first = false;
      os << y;
      y = static_cast<std::size_t>(images_[y]);
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

// ---------------------------------------------------------------- machines

void MealyMachine::validate() const {
  check_modulus(d);
  if (out.empty()) throw Error("machine has no states");
  if (next.size() != out.size()) throw Error("transition and output tables differ in size");
  for (std::size_t q = 0; q < out.size(); ++q) {
    if (out[q].degree() != d) throw Error("output permutation of state " + std::to_string(q) + " has wrong degree");
    if (next[q].size() != static_cast<std::size_t>(d)) throw Error("transition row of state " + std::to_string(q) + " has wrong length");
    for (int r : next[q])
      if (r < 0 || static_cast<std::size_t>(r) >= out.size()) throw Error("transition to unknown state");
  }
}

TreeAutomorphism minimize(const MealyMachine& m, int start) {
  m.validate();
  if (start < 0 || static_cast<std::size_t>(start) >= m.size()) throw Error("start state out of range");
  const std::size_t d = static_cast<std::size_t>(m.d);

  // reachable states
  std::vector<int> reach_index(m.size(), -1);
  std::vector<int> reach{start};
  reach_index[static_cast<std::size_t>(start)] = 0;
  for (std::size_t k = 0; k < reach.size(); ++k)
    for (int r : m.next[static_cast<std::size_t>(reach[k])])
      if (reach_index[static_cast<std::size_t>(r)] < 0) {
        reach_index[static_cast<std::size_t>(r)] = static_cast<int>(reach.size());
        reach.push_back(r);
      }
  const std::size_t n = reach.size();

  // Moore refinement: start from output classes, split by successor classes
  std::vector<int> cls(n);
  std::size_t classes = 0;
  {
    std::map<Permutation, int> ids;
    for (std::size_t k = 0; k < n; ++k) {
      auto [it, _] = ids.emplace(m.out[static_cast<std::size_t>(reach[k])], static_cast<int>(ids.size()));
      cls[k] = it->second;
    }
    classes = ids.size();
  }
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> refined(n);
    std::vector<int> sig(d + 1);
    for (std::size_t k = 0; k < n; ++k) {
      sig[0] = cls[k];
      const auto& row = m.next[static_cast<std::size_t>(reach[k])];
      for (std::size_t x = 0; x < d; ++x) sig[x + 1] = cls[static_cast<std::size_t>(reach_index[static_cast<std::size_t>(row[x])])];
      auto [it, _] = ids.emplace(sig, static_cast<int>(ids.size()));
      refined[k] = it->second;
    }
    cls.swap(refined);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  // representative per class, then BFS renumbering from the start class
  std::vector<int> rep(classes, -1);
  for (std::size_t k = 0; k < n; ++k)
    if (rep[static_cast<std::size_t>(cls[k])] < 0) rep[static_cast<std::size_t>(cls[k])] = static_cast<int>(k);
  std::vector<int> order_of(classes, -1);
  std::vector<int> order{cls[0]};
  order_of[static_cast<std::size_t>(cls[0])] = 0;
  MealyMachine out;
  out.d = m.d;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int orig = reach[static_cast<std::size_t>(rep[static_cast<std::size_t>(order[k])])];
    std::vector<int> row(d);
    for (std::size_t x = 0; x < d; ++x) {
      const int c = cls[static_cast<std::size_t>(reach_index[static_cast<std::size_t>(m.next[static_cast<std::size_t>(orig)][x])])];
      if (order_of[static_cast<std::size_t>(c)] < 0) {
        order_of[static_cast<std::size_t>(c)] = static_cast<int>(order.size());
        order.push_back(c);
      }
      row[x] = order_of[static_cast<std::size_t>(c)];
    }
    out.next.push_back(std::move(row));
    out.out.push_back(m.out[static_cast<std::size_t>(orig)]);
  }
  return TreeAutomorphism(std::move(out));
}

TreeAutomorphism TreeAutomorphism::identity(int d) {
  MealyMachine m;
  m.d = d;
  m.next = {std::vector<int>(static_cast<std::size_t>(d), 0)};
  m.out = {Permutation::identity(d)};
  return minimize(m, 0);
}

Word TreeAutomorphism::act(const Word& w) const {
  Word out;
  out.reserve(w.size());
  std::size_t q = 0;
  for (Letter x : w) {
    if (x < 0 || x >= m_.d) throw Error("letter " + std::to_string(x) + " out of range");
    out.push_back(m_.out[q](x));
    q = static_cast<std::size_t>(m_.next[q][static_cast<std::size_t>(x)]);
  }
  return out;
}

TreeAutomorphism TreeAutomorphism::section(const Word& v) const {
  int q = 0;
  for (Letter x : v) {
    if (x < 0 || x >= m_.d) throw Error("letter " + std::to_string(x) + " out of range");
    q = m_.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(x)];
  }
  return q == 0 ? *this : minimize(m_, q);
}

std::size_t TreeAutomorphism::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(m_.d) * 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  for (std::size_t q = 0; q < m_.size(); ++q) {
    for (int y : m_.out[q].images()) mix(static_cast<std::size_t>(y));
    for (int r : m_.next[q]) mix(static_cast<std::size_t>(r));
  }
  return h;
}

// ---------------------------------------------------------------- group operations

TreeAutomorphism compose(const TreeAutomorphism& g, const TreeAutomorphism& h, std::size_t budget) {
  if (g.alphabet_size() != h.alphabet_size()) throw ModulusMismatch(g.alphabet_size(), h.alphabet_size());
  const auto& mg = g.machine();
  const auto& mh = h.machine();
  const std::size_t d = static_cast<std::size_t>(mg.d);
  const std::uint64_t width = mh.size();
  std::unordered_map<std::uint64_t, int> index;
  std::vector<std::pair<int, int>> pairs{{0, 0}};
  index.emplace(0, 0);
  MealyMachine prod;
  prod.d = mg.d;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [qg, qh] = pairs[k];
    const auto& og = mg.out[static_cast<std::size_t>(qg)];
    const auto& oh = mh.out[static_cast<std::size_t>(qh)];
    std::vector<int> row(d);
    for (std::size_t x = 0; x < d; ++x) {
      const int y = og(static_cast<int>(x));
      const int ng = mg.next[static_cast<std::size_t>(qg)][x];
      const int nh = mh.next[static_cast<std::size_t>(qh)][static_cast<std::size_t>(y)];
      const std::uint64_t key = static_cast<std::uint64_t>(ng) * width + static_cast<std::uint64_t>(nh);
      auto [it, inserted] = index.emplace(key, static_cast<int>(pairs.size()));
      if (inserted) {
        if (pairs.size() >= budget) throw BudgetExceeded(budget);
        pairs.emplace_back(ng, nh);
      }
      row[x] = it->second;
    }
    prod.next.push_back(std::move(row));
    prod.out.push_back(og.then(oh));
  }
  return minimize(prod, 0);
}

TreeAutomorphism inverse(const TreeAutomorphism& g) {
  const auto& m = g.machine();
  MealyMachine inv;
  inv.d = m.d;
  for (std::size_t q = 0; q < m.size(); ++q) {
    const Permutation back = m.out[q].inverse();
    std::vector<int> row(static_cast<std::size_t>(m.d));
    for (int y = 0; y < m.d; ++y) row[static_cast<std::size_t>(y)] = m.next[q][static_cast<std::size_t>(back(y))];
    inv.next.push_back(std::move(row));
    inv.out.push_back(back);
  }
  return minimize(inv, 0);
}

TreeAutomorphism power(const TreeAutomorphism& g, long long n, std::size_t budget) {
  TreeAutomorphism base = n < 0 ? inverse(g) : g;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  TreeAutomorphism acc = TreeAutomorphism::identity(g.alphabet_size());
  while (e) {
    if (e & 1ull) acc = compose(acc, base, budget);
    e >>= 1;
    if (e) base = compose(base, base, budget);
  }
  return acc;
}

TreeAutomorphism conjugate(const TreeAutomorphism& h, const TreeAutomorphism& g, std::size_t budget) {
  return compose(compose(inverse(g), h, budget), g, budget);
}

bool equal(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  if (g.alphabet_size() != h.alphabet_size()) throw ModulusMismatch(g.alphabet_size(), h.alphabet_size());
  return compose(g, inverse(h)).is_identity();
}

bool commute(const TreeAutomorphism& g, const TreeAutomorphism& h) { return compose(g, h) == compose(h, g); }

std::optional<Word> distinguishing_word(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  if (g.alphabet_size() != h.alphabet_size()) throw ModulusMismatch(g.alphabet_size(), h.alphabet_size());
  const auto& mg = g.machine();
  const auto& mh = h.machine();
  const int d = mg.d;
  struct Node {
    int qg, qh, parent;
    Letter via;
  };
  std::vector<Node> nodes{{0, 0, -1, 0}};
  std::set<std::pair<int, int>> seen{{0, 0}};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node cur = nodes[k];
    for (int x = 0; x < d; ++x) {
      if (mg.out[static_cast<std::size_t>(cur.qg)](x) != mh.out[static_cast<std::size_t>(cur.qh)](x)) {
        Word w{x};
        for (int p = static_cast<int>(k); nodes[static_cast<std::size_t>(p)].parent >= 0; p = nodes[static_cast<std::size_t>(p)].parent)
          w.push_back(nodes[static_cast<std::size_t>(p)].via);
        std::reverse(w.begin(), w.end());
        return w;
      }
    }
    for (int x = 0; x < d; ++x) {
      const int ng = mg.next[static_cast<std::size_t>(cur.qg)][static_cast<std::size_t>(x)];
      const int nh = mh.next[static_cast<std::size_t>(cur.qh)][static_cast<std::size_t>(x)];
      if (seen.emplace(ng, nh).second) nodes.push_back({ng, nh, static_cast<int>(k), x});
    }
  }
  return std::nullopt;
}

TreeAutomorphism wreath(const std::vector<TreeAutomorphism>& sections, const Permutation& perm) {
  const int d = perm.degree();
  if (sections.size() != static_cast<std::size_t>(d)) throw Error("wreath recursion needs one section per letter");
  MealyMachine m;
  m.d = d;
  m.next.emplace_back(static_cast<std::size_t>(d));
  m.out.push_back(perm);
  for (int x = 0; x < d; ++x) {
    const auto& s = sections[static_cast<std::size_t>(x)];
    if (s.alphabet_size() != d) throw ModulusMismatch(d, s.alphabet_size());
    const int offset = static_cast<int>(m.size());
    m.next[0][static_cast<std::size_t>(x)] = offset;
    for (std::size_t q = 0; q < s.state_count(); ++q) {
      std::vector<int> row = s.machine().next[q];
      for (int& r : row) r += offset;
      m.next.push_back(std::move(row));
      m.out.push_back(s.machine().out[q]);
    }
  }
  return minimize(m, 0);
}

TreeAutomorphism level_power(const TreeAutomorphism& g, std::size_t n) {
  TreeAutomorphism result = g;
  const int d = g.alphabet_size();
  for (std::size_t k = 0; k < n; ++k)
    result = wreath(std::vector<TreeAutomorphism>(static_cast<std::size_t>(d), result), Permutation::identity(d));
  return result;
}

// ---------------------------------------------------------------- homogeneity

SphericalHomogeneity is_spherically_homogeneous(const TreeAutomorphism& g) {
  // In a canonical machine distinct states are distinct automorphisms, so
  // comparing first-level sections is comparing state indices.
  const auto& m = g.machine();
  std::vector<bool> visited(m.size(), false);
  std::size_t q = 0;
  for (std::size_t level = 0; !visited[q]; ++level) {
    visited[q] = true;
    const int first = m.next[q][0];
    for (int x = 1; x < m.d; ++x) {
      if (m.next[q][static_cast<std::size_t>(x)] != first) {
        Word witness(level, 0);
        witness.push_back(x);
        return {false, std::move(witness)};
      }
    }
    q = static_cast<std::size_t>(first);
  }
  return {true, {}};
}

const Permutation& LevelPermutations::at(std::size_t level) const { return lasso_at(preperiod, period, level); }

LevelPermutations sh_signature(const TreeAutomorphism& g) {
  if (!is_spherically_homogeneous(g).homogeneous) throw Error("automorphism is not spherically homogeneous");
  const auto& m = g.machine();
  std::vector<int> first_seen(m.size(), -1);
  std::vector<Permutation> perms;
  std::size_t q = 0;
  while (first_seen[q] < 0) {
    first_seen[q] = static_cast<int>(perms.size());
    perms.push_back(m.out[q]);
    q = static_cast<std::size_t>(m.next[q][0]);
  }
  LevelPermutations sig;
  sig.preperiod.assign(perms.begin(), perms.begin() + first_seen[q]);
  sig.period.assign(perms.begin() + first_seen[q], perms.end());
  canonicalize_lasso(sig.preperiod, sig.period);
  return sig;
}

// ---------------------------------------------------------------- portraits, orders, boundary

bool Portrait::is_trivial() const {
  for (const auto& level : levels)
    for (const auto& p : level)
      if (!p.is_identity()) return false;
  return true;
}

bool Portrait::is_level_constant() const {
  for (const auto& level : levels)
    for (const auto& p : level)
      if (p != level.front()) return false;
  return true;
}

Portrait portrait(const TreeAutomorphism& g, std::size_t depth) {
  const auto& m = g.machine();
  Portrait p;
  p.d = m.d;
  p.depth = depth;
  std::vector<int> states{0};
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<Permutation> perms;
    perms.reserve(states.size());
    std::vector<int> next_states;
    next_states.reserve(states.size() * static_cast<std::size_t>(m.d));
    for (int q : states) {
      perms.push_back(m.out[static_cast<std::size_t>(q)]);
      for (int r : m.next[static_cast<std::size_t>(q)]) next_states.push_back(r);
    }
    p.levels.push_back(std::move(perms));
    states.swap(next_states);
  }
  return p;
}

namespace {

unsigned long long lcm_capped(unsigned long long a, unsigned long long b, unsigned long long cap) {
  const unsigned long long g = std::gcd(a, b);
  const unsigned long long q = a / g;
  if (q > cap / b + 1) return cap + 1;
  return std::min(q * b, cap + 1);
}

// Orbit length of w under g, or cap+1 when longer than cap. nullopt if a
// point in the orbit grows past the size limit.
std::optional<unsigned long long> orbit_length(const MealyMachine& m, const EpSeq& w, unsigned long long cap,
                                               std::size_t size_limit) {
  EpSeq cur = w;
  for (unsigned long long k = 1; k <= cap; ++k) {
    cur = apply_boundary(m, 0, cur);
    if (cur == w) return k;
    if (cur.preperiod().size() + cur.period().size() > size_limit) return std::nullopt;
  }
  return cap + 1;
}

}  // namespace

OrderResult order_bounded(const TreeAutomorphism& g, long long max_n, std::size_t budget) {
  if (max_n < 1) throw Error("order bound must be positive");
  const auto cap = static_cast<unsigned long long>(max_n);
  const auto& m = g.machine();
  const std::size_t d = static_cast<std::size_t>(m.d);
  const std::size_t level_cap = std::min<std::size_t>(budget, std::size_t{1} << 16);

  // The order is a multiple of the order on every level and of every orbit length.
  unsigned long long known = 1;
  std::vector<int> image{0}, state{0};
  while (image.size() * d <= level_cap) {
    std::vector<int> next_image(image.size() * d), next_state(image.size() * d);
    for (std::size_t v = 0; v < image.size(); ++v) {
      const auto q = static_cast<std::size_t>(state[v]);
      for (std::size_t x = 0; x < d; ++x) {
        next_image[v * d + x] = image[v] * static_cast<int>(d) + m.out[q](static_cast<int>(x));
        next_state[v * d + x] = m.next[q][x];
      }
    }
    image.swap(next_image);
    state.swap(next_state);
    std::vector<bool> seen(image.size(), false);
    for (std::size_t v = 0; v < image.size(); ++v) {
      if (seen[v]) continue;
      unsigned long long len = 0;
      for (std::size_t u = v; !seen[u]; u = static_cast<std::size_t>(image[u])) {
        seen[u] = true;
        ++len;
      }
      known = lcm_capped(known, len, cap);
      if (known > cap) return {OrderResult::Status::exceeds_bound, 0};
    }
  }
  std::vector<EpSeq> probes;
  for (int c = 0; c < m.d; ++c) probes.emplace_back(m.d, std::vector<int>{}, std::vector<int>{c});
  for (std::size_t i = 1; i <= 4; ++i) probes.push_back(EpSeq::basis(m.d, i));
  for (const auto& w : probes) {
    const auto len = orbit_length(m, w, cap, budget);
    if (!len) continue;
    known = lcm_capped(known, *len, cap);
    if (known > cap) return {OrderResult::Status::exceeds_bound, 0};
  }

  try {
    const TreeAutomorphism step = power(g, static_cast<long long>(known), budget);
    TreeAutomorphism acc = step;
    for (unsigned long long n = known; n <= cap; n += known) {
      if (acc.is_identity()) return {OrderResult::Status::finite, static_cast<long long>(n)};
      if (n + known <= cap) acc = compose(acc, step, budget);
    }
  } catch (const BudgetExceeded&) {
    return {OrderResult::Status::budget_exhausted, 0};
  }
  return {OrderResult::Status::exceeds_bound, 0};
}

EpSeq apply_boundary(const MealyMachine& m, int state, const EpSeq& w) {
  if (w.modulus() != m.d) throw ModulusMismatch(m.d, w.modulus());
  const std::size_t pre = w.preperiod().size();
  const std::size_t per = w.period().size();
  std::vector<int> out;
  std::size_t q = static_cast<std::size_t>(state);
  for (std::size_t i = 1; i <= pre; ++i) {
    const int x = w.at(i);
    out.push_back(m.out[q](x));
    q = static_cast<std::size_t>(m.next[q][static_cast<std::size_t>(x)]);
  }
  // (state, phase) pairs now evolve deterministically; the first repeat closes the cycle
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t phase = 0;; phase = (phase + 1) % per) {
    auto [it, inserted] = seen.emplace(std::make_pair(q, phase), out.size());
    if (!inserted) {
      std::vector<int> head(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(it->second));
      std::vector<int> cycle(out.begin() + static_cast<std::ptrdiff_t>(it->second), out.end());
      return EpSeq(m.d, std::move(head), std::move(cycle));
    }
    const int x = w.period()[phase];
    out.push_back(m.out[q](x));
    q = static_cast<std::size_t>(m.next[q][static_cast<std::size_t>(x)]);
  }
}

EpSeq apply_boundary(const TreeAutomorphism& g, const EpSeq& w) { return apply_boundary(g.machine(), 0, w); }

}  // namespace afftree
