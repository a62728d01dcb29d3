#include "afftree/virtual_endo.hpp"

#include <cctype>
#include <deque>
#include <map>

#include "afftree/error.hpp"

namespace afftree {

std::string LamplighterElement::to_string() const {
  if (is_identity()) return "1";
  std::string s;
  if (!lamp.is_zero()) {
    const auto support = lamp.support();
    s = support.size() == 1 && support[0] == 0 ? "a" : "a^(" + lamp.to_string('x') + ")";
  }
  if (shift != 0) {
    if (!s.empty()) s += ' ';
    s += shift == 1 ? "x" : "x^" + std::to_string(shift);
  }
  return s;
}

LamplighterElement LamplighterElement::parse(std::string_view text) {
  std::size_t i = 0;
  auto col = [&] { return static_cast<int>(i) + 1; };
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  LamplighterElement g;
  skip();
  if (i == text.size()) throw ParseError("empty lamplighter element", 1, 1);
  if (text[i] == '1' || text[i] == 'e') {
    ++i;
    skip();
    if (i != text.size()) throw ParseError("unexpected input after identity", 1, col());
    return g;
  }
  if (text[i] == 'a') {
    ++i;
    g.lamp = LaurentPoly::monomial(2, 0);
    if (i < text.size() && text[i] == '^') {
      ++i;
      if (i >= text.size() || text[i] != '(') throw ParseError("expected '(' after 'a^'", 1, col());
      const std::size_t close = text.find(')', i);
      if (close == std::string_view::npos) throw ParseError("missing ')'", 1, col());
      try {
        g.lamp = LaurentPoly::parse(text.substr(i + 1, close - i - 1), 2, 'x');
      } catch (const ParseError& e) {
        throw ParseError(e.what(), 1, col() + e.column());
      }
      i = close + 1;
    }
    skip();
  }
  if (i < text.size() && text[i] == 'x') {
    ++i;
    g.shift = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      const std::size_t start = i;
      if (i < text.size() && text[i] == '-') ++i;
      const std::size_t digits = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == digits || i - digits > 9) throw ParseError("expected exponent", 1, static_cast<int>(digits) + 1);
      g.shift = std::stoi(std::string(text.substr(start, i - start)));
    }
    skip();
  }
  if (i != text.size()) throw ParseError("unexpected character", 1, col());
  return g;
}

LamplighterElement ll_mul(const LamplighterElement& g, const LamplighterElement& h) {
  return {g.lamp + h.lamp.shifted(-g.shift), g.shift + h.shift};
}

LamplighterElement ll_inv(const LamplighterElement& g) { return {-g.lamp.shifted(g.shift), -g.shift}; }

LamplighterElement ll_pow(const LamplighterElement& g, long long n) {
  LamplighterElement base = n < 0 ? ll_inv(g) : g;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
  LamplighterElement acc;
  while (e > 0) {
    if (e & 1) acc = ll_mul(acc, base);
    base = ll_mul(base, base);
    e >>= 1;
  }
  return acc;
}

SimilarityPair::SimilarityPair(Poly u, LamplighterElement fx) : u_(std::move(u)), fx_(std::move(fx)) {
  if (u_.modulus() != 2 || fx_.lamp.modulus() != 2) throw Error("similarity pair must be over Z_2");
  if (u_.value_at_one() == 0) throw Error("1+x divides u = " + u_.to_string('x'));
  if (fx_.shift != 1) throw Error("f(x) must have shift 1, got " + std::to_string(fx_.shift));
}

HDecomposition decompose_H(const LamplighterElement& h) {
  auto r = h.lamp.divided_by_one_plus_x();
  if (!r) throw Error("element " + h.to_string() + " is not in H");
  return {std::move(*r), h.shift};
}

LamplighterElement apply_f(const SimilarityPair& pair, const LamplighterElement& h) {
  const auto [r, n] = decompose_H(h);
  return ll_mul(LamplighterElement::a_pow(LaurentPoly(pair.u()) * r), ll_pow(pair.fx(), n));
}

WreathDecomposition wreath_decompose(const SimilarityPair& pair, const LamplighterElement& g) {
  const auto a = LamplighterElement::a();
  // Schreier elements h_i = t_i g t_j^-1 for the transversal {e, a}.
  if (g.in_H()) return {apply_f(pair, g), apply_f(pair, ll_mul(ll_mul(a, g), a)), false};
  return {apply_f(pair, ll_mul(g, a)), apply_f(pair, ll_mul(a, g)), true};
}

namespace {

const Permutation& root_perm(bool swap) {
  static const Permutation id = Permutation::identity(2), sigma = Permutation::long_cycle(2);
  return swap ? sigma : id;
}

}  // namespace

RepPortrait portrait_rep(const SimilarityPair& pair, const LamplighterElement& g, std::size_t depth,
                         std::size_t budget) {
  RepPortrait out;
  out.portrait.d = 2;
  std::map<LamplighterElement, WreathDecomposition> memo;
  std::vector<const LamplighterElement*> level{&g};
  for (std::size_t l = 0; l < depth; ++l) {
    std::vector<Permutation> perms;
    std::vector<const LamplighterElement*> next;
    perms.reserve(level.size());
    next.reserve(2 * level.size());
    for (const auto* s : level) {
      auto it = memo.find(*s);
      if (it == memo.end()) {
        if (memo.size() >= budget) {
          out.budget_exceeded = true;
          out.explored_states = memo.size();
          out.portrait.depth = out.portrait.levels.size();
          return out;
        }
        it = memo.emplace(*s, wreath_decompose(pair, *s)).first;
      }
      perms.push_back(root_perm(it->second.swap));
      next.push_back(&it->second.g0);
      next.push_back(&it->second.g1);
    }
    out.portrait.levels.push_back(std::move(perms));
    level.swap(next);
  }
  out.explored_states = memo.size();
  out.portrait.depth = depth;
  return out;
}

std::optional<TreeAutomorphism> rep_automaton(const SimilarityPair& pair, const LamplighterElement& g,
                                              std::size_t budget) {
  std::map<LamplighterElement, int> index{{g, 0}};
  std::deque<LamplighterElement> queue{g};
  MealyMachine m;
  m.d = 2;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    const auto w = wreath_decompose(pair, s);
    std::vector<int> row;
    for (const auto* c : {&w.g0, &w.g1}) {
      auto [it, inserted] = index.emplace(*c, static_cast<int>(index.size()));
      if (inserted) {
        if (index.size() > budget) return std::nullopt;
        queue.push_back(*c);
      }
      row.push_back(it->second);
    }
    m.next.push_back(std::move(row));
    m.out.push_back(root_perm(w.swap));
  }
  return minimize(m, 0);
}

BaseSHReport base_sh_check(const SimilarityPair& pair, std::size_t depth, int support_bound) {
  if (depth < 1) throw Error("base_sh_check needs depth >= 1");
  if (support_bound < 0 || support_bound > 10) throw Error("support bound must lie in [0, 10]");
  BaseSHReport rep;
  rep.depth = depth;
  rep.support_bound = support_bound;
  const int width = 2 * support_bound + 1;
  for (unsigned long mask = 1; mask < (1ul << width); ++mask) {
    std::vector<int> c(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) c[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1);
    const auto g = LamplighterElement::a_pow(LaurentPoly(2, -support_bound, std::move(c)));
    const auto r = portrait_rep(pair, g, depth);
    ++rep.elements_checked;
    rep.max_explored_states = std::max(rep.max_explored_states, r.explored_states);
    if (r.budget_exceeded) {
      rep.budget_exceeded = true;
      rep.first_failure = g;
      break;
    }
    if (!r.portrait.is_level_constant()) {
      rep.first_failure = g;
      break;
    }
  }
  return rep;
}

}  // namespace afftree
