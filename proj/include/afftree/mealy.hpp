#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afftree/epseq.hpp"
#include "afftree/error.hpp"

namespace afftree {

using Letter = int;
using Word = std::vector<Letter>;

/// Permutation of the alphabet {0, ..., d-1}; images[x] is the image of x.
class Permutation {
public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int d);
  /// The long cycle x -> x+1 mod d.
  static Permutation long_cycle(int d);
  /// Cycle notation such as "(01)", "(012)(34)" or "(0,10,11)"; "()" is the identity.
  static Permutation parse_cycles(std::string_view text, int d);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;
  /// This permutation followed by `next`.
  Permutation then(const Permutation& next) const;
  bool is_identity() const;
  /// c when the permutation is x -> x+c, i.e. a power of the long cycle.
  std::optional<int> long_cycle_power() const;
  std::string to_cycles() const;

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> images_;
};

/// Finite invertible Mealy machine: next[q][x] is the transition and out[q]
/// the output permutation of state q.
struct MealyMachine {
  int d = 2;
  std::vector<std::vector<int>> next;
  std::vector<Permutation> out;

  std::size_t size() const noexcept { return out.size(); }
  /// Throws Error unless the tables are consistent.
  void validate() const;

  auto operator<=>(const MealyMachine&) const = default;
};

class TreeAutomorphism;

/// Reachable restriction, behavioral partition refinement, and BFS
/// renumbering from the start state (letters in increasing order).
TreeAutomorphism minimize(const MealyMachine& machine, int start);

/// Automorphism of the rooted d-ary tree given by a canonical initial Mealy
/// machine. The start state is always 0, and two instances describe the same
/// automorphism exactly when their machines are identical.
class TreeAutomorphism {
public:
  static TreeAutomorphism identity(int d);

  int alphabet_size() const noexcept { return m_.d; }
  const MealyMachine& machine() const noexcept { return m_; }
  std::size_t state_count() const noexcept { return m_.size(); }
  const Permutation& root_permutation() const { return m_.out[0]; }

  Word act(const Word& w) const;
  TreeAutomorphism section(const Word& v) const;
  /// The automorphism defined by state q of the canonical machine.
  TreeAutomorphism state(int q) const { return minimize(m_, q); }
  bool is_identity() const noexcept { return m_.size() == 1 && m_.out[0].is_identity(); }

  std::size_t hash() const noexcept;

  auto operator<=>(const TreeAutomorphism&) const = default;

private:
  friend TreeAutomorphism minimize(const MealyMachine&, int);
  explicit TreeAutomorphism(MealyMachine m) : m_(std::move(m)) {}

  MealyMachine m_;
};

/// The product gh, acting as w -> h(g(w)).
TreeAutomorphism compose(const TreeAutomorphism& g, const TreeAutomorphism& h,
                         std::size_t budget = kDefaultStateBudget);
TreeAutomorphism inverse(const TreeAutomorphism& g);
/// g^n for any integer n.
TreeAutomorphism power(const TreeAutomorphism& g, long long n, std::size_t budget = kDefaultStateBudget);
/// h^g = g^-1 h g.
TreeAutomorphism conjugate(const TreeAutomorphism& h, const TreeAutomorphism& g,
                           std::size_t budget = kDefaultStateBudget);
/// Word problem: g == h iff g h^-1 is the identity.
bool equal(const TreeAutomorphism& g, const TreeAutomorphism& h);
/// Shortest word in length-lex order on which g and h produce different output.
std::optional<Word> distinguishing_word(const TreeAutomorphism& g, const TreeAutomorphism& h);
bool commute(const TreeAutomorphism& g, const TreeAutomorphism& h);

/// (g_0, ..., g_{d-1}) perm: sections at the first level followed by perm at the root.
TreeAutomorphism wreath(const std::vector<TreeAutomorphism>& sections, const Permutation& perm);
/// g^(n): trivial on the first n levels, with every state at level n equal to g.
TreeAutomorphism level_power(const TreeAutomorphism& g, std::size_t n);

struct SphericalHomogeneity {
  bool homogeneous = false;
  /// Shortest word u (length-lex) with g|_u != g|_{0^|u|}, when not homogeneous.
  Word witness;
};
SphericalHomogeneity is_spherically_homogeneous(const TreeAutomorphism& g);

/// Eventually periodic sequence of level permutations [sigma_1, sigma_2, ...].
struct LevelPermutations {
  std::vector<Permutation> preperiod;
  std::vector<Permutation> period;

  const Permutation& at(std::size_t level) const;  // 1-based
  auto operator<=>(const LevelPermutations&) const = default;
};
/// Throws Error when g is not spherically homogeneous.
LevelPermutations sh_signature(const TreeAutomorphism& g);

/// Root permutations of all sections at words of length < depth. levels[l]
/// lists the d^l vertices of level l in lexicographic order.
struct Portrait {
  int d = 2;
  std::size_t depth = 0;
  std::vector<std::vector<Permutation>> levels;

  bool is_trivial() const;
  /// True when on every level all vertices carry the same permutation.
  bool is_level_constant() const;
  auto operator<=>(const Portrait&) const = default;
};
Portrait portrait(const TreeAutomorphism& g, std::size_t depth);

struct OrderResult {
  enum class Status { finite, exceeds_bound, budget_exhausted };
  Status status = Status::exceeds_bound;
  long long order = 0;  // valid when status == finite
};
/// Least n <= max_n with g^n = 1. Orders of level actions and boundary orbit
/// lengths must divide the order, so they certify exceeds_bound without
/// forming large powers; candidate orders are then tested by powering.
OrderResult order_bounded(const TreeAutomorphism& g, long long max_n, std::size_t budget = kDefaultStateBudget);

/// Exact image of an eventually periodic boundary point.
EpSeq apply_boundary(const TreeAutomorphism& g, const EpSeq& w);
/// Same, starting from an arbitrary state of a machine.
EpSeq apply_boundary(const MealyMachine& m, int state, const EpSeq& w);

}  // namespace afftree

template <>
struct std::hash<afftree::TreeAutomorphism> {
  std::size_t operator()(const afftree::TreeAutomorphism& g) const noexcept { return g.hash(); }
};
