#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "afftree/mealy.hpp"

namespace afftree {

/// Machine read from wreath-recursion definitions; state q is names[q].
struct WreathSystem {
  MealyMachine machine;
  std::vector<std::string> names;

  bool contains(std::string_view name) const;
  int index_of(std::string_view name) const;
  TreeAutomorphism element(std::string_view name) const;
};

/// Definitions `name = (n_0, ..., n_{d-1}) perm?`, separated by newlines or
/// ';'. `#` starts a comment. The arity of the first definition fixes d.
WreathSystem parse_wreath(std::string_view text);

/// Product of generator powers such as "a*c", "t^-1" or "a c^2"; "1" and "e"
/// (when not defined) denote the identity.
TreeAutomorphism parse_element(const WreathSystem& system, std::string_view expr,
                               std::size_t budget = kDefaultStateBudget);

}  // namespace afftree
