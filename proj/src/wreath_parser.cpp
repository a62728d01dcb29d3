#include "afftree/wreath_parser.hpp"

#include <cctype>
#include <optional>
#include <unordered_map>

namespace afftree {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  std::size_t line_start = 0;

  int column() const { return static_cast<int>(pos - line_start) + 1; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line, column()); }

  // Skips blanks and comments but not line breaks.
  void skip_blanks() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
      } else {
        break;
      }
    }
  }
  bool at_end() const { return pos >= text.size(); }
  char peek() const { return at_end() ? '\0' : text[pos]; }
  void expect(char c) {
    skip_blanks();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string identifier() {
    skip_blanks();
    const std::size_t start = pos;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos;
    if (pos == start) fail("expected a state name");
    if (std::isdigit(static_cast<unsigned char>(text[start]))) {
      pos = start;
      fail("state names must start with a letter");
    }
    return std::string(text.substr(start, pos - start));
  }
};

struct Definition {
  std::string name;
  std::vector<std::string> sections;
  std::vector<std::pair<int, int>> section_pos;
  std::string perm;
  int perm_line = 0, perm_column = 0;
};

}  // namespace

bool WreathSystem::contains(std::string_view name) const {
  for (const auto& n : names)
    if (n == name) return true;
  return false;
}

int WreathSystem::index_of(std::string_view name) const {
  for (std::size_t q = 0; q < names.size(); ++q)
    if (names[q] == name) return static_cast<int>(q);
  throw Error("unknown state '" + std::string(name) + "'");
}

TreeAutomorphism WreathSystem::element(std::string_view name) const { return minimize(machine, index_of(name)); }

WreathSystem parse_wreath(std::string_view text) {
  Cursor cur{text};
  std::vector<Definition> defs;
  std::unordered_map<std::string, std::size_t> index;
  std::optional<std::size_t> arity;

  while (true) {
    cur.skip_blanks();
    if (cur.at_end()) break;
    if (cur.peek() == '\n') {
      ++cur.pos;
      ++cur.line;
      cur.line_start = cur.pos;
      continue;
    }
    if (cur.peek() == ';') {
      ++cur.pos;
      continue;
    }
    Definition def;
    const int name_line = cur.line, name_col = cur.column();
    def.name = cur.identifier();
    if (index.count(def.name)) throw ParseError("state '" + def.name + "' defined twice", name_line, name_col);
    cur.expect('=');
    cur.expect('(');
    while (true) {
      cur.skip_blanks();
      def.section_pos.emplace_back(cur.line, cur.column());
      def.sections.push_back(cur.identifier());
      cur.skip_blanks();
      if (cur.peek() == ',') {
        ++cur.pos;
        continue;
      }
      if (cur.peek() == ')') {
        ++cur.pos;
        break;
      }
      if (cur.peek() == '*' || cur.peek() == '^')
        cur.fail("products are not allowed inside a wreath recursion; define the product as its own state");
      cur.fail("expected ',' or ')'");
    }
    if (!arity) {
      arity = def.sections.size();
      if (*arity < 2) throw ParseError("alphabet must have at least two letters", name_line, name_col);
    } else if (def.sections.size() != *arity) {
      throw ParseError("expected " + std::to_string(*arity) + " sections, got " + std::to_string(def.sections.size()),
                       name_line, name_col);
    }
    cur.skip_blanks();
    // Optional permutation: a run of parenthesized cycles, or a name such as 's' for the long cycle.
    def.perm_line = cur.line;
    def.perm_column = cur.column();
    if (cur.peek() == '(') {
      const std::size_t start = cur.pos;
      while (cur.peek() == '(') {
        while (!cur.at_end() && cur.peek() != ')' && cur.peek() != '\n') ++cur.pos;
        if (cur.peek() != ')') cur.fail("unterminated cycle");
        ++cur.pos;
        cur.skip_blanks();
      }
      def.perm = std::string(text.substr(start, cur.pos - start));
    } else if (cur.peek() == 's' || cur.peek() == 'S') {
      ++cur.pos;
      def.perm = "s";
    }
    cur.skip_blanks();
    if (!cur.at_end() && cur.peek() != '\n' && cur.peek() != ';') cur.fail("unexpected character after definition");
    index.emplace(def.name, defs.size());
    defs.push_back(std::move(def));
  }
  if (defs.empty()) throw ParseError("no definitions", 1, 1);

  WreathSystem sys;
  sys.machine.d = static_cast<int>(*arity);
  for (const auto& def : defs) {
    std::vector<int> row;
    for (std::size_t x = 0; x < def.sections.size(); ++x) {
      const auto it = index.find(def.sections[x]);
      if (it == index.end())
        throw ParseError("undefined state '" + def.sections[x] + "'", def.section_pos[x].first, def.section_pos[x].second);
      row.push_back(static_cast<int>(it->second));
    }
    sys.machine.next.push_back(std::move(row));
    try {
      if (def.perm.empty())
        sys.machine.out.push_back(Permutation::identity(sys.machine.d));
      else if (def.perm == "s")
        sys.machine.out.push_back(Permutation::long_cycle(sys.machine.d));
      else
        sys.machine.out.push_back(Permutation::parse_cycles(def.perm, sys.machine.d));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), def.perm_line, def.perm_column + e.column() - 1);
    } catch (const Error& e) {
      throw ParseError(e.what(), def.perm_line, def.perm_column);
    }
    sys.names.push_back(def.name);
  }
  return sys;
}

TreeAutomorphism parse_element(const WreathSystem& system, std::string_view expr, std::size_t budget) {
  Cursor cur{expr};
  TreeAutomorphism result = TreeAutomorphism::identity(system.machine.d);
  bool any = false;
  while (true) {
    cur.skip_blanks();
    if (cur.at_end()) break;
    if (cur.peek() == '*') {
      if (!any) cur.fail("expected a generator");
      ++cur.pos;
      cur.skip_blanks();
    }
    const int col = cur.column();
    std::optional<TreeAutomorphism> factor;
    if (cur.peek() == '1') {
      ++cur.pos;
      factor = TreeAutomorphism::identity(system.machine.d);
    } else {
      const std::string name = cur.identifier();
      if (system.contains(name))
        factor = system.element(name);
      else if (name == "e")
        factor = TreeAutomorphism::identity(system.machine.d);
      else
        throw ParseError("undefined state '" + name + "'", 1, col);
    }
    cur.skip_blanks();
    long long exponent = 1;
    if (cur.peek() == '^') {
      ++cur.pos;
      cur.skip_blanks();
      bool negative = false;
      if (cur.peek() == '-') {
        negative = true;
        ++cur.pos;
      }
      if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.fail("expected an exponent");
      exponent = 0;
      while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        exponent = exponent * 10 + (cur.peek() - '0');
        if (exponent > 1'000'000) cur.fail("exponent too large");
        ++cur.pos;
      }
      if (negative) exponent = -exponent;
    }
    result = compose(result, power(*factor, exponent, budget), budget);
    any = true;
  }
  if (!any) throw ParseError("empty element expression", 1, 1);
  return result;
}

}  // namespace afftree
