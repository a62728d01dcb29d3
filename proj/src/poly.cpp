#include "afftree/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace afftree {

namespace {

std::vector<int> reduced(std::vector<int> c, int d) {
  for (int& v : c) v = reduce_mod(v, d);
  return c;
}

// Parses "c*v^k" style sums into exponent -> coefficient. Negative exponents
// are accepted; callers reject them where they make no sense.
std::map<int, long long> parse_terms(std::string_view text, char var) {
  std::map<int, long long> terms;
  std::size_t i = 0;
  auto col = [&] { return static_cast<int>(i) + 1; };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](long long& out) {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) return false;
    out = std::stoll(std::string(text.substr(start, i - start)));
    return true;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty polynomial", 1, 1);
  bool first = true;
  while (true) {
    skip_ws();
    long long sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", 1, col());
    }
    first = false;
    long long coef = 1;
    bool have_coef = read_int(coef);
    skip_ws();
    if (have_coef && i < text.size() && text[i] == '*') {
      ++i;
      skip_ws();
      if (i >= text.size() || text[i] != var) throw ParseError(std::string("expected '") + var + "'", 1, col());
    }
    int exponent = 0;
    if (i < text.size() && text[i] == var) {
      ++i;
      exponent = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        long long e_sign = 1;
        if (i < text.size() && text[i] == '-') {
          e_sign = -1;
          ++i;
        }
        long long e = 0;
        if (!read_int(e)) throw ParseError("expected exponent", 1, col());
        exponent = static_cast<int>(e_sign * e);
      }
    } else if (!have_coef) {
      throw ParseError("expected a term", 1, col());
    }
    terms[exponent] += sign * coef;
    skip_ws();
    if (i == text.size()) break;
  }
  return terms;
}

std::string render_terms(const std::vector<std::pair<int, int>>& terms, char var) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [e, c] : terms) {
    if (!first) os << '+';
    first = false;
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << var;
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Poly

Poly::Poly(int modulus, std::vector<int> coefficients) : d_(modulus), c_(reduced(std::move(coefficients), modulus)) {
  check_modulus(d_);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(int modulus, std::size_t degree, int coefficient) {
  std::vector<int> c(degree + 1, 0);
  c[degree] = coefficient;
  return Poly(modulus, std::move(c));
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  std::vector<int> c(k, 0);
  c.insert(c.end(), c_.begin(), c_.end());
  return Poly(d_, std::move(c));
}

Poly Poly::scaled(int factor) const {
  std::vector<int> c = c_;
  for (int& v : c) v = reduce_mod(static_cast<long long>(v) * factor, d_);
  return Poly(d_, std::move(c));
}

int Poly::value_at_one() const {
  long long s = 0;
  for (int v : c_) s += v;
  return reduce_mod(s, d_);
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.d_ != b.d_) throw ModulusMismatch(a.d_, b.d_);
  std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Poly(a.d_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const { return scaled(-1); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.d_ != b.d_) throw ModulusMismatch(a.d_, b.d_);
  if (a.is_zero() || b.is_zero()) return Poly(a.d_);
  std::vector<long long> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<long long>(a.c_[i]) * b.c_[j]) % a.d_;
  }
  return Poly(a.d_, std::vector<int>(acc.begin(), acc.end()));
}

std::string Poly::to_string(char var) const {
  std::vector<std::pair<int, int>> terms;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) terms.emplace_back(static_cast<int>(i), c_[i]);
  return render_terms(terms, var);
}

Poly Poly::parse(std::string_view text, int modulus, char var) {
  check_modulus(modulus);
  const auto terms = parse_terms(text, var);
  if (terms.begin()->first < 0) throw ParseError("negative exponent in a polynomial", 1, 1);
  std::vector<int> c(static_cast<std::size_t>(terms.rbegin()->first) + 1, 0);
  for (auto [e, v] : terms) c[static_cast<std::size_t>(e)] = reduce_mod(v, modulus);
  return Poly(modulus, std::move(c));
}

Poly phi(int n) {
  if (n < 1) throw Error("phi_n needs n >= 1");
  return Poly(2, std::vector<int>(static_cast<std::size_t>(n), 1));
}

Poly psi(const Poly& p) {
  if (p.modulus() != 2) throw Error("psi is defined over Z_2");
  // coefficient j of psi_p is the parity of the nonzero a_i with i > j
  const auto& a = p.coefficients();
  std::vector<int> c(a.empty() ? 0 : a.size() - 1, 0);
  int parity = 0;
  for (std::size_t i = a.size(); i-- > 1;) {
    parity ^= a[i];
    c[i - 1] = parity;
  }
  return Poly(2, std::move(c));
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(int modulus, int low, std::vector<int> coefficients)
    : d_(modulus), low_(low), c_(reduced(std::move(coefficients), modulus)) {
  check_modulus(d_);
  normalize();
}

LaurentPoly::LaurentPoly(const Poly& p) : LaurentPoly(p.modulus(), 0, p.coefficients()) {}

void LaurentPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
  low_ += static_cast<int>(lead);
  if (c_.empty()) low_ = 0;
}

LaurentPoly LaurentPoly::monomial(int modulus, int exponent, int coefficient) {
  return LaurentPoly(modulus, exponent, {coefficient});
}

int LaurentPoly::coeff(int exponent) const noexcept {
  if (exponent < low_ || exponent > high_degree()) return 0;
  return c_[static_cast<std::size_t>(exponent - low_)];
}

std::vector<int> LaurentPoly::support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) s.push_back(low_ + static_cast<int>(i));
  return s;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  if (is_zero()) return *this;
  return LaurentPoly(d_, low_ + k, c_);
}

LaurentPoly LaurentPoly::scaled(int factor) const {
  std::vector<int> c = c_;
  for (int& v : c) v = reduce_mod(static_cast<long long>(v) * factor, d_);
  return LaurentPoly(d_, low_, std::move(c));
}

int LaurentPoly::value_at_one() const {
  long long s = 0;
  for (int v : c_) s += v;
  return reduce_mod(s, d_);
}

std::optional<LaurentPoly> LaurentPoly::divided_by_one_plus_x() const {
  if (is_zero()) return *this;
  // synthetic division from the low end: c_k = r_k + r_{k-1}
  std::vector<int> r(c_.size() - 1, 0);
  int prev = 0;
  for (std::size_t k = 0; k + 1 < c_.size(); ++k) {
    r[k] = reduce_mod(c_[k] - prev, d_);
    prev = r[k];
  }
  if (reduce_mod(c_.back() - prev, d_) != 0) return std::nullopt;
  return LaurentPoly(d_, low_, std::move(r));
}

Poly LaurentPoly::to_poly() const {
  if (is_zero()) return Poly(d_);
  if (low_ < 0) throw Error("Laurent polynomial has negative exponents");
  std::vector<int> c(static_cast<std::size_t>(low_), 0);
  c.insert(c.end(), c_.begin(), c_.end());
  return Poly(d_, std::move(c));
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.d_ != b.d_) throw ModulusMismatch(a.d_, b.d_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int low = std::min(a.low_, b.low_);
  const int high = std::max(a.high_degree(), b.high_degree());
  std::vector<int> c(static_cast<std::size_t>(high - low + 1), 0);
  for (int e = low; e <= high; ++e) c[static_cast<std::size_t>(e - low)] = a.coeff(e) + b.coeff(e);
  return LaurentPoly(a.d_, low, std::move(c));
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.d_ != b.d_) throw ModulusMismatch(a.d_, b.d_);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.d_);
  std::vector<long long> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<long long>(a.c_[i]) * b.c_[j]) % a.d_;
  return LaurentPoly(a.d_, a.low_ + b.low_, std::vector<int>(acc.begin(), acc.end()));
}

std::string LaurentPoly::to_string(char var) const {
  std::vector<std::pair<int, int>> terms;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) terms.emplace_back(low_ + static_cast<int>(i), c_[i]);
  return render_terms(terms, var);
}

LaurentPoly LaurentPoly::parse(std::string_view text, int modulus, char var) {
  check_modulus(modulus);
  const auto terms = parse_terms(text, var);
  const int low = terms.begin()->first;
  std::vector<int> c(static_cast<std::size_t>(terms.rbegin()->first - low) + 1, 0);
  for (auto [e, v] : terms) c[static_cast<std::size_t>(e - low)] = reduce_mod(v, modulus);
  return LaurentPoly(modulus, low, std::move(c));
}

}  // namespace afftree
