#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afftree/residue.hpp"

namespace afftree {

/// Polynomial over Z_d, coefficients indexed from degree 0, trailing zeros stripped.
class Poly {
public:
  explicit Poly(int modulus = 2, std::vector<int> coefficients = {});

  static Poly monomial(int modulus, std::size_t degree, int coefficient = 1);
  static Poly constant(int modulus, int c) { return monomial(modulus, 0, c); }

  int modulus() const noexcept { return d_; }
  /// Degree, with the zero polynomial having degree -1.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  int coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  const std::vector<int>& coefficients() const noexcept { return c_; }

  /// Multiplication by t^k.
  Poly shifted(std::size_t k) const;
  Poly scaled(int factor) const;
  /// Sum of the coefficients, i.e. the value at t = 1.
  int value_at_one() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;

  /// Renders e.g. "1+t+t^3"; zero renders as "0".
  std::string to_string(char var = 't') const;
  /// Accepts sums of terms `c`, `c*t`, `t^k`, `c*t^k` (also `ct^k`).
  static Poly parse(std::string_view text, int modulus, char var = 't');

  auto operator<=>(const Poly&) const = default;

private:
  void trim();

  int d_;
  std::vector<int> c_;
};

/// phi_n = 1 + t + ... + t^(n-1) over Z_2; n >= 1.
Poly phi(int n);
/// psi_p = sum_{i>=1} a_i phi_i for p = sum a_i t^i over Z_2.
Poly psi(const Poly& p);

/// Laurent polynomial over Z_d: c[0] is the coefficient of x^low.
class LaurentPoly {
public:
  explicit LaurentPoly(int modulus = 2, int low = 0, std::vector<int> coefficients = {});
  LaurentPoly(const Poly& p);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(int modulus, int exponent, int coefficient = 1);

  int modulus() const noexcept { return d_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  int low_degree() const noexcept { return low_; }
  /// Highest exponent with a nonzero coefficient (low-1 for the zero polynomial).
  int high_degree() const noexcept { return low_ + static_cast<int>(c_.size()) - 1; }
  int coeff(int exponent) const noexcept;
  const std::vector<int>& coefficients() const noexcept { return c_; }
  /// Exponents with nonzero coefficients, ascending.
  std::vector<int> support() const;

  LaurentPoly shifted(int k) const;
  LaurentPoly scaled(int factor) const;
  int value_at_one() const;
  /// Exact quotient by (1+x), or nullopt when (1+x) does not divide.
  std::optional<LaurentPoly> divided_by_one_plus_x() const;
  /// Nonnegative part as an ordinary polynomial; throws if negative exponents occur.
  Poly to_poly() const;

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  std::string to_string(char var = 'x') const;
  static LaurentPoly parse(std::string_view text, int modulus, char var = 'x');

  auto operator<=>(const LaurentPoly&) const = default;

private:
  void normalize();

  int d_;
  int low_;
  std::vector<int> c_;
};

}  // namespace afftree
