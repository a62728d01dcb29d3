#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "afftree/epseq.hpp"
#include "afftree/poly.hpp"

namespace afftree {

/// Rational power series numerator/denominator in Z_d[[t]]; the denominator's
/// constant term must be a unit. Equality is by cross-multiplication.
class RationalSeries {
public:
  RationalSeries(Poly numerator, Poly denominator);
  explicit RationalSeries(Poly polynomial);

  int modulus() const noexcept { return num_.modulus(); }
  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }

  /// First n coefficients by long division.
  std::vector<int> coefficients(std::size_t n) const;
  /// The series shift (c(t) - c_0) / t.
  RationalSeries shift() const;

  friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
  friend bool operator==(const RationalSeries& a, const RationalSeries& b);

  std::string to_string() const;

private:
  Poly num_;
  Poly den_;
};

/// Coefficient sequence of f, detected exactly from the state of its linear recurrence.
EpSeq series_to_epseq(const RationalSeries& f);
/// pre(t) + t^m per(t) / (1 - t^p).
RationalSeries epseq_to_series(const EpSeq& s);
/// Numerator N with s = N / (1 - t^P); requires the period length of s to divide P.
Poly epseq_numerator_over(const EpSeq& s, std::size_t P);
/// 1 - t^P.
Poly one_minus_t_pow(int modulus, std::size_t P);

}  // namespace afftree
