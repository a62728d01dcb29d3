#include "afftree/series.hpp"

#include <unordered_map>

#include "afftree/error.hpp"

namespace afftree {

namespace {

struct WindowHash {
  std::size_t operator()(const std::vector<int>& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : w) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

RationalSeries::RationalSeries(Poly numerator, Poly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.modulus() != den_.modulus()) throw ModulusMismatch(num_.modulus(), den_.modulus());
  if (!is_unit_mod(den_.coeff(0), den_.modulus()))
    throw Error("denominator constant term must be a unit in Z_" + std::to_string(den_.modulus()));
}

RationalSeries::RationalSeries(Poly polynomial)
    : RationalSeries(polynomial, Poly::constant(polynomial.modulus(), 1)) {}

std::vector<int> RationalSeries::coefficients(std::size_t n) const {
  const int d = modulus();
  const int inv0 = inverse_mod(den_.coeff(0), d);
  const auto& den = den_.coefficients();
  std::vector<int> c(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    long long acc = num_.coeff(k);
    for (std::size_t j = 1; j < den.size() && j <= k; ++j) acc -= static_cast<long long>(den[j]) * c[k - j];
    c[k] = reduce_mod(reduce_mod(acc, d) * static_cast<long long>(inv0), d);
  }
  return c;
}

RationalSeries RationalSeries::shift() const {
  const int d = modulus();
  const int c0 = reduce_mod(static_cast<long long>(num_.coeff(0)) * inverse_mod(den_.coeff(0), d), d);
  const Poly rest = num_ - den_.scaled(c0);
  const auto& rc = rest.coefficients();
  std::vector<int> shifted(rc.empty() ? rc.begin() : rc.begin() + 1, rc.end());
  return RationalSeries(Poly(d, std::move(shifted)), den_);
}

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
  if (a.den_ == b.den_) return RationalSeries(a.num_ + b.num_, a.den_);
  return RationalSeries(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) {
  return a + RationalSeries(-b.num_, b.den_);
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  return RationalSeries(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator==(const RationalSeries& a, const RationalSeries& b) {
  return a.modulus() == b.modulus() && a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalSeries::to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

EpSeq series_to_epseq(const RationalSeries& f) {
  const int d = f.modulus();
  const auto& den = f.denominator().coefficients();
  const auto& num = f.numerator().coefficients();
  const int inv0 = inverse_mod(den[0], d);
  const std::size_t D = den.size() - 1;
  if (D == 0) {
    std::vector<int> c(num.begin(), num.end());
    for (int& v : c) v = reduce_mod(static_cast<long long>(v) * inv0, d);
    return EpSeq::finite(d, std::move(c));
  }

  std::vector<int> c;
  auto next_coefficient = [&] {
    const std::size_t k = c.size();
    long long acc = k < num.size() ? num[k] : 0;
    for (std::size_t j = 1; j <= D && j <= k; ++j) acc -= static_cast<long long>(den[j]) * c[k - j];
    c.push_back(reduce_mod(reduce_mod(acc, d) * static_cast<long long>(inv0), d));
  };

  // Beyond the numerator the last D coefficients determine everything that
  // follows, so the first repeated window closes the cycle.
  const std::size_t start = std::max(num.size(), D);
  while (c.size() < start) next_coefficient();
  std::unordered_map<std::vector<int>, std::size_t, WindowHash> seen;
  for (std::size_t n = start;; ++n) {
    std::vector<int> window(c.end() - static_cast<std::ptrdiff_t>(D), c.end());
    auto [it, inserted] = seen.emplace(std::move(window), n);
    if (!inserted) {
      const std::size_t first = it->second;
      std::vector<int> pre(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(first - D));
      std::vector<int> per(c.begin() + static_cast<std::ptrdiff_t>(first - D), c.begin() + static_cast<std::ptrdiff_t>(n - D));
      return EpSeq(d, std::move(pre), std::move(per));
    }
    next_coefficient();
  }
}

Poly one_minus_t_pow(int modulus, std::size_t P) {
  std::vector<int> c(P + 1, 0);
  c[0] = 1;
  c[P] = reduce_mod(c[P] - 1, modulus);
  return Poly(modulus, std::move(c));
}

Poly epseq_numerator_over(const EpSeq& s, std::size_t P) {
  const int d = s.modulus();
  const std::size_t p = s.period().size();
  if (P == 0 || P % p != 0) throw Error("period length must divide the common period");
  const std::size_t m = s.preperiod().size();
  Poly pre(d, s.preperiod());
  std::vector<int> tail(m + P, 0);
  for (std::size_t i = 0; i < P; ++i) tail[m + i] = s.period()[i % p];
  return pre * one_minus_t_pow(d, P) + Poly(d, std::move(tail));
}

RationalSeries epseq_to_series(const EpSeq& s) {
  const std::size_t p = s.period().size();
  return RationalSeries(epseq_numerator_over(s, p), one_minus_t_pow(s.modulus(), p));
}

}  // namespace afftree
