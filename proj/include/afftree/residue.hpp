#pragma once

#include <compare>
#include <numeric>

#include "afftree/error.hpp"

namespace afftree {

inline int reduce_mod(long long v, int d) {
  long long r = v % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

inline bool is_unit_mod(int v, int d) { return std::gcd(reduce_mod(v, d), d) == 1; }

/// Multiplicative inverse in Z_d; throws Error when v is not a unit.
int inverse_mod(int v, int d);

void check_modulus(int d);

/// An element of Z_d.
struct Residue {
  int value = 0;
  int modulus = 2;

  Residue() = default;
  Residue(long long v, int d) : value(reduce_mod(v, d)), modulus(d) { check_modulus(d); }

  bool is_unit() const { return is_unit_mod(value, modulus); }
  Residue inverse() const { return {inverse_mod(value, modulus), modulus}; }

  friend Residue operator+(Residue a, Residue b) {
    if (a.modulus != b.modulus) throw ModulusMismatch(a.modulus, b.modulus);
    return {a.value + b.value, a.modulus};
  }
  friend Residue operator-(Residue a, Residue b) {
    if (a.modulus != b.modulus) throw ModulusMismatch(a.modulus, b.modulus);
    return {a.value - b.value, a.modulus};
  }
  friend Residue operator*(Residue a, Residue b) {
    if (a.modulus != b.modulus) throw ModulusMismatch(a.modulus, b.modulus);
    return {static_cast<long long>(a.value) * b.value, a.modulus};
  }
  Residue operator-() const { return {-value, modulus}; }

  auto operator<=>(const Residue&) const = default;
};

}  // namespace afftree
