#include "afftree/residue.hpp"

#include <string>

namespace afftree {

void check_modulus(int d) {
  if (d < 2) throw Error("modulus must be at least 2, got " + std::to_string(d));
}

int inverse_mod(int v, int d) {
  // extended Euclid on (v mod d, d)
  long long r0 = d, r1 = reduce_mod(v, d), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const long long q = r0 / r1;
    long long tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1) throw Error(std::to_string(v) + " is not a unit modulo " + std::to_string(d));
  return reduce_mod(s0, d);
}

}  // namespace afftree
