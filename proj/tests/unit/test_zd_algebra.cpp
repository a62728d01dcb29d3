#include <set>

#include "afftree/epseq.hpp"
#include "afftree/matrix.hpp"
#include "afftree/poly.hpp"
#include "afftree/series.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace afftree;

TEST_CASE("residue arithmetic") {
  const Residue a{4, 7}, b{5, 7};
  CHECK((a + b).value == 2);
  CHECK((a - b).value == 6);
  CHECK((a * b).value == 6);
  CHECK((-a).value == 3);
  CHECK(a.inverse().value == 2);
  CHECK_FALSE(Residue{2, 6}.is_unit());
  CHECK_THROWS_AS(Residue(2, 6).inverse(), Error);
  CHECK_THROWS_AS(a + Residue(1, 5), ModulusMismatch);
  CHECK(reduce_mod(-13, 5) == 2);
  for (int d = 2; d <= 12; ++d)
    for (int v = 1; v < d; ++v)
      if (is_unit_mod(v, d)) CHECK((v * inverse_mod(v, d)) % d == 1);
}

TEST_CASE("epseq entries") {
  const EpSeq b(2, {}, {1, 0, 0, 1, 1, 1, 0, 0});
  CHECK(b.at(1) == 1);
  CHECK(b.at(9) == 1);
  CHECK(b.at(12) == 1);
  CHECK(b.at(7) == 0);
  CHECK(EpSeq::zero(2).at(57) == 0);
  // 1,0,1,0,1,... : position 4 holds 0
  const EpSeq s(2, {1}, {0, 1});
  CHECK(s.prefix(5) == std::vector<int>{1, 0, 1, 0, 1});
  CHECK(s.at(4) == 0);
  CHECK_THROWS(s.at(0));
}

TEST_CASE("epseq canonical form") {
  // 1,(0,1)^inf is (1,0)^inf
  const EpSeq s(2, {1}, {0, 1});
  CHECK(s.preperiod().empty());
  CHECK(s.period() == std::vector<int>{1, 0});
  const EpSeq t(3, {2, 1, 1}, {1, 1, 1});
  CHECK(t.preperiod() == std::vector<int>{2});
  CHECK(t.period() == std::vector<int>{1});
  CHECK(EpSeq(5, {7, -1}, {5}).preperiod() == std::vector<int>{2, 4});
  CHECK_THROWS(EpSeq(2, {1}, {}));
}

TEST_CASE("epseq shift") {
  CHECK(EpSeq(2, {}, {1, 0, 0, 1, 1, 1, 0, 0}).shift() == EpSeq(2, {}, {0, 0, 1, 1, 1, 0, 0, 1}));
  CHECK(EpSeq(2, {1}, {0}).shift() == EpSeq::zero(2));
  CHECK(EpSeq(2, {}, {1, 0}).shift() == EpSeq(2, {}, {0, 1}));
  CHECK(EpSeq(2, {1, 1}, {0, 1}).shift(5) == EpSeq(2, {}, {1, 0}));
}

TEST_CASE("epseq addition") {
  const EpSeq s(2, {1}, {0, 1});
  CHECK(s + EpSeq::zero(2) == s);
  CHECK(EpSeq(2, {}, {1}) + EpSeq(2, {}, {1}) == EpSeq::zero(2));
  // pointwise: (1,0,1,0,...) + (1,1,1,...) = (0,1,0,1,...)
  const EpSeq sum = s + EpSeq(2, {}, {1, 1});
  CHECK(sum.prefix(8) == std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(sum == EpSeq(2, {0}, {1, 0}));
  CHECK_THROWS_AS(s + EpSeq::zero(3), ModulusMismatch);
  CHECK(EpSeq(3, {1}, {2}).scaled(2) == EpSeq(3, {2}, {1}));
  CHECK(EpSeq(3, {1}, {2}) - EpSeq(3, {1}, {2}) == EpSeq::zero(3));
}

TEST_CASE("epseq text form round trip") {
  oracle::Rng rng(11);
  for (int d : {2, 3, 4, 5}) {
    for (int k = 0; k < 50; ++k) {
      const EpSeq s = oracle::random_epseq(rng, d, 5, 5);
      CHECK(EpSeq::parse(s.to_string(), d) == s);
    }
  }
  CHECK(EpSeq(2, {1, 1}, {1, 0, 0}).to_string() == "pre:1,1|per:1,0,0");
  CHECK(EpSeq::zero(2).to_string() == "pre:|per:0");
  CHECK(EpSeq::parse("pre:|per:1,1", 2) == EpSeq(2, {}, {1}));
  CHECK_THROWS_AS(EpSeq::parse("per:1", 2), ParseError);
  CHECK_THROWS_AS(EpSeq::parse("pre:1|per:", 2), ParseError);
  CHECK_THROWS_AS(EpSeq::parse("pre:1;per:0", 2), ParseError);
  CHECK_THROWS_AS(EpSeq::parse("pre:x|per:0", 2), ParseError);
}

TEST_CASE("epseq canonical uniqueness") {
  // equal prefixes to 4*(pre+per) iff equal fields
  oracle::Rng rng(5);
  for (int d : {2, 3}) {
    std::vector<EpSeq> pool;
    for (int k = 0; k < 150; ++k) pool.push_back(oracle::random_epseq(rng, d, 3, 3));
    for (const auto& a : pool)
      for (const auto& b : pool) {
        const std::size_t n = 4 * (a.preperiod().size() + a.period().size() + b.preperiod().size() + b.period().size());
        CHECK((a.prefix(n) == b.prefix(n)) == (a == b));
      }
  }
}

TEST_CASE("epseq shift compatibility") {
  oracle::Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const int d = oracle::uniform(rng, 2, 6);
    const EpSeq s = oracle::random_epseq(rng, d, 6, 6);
    const EpSeq t = s.shift();
    for (std::size_t i = 1; i <= 100; ++i) REQUIRE(t.at(i) == s.at(i + 1));
  }
}

TEST_CASE("phi and psi") {
  CHECK(phi(1) == Poly(2, {1}));
  CHECK(phi(3) == Poly(2, {1, 1, 1}));
  for (int n = 1; n <= 20; ++n) CHECK(phi(n).degree() == n - 1);
  CHECK_THROWS(phi(0));
  CHECK(psi(Poly(2)).is_zero());
  CHECK(psi(Poly::monomial(2, 1)) == Poly(2, {1}));
  CHECK(psi(Poly(2, {1, 0, 1})) == Poly(2, {1, 1}));
  CHECK(psi(Poly(2, {1})).is_zero());
  // every nonzero p of degree <= 12
  for (unsigned mask = 1; mask < (1u << 13); ++mask) {
    std::vector<int> c;
    for (int i = 0; i < 13; ++i) c.push_back((mask >> i) & 1);
    const Poly p(2, c);
    REQUIRE(psi(p).degree() == p.degree() - 1);
    // direct sum: coefficient j counts a_i for i > j
    for (int j = 0; j <= 12; ++j) {
      int s = 0;
      for (int i = j + 1; i <= 12; ++i) s ^= c[static_cast<std::size_t>(i)];
      REQUIRE(psi(p).coeff(static_cast<std::size_t>(j)) == s);
    }
  }
}

TEST_CASE("polynomial text form") {
  CHECK(Poly(2, {1, 1, 0, 1}).to_string() == "1+t+t^3");
  CHECK(Poly(2).to_string() == "0");
  CHECK(Poly::parse("1+t+t^3", 2) == Poly(2, {1, 1, 0, 1}));
  CHECK(Poly::parse("2t^2 + 1", 3) == Poly(3, {1, 0, 2}));
  CHECK(Poly::parse("t+t", 2).is_zero());
  CHECK_THROWS_AS(Poly::parse("1+", 2), ParseError);
  CHECK(LaurentPoly::parse("x^-2+1", 2) == LaurentPoly(2, -2, {1, 0, 1}));
  CHECK(LaurentPoly(2, -1, {1, 1}).to_string() == "x^-1+1");
}

TEST_CASE("laurent division by 1+x") {
  const LaurentPoly p(2, 0, {1, 0, 1});
  const auto r = p.divided_by_one_plus_x();
  REQUIRE(r);
  CHECK(*r == LaurentPoly(2, 0, {1, 1}));
  CHECK_FALSE(LaurentPoly(2, 0, {1, 1, 1}).divided_by_one_plus_x());
  CHECK(LaurentPoly(2).divided_by_one_plus_x() == LaurentPoly(2));
  oracle::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const LaurentPoly r0(2, oracle::uniform(rng, -5, 5), oracle::random_letters(rng, 2, 7));
    const LaurentPoly prod = r0 * LaurentPoly(2, 0, {1, 1});
    const auto q = prod.divided_by_one_plus_x();
    REQUIRE(q);
    CHECK(*q == r0);
  }
}

TEST_CASE("rational series to eventually periodic") {
  CHECK(series_to_epseq(RationalSeries(Poly(2, {1}), Poly(2, {1, 1}))) == EpSeq(2, {}, {1}));
  CHECK(series_to_epseq(RationalSeries(Poly(2, {1, 1}))) == EpSeq(2, {1, 1}, {0}));
  CHECK(series_to_epseq(RationalSeries(Poly(2, {0, 1}), Poly(2, {1, 1, 1}))) == EpSeq(2, {}, {0, 1, 1}));
  CHECK_THROWS(RationalSeries(Poly(2, {1}), Poly(2, {0, 1})));
  oracle::Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    const int d = oracle::uniform(rng, 2, 6);
    auto num = oracle::random_letters(rng, d, static_cast<std::size_t>(oracle::uniform(rng, 0, 6)));
    auto den = oracle::random_letters(rng, d, static_cast<std::size_t>(oracle::uniform(rng, 1, 6)));
    den[0] = oracle::random_unit(rng, d);
    const EpSeq s = series_to_epseq(RationalSeries(Poly(d, num), Poly(d, den)));
    CHECK(s.prefix(200) == oracle::divide_series(num, den, d, 200));
  }
}

TEST_CASE("rational round trip and products") {
  oracle::Rng rng(19);
  for (int k = 0; k < 200; ++k) {
    const int d = oracle::uniform(rng, 2, 5);
    const EpSeq s = oracle::random_epseq(rng, d, 5, 5);
    CHECK(series_to_epseq(epseq_to_series(s)) == s);
    const EpSeq r = oracle::random_epseq(rng, d, 5, 5);
    const EpSeq prod = series_to_epseq(epseq_to_series(s) * epseq_to_series(r));
    // convolution of prefixes
    const auto a = s.prefix(200), b = r.prefix(200);
    for (std::size_t n = 0; n < 200; ++n) {
      long long c = 0;
      for (std::size_t i = 0; i <= n; ++i) c += a[i] * b[n - i];
      REQUIRE(prod.at(n + 1) == static_cast<int>(c % d));
    }
  }
  CHECK(RationalSeries(Poly(2, {1}), Poly(2, {1, 1})) == RationalSeries(Poly(2, {1, 1}), Poly(2, {1, 0, 1})));
}

TEST_CASE("matrix rows and identity") {
  const auto I = DiagPeriodicMatrix::identity(2);
  CHECK(I.row(3) == EpSeq(2, {0, 0, 1}, {0}));
  CHECK(I.shift() == I);
  CHECK(I.is_identity());
  CHECK_THROWS(DiagPeriodicMatrix(2, {}, {EpSeq(2, {0}, {1})}));
  CHECK_THROWS(DiagPeriodicMatrix(4, {}, {EpSeq(4, {2}, {0})}));
  const EpSeq r1(2, {1}, {1});
  const EpSeq u(2, {1}, {0, 1});
  const DiagPeriodicMatrix A(2, {r1}, {u});
  CHECK(A.shift() == DiagPeriodicMatrix(2, {}, {u}));
  CHECK(A.entry(1, 4) == 1);
  CHECK(A.entry(4, 1) == 0);
  CHECK(A.entry(2, 3) == 0);
  CHECK(A.entry(2, 4) == 1);
}

TEST_CASE("matrix with period two under shift") {
  const EpSeq odd(2, {1}, {1, 0});
  const EpSeq even(2, {1}, {1, 1, 1, 0});
  const DiagPeriodicMatrix A(2, {}, {odd, even});
  CHECK(A.shift(2) == A);
  CHECK(A.row(1) == EpSeq(2, {1}, {1, 0}));
  CHECK(A.row(2) == EpSeq(2, {0, 1}, {1, 1, 1, 0}));
  CHECK(A.row(3) == EpSeq(2, {0, 0, 1}, {1, 0}));
}

TEST_CASE("matrix canonical form") {
  const EpSeq u(2, {1}, {0, 1});
  CHECK(DiagPeriodicMatrix(2, {u, u}, {u, u, u}) == DiagPeriodicMatrix(2, {}, {u}));
  oracle::Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto A = oracle::random_matrix(rng, 2, 2, 2);
    const auto B = oracle::random_matrix(rng, 2, 2, 2);
    CHECK((oracle::corner_of(A, 24) == oracle::corner_of(B, 24)) == (A == B));
  }
}

TEST_CASE("vector times matrix") {
  oracle::Rng rng(29);
  for (int d : {2, 3, 4}) {
    const auto I = DiagPeriodicMatrix::identity(d);
    for (int k = 0; k < 60; ++k) {
      const auto A = oracle::random_matrix(rng, d);
      const auto b = oracle::random_epseq(rng, d);
      CHECK(mat_vec(EpSeq::zero(d), A) == EpSeq::zero(d));
      CHECK(mat_vec(b, I) == b);
      CHECK(mat_vec(EpSeq::basis(d, 1), A) == A.row(1));
      CHECK(mat_vec(EpSeq::basis(d, 3), A) == A.row(3));
      const EpSeq prod = mat_vec(b, A);
      CHECK(prod.prefix(60) == oracle::affine_prefix(A, EpSeq::zero(d), b, 60));
    }
  }
}

TEST_CASE("matrix product") {
  oracle::Rng rng(31);
  for (int d : {2, 3}) {
    const auto I = DiagPeriodicMatrix::identity(d);
    for (int k = 0; k < 60; ++k) {
      const auto A = oracle::random_matrix(rng, d);
      const auto B = oracle::random_matrix(rng, d);
      const auto C = oracle::random_matrix(rng, d);
      CHECK(mat_mul(A, I) == A);
      CHECK(mat_mul(I, A) == A);
      const auto AB = mat_mul(A, B);
      CHECK(oracle::corner_of(AB, 40) == oracle::grid_mul(oracle::corner_of(A, 40), oracle::corner_of(B, 40), d));
      const auto left = mat_mul(AB, C);
      const auto right = mat_mul(A, mat_mul(B, C));
      CHECK(left == right);
      for (std::size_t i = 1; i <= 40; ++i) CHECK(is_unit_mod(left.entry(i, i), d));
      CHECK_LE(AB.period(), lcm_size(A.period(), B.period()));
    }
  }
  CHECK_THROWS_AS(mat_mul(DiagPeriodicMatrix::identity(2), DiagPeriodicMatrix::identity(3)), ModulusMismatch);
}
