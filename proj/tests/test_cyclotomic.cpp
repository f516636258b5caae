#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfq/cyclotomic.hpp"

using cfq::Scalar;
using cfq::cyclotomicPolynomial;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomicPolynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomicPolynomial(2) == std::vector<long>{1, 1});
  CHECK(cyclotomicPolynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomicPolynomial(5) == std::vector<long>{1, 1, 1, 1, 1});
  CHECK(cyclotomicPolynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomicPolynomial(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
  CHECK(cyclotomicPolynomial(15) ==
        std::vector<long>{1, -1, 0, 1, -1, 1, 0, -1, 1});
}

TEST_CASE("generic arithmetic") {
  Scalar a = Scalar::omegaPower(2) + Scalar::omegaPower(-3, 4);
  Scalar b = Scalar::omegaPower(1, -2);
  Scalar p = a * b;
  CHECK(p.terms() == std::map<long, long>{{3, -2}, {-2, -8}});
  CHECK((a - a).isZero());
  CHECK(a + b == b + a);
  CHECK(a * b == b * a);
  long k, c;
  CHECK(Scalar::omegaPower(-7, -1).isUnitMonomial(k, c));
  CHECK(k == -7);
  CHECK(c == -1);
  CHECK(!a.isUnitMonomial(k, c));
  CHECK(Scalar::omegaPower(5).unitInverse() == Scalar::omegaPower(-5));
  CHECK((Scalar::omegaPower(5, -1).unitInverse() * Scalar::omegaPower(5, -1)) ==
        Scalar::integer(1));
}

TEST_CASE("root mode reduces modulo Phi_N") {
  // w^3 = 1 at N = 3 and 1 + w + w^2 = 0.
  CHECK(Scalar::omegaPowerRoot(3, 3) == Scalar::omegaPowerRoot(3, 0));
  Scalar s = Scalar::omegaPowerRoot(3, 0) + Scalar::omegaPowerRoot(3, 1) +
             Scalar::omegaPowerRoot(3, 2);
  CHECK(s.isZero());
  // Phi_9(w) = 0: w^6 = -w^3 - 1.
  CHECK(Scalar::omegaPowerRoot(9, 6) ==
        Scalar::zeroRoot(9) - Scalar::omegaPowerRoot(9, 3) - Scalar::omegaPowerRoot(9, 0));
  // Unit inverses exist for all powers.
  for (long N : {3L, 5L, 9L})
    for (long k = 0; k < N; ++k)
      CHECK(Scalar::omegaPowerRoot(N, k) * Scalar::omegaPowerRoot(N, k).unitInverse() ==
            Scalar::omegaPowerRoot(N, 0));
}

TEST_CASE("conversion generic -> root is a ring map") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> kd(-10, 10), cd(-3, 3);
  for (long N : {3L, 5L, 9L}) {
    for (int trial = 0; trial < 50; ++trial) {
      Scalar a, b;
      for (int i = 0; i < 4; ++i) {
        a = a + Scalar::omegaPower(kd(rng), cd(rng));
        b = b + Scalar::omegaPower(kd(rng), cd(rng));
      }
      CHECK((a * b).toRoot(N) == a.toRoot(N) * b.toRoot(N));
      CHECK((a + b).toRoot(N) == a.toRoot(N) + b.toRoot(N));
      // Numerical agreement.
      auto lhs = a.evalAtRoot(N) * b.evalAtRoot(N);
      auto rhs = (a * b).toRoot(N).evalAtRoot(N);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("mode mixing is a type error") {
  Scalar g = Scalar::omegaPower(1);
  Scalar r = Scalar::omegaPowerRoot(3, 1);
  CHECK_THROWS_AS((void)(g + r), cfq::ScalarError);
  CHECK_THROWS_AS((void)(g * r), cfq::ScalarError);
  CHECK_THROWS_AS((void)(r * Scalar::omegaPowerRoot(5, 1)), cfq::ScalarError);
  CHECK_THROWS_AS(r.toRoot(5), cfq::ScalarError);
}
