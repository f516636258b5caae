#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfq/irrep.hpp"
#include "cfq/qtorus.hpp"
#include "fixtures.hpp"

using namespace cfq;

namespace {

EdgeVector randomBalanced(const LatticeBasis& basis, std::mt19937& rng, int box) {
  std::uniform_int_distribution<int> d(-box, box);
  EdgeVector k(basis.basis.rows(), 0);
  for (int i = 0; i < basis.rank(); ++i) {
    long c = d(rng);
    EdgeVector b = basis.vec(i);
    for (size_t e = 0; e < k.size(); ++e) k[e] += c * b[e];
  }
  return k;
}

EdgeVector vecSum(const EdgeVector& a, const EdgeVector& b) {
  EdgeVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

TEST_CASE("monomial product, commutation and powers") {
  for (const char* name : {"triangle", "square", "annulus", "punctured_disc",
                           "holed_torus"}) {
    CAPTURE(name);
    Triangulation tri = loadFixture(std::string(name) + ".tri");
    QuantumTorus T(tri);
    std::mt19937 rng(20260826);
    for (int trial = 0; trial < 25; ++trial) {
      EdgeVector k1 = randomBalanced(T.basis(), rng, 2);
      EdgeVector k2 = randomBalanced(T.basis(), rng, 2);
      EdgeVector k3 = randomBalanced(T.basis(), rng, 2);
      TorusTerms a = T.monomial(k1), b = T.monomial(k2), c = T.monomial(k3);

      // Product rule against the definition.
      long p = pairing(tri, k1, k2);
      CHECK(T.equal(T.mul(a, b), T.monomial(vecSum(k1, k2), T.omega(-p))));
      // Commutation: Z^a Z^b = w^{-2(a,b)} Z^b Z^a.
      CHECK(T.equal(T.mul(a, b), T.scale(T.omega(-2 * p), T.mul(b, a))));
      // Associativity on sums of monomials.
      TorusTerms ab = T.add(a, b);
      CHECK(T.equal(T.mul(T.mul(ab, c), a), T.mul(ab, T.mul(c, a))));
    }

    // Monomial inverses and integer powers.
    EdgeVector k = randomBalanced(T.basis(), rng, 2);
    TorusTerms z = T.monomial(k);
    CHECK(T.equal(T.mul(z, T.pow(z, -1)), T.one()));
    CHECK(T.equal(T.pow(z, 3), T.mul(z, T.mul(z, z))));
    TorusTerms s = T.add(z, T.one());
    CHECK(T.equal(T.pow(s, 2), T.mul(s, s)));
  }
}

TEST_CASE("distributivity and scalar compatibility") {
  Triangulation tri = loadFixture("square.tri");
  QuantumTorus T(tri);
  std::mt19937 rng(7);
  EdgeVector k1 = randomBalanced(T.basis(), rng, 2);
  EdgeVector k2 = randomBalanced(T.basis(), rng, 2);
  TorusTerms a = T.monomial(k1, T.omega(3, 2));
  TorusTerms b = T.monomial(k2, T.omega(-1, -5));
  TorusTerms c = T.add(T.monomial(k1), T.monomial(vecSum(k1, k2)));
  CHECK(T.equal(T.mul(T.add(a, b), c), T.add(T.mul(a, c), T.mul(b, c))));
  CHECK(T.equal(T.sub(a, a), T.zero()));
  CHECK(T.isZero(T.scale(T.omega(0, 0), a)));
}

TEST_CASE("puncture and boundary monomials are central") {
  for (const char* name : {"annulus", "punctured_disc", "holed_torus",
                           "triangle"}) {
    CAPTURE(name);
    Triangulation tri = loadFixture(std::string(name) + ".tri");
    QuantumTorus T(tri);
    for (int v : tri.innerVertices()) CHECK(T.isCentral(T.punctureMonomial(v)));
    for (int b = 0; b < tri.boundaryComponentCount(); ++b) {
      CHECK(T.isCentral(T.boundaryMonomial(b)));
      CHECK(T.isCentral(T.boundaryMonomial(b, -1)));
    }
  }
}

TEST_CASE("root mode: Frobenius monomials are central, generic ones are not") {
  for (long N : {3L, 5L}) {
    CAPTURE(N);
    Triangulation tri = loadFixture("square.tri");
    QuantumTorus T(tri, N);
    std::mt19937 rng(99);
    int nonCentral = 0;
    for (int trial = 0; trial < 20; ++trial) {
      EdgeVector k = randomBalanced(T.basis(), rng, 2);
      EdgeVector kN(k.size());
      for (size_t i = 0; i < k.size(); ++i) kN[i] = N * k[i];
      CHECK(T.isCentral(T.monomial(kN)));
      if (!T.isCentral(T.monomial(k))) ++nonCentral;
    }
    CHECK(nonCentral > 0);
    CHECK(T.rankExponent() == 4);  // 2 * (3g - 3 + s + boundary) for the square
    Int expected = 1;
    for (int i = 0; i < 4; ++i) expected *= N;
    CHECK(T.rank() == expected);
  }
}

TEST_CASE("Chebyshev coefficients and the trace identity") {
  CHECK(chebyshevCoefficients(0) == std::vector<long>{2});
  CHECK(chebyshevCoefficients(1) == std::vector<long>{0, 1});
  CHECK(chebyshevCoefficients(2) == std::vector<long>{-2, 0, 1});
  CHECK(chebyshevCoefficients(3) == std::vector<long>{0, -3, 0, 1});
  CHECK(chebyshevCoefficients(5) == std::vector<long>{0, 5, 0, -5, 0, 1});

  // T_n(H + H^{-1}) = H^n + H^{-n} for an invertible central monomial H.
  Triangulation tri = loadFixture("punctured_disc.tri");
  QuantumTorus T(tri);
  int v = tri.innerVertices().at(0);
  TorusTerms H = T.punctureMonomial(v);
  TorusTerms x = T.add(H, T.pow(H, -1));
  for (long n : {2L, 3L, 5L, 7L}) {
    CAPTURE(n);
    CHECK(T.equal(chebyshevApply(T, n, x), T.add(T.pow(H, n), T.pow(H, -n))));
  }
}

namespace {

void checkIrrep(const char* name, long N, int expectDim,
                const std::vector<Cplx>& chi = {}) {
  CAPTURE(name);
  CAPTURE(N);
  Triangulation tri = loadFixture(std::string(name) + ".tri");
  QuantumTorus T(tri, N);
  Irrep rep = buildIrrep(tri, N, chi);
  CHECK(rep.dim == expectDim);

  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    EdgeVector k1 = randomBalanced(T.basis(), rng, 2);
    EdgeVector k2 = randomBalanced(T.basis(), rng, 2);
    CMat lhs = matMul(rep.evaluateMonomial(k1), rep.evaluateMonomial(k2));
    long p = pairing(tri, k1, k2);
    Cplx w = std::polar(1.0, -2.0 * std::numbers::pi *
                                 static_cast<double>(((p % N) + N) % N) /
                                 static_cast<double>(N));
    CHECK(matDistance(lhs, matScale(w, rep.evaluateMonomial(vecSum(k1, k2)))) < 1e-9);
  }
  // Enumerate one monomial per clock/shift residue class; these must give
  // dim^2 independent images.
  std::vector<CMat> images;
  std::vector<long> idx(rep.blocks.size() * 2, 0);
  for (;;) {
    EdgeVector k(tri.edgeCount(), 0);
    for (size_t l = 0; l < rep.blocks.size(); ++l)
      for (size_t e = 0; e < k.size(); ++e)
        k[e] += idx[2 * l] * rep.blocks[l].clock[e] +
                idx[2 * l + 1] * rep.blocks[l].shift[e];
    images.push_back(rep.evaluateMonomial(k));
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == rep.blocks[pos / 2].n) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  // Central elements act as scalars.
  for (int vtx : tri.innerVertices())
    CHECK_NOTHROW(scalarPart(rep.evaluate(T.punctureMonomial(vtx)), 1e-8));
  for (size_t j = 0; j < rep.frobeniusCharacter.size(); ++j) {
    Cplx want = chi.empty() ? Cplx(1) : chi[j];
    CHECK(std::abs(rep.frobeniusCharacter[j] - want) < 1e-8);
  }
  // Irreducibility: images span the full matrix algebra.
  CHECK(matrixSpanRank(images) == rep.dim * rep.dim);
}

}  // namespace

TEST_CASE("irreducible representations at odd roots of unity") {
  checkIrrep("triangle", 3, 3);
  checkIrrep("annulus", 3, 3);
  checkIrrep("punctured_disc", 3, 3);
  checkIrrep("triangle", 5, 5);
  checkIrrep("square", 3, 9);
}

TEST_CASE("irrep respects a declared Frobenius character") {
  Triangulation tri = loadFixture("triangle.tri");
  LatticeBasis basis = balancedBasis(tri);
  std::vector<Cplx> chi(basis.rank());
  for (int j = 0; j < basis.rank(); ++j)
    chi[j] = std::polar(1.0, 0.37 * (j + 1));
  Irrep rep = buildIrrep(tri, 3, chi);
  for (int j = 0; j < basis.rank(); ++j)
    CHECK(std::abs(rep.frobeniusCharacter[j] - chi[j]) < 1e-8);
  // The defining relations still hold.
  QuantumTorus T(tri, 3);
  std::mt19937 rng(5);
  EdgeVector k1 = randomBalanced(basis, rng, 2);
  EdgeVector k2 = randomBalanced(basis, rng, 2);
  long p = pairing(tri, k1, k2);
  Cplx w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(((p % 3) + 3) % 3) / 3.0);
  CHECK(matDistance(matMul(rep.evaluateMonomial(k1), rep.evaluateMonomial(k2)),
                    matScale(w, rep.evaluateMonomial(vecSum(k1, k2)))) < 1e-9);
}
