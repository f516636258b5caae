#include "cfq/irrep.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cfq {

namespace {

Cplx rootPower(long N, long k) {
  long r = k % N;
  if (r < 0) r += N;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                             static_cast<double>(N));
}

long toLong(const Int& x) {
  if (!x.fits_slong_p()) throw TorusError("coordinate too large for evaluation");
  return x.get_si();
}

/// A hyperbolic block acting on C^n with clock X = diag(q^i) and shift
/// Y e_i = e_{i+1}, satisfying X Y = q Y X for q = w^{2d}.
struct Block {
  long n;   ///< order of q
  long d;   ///< pairing divisor
  long N;
};

/// X^a Y^b on the block space, as entries (i -> q^{a i} e_{i+b}) with
/// q = w^{-2d}, so that X Y = q Y X reproduces the pairing commutation.
CMat blockMonomial(const Block& bl, long a, long b) {
  CMat m(static_cast<int>(bl.n));
  for (long i = 0; i < bl.n; ++i) {
    long j = ((i + b) % bl.n + bl.n) % bl.n;
    m.at(static_cast<int>(j), static_cast<int>(i)) =
        rootPower(bl.N, -2 * bl.d * a * i);
  }
  return m;
}

CMat kron(const CMat& x, const CMat& y) {
  CMat r(x.n * y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      for (int k = 0; k < y.n; ++k)
        for (int l = 0; l < y.n; ++l)
          r.at(i * y.n + k, j * y.n + l) = x.at(i, j) * y.at(k, l);
  return r;
}

}  // namespace

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

CMat matMul(const CMat& x, const CMat& y) {
  if (x.n != y.n) throw TorusError("matrix size mismatch");
  CMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      Cplx v = x.at(i, k);
      if (v == Cplx(0)) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

CMat matScale(Cplx c, const CMat& x) {
  CMat r = x;
  for (auto& v : r.a) v *= c;
  return r;
}

CMat matInverse(const CMat& x) {
  int n = x.n;
  CMat a = x;
  CMat inv = CMat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
    if (std::abs(a.at(piv, col)) < 1e-12) throw TorusError("singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a.at(col, j), a.at(piv, j));
      std::swap(inv.at(col, j), inv.at(piv, j));
    }
    Cplx p = a.at(col, col);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Cplx f = a.at(r, col);
      if (f == Cplx(0)) continue;
      for (int j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

CMat matPow(const CMat& x, long e) {
  CMat base = e < 0 ? matInverse(x) : x;
  if (e < 0) e = -e;
  CMat r = CMat::identity(x.n);
  while (e > 0) {
    if (e & 1) r = matMul(r, base);
    base = matMul(base, base);
    e >>= 1;
  }
  return r;
}

double matDistance(const CMat& x, const CMat& y) {
  if (x.n != y.n) throw TorusError("matrix size mismatch");
  double d = 0;
  for (size_t i = 0; i < x.a.size(); ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

Cplx scalarPart(const CMat& x, double tol) {
  Cplx s = x.at(0, 0);
  if (matDistance(x, matScale(s, CMat::identity(x.n))) > tol)
    throw TorusError("matrix is not scalar within tolerance");
  return s;
}

int matrixSpanRank(const std::vector<CMat>& mats, double tol) {
  if (mats.empty()) return 0;
  size_t len = mats[0].a.size();
  // Gauss-Jordan basis of the span: rows[i] has a leading 1 at pivots[i]
  // and zeros at all other pivot positions.
  std::vector<std::vector<Cplx>> rows;
  std::vector<size_t> pivots;
  for (const CMat& m : mats) {
    if (m.a.size() != len) throw TorusError("matrix size mismatch");
    std::vector<Cplx> v = m.a;
    for (size_t i = 0; i < rows.size(); ++i) {
      Cplx f = v[pivots[i]];
      if (f == Cplx(0)) continue;
      for (size_t j = 0; j < len; ++j) v[j] -= f * rows[i][j];
    }
    double best = 0;
    size_t bp = len;
    for (size_t j = 0; j < len; ++j)
      if (std::abs(v[j]) > best) { best = std::abs(v[j]); bp = j; }
    if (best <= tol) continue;
    Cplx piv = v[bp];
    for (size_t j = 0; j < len; ++j) {
      v[j] /= piv;
      if (std::abs(v[j]) <= tol) v[j] = 0;
    }
    v[bp] = 1;
    for (size_t i = 0; i < rows.size(); ++i) {
      Cplx f = rows[i][bp];
      if (f == Cplx(0)) continue;
      for (size_t j = 0; j < len; ++j) rows[i][j] -= f * v[j];
      rows[i][bp] = 0;
    }
    rows.push_back(std::move(v));
    pivots.push_back(bp);
  }
  return static_cast<int>(rows.size());
}

CMat Irrep::evaluateMonomial(const EdgeVector& k) const {
  std::vector<Int> m = basis.coordinates(k);
  // Z^k = w^t * prod_j Z^{b_j}^{m_j} with t = sum_{i<j} m_i m_j (b_i, b_j).
  Int t = 0;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j)
      t += m[i] * m[j] * basis.gram(static_cast<int>(i), static_cast<int>(j));
  Int tm = t % N;
  CMat r = matScale(rootPower(N, toLong(tm)), CMat::identity(dim));
  for (size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    r = matMul(r, matPow(generatorImages[j], toLong(m[j])));
  }
  return r;
}

CMat Irrep::evaluate(const TorusTerms& x) const {
  CMat r(dim);
  for (const auto& [k, c] : x) {
    CMat term = matScale(c.evalAtRoot(N), evaluateMonomial(k));
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += term.a[i];
  }
  return r;
}

Irrep buildIrrep(const Triangulation& tri, long N,
                 const std::vector<Cplx>& frobeniusCharacter) {
  if (N < 3 || N % 2 == 0) throw TorusError("root order must be an odd integer > 1");
  Irrep rep;
  rep.N = N;
  rep.tri = &tri;
  rep.basis = balancedBasis(tri);
  int n = rep.basis.rank();
  if (!frobeniusCharacter.empty() &&
      static_cast<int>(frobeniusCharacter.size()) != n)
    throw TorusError("character must have one value per basis vector");

  SkewNormalResult snf = skewNormalForm(rep.basis.gram);

  // Active hyperbolic blocks: divisor d not divisible by N.
  struct Active {
    Block bl;
    int colA, colB;  ///< columns of P carrying the clock / shift directions
  };
  std::vector<Active> active;
  std::vector<int> inertColumns;
  for (size_t l = 0; l < snf.blockDivisors.size(); ++l) {
    long d = toLong(snf.blockDivisors[l]);
    long g = std::gcd(((d % N) + N) % N, N);
    long nl = N / (g == 0 ? N : g);  // multiplicative order of w^{2d}, N odd
    Block bl{nl, d, N};
    if (nl > 1) {
      active.push_back({bl, static_cast<int>(2 * l), static_cast<int>(2 * l + 1)});
    } else {
      inertColumns.push_back(static_cast<int>(2 * l));
      inertColumns.push_back(static_cast<int>(2 * l + 1));
    }
  }
  for (int c = static_cast<int>(2 * snf.blockDivisors.size()); c < n; ++c)
    inertColumns.push_back(c);

  auto columnEdgeVector = [&](int c) {
    EdgeVector k(tri.edgeCount(), 0);
    for (int e = 0; e < tri.edgeCount(); ++e) {
      Int acc = 0;
      for (int l = 0; l < n; ++l) acc += rep.basis.basis(e, l) * snf.P(l, c);
      k[e] = toLong(acc);
    }
    return k;
  };

  long dim = 1;
  for (const Active& a : active) {
    dim *= a.bl.n;
    rep.blocks.push_back(
        {columnEdgeVector(a.colA), columnEdgeVector(a.colB), a.bl.n});
  }
  if (dim > 4096) throw TorusError("representation dimension too large");
  rep.dim = static_cast<int>(dim);

  // Coordinates of original basis vectors in the normal-form basis:
  // b_j = sum_l Pinv(l, j) u_l, where the u_l are the columns of P.
  IntMat pinv(n, n);
  {
    for (int j = 0; j < n; ++j) {
      std::vector<Int> e(n, 0);
      e[j] = 1;
      std::vector<Int> x;
      if (!solveIntegral(snf.P, e, x)) throw TorusError("normal form not unimodular");
      for (int l = 0; l < n; ++l) pinv(l, j) = x[l];
    }
  }

  auto weylProduct = [&](const std::vector<long>& y) {
    CMat m = CMat::identity(1);
    for (const Active& a : active)
      m = kron(m, blockMonomial(a.bl, y[a.colA], y[a.colB]));
    return m;
  };

  rep.generatorImages.resize(n);
  rep.frobeniusCharacter.resize(n);
  for (int j = 0; j < n; ++j) {
    std::vector<long> y(n);
    for (int l = 0; l < n; ++l) y[l] = toLong(pinv(l, j));
    CMat m0 = weylProduct(y);
    // Fix the Frobenius scalar: rho(Z^{N b_j}) = (lambda_j m0)^N must equal
    // the declared character value.
    Cplx s = scalarPart(matPow(m0, N));
    Cplx chi = frobeniusCharacter.empty() ? Cplx(1) : frobeniusCharacter[j];
    if (std::abs(chi) < 1e-12) throw TorusError("character value must be nonzero");
    Cplx lambda = std::pow(chi / s, 1.0 / static_cast<double>(N));
    rep.generatorImages[j] = matScale(lambda, m0);
    rep.frobeniusCharacter[j] = scalarPart(matPow(rep.generatorImages[j], N), 1e-6);
  }

  // Report scalars on the remaining central directions u_c (c inert) and on
  // the torsion monomials n_l * u for active blocks.
  for (int c : inertColumns)
    rep.extraCentralScalars.push_back(
        scalarPart(rep.evaluateMonomial(columnEdgeVector(c)), 1e-6));

  return rep;
}

}  // namespace cfq
