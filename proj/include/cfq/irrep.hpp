/**
 * @file irrep.hpp
 *
 * Numerical irreducible representations of the balanced quantum torus at an
 * odd root of unity w = exp(2*pi*i/N), built from a skew normal form of the
 * pairing Gram matrix: each hyperbolic block of divisor d with
 * n = N/gcd(d,N) > 1 contributes a clock/shift pair on C^n, and the
 * representation space is the tensor product of the blocks.
 *
 * The central character is pinned on the Frobenius monomials Z^{N b_j}
 * (default value 1); scalars for the remaining central directions follow
 * from the construction and are reported for inspection.
 */
#ifndef CFQ_IRREP_HPP
#define CFQ_IRREP_HPP

#include <complex>
#include <vector>

#include "cfq/qtorus.hpp"

namespace cfq {

using Cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
struct CMat {
  int n = 0;
  std::vector<Cplx> a;

  CMat() = default;
  explicit CMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, Cplx(0)) {}
  Cplx& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  Cplx at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static CMat identity(int dim);
};

CMat matMul(const CMat& x, const CMat& y);
CMat matScale(Cplx c, const CMat& x);
CMat matInverse(const CMat& x);                 ///< Gaussian elimination
CMat matPow(const CMat& x, long e);             ///< any integer exponent
double matDistance(const CMat& x, const CMat& y);  ///< max entry difference
/// If x is within tol of a scalar matrix, return that scalar; else throw.
Cplx scalarPart(const CMat& x, double tol = 1e-9);

/// Dimension of the span of the given matrices inside the full matrix
/// algebra, via Gaussian elimination on their entry vectors.
int matrixSpanRank(const std::vector<CMat>& mats, double tol = 1e-8);

struct Irrep {
  long N = 0;
  int dim = 0;
  /// Image of Z^{b_j} for each balanced-basis vector b_j.
  std::vector<CMat> generatorImages;
  /// Character value actually realized on each Frobenius monomial Z^{N b_j}.
  std::vector<Cplx> frobeniusCharacter;
  /// Scalars realized on Z^{u} for the torsion/radical central directions
  /// of the normal form (empty if the kernel is generated by Frobenius
  /// monomials alone).
  std::vector<Cplx> extraCentralScalars;

  /// For each hyperbolic block acting nontrivially: the pair of balanced
  /// edge vectors carrying its clock/shift directions and the block size.
  /// Monomials Z^{sum_l (a_l u_l + b_l v_l)} with 0 <= a_l, b_l < n_l give
  /// dim^2 linearly independent images.
  struct BlockExponents {
    EdgeVector clock, shift;
    long n;
  };
  std::vector<BlockExponents> blocks;

  /// rho(Z^k) for a balanced exponent vector.
  CMat evaluateMonomial(const EdgeVector& k) const;
  /// rho extended linearly, evaluating coefficients at w = exp(2*pi*i/N).
  CMat evaluate(const TorusTerms& x) const;

  // Internals kept for evaluation.
  const Triangulation* tri = nullptr;
  LatticeBasis basis;
};

/// Build the irreducible representation with the given character on the
/// Frobenius monomials Z^{N b_j} (defaults to 1 everywhere).  Character
/// values must be nonzero.
Irrep buildIrrep(const Triangulation& tri, long N,
                 const std::vector<Cplx>& frobeniusCharacter = {});

}  // namespace cfq

#endif
