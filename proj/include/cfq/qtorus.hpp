/**
 * @file qtorus.hpp
 *
 * The balanced quantum torus of a triangulated surface: exact Laurent
 * "polynomials" whose monomials Z^k are indexed by balanced edge vectors,
 * with multiplication twisted by the antisymmetrized edge pairing:
 *
 *   Z^k1 * Z^k2 = w^(-(k1,k2)) Z^(k1+k2).
 *
 * Elements carry the scalar mode (generic w or root of unity) of their
 * coefficients; modes never mix.
 */
#ifndef CFQ_QTORUS_HPP
#define CFQ_QTORUS_HPP

#include <map>
#include <vector>

#include "cfq/cyclotomic.hpp"
#include "cfq/lattice.hpp"
#include "cfq/surface.hpp"

namespace cfq {

class TorusError : public std::runtime_error {
public:
  explicit TorusError(const std::string& what) : std::runtime_error(what) {}
};

/// Exponent-indexed sparse element.  The zero element is the empty map.
using TorusTerms = std::map<EdgeVector, Scalar>;

class QuantumTorus {
public:
  /// N = 0: generic mode; N odd > 1: coefficients in Z[x]/Phi_N.
  QuantumTorus(const Triangulation& tri, long N = 0);

  const Triangulation& surface() const { return *tri_; }
  long rootOrder() const { return N_; }
  const LatticeBasis& basis() const { return basis_; }

  Scalar scalarOne() const { return omega(0); }
  Scalar omega(long k, long c = 1) const;  ///< c w^k in this torus's mode

  TorusTerms zero() const { return {}; }
  TorusTerms monomial(const EdgeVector& k, const Scalar& coeff) const;
  TorusTerms monomial(const EdgeVector& k) const { return monomial(k, scalarOne()); }
  TorusTerms one() const { return monomial(EdgeVector(tri_->edgeCount(), 0)); }

  TorusTerms add(const TorusTerms& a, const TorusTerms& b) const;
  TorusTerms sub(const TorusTerms& a, const TorusTerms& b) const;
  TorusTerms scale(const Scalar& c, const TorusTerms& a) const;
  TorusTerms mul(const TorusTerms& a, const TorusTerms& b) const;
  /// a^n for n >= 0, or any n when a is a single invertible monomial.
  TorusTerms pow(const TorusTerms& a, long n) const;

  bool isZero(const TorusTerms& a) const { return a.empty(); }
  bool equal(const TorusTerms& a, const TorusTerms& b) const { return a == b; }

  /// Central == every exponent pairs to 0 (mod N in root mode) with the
  /// whole balanced lattice.
  bool isCentral(const TorusTerms& a) const;

  /// [K : K0] for this N (root mode only).
  Int rank() const;
  int rankExponent() const;

  /// H_v = Z^{k_v} for an inner puncture v; H_b for boundary component b.
  TorusTerms punctureMonomial(int v) const;
  TorusTerms boundaryMonomial(int b, long power = 1) const;

  std::string str(const TorusTerms& a) const;

private:
  const Triangulation* tri_;
  long N_;
  LatticeBasis basis_;
};

/// Chebyshev polynomials of the first kind normalized by T_0 = 2, T_1 = X,
/// T_{n+2} = X T_{n+1} - T_n; coefficients of T_n, constant first.
std::vector<long> chebyshevCoefficients(long n);

/// T_n(x) evaluated in the torus.
TorusTerms chebyshevApply(const QuantumTorus& T, long n, const TorusTerms& x);

}  // namespace cfq

#endif
