/**
 * @file cyclotomic.hpp
 *
 * Scalar coefficients for the quantum torus: exact Laurent polynomials in
 * the quantum parameter w, either formally (generic mode) or in the ring
 * Z[x]/(Phi_N(x)) where w is a primitive N-th root of unity (root mode).
 *
 * The two modes never mix implicitly: combining scalars of different modes
 * (or different N) throws.  Conversion generic -> root is explicit.
 */
#ifndef CFQ_CYCLOTOMIC_HPP
#define CFQ_CYCLOTOMIC_HPP

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfq {

class ScalarError : public std::runtime_error {
public:
  explicit ScalarError(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
std::vector<long> cyclotomicPolynomial(long N);

class Scalar {
public:
  Scalar() = default;  ///< zero, generic mode

  static Scalar integer(long c) { return omegaPower(0, c); }
  /// c * w^k in generic mode.
  static Scalar omegaPower(long k, long c = 1);
  /// c * w^k in root-of-unity mode for a fixed odd N > 1.
  static Scalar omegaPowerRoot(long N, long k, long c = 1);
  static Scalar zeroRoot(long N);

  bool isRootMode() const { return N_ > 0; }
  long rootOrder() const { return N_; }  ///< 0 in generic mode

  bool isZero() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  /// True when the scalar is exactly c * w^k with c in {1, -1}; returns
  /// (k, c) through the out-parameters.  Generic mode only; in root mode a
  /// monomial representation is not unique and is not needed.
  bool isUnitMonomial(long& k, long& c) const;
  /// Inverse of a unit monomial (generic) or of any invertible element
  /// whose inverse is again a unit monomial times w-powers; throws if the
  /// scalar is not of the form +-w^k.
  Scalar unitInverse() const;

  /// Explicit conversion: substitute a primitive N-th root of unity.
  Scalar toRoot(long N) const;

  /// Numerical evaluation with w = exp(2 pi i / N); N must be given in
  /// generic mode and must match in root mode.
  std::complex<double> evalAtRoot(long N) const;

  /// Human-readable form, e.g. "w^-2 - 2 + w^4".
  std::string str() const;

  /// Exponent -> coefficient; reduced representatives in root mode
  /// (exponents 0 .. deg Phi_N - 1).
  const std::map<long, long>& terms() const { return c_; }

private:
  void normalize();  ///< drop zeros; reduce mod Phi_N in root mode
  void requireSameMode(const Scalar& o) const;

  long N_ = 0;                ///< 0: generic; > 0: root of unity order
  std::map<long, long> c_;    ///< exponent -> coefficient
};

}  // namespace cfq

#endif
