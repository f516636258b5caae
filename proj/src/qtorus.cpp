#include "cfq/qtorus.hpp"

#include <sstream>

namespace cfq {

QuantumTorus::QuantumTorus(const Triangulation& tri, long N)
    : tri_(&tri), N_(N), basis_(balancedBasis(tri)) {
  if (N != 0 && (N < 3 || N % 2 == 0))
    throw TorusError("root order must be 0 (generic) or an odd integer > 1");
}

Scalar QuantumTorus::omega(long k, long c) const {
  return N_ == 0 ? Scalar::omegaPower(k, c) : Scalar::omegaPowerRoot(N_, k, c);
}

TorusTerms QuantumTorus::monomial(const EdgeVector& k, const Scalar& coeff) const {
  if (static_cast<int>(k.size()) != tri_->edgeCount())
    throw TorusError("exponent vector has wrong length");
  if (!isBalanced(*tri_, k)) throw TorusError("exponent vector is not balanced");
  if (coeff.rootOrder() != N_)
    throw TorusError("coefficient scalar mode does not match torus mode");
  TorusTerms r;
  if (!coeff.isZero()) r.emplace(k, coeff);
  return r;
}

TorusTerms QuantumTorus::add(const TorusTerms& a, const TorusTerms& b) const {
  TorusTerms r = a;
  for (const auto& [k, c] : b) {
    auto it = r.find(k);
    if (it == r.end()) {
      r.emplace(k, c);
    } else {
      it->second = it->second + c;
      if (it->second.isZero()) r.erase(it);
    }
  }
  return r;
}

TorusTerms QuantumTorus::sub(const TorusTerms& a, const TorusTerms& b) const {
  return add(a, scale(omega(0, -1), b));
}

TorusTerms QuantumTorus::scale(const Scalar& c, const TorusTerms& a) const {
  if (c.rootOrder() != N_) throw TorusError("scalar mode does not match torus mode");
  TorusTerms r;
  for (const auto& [k, x] : a) {
    Scalar y = c * x;
    if (!y.isZero()) r.emplace(k, y);
  }
  return r;
}

TorusTerms QuantumTorus::mul(const TorusTerms& a, const TorusTerms& b) const {
  TorusTerms r;
  for (const auto& [k1, c1] : a) {
    for (const auto& [k2, c2] : b) {
      EdgeVector k(k1.size());
      for (size_t i = 0; i < k.size(); ++i) k[i] = k1[i] + k2[i];
      Scalar c = omega(-pairing(*tri_, k1, k2)) * c1 * c2;
      auto it = r.find(k);
      if (it == r.end()) {
        if (!c.isZero()) r.emplace(std::move(k), c);
      } else {
        it->second = it->second + c;
        if (it->second.isZero()) r.erase(it);
      }
    }
  }
  return r;
}

TorusTerms QuantumTorus::pow(const TorusTerms& a, long n) const {
  if (n < 0) {
    long uk = 0, uc = 0;
    if (a.size() != 1 || !a.begin()->second.isUnitMonomial(uk, uc))
      throw TorusError("negative power of a non-invertible element");
    const EdgeVector& k = a.begin()->first;
    EdgeVector ki(k.size());
    for (size_t i = 0; i < k.size(); ++i) ki[i] = -k[i];
    // Z^k * Z^-k = w^{-(k,-k)} Z^0 = Z^0, so the inverse is just the
    // inverse coefficient on the negated exponent.
    return pow(monomial(ki, a.begin()->second.unitInverse()), -n);
  }
  TorusTerms r = one();
  TorusTerms base = a;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

bool QuantumTorus::isCentral(const TorusTerms& a) const {
  for (const auto& [k, c] : a) {
    (void)c;
    for (int i = 0; i < basis_.rank(); ++i) {
      long p = pairing(*tri_, k, basis_.vec(i));
      if (N_ == 0 ? (p != 0) : (p % N_ != 0)) return false;
    }
  }
  return true;
}

Int QuantumTorus::rank() const {
  if (N_ == 0) throw TorusError("rank is defined in root mode only");
  return pairingKernelModN(*tri_, basis_, N_).index;
}

int QuantumTorus::rankExponent() const {
  if (N_ == 0) throw TorusError("rank is defined in root mode only");
  return pairingKernelModN(*tri_, basis_, N_).indexExponent;
}

TorusTerms QuantumTorus::punctureMonomial(int v) const {
  return monomial(endpointCountVector(*tri_, v));
}

TorusTerms QuantumTorus::boundaryMonomial(int b, long power) const {
  EdgeVector k = boundaryEndpointCountVector(*tri_, b);
  for (long& x : k) x *= power;
  return monomial(k);
}

std::string QuantumTorus::str(const TorusTerms& a) const {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : a) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*Z[";
    for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << "]";
  }
  return os.str();
}

std::vector<long> chebyshevCoefficients(long n) {
  if (n < 0) throw TorusError("negative Chebyshev index");
  std::vector<long> prev = {2};      // T_0
  if (n == 0) return prev;
  std::vector<long> cur = {0, 1};    // T_1
  for (long i = 1; i < n; ++i) {
    std::vector<long> next(i + 2, 0);
    for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

TorusTerms chebyshevApply(const QuantumTorus& T, long n, const TorusTerms& x) {
  std::vector<long> coef = chebyshevCoefficients(n);
  TorusTerms acc = T.zero();
  TorusTerms xp = T.one();
  for (size_t j = 0; j < coef.size(); ++j) {
    if (coef[j] != 0) acc = T.add(acc, T.scale(T.omega(0, coef[j]), xp));
    if (j + 1 < coef.size()) xp = T.mul(xp, x);
  }
  return acc;
}

}  // namespace cfq
