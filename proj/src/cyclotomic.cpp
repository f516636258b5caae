/**
 * @file cyclotomic.cpp
 */
#include "cfq/cyclotomic.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cfq {

namespace {

/// Exact division of polynomials with integer coefficients (constant term
/// first); requires the divisor to be monic and the division to be exact.
std::vector<long> dividePoly(std::vector<long> num, const std::vector<long>& den) {
  assert(den.back() == 1);
  if (num.size() < den.size()) {
    for (long c : num) assert(c == 0);
    return {0};
  }
  std::vector<long> quo(num.size() - den.size() + 1, 0);
  for (int d = static_cast<int>(quo.size()) - 1; d >= 0; --d) {
    long q = num[d + den.size() - 1];
    quo[d] = q;
    if (q == 0) continue;
    for (size_t i = 0; i < den.size(); ++i) num[d + i] -= q * den[i];
  }
  for (long c : num) assert(c == 0);
  return quo;
}

}  // namespace

std::vector<long> cyclotomicPolynomial(long N) {
  if (N < 1) throw ScalarError("cyclotomicPolynomial: N must be positive");
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
  std::vector<long> num(N + 1, 0);
  num[0] = -1;
  num[N] = 1;
  for (long d = 1; d < N; ++d)
    if (N % d == 0) num = dividePoly(std::move(num), cyclotomicPolynomial(d));
  return num;
}

Scalar Scalar::omegaPower(long k, long c) {
  Scalar s;
  if (c != 0) s.c_[k] = c;
  return s;
}

Scalar Scalar::omegaPowerRoot(long N, long k, long c) {
  if (N <= 1) throw ScalarError("root mode needs N > 1");
  Scalar s;
  s.N_ = N;
  if (c != 0) s.c_[k] = c;
  s.normalize();
  return s;
}

Scalar Scalar::zeroRoot(long N) { return omegaPowerRoot(N, 0, 0); }

bool Scalar::isZero() const { return c_.empty(); }

void Scalar::requireSameMode(const Scalar& o) const {
  if (N_ != o.N_)
    throw ScalarError("scalar mode mismatch (generic vs root / different N)");
}

void Scalar::normalize() {
  if (N_ > 0) {
    // Exponents live in Z/N (w^N = 1), then reduce modulo Phi_N so that
    // equality of ring elements is equality of representations.
    std::vector<long> phi = cyclotomicPolynomial(N_);
    const long deg = static_cast<long>(phi.size()) - 1;
    std::vector<long> coeff(N_, 0);
    for (const auto& [k, c] : c_) coeff[((k % N_) + N_) % N_] += c;
    // Polynomial remainder modulo the monic Phi_N.
    for (long d = N_ - 1; d >= deg; --d) {
      long q = coeff[d];
      if (q == 0) continue;
      for (long i = 0; i <= deg; ++i) coeff[d - deg + i] -= q * phi[i];
    }
    c_.clear();
    for (long i = 0; i < deg; ++i)
      if (coeff[i] != 0) c_[i] = coeff[i];
  } else {
    for (auto it = c_.begin(); it != c_.end();)
      it = it->second == 0 ? c_.erase(it) : std::next(it);
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  requireSameMode(o);
  Scalar out = *this;
  for (const auto& [k, c] : o.c_) out.c_[k] += c;
  out.normalize();
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& [k, c] : out.c_) c = -c;
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  requireSameMode(o);
  Scalar out;
  out.N_ = N_;
  for (const auto& [k1, c1] : c_)
    for (const auto& [k2, c2] : o.c_) out.c_[k1 + k2] += c1 * c2;
  out.normalize();
  return out;
}

bool Scalar::operator==(const Scalar& o) const { return N_ == o.N_ && c_ == o.c_; }

bool Scalar::isUnitMonomial(long& k, long& c) const {
  if (N_ == 0) {
    if (c_.size() != 1) return false;
    auto [kk, cc] = *c_.begin();
    if (cc != 1 && cc != -1) return false;
    k = kk;
    c = cc;
    return true;
  }
  // Root mode: test all +-w^k against the reduced representation.
  for (long kk = 0; kk < N_; ++kk)
    for (long cc : {1L, -1L})
      if (*this == omegaPowerRoot(N_, kk, cc)) {
        k = kk;
        c = cc;
        return true;
      }
  return false;
}

Scalar Scalar::unitInverse() const {
  long k, c;
  if (!isUnitMonomial(k, c))
    throw ScalarError("unitInverse: scalar is not +-w^k: " + str());
  return N_ == 0 ? omegaPower(-k, c) : omegaPowerRoot(N_, -k, c);
}

Scalar Scalar::toRoot(long N) const {
  if (N_ != 0) {
    if (N_ != N) throw ScalarError("toRoot: root order mismatch");
    return *this;
  }
  Scalar out = zeroRoot(N);
  out.c_ = c_;
  out.normalize();
  return out;
}

std::complex<double> Scalar::evalAtRoot(long N) const {
  if (N_ != 0 && N_ != N) throw ScalarError("evalAtRoot: root order mismatch");
  std::complex<double> acc = 0;
  for (const auto& [k, c] : c_) {
    double arg = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
    acc += static_cast<double>(c) * std::polar(1.0, arg);
  }
  return acc;
}

std::string Scalar::str() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : c_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    long a = std::abs(c);
    if (a != 1 || k == 0) out << a;
    if (k != 0) {
      if (a != 1) out << "*";
      out << "w";
      if (k != 1) out << "^" << k;
    }
    first = false;
  }
  if (N_ > 0) out << " (mod Phi_" << N_ << ")";
  return out.str();
}

}  // namespace cfq
