/**
 * @file lattice.cpp
 */
#include "cfq/lattice.hpp"

#include <cassert>

namespace cfq {

bool isBalanced(const Triangulation& t, const EdgeVector& k) {
  if (static_cast<int>(k.size()) != t.edgeCount()) return false;
  for (const Face& f : t.faces()) {
    long s = k[f.side[0].edge] + k[f.side[1].edge] + k[f.side[2].edge];
    if (s % 2 != 0) return false;
  }
  return true;
}

long pairing(const Triangulation& t, const EdgeVector& k1, const EdgeVector& k2) {
  const auto& a = t.adjacencyCounts();
  long acc = 0;
  for (int e = 0; e < t.edgeCount(); ++e) {
    if (k1[e] == 0) continue;
    for (int e2 = 0; e2 < t.edgeCount(); ++e2)
      acc += k1[e] * k2[e2] * (a[e][e2] - a[e2][e]);
  }
  return acc;
}

EdgeVector LatticeBasis::vec(int i) const {
  EdgeVector out(basis.rows());
  for (int r = 0; r < basis.rows(); ++r) out[r] = basis(r, i).get_si();
  return out;
}

std::vector<Int> LatticeBasis::coordinates(const EdgeVector& k) const {
  std::vector<Int> b;
  b.reserve(k.size());
  for (long v : k) b.emplace_back(v);
  std::vector<Int> x;
  if (!solveIntegral(basis, b, x))
    throw LatticeError("vector is not in the balanced lattice");
  return x;
}

LatticeBasis balancedBasis(const Triangulation& t) {
  const int E = t.edgeCount();
  const int F = t.faceCount();
  // K = { k : A k = 0 mod 2 } for the face-edge incidence matrix A.
  // With U A V = D in Smith form and y = V^-1 k, the condition becomes
  // d_i y_i = 0 mod 2, so y_i ranges over 2Z when d_i is odd and over Z
  // when d_i is even (or zero).  Basis vectors are V applied to the
  // correspondingly scaled unit vectors.
  IntMat A(F, E);
  for (int f = 0; f < F; ++f)
    for (int s = 0; s < 3; ++s) A(f, t.faces()[f].side[s].edge) += 1;
  SmithResult sm = smithNormalForm(A);

  LatticeBasis out;
  out.basis = IntMat(E, E);
  for (int i = 0; i < E; ++i) {
    Int scale = 1;
    if (i < std::min(E, F) && sm.D(i, i) % 2 != 0) scale = 2;
    for (int r = 0; r < E; ++r) out.basis(r, i) = scale * sm.V(r, i);
  }
  out.gram = IntMat(E, E);
  for (int i = 0; i < E; ++i)
    for (int j = 0; j < E; ++j)
      out.gram(i, j) = pairing(t, out.vec(i), out.vec(j));
  return out;
}

PairingKernel pairingKernelModN(const Triangulation& t, const LatticeBasis& basis,
                                long N) {
  if (N <= 1 || N % 2 == 0)
    throw LatticeError("N must be an odd integer greater than 1");
  const Int NN(N);
  const int n = basis.rank();
  // K0 = { sum x_i b_i : G x = 0 mod N }.  With U G V = D and y = V^-1 x
  // the condition is d_i y_i = 0 mod N, i.e. y_i in (N / gcd(d_i, N)) Z.
  SmithResult sm = smithNormalForm(basis.gram);
  PairingKernel out;
  out.index = 1;
  for (int i = 0; i < n; ++i) {
    Int d = i < sm.D.rows() ? sm.D(i, i) : Int(0);
    Int g = gcd(d, NN);
    Int step = NN / g;
    out.index *= step;
    std::vector<Int> y(n, Int(0));
    y[i] = step;
    std::vector<Int> x = sm.V.apply(y);
    EdgeVector gen(t.edgeCount(), 0);
    for (int e = 0; e < t.edgeCount(); ++e) {
      Int acc = 0;
      for (int j = 0; j < n; ++j) acc += basis.basis(e, j) * x[j];
      gen[e] = acc.get_si();
    }
    out.generators.push_back(std::move(gen));
  }
  // The index must be a power of N.
  Int idx = out.index;
  int m = 0;
  while (idx > 1) {
    if (idx % NN != 0) throw LatticeError("kernel index is not a power of N");
    idx /= NN;
    ++m;
  }
  out.indexExponent = m;
  return out;
}

bool inPairingKernel(const Triangulation& t, const LatticeBasis& basis,
                     const EdgeVector& k, long N) {
  for (int i = 0; i < basis.rank(); ++i)
    if (pairing(t, k, basis.vec(i)) % N != 0) return false;
  return true;
}

CornerVector trainTrackWeights(const Triangulation& t, const EdgeVector& k) {
  if (!isBalanced(t, k)) throw LatticeError("train track weights need a balanced vector");
  CornerVector w(3 * t.faceCount());
  for (int f = 0; f < t.faceCount(); ++f) {
    const Face& face = t.faces()[f];
    for (int c = 0; c < 3; ++c) {
      long a = k[face.side[c].edge];
      long b = k[face.side[(c + 1) % 3].edge];
      long d = k[face.side[(c + 2) % 3].edge];
      w[3 * f + c] = (a + b - d) / 2;
    }
  }
  return w;
}

bool satisfiesSwitchCondition(const Triangulation& t, const CornerVector& w) {
  if (static_cast<int>(w.size()) != 3 * t.faceCount()) return false;
  for (int e = 0; e < t.edgeCount(); ++e) {
    const auto& uses = t.edgeUses(e);
    if (uses.size() == 2 &&
        slotWeight(w, uses[0].face, uses[0].slot) !=
            slotWeight(w, uses[1].face, uses[1].slot))
      return false;
  }
  return true;
}

EdgeVector edgeVectorFromWeights(const Triangulation& t, const CornerVector& w) {
  if (!satisfiesSwitchCondition(t, w))
    throw LatticeError("corner weights violate the switch condition");
  EdgeVector k(t.edgeCount());
  for (int e = 0; e < t.edgeCount(); ++e) {
    const EdgeUse& u = t.edgeUses(e)[0];
    k[e] = slotWeight(w, u.face, u.slot);
  }
  return k;
}

CornerVector cornerIndicatorAtVertex(const Triangulation& t, int v) {
  CornerVector w(3 * t.faceCount(), 0);
  for (const Corner& c : t.cornersAtVertex(v)) w[3 * c.face + c.corner] = 1;
  return w;
}

EdgeVector endpointCountVector(const Triangulation& t, int v) {
  EdgeVector k(t.edgeCount(), 0);
  for (int e = 0; e < t.edgeCount(); ++e)
    for (int end = 0; end < 2; ++end)
      if (t.vertexAtEdgeEnd(e, end) == v) ++k[e];
  return k;
}

EdgeVector boundaryEndpointCountVector(const Triangulation& t, int b) {
  EdgeVector k(t.edgeCount(), 0);
  for (int v = 0; v < t.vertexCount(); ++v)
    if (t.boundaryComponentOfVertex(v) == b) {
      EdgeVector kv = endpointCountVector(t, v);
      for (int e = 0; e < t.edgeCount(); ++e) k[e] += kv[e];
    }
  return k;
}

}  // namespace cfq
