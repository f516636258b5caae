#include "cfq/centerkit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cfq {

EdgeIndexing EdgeIndexing::standard(const Triangulation& tri) {
  EdgeIndexing I;
  I.order.resize(tri.edgeCount());
  for (int e = 0; e < tri.edgeCount(); ++e) I.order[e] = e;
  return I;
}

void EdgeIndexing::validate(const Triangulation& tri) const {
  std::vector<bool> seen(tri.edgeCount(), false);
  if (static_cast<int>(order.size()) != tri.edgeCount())
    throw CenterError("edge indexing has wrong length");
  for (int e : order) {
    if (e < 0 || e >= tri.edgeCount() || seen[e])
      throw CenterError("edge indexing is not a permutation of the edges");
    seen[e] = true;
  }
}

bool indexedLess(const EdgeIndexing& I, const EdgeVector& a, const EdgeVector& b) {
  for (int e : I.order) {
    if (a[e] != b[e]) return a[e] < b[e];
  }
  return false;
}

std::pair<EdgeVector, Scalar> leadingTermIndexed(const TorusTerms& x,
                                                 const EdgeIndexing& I) {
  if (x.empty()) throw CenterError("leading term of zero");
  auto best = x.begin();
  for (auto it = std::next(x.begin()); it != x.end(); ++it)
    if (indexedLess(I, best->first, it->first)) best = it;
  return {best->first, best->second};
}

long minimalHeight(const TorusTerms& x, int e) {
  if (x.empty()) throw CenterError("minimal height of zero");
  long m = x.begin()->first.at(e);
  for (const auto& [k, c] : x) m = std::min(m, k[e]);
  return m;
}

TorusTerms basicTrace(const QuantumTorus& T, const BasicElement& b) {
  const Triangulation& tri = T.surface();
  long N = T.rootOrder();
  if (N < 3 || N % 2 == 0)
    throw CenterError("basicTrace requires an odd root order > 1");
  validateDiagram(tri, b.base);
  if (static_cast<int>(b.loopPowers.size()) != tri.vertexCount() ||
      static_cast<int>(b.boundaryPowers.size()) != tri.boundaryComponentCount())
    throw CenterError("basic element power tables have wrong length");
  for (int v = 0; v < tri.vertexCount(); ++v) {
    if (b.loopPowers[v] < 0)
      throw CenterError("peripheral powers must be nonnegative");
    if (!tri.isInnerVertex(v) && b.loopPowers[v] != 0)
      throw CenterError("peripheral power on a boundary vertex");
  }

  DiagramGeometry geom(tri, b.base.weights);
  for (int v : tri.innerVertices())
    if (peripheralLoopCount(geom, v) > 0)
      throw CenterError("base diagram contains a peripheral loop");

  // Split the base into its arc part and its closed components.
  int F = tri.faceCount();
  CornerVector arcW(3 * F, 0);
  std::vector<CornerVector> closedW;
  for (const DiagramComponent& comp : geom.components()) {
    CornerVector* w = &arcW;
    if (comp.closed) {
      closedW.emplace_back(3 * F, 0);
      w = &closedW.back();
    }
    for (int s : comp.segments) {
      const Segment& seg = geom.segments()[s];
      (*w)[3 * seg.face + seg.corner] += 1;
    }
  }

  TorusTerms out = T.one();

  bool haveArcs = false;
  for (long w : arcW)
    if (w > 0) haveArcs = true;
  if (haveArcs) {
    DiagramGeometry geomA(tri, arcW);
    CornerVector cableW = arcW;
    for (long& w : cableW) w *= N;
    StatedDiagram cable;
    cable.weights = cableW;
    cable.states.resize(tri.edgeCount());
    std::map<int, std::vector<int>> heights;
    for (int e = 0; e < tri.edgeCount(); ++e) {
      int m = geomA.pointCount(e);
      if (m == 0 || !tri.isBoundaryEdge(e)) continue;
      // each original letter becomes a block of N copies
      cable.states[e].resize(static_cast<size_t>(N) * m);
      for (int bp = 0; bp < static_cast<int>(N) * m; ++bp)
        cable.states[e][bp] = b.base.states[e][bp / N];
      std::vector<int>& ranks = heights[e];
      ranks.resize(static_cast<size_t>(N) * m);
      for (int i = 0; i < static_cast<int>(N) * m; ++i) ranks[i] = i + 1;
    }
    // reverse the later endpoint block of every arc returning to one edge
    for (const DiagramComponent& comp : geomA.components()) {
      if (comp.closed || comp.start.edge != comp.end.edge) continue;
      int e = comp.start.edge;
      int beta = std::max(geomA.boundaryOrder(comp.start),
                          geomA.boundaryOrder(comp.end));
      long lo = N * (beta - 1) + 1, hi = N * beta;
      std::vector<int>& ranks = heights[e];
      for (long p = lo; p <= hi; ++p)
        ranks[p - 1] = static_cast<int>(lo + hi - p);
    }
    out = T.mul(out, quantumTrace(T, cable, heights));
  }

  for (const CornerVector& w : closedW) {
    StatedDiagram d;
    d.weights = w;
    d.states.resize(tri.edgeCount());
    out = T.mul(out, chebyshevApply(T, N, quantumTrace(T, d)));
  }

  for (int v = 0; v < tri.vertexCount(); ++v) {
    if (b.loopPowers[v] == 0) continue;
    TorusTerms h = T.punctureMonomial(v);
    out = T.mul(out, T.pow(T.add(h, T.pow(h, -1)), b.loopPowers[v]));
  }
  for (int bd = 0; bd < tri.boundaryComponentCount(); ++bd)
    if (b.boundaryPowers[bd] != 0)
      out = T.mul(out, T.boundaryMonomial(bd, b.boundaryPowers[bd]));

  return T.scale(b.scale, out);
}

namespace {

// The unique basic element (unit scale) whose trace has leading exponent v,
// reconstructed from the train-track weights of v: at each vertex the
// corner weights must share one residue class mod N, which fixes the
// peripheral/boundary power; the quotient weights form the base diagram,
// whose peripheral loops are traded back into peripheral powers.
BasicElement reconstructBasic(const QuantumTorus& T, const EdgeVector& v) {
  const Triangulation& tri = T.surface();
  long N = T.rootOrder();
  CornerVector phi = trainTrackWeights(tri, v);

  std::vector<long> vertexOffset(tri.vertexCount(), 0);
  BasicElement out;
  out.scale = T.scalarOne();
  out.loopPowers.assign(tri.vertexCount(), 0);
  out.boundaryPowers.assign(tri.boundaryComponentCount(), 0);

  auto residueAndMin = [&](const std::vector<int>& verts) -> std::pair<long, long> {
    long res = -1, minv = 0;
    bool first = true;
    for (int v2 : verts)
      for (const Corner& c : tri.cornersAtVertex(v2)) {
        long w = phi[3 * c.face + c.corner];
        long r = ((w % N) + N) % N;
        if (first) {
          res = r;
          minv = w;
          first = false;
        } else {
          if (r != res)
            throw CenterError("leading term is not the trace of a basic "
                              "element: inconsistent corner residues");
          minv = std::min(minv, w);
        }
      }
    if (first)
      throw CenterError("vertex without corners");
    return {res, minv};
  };

  for (int p : tri.innerVertices()) {
    auto [res, minv] = residueAndMin({p});
    if (res > minv)
      throw CenterError("leading term is not the trace of a basic element: "
                        "negative base weight at an inner vertex");
    out.loopPowers[p] = res;
    vertexOffset[p] = res;
  }
  for (int bd = 0; bd < tri.boundaryComponentCount(); ++bd) {
    std::vector<int> verts;
    for (int v2 = 0; v2 < tri.vertexCount(); ++v2)
      if (tri.boundaryComponentOfVertex(v2) == bd) verts.push_back(v2);
    auto [res, minv] = residueAndMin(verts);
    long nb = minv - (((minv - res) % N + N) % N);
    out.boundaryPowers[bd] = nb;
    for (int v2 : verts) vertexOffset[v2] = nb;
  }

  CornerVector baseW(phi.size(), 0);
  for (int f = 0; f < tri.faceCount(); ++f)
    for (int c = 0; c < 3; ++c) {
      long w = phi[3 * f + c] - vertexOffset[tri.vertexAtCorner({f, c})];
      if (w < 0 || w % N != 0)
        throw CenterError("leading term is not the trace of a basic element");
      baseW[3 * f + c] = w / N;
    }

  // trade peripheral loops of the base for peripheral powers
  DiagramGeometry geom(tri, baseW);
  for (int p : tri.innerVertices()) {
    int loops = peripheralLoopCount(geom, p);
    if (loops == 0) continue;
    CornerVector ind = cornerIndicatorAtVertex(tri, p);
    for (size_t i = 0; i < baseW.size(); ++i) baseW[i] -= loops * ind[i];
    out.loopPowers[p] += N * loops;
  }

  out.base = fromCornerWeights(tri, baseW);
  return out;
}

}  // namespace

CentralCertificate centralReduce(const QuantumTorus& T, const TorusTerms& x,
                                 const EdgeIndexing& I) {
  const Triangulation& tri = T.surface();
  long N = T.rootOrder();
  if (N < 3 || N % 2 == 0)
    throw CenterError("centralReduce requires an odd root order > 1");
  I.validate(tri);
  if (!T.isCentral(x)) throw CenterError("input is not central");

  CentralCertificate cert;
  if (x.empty()) {
    cert.residualZero = true;
    return cert;
  }

  // Finiteness bound: the leading exponent strictly decreases while every
  // coordinate stays inside the initial per-edge range, so the number of
  // steps is bounded by the size of that box.
  Int bound = 1;
  std::vector<long> mins(tri.edgeCount());
  for (int e = 0; e < tri.edgeCount(); ++e) {
    long lo = minimalHeight(x, e), hi = lo;
    for (const auto& [k, c] : x) hi = std::max(hi, k[e]);
    mins[e] = lo;
    bound *= Int(hi - lo + 1);
  }
  long cap = bound > Int(1000000) ? 1000000 : bound.get_si();

  TorusTerms r = x;
  EdgeVector prevLead;
  while (!r.empty()) {
    auto [v, c] = leadingTermIndexed(r, I);
    if (!prevLead.empty() && !indexedLess(I, v, prevLead))
      throw CenterError("internal error: leading exponent did not decrease");
    prevLead = v;
    if (!inPairingKernel(tri, T.basis(), v, N))
      throw CenterError("leading exponent does not pair to zero mod N");
    BasicElement z = reconstructBasic(T, v);
    TorusTerms t = basicTrace(T, z);
    auto [vz, cz] = leadingTermIndexed(t, I);
    if (vz != v)
      throw CenterError("internal error: basic trace has wrong leading term");
    z.scale = c * cz.unitInverse();
    r = T.sub(r, T.scale(z.scale, t));
    cert.moves.push_back({z, v});
    ++cert.steps;
    if (!r.empty())
      for (int e = 0; e < tri.edgeCount(); ++e) {
        long m = minimalHeight(r, e);
        if (m < mins[e])
          throw CenterError("internal error: minimal height decreased");
        mins[e] = m;
      }
    if (cert.steps > cap)
      throw CenterError("reduction exceeded its finiteness bound");
  }
  cert.residualZero = true;
  return cert;
}

TorusTerms replayCertificate(const QuantumTorus& T, const TorusTerms& x,
                             const CentralCertificate& cert) {
  TorusTerms r = x;
  for (const CentralMove& mv : cert.moves) r = T.sub(r, basicTrace(T, mv.basic));
  return r;
}

RankAudit rankAudit(const Triangulation& tri, long N) {
  if (N < 3 || N % 2 == 0)
    throw CenterError("rankAudit requires an odd N > 1");
  LatticeBasis basis = balancedBasis(tri);
  PairingKernel kernel = pairingKernelModN(tri, basis, N);

  RankAudit out;
  out.torusRank = kernel.index;
  out.exponent = kernel.indexExponent;

  int R = basis.rank();
  IntMat M(R, static_cast<int>(kernel.generators.size()));
  for (size_t j = 0; j < kernel.generators.size(); ++j) {
    std::vector<Int> q = basis.coordinates(kernel.generators[j]);
    for (int i = 0; i < R; ++i) M(i, static_cast<int>(j)) = q[i];
  }
  SmithResult S = smithNormalForm(M);
  if (S.rank != R) throw CenterError("pairing kernel is not of finite index");

  // columns of U^{-1} give a basis of the balanced lattice adapted to the
  // kernel: K / K0 = sum of Z/d_i in these coordinates
  IntMat Uinv(R, R);
  for (int j = 0; j < R; ++j) {
    std::vector<Int> rhs(R, 0), col;
    rhs[j] = 1;
    if (!solveIntegral(S.U, rhs, col))
      throw CenterError("internal error: transform is not unimodular");
    for (int i = 0; i < R; ++i) Uinv(i, j) = col[i];
  }

  Int count = 1;
  for (const Int& d : S.divisors) count *= d;
  bool pass = count == kernel.index;

  // canonical residue of an edge vector modulo the kernel
  auto canon = [&](const EdgeVector& k) {
    std::vector<Int> q = S.U.apply(basis.coordinates(k));
    std::vector<Int> res(R);
    for (int i = 0; i < R; ++i) {
      Int d = S.divisors[i];
      Int m = q[i] % d;
      if (m < 0) m += d;
      res[i] = m;
    }
    return res;
  };

  // enumerate all residue tuples a_i in [0, d_i)
  std::vector<Int> a(R, 0);
  std::set<std::vector<Int>> seen;
  for (;;) {
    // k = basis * (Uinv * a)
    EdgeVector k(tri.edgeCount(), 0);
    std::vector<Int> q = Uinv.apply(a);
    for (int e = 0; e < tri.edgeCount(); ++e) {
      Int acc = 0;
      for (int j = 0; j < R; ++j) acc += basis.basis(e, j) * q[j];
      k[e] = acc.get_si();
    }
    ValuationDecompositionModN dec = decomposeModN(tri, k, N);
    EdgeVector val = diagramValuation(tri, dec.d);
    // the witness valuation must represent the same coset
    EdgeVector diff(tri.edgeCount());
    for (int e = 0; e < tri.edgeCount(); ++e) diff[e] = val[e] - k[e];
    if (!inPairingKernel(tri, basis, diff, N)) pass = false;
    if (!seen.insert(canon(val)).second) pass = false;  // coset collision
    out.cosetReps.push_back(k);
    out.witnesses.push_back(dec.d);

    int i = 0;
    while (i < R) {
      a[i] += 1;
      if (a[i] < S.divisors[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == R) break;
  }
  if (Int(static_cast<long>(out.witnesses.size())) != kernel.index) pass = false;

  // independent pairwise check on small audits
  if (out.witnesses.size() <= 64) {
    for (size_t i = 0; i < out.witnesses.size(); ++i)
      for (size_t j = i + 1; j < out.witnesses.size(); ++j) {
        EdgeVector vi = diagramValuation(tri, out.witnesses[i]);
        EdgeVector vj = diagramValuation(tri, out.witnesses[j]);
        EdgeVector diff(tri.edgeCount());
        for (int e = 0; e < tri.edgeCount(); ++e) diff[e] = vi[e] - vj[e];
        if (inPairingKernel(tri, basis, diff, N)) pass = false;
      }
  }

  out.pass = pass;
  return out;
}

}  // namespace cfq
