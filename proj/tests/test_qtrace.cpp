#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "cfq/qtrace.hpp"
#include "fixtures.hpp"

using namespace cfq;

namespace {

const char* kFixtures[] = {"punctured_disc.tri", "hexagon.tri", "annulus.tri",
                           "square.tri", "holed_torus.tri"};

StatedDiagram allStates(const Triangulation& tri, const CornerVector& w,
                        int state) {
  StatedDiagram d = fromCornerWeights(tri, w);
  for (auto& word : d.states)
    for (int& s : word) s = state;
  return d;
}

// Boundary vertices of component b, in boundary-walk order.
std::vector<int> boundaryVertexCycle(const Triangulation& tri, int b) {
  int start = -1;
  for (int e = 0; e < tri.edgeCount() && start < 0; ++e)
    if (tri.boundaryComponentOfEdge(e) == b) start = e;
  std::vector<int> cycle;
  int e = start;
  do {
    const EdgeUse& u = tri.edgeUses(e)[0];
    int head = tri.vertexAtCorner({u.face, u.slot});
    cycle.push_back(head);
    int next = -1;
    for (int e2 = 0; e2 < tri.edgeCount(); ++e2) {
      if (tri.boundaryComponentOfEdge(e2) != b) continue;
      const EdgeUse& u2 = tri.edgeUses(e2)[0];
      if (tri.vertexAtCorner({u2.face, (u2.slot + 2) % 3}) == head) {
        next = e2;
        break;
      }
    }
    e = next;
  } while (e != start && e >= 0);
  return cycle;
}

int pointComponent(const DiagramGeometry& geom, const PointRef& p) {
  const auto& segs = geom.segments();
  for (size_t i = 0; i < segs.size(); ++i)
    if (segs[i].pEnd == p || segs[i].qEnd == p)
      return geom.componentOf(static_cast<int>(i));
  return -1;
}

// Height map stacking every point of `topComponent` above all others,
// keeping positive-direction order within each layer.
std::map<int, std::vector<int>> stackHeights(const DiagramGeometry& geom,
                                             int topComponent) {
  std::map<int, std::vector<int>> h;
  const Triangulation& tri = geom.surface();
  for (int e = 0; e < tri.edgeCount(); ++e) {
    int m = geom.pointCount(e);
    if (m < 2) continue;
    std::vector<int> comp(m);
    for (int pos = 1; pos <= m; ++pos) {
      PointRef p{e, pos};
      int slot = tri.isBoundaryEdge(e) ? geom.boundaryOrder(p) : pos;
      comp[slot - 1] = pointComponent(geom, p);
    }
    std::vector<int> ranks(m);
    int next = 1;
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < m; ++i)
        if ((comp[i] == topComponent) == (pass == 1)) ranks[i] = next++;
    h[e] = ranks;
  }
  return h;
}

EdgeVector randomNormalVector(const Triangulation& tri, std::mt19937& rng,
                              int box) {
  std::uniform_int_distribution<int> d(0, box);
  for (;;) {
    EdgeVector k(tri.edgeCount());
    for (long& x : k) x = d(rng);
    if (!isBalanced(tri, k)) continue;
    CornerVector w = trainTrackWeights(tri, k);
    bool ok = true;
    for (long x : w)
      if (x < 0) { ok = false; break; }
    if (ok) return k;
  }
}

StatedDiagram randomStated(const Triangulation& tri, const EdgeVector& k,
                           std::mt19937& rng) {
  StatedDiagram d = fromTrainTrack(tri, k);
  for (int e = 0; e < tri.edgeCount(); ++e) {
    if (!tri.isBoundaryEdge(e)) continue;
    int m = static_cast<int>(d.states[e].size());
    int minus = std::uniform_int_distribution<int>(0, m)(rng);
    for (int i = 0; i < m; ++i) d.states[e][i] = i < minus ? kMinus : kPlus;
  }
  return d;
}

// a == (unit monomial) * b? Returns the unit when so.
std::optional<Scalar> unitRatio(const QuantumTorus& T, const TorusTerms& a,
                                const TorusTerms& b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  // candidate from the leading terms
  auto [ka, ca] = leadingTerm(a);
  auto [kb, cb] = leadingTerm(b);
  if (ka != kb) return std::nullopt;
  long k1 = 0, c1 = 0, k2 = 0, c2 = 0;
  if (!ca.isUnitMonomial(k1, c1) || !cb.isUnitMonomial(k2, c2))
    return std::nullopt;
  Scalar u = T.omega(k1 - k2, c1 * c2);
  if (T.equal(a, T.scale(u, b))) return u;
  return std::nullopt;
}

}  // namespace

TEST_CASE("corner arcs of a standalone triangle trace to torus monomials") {
  Triangulation tri = loadFixture("triangle.tri");
  QuantumTorus T(tri);
  auto edgeAt = [&](int slot) {
    for (int e = 0; e < tri.edgeCount(); ++e)
      if (tri.edgeUses(e)[0].slot == slot) return e;
    return -1;
  };
  for (int c = 0; c < 3; ++c) {
    int eC = edgeAt(c), eC1 = edgeAt((c + 1) % 3);
    CornerVector w(3, 0);
    w[c] = 1;
    StatedDiagram d = fromCornerWeights(tri, w);

    EdgeVector k(tri.edgeCount(), 0);
    k[eC] = 1;
    k[eC1] = 1;
    d.states[eC] = {kPlus};
    d.states[eC1] = {kPlus};
    CHECK(T.equal(quantumTrace(T, d), T.monomial(k)));

    for (long& x : k) x = -x;
    d.states[eC] = {kMinus};
    d.states[eC1] = {kMinus};
    CHECK(T.equal(quantumTrace(T, d), T.monomial(k)));

    // good mixed state: + on the Q side (side c+1), - on the P side (side c)
    k.assign(tri.edgeCount(), 0);
    k[eC1] = 1;
    k[eC] = -1;
    d.states[eC] = {kMinus};
    d.states[eC1] = {kPlus};
    CHECK(T.equal(quantumTrace(T, d), T.monomial(k)));

    // bad state is rejected
    d.states[eC] = {kPlus};
    d.states[eC1] = {kMinus};
    CHECK_THROWS_AS(quantumTrace(T, d), DiagramError);
  }
}

TEST_CASE("peripheral loops trace to the puncture monomial plus its inverse") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    Triangulation tri = loadFixture(name);
    QuantumTorus T(tri);
    for (int v : tri.innerVertices()) {
      StatedDiagram d = fromCornerWeights(tri, cornerIndicatorAtVertex(tri, v));
      TorusTerms want =
          T.add(T.punctureMonomial(v), T.pow(T.punctureMonomial(v), -1));
      CHECK(T.equal(quantumTrace(T, d), want));

      // two parallel copies square it, exercising mixed-state exchanges
      CornerVector w2 = cornerIndicatorAtVertex(tri, v);
      for (long& x : w2) x *= 2;
      StatedDiagram d2 = fromCornerWeights(tri, w2);
      CHECK(T.equal(quantumTrace(T, d2), T.mul(want, want)));
    }
  }
}

TEST_CASE("boundary elements trace to the boundary monomials") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    Triangulation tri = loadFixture(name);
    QuantumTorus T(tri);
    for (int b = 0; b < tri.boundaryComponentCount(); ++b) {
      CAPTURE(b);
      long unitPlus = 0, unitMinus = 0;
      TorusTerms ap = boundaryElementTrace(T, b, kPlus, &unitPlus);
      TorusTerms am = boundaryElementTrace(T, b, kMinus, &unitMinus);
      // exact equality with the central monomials, unit coefficients
      CHECK(T.equal(ap, T.boundaryMonomial(b, 1)));
      CHECK(T.equal(am, T.boundaryMonomial(b, -1)));
      // the two signs are exact mutual inverses
      CHECK(T.equal(T.mul(ap, am), T.one()));
      // the presentation power is sign-independent (asserted internally too)
      CHECK(unitPlus == unitMinus);
      // the raw diagram trace is that unit power times the monomial
      TorusTerms raw = quantumTrace(T, boundaryArcDiagram(tri, b, kPlus));
      CHECK(T.equal(raw, T.scale(T.omega(unitPlus), ap)));
    }
  }
}

TEST_CASE("punctured-disc boundary: ordered product of single arcs is exact") {
  Triangulation tri = loadFixture("punctured_disc.tri");
  QuantumTorus T(tri);
  for (int st : {kPlus, kMinus}) {
    TorusTerms prod = T.one();
    for (int v : boundaryVertexCycle(tri, 0)) {
      StatedDiagram d = allStates(tri, cornerIndicatorAtVertex(tri, v), st);
      prod = T.mul(prod, quantumTrace(T, d));
    }
    CHECK(T.equal(prod, T.boundaryMonomial(0, st == kPlus ? 1 : -1)));
  }
}

TEST_CASE("boundary cap relation on the triangle") {
  // For the two points of a boundary edge word with states (earlier +,
  // later -), in the height order increasing along the boundary:
  //   [.., +, -] = w^4 [.., -, +] + w^-1 [capped diagram],
  // where capping two adjacent corner arcs at their common side yields the
  // third corner arc.  This relation pins the mixed-state corner-arc image
  // that the evaluator derives at startup.
  Triangulation tri = loadFixture("triangle.tri");
  QuantumTorus T(tri);
  auto edgeAt = [&](int slot) {
    for (int e = 0; e < tri.edgeCount(); ++e)
      if (tri.edgeUses(e)[0].slot == slot) return e;
    return -1;
  };
  auto traceOrZero = [&](const StatedDiagram& d) -> TorusTerms {
    try {
      return quantumTrace(T, d);
    } catch (const DiagramError&) {
      return T.zero();
    }
  };
  for (int c = 0; c < 3; ++c) {
    int eC = edgeAt(c), eC1 = edgeAt((c + 1) % 3), eC2 = edgeAt((c + 2) % 3);
    for (int a1 : {kPlus, kMinus})
      for (int a2 : {kPlus, kMinus}) {
        CAPTURE(c);
        CAPTURE(a1);
        CAPTURE(a2);
        CornerVector w2(3, 0);
        w2[c] = 1;
        w2[(c + 1) % 3] = 1;
        StatedDiagram X = fromCornerWeights(tri, w2);
        X.states[eC] = {a1};
        X.states[eC1] = {kPlus, kMinus};
        X.states[eC2] = {a2};
        StatedDiagram Xswap = X;
        Xswap.states[eC1] = {kMinus, kPlus};
        CornerVector wy(3, 0);
        wy[(c + 2) % 3] = 1;
        StatedDiagram Y = fromCornerWeights(tri, wy);
        Y.states[eC] = {a1};
        Y.states[eC2] = {a2};
        TorusTerms rhs = T.add(T.scale(T.omega(4), traceOrZero(Xswap)),
                               T.scale(T.omega(-1), traceOrZero(Y)));
        CHECK(T.equal(traceOrZero(X), rhs));
      }
  }
}

TEST_CASE("a stacked two-cable squares the single-arc trace") {
  Triangulation tri = loadFixture("punctured_disc.tri");
  QuantumTorus T(tri);
  CornerVector w = cornerIndicatorAtVertex(tri, 0);
  StatedDiagram probe = fromCornerWeights(tri, w);
  std::vector<int> bEdges;
  for (int e = 0; e < tri.edgeCount(); ++e)
    if (!probe.states[e].empty()) bEdges.push_back(e);
  REQUIRE(bEdges.size() == 2);

  CornerVector w2 = w;
  for (long& x : w2) x *= 2;
  StatedDiagram cable = fromCornerWeights(tri, w2);
  DiagramGeometry geom(tri, cable.weights);
  REQUIRE(geom.components().size() == 2);

  int goodTop = -1;
  for (int top = 0; top < 2 && goodTop < 0; ++top) {
    auto heights = stackHeights(geom, top);
    bool ok = true;
    int tested = 0;
    for (int sa : {kPlus, kMinus})
      for (int sb : {kPlus, kMinus}) {
        StatedDiagram single = probe, cab = cable;
        for (int& s : single.states[bEdges[0]]) s = sa;
        for (int& s : single.states[bEdges[1]]) s = sb;
        for (int& s : cab.states[bEdges[0]]) s = sa;
        for (int& s : cab.states[bEdges[1]]) s = sb;
        TorusTerms x;
        try {
          x = quantumTrace(T, single);
        } catch (const DiagramError&) {
          continue;  // bad-arc state pair
        }
        ++tested;
        if (!T.equal(quantumTrace(T, cab, heights), T.mul(x, x))) ok = false;
      }
    if (ok && tested >= 3) goodTop = top;
  }
  CHECK(goodTop >= 0);
}

TEST_CASE("stacking one component on top factors the trace") {
  // Presenting a multi-component all-plus diagram with one component
  // entirely above the rest evaluates to the product (top on the left) of
  // the component traces.
  std::mt19937 rng(11);
  for (const char* name : kFixtures) {
    CAPTURE(name);
    Triangulation tri = loadFixture(name);
    QuantumTorus T(tri);
    int done = 0, tries = 0;
    while (done < 4 && ++tries < 200) {
      EdgeVector k = randomNormalVector(tri, rng, 2);
      StatedDiagram d = fromTrainTrack(tri, k);
      DiagramGeometry geom(tri, d.weights);
      int nComp = static_cast<int>(geom.components().size());
      if (nComp < 2) continue;
      int top = std::uniform_int_distribution<int>(0, nComp - 1)(rng);
      CornerVector wTop(3 * tri.faceCount(), 0), wRest(3 * tri.faceCount(), 0);
      const auto& segs = geom.segments();
      for (size_t i = 0; i < segs.size(); ++i) {
        CornerVector& w =
            geom.componentOf(static_cast<int>(i)) == top ? wTop : wRest;
        w[3 * segs[i].face + segs[i].corner] += 1;
      }
      TorusTerms whole = quantumTrace(T, d, stackHeights(geom, top));
      TorusTerms a = quantumTrace(T, fromCornerWeights(tri, wTop));
      TorusTerms b = quantumTrace(T, fromCornerWeights(tri, wRest));
      CHECK(T.equal(whole, T.mul(a, b)));
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("leading-term exponent equals the diagram valuation") {
  std::mt19937 rng(5);
  for (const char* name : kFixtures) {
    CAPTURE(name);
    Triangulation tri = loadFixture(name);
    QuantumTorus T(tri);
    int done = 0;
    while (done < 8) {
      EdgeVector k = randomNormalVector(tri, rng, 3);
      StatedDiagram d = randomStated(tri, k, rng);
      TorusTerms x;
      try {
        x = quantumTrace(T, d);
      } catch (const DiagramError&) {
        continue;  // bad arc
      }
      ++done;
      auto [lead, coeff] = leadingTerm(x);
      CHECK(lead == diagramValuation(tri, d));
      long kk = 0, cc = 0;
      CHECK(coeff.isUnitMonomial(kk, cc));
    }
  }
}

TEST_CASE("trace is injective on small basis diagrams of the triangle") {
  Triangulation tri = loadFixture("triangle.tri");
  QuantumTorus T(tri);
  std::vector<TorusTerms> seen;
  for (long w0 = 0; w0 <= 2; ++w0)
    for (long w1 = 0; w1 <= 2; ++w1)
      for (long w2 = 0; w2 <= 2; ++w2) {
        StatedDiagram base = fromCornerWeights(tri, {w0, w1, w2});
        // all nondecreasing state words
        std::vector<StatedDiagram> variants{base};
        for (int e = 0; e < tri.edgeCount(); ++e) {
          std::vector<StatedDiagram> next;
          for (const StatedDiagram& d : variants)
            for (size_t minus = 0; minus <= d.states[e].size(); ++minus) {
              StatedDiagram d2 = d;
              for (size_t i = 0; i < d2.states[e].size(); ++i)
                d2.states[e][i] = i < minus ? kMinus : kPlus;
              next.push_back(d2);
            }
          variants = next;
        }
        for (const StatedDiagram& d : variants) {
          TorusTerms x;
          try {
            x = quantumTrace(T, d);
          } catch (const DiagramError&) {
            continue;  // bad arc
          }
          for (const TorusTerms& y : seen) CHECK(!T.equal(x, y));
          seen.push_back(x);
        }
      }
  CHECK(seen.size() > 20);
}

TEST_CASE("root-mode trace matches the generic trace reduced at the root") {
  Triangulation tri = loadFixture("punctured_disc.tri");
  QuantumTorus T(tri);
  QuantumTorus T3(tri, 3);
  std::mt19937 rng(3);
  int done = 0;
  while (done < 5) {
    EdgeVector k = randomNormalVector(tri, rng, 2);
    StatedDiagram d = randomStated(tri, k, rng);
    TorusTerms generic, root;
    try {
      generic = quantumTrace(T, d);
      root = quantumTrace(T3, d);
    } catch (const DiagramError&) {
      continue;
    }
    ++done;
    TorusTerms reduced;
    for (const auto& [kk, c] : generic) {
      Scalar cr = c.toRoot(3);
      if (!cr.isZero()) reduced.emplace(kk, cr);
    }
    CHECK(T3.equal(root, reduced));
  }
}

TEST_CASE("perturbed conventions break the audited identities") {
  Triangulation tri = loadFixture("punctured_disc.tri");
  QuantumTorus T(tri);
  int v = tri.innerVertices().at(0);
  StatedDiagram d = fromCornerWeights(tri, cornerIndicatorAtVertex(tri, v));
  TorusTerms want =
      T.add(T.punctureMonomial(v), T.pow(T.punctureMonomial(v), -1));

  // doubled loop (mixed-state exchanges between the copies)
  CornerVector w2 = cornerIndicatorAtVertex(tri, v);
  for (long& x : w2) x *= 2;
  StatedDiagram dd = fromCornerWeights(tri, w2);

  // a cap-relation instance on the standalone triangle
  Triangulation tr3 = loadFixture("triangle.tri");
  QuantumTorus T3(tr3);
  auto edgeAt = [&](int slot) {
    for (int e = 0; e < tr3.edgeCount(); ++e)
      if (tr3.edgeUses(e)[0].slot == slot) return e;
    return -1;
  };
  auto traceOrZero = [&](const StatedDiagram& x, const TraceConventions& conv) {
    try {
      return quantumTrace(T3, x, conv);
    } catch (const DiagramError&) {
      return T3.zero();
    }
  };
  auto capHolds = [&](const TraceConventions& conv) {
    for (int c = 0; c < 3; ++c) {
      int eC = edgeAt(c), eC1 = edgeAt((c + 1) % 3), eC2 = edgeAt((c + 2) % 3);
      for (int a1 : {kPlus, kMinus})
        for (int a2 : {kPlus, kMinus}) {
          CornerVector wx(3, 0);
          wx[c] = 1;
          wx[(c + 1) % 3] = 1;
          StatedDiagram X = fromCornerWeights(tr3, wx);
          X.states[eC] = {a1};
          X.states[eC1] = {kPlus, kMinus};
          X.states[eC2] = {a2};
          StatedDiagram Xswap = X;
          Xswap.states[eC1] = {kMinus, kPlus};
          CornerVector wy(3, 0);
          wy[(c + 2) % 3] = 1;
          StatedDiagram Y = fromCornerWeights(tr3, wy);
          Y.states[eC] = {a1};
          Y.states[eC2] = {a2};
          TorusTerms rhs =
              T3.add(T3.scale(T3.omega(4), traceOrZero(Xswap, conv)),
                     T3.scale(T3.omega(-1), traceOrZero(Y, conv)));
          if (!T3.equal(traceOrZero(X, conv), rhs)) return false;
        }
    }
    return true;
  };
  auto breaks = [&](const TraceConventions& conv) {
    try {
      if (!T.equal(quantumTrace(T, d, conv), want)) return true;
      if (!T.equal(quantumTrace(T, dd, conv), T.mul(want, want))) return true;
      if (!capHolds(conv)) return true;
      boundaryElementTrace(T, 0, kPlus, nullptr, conv);
      return false;
    } catch (const TraceError&) {
      return true;
    }
  };

  TraceConventions c1;
  c1.exchangeSign = +1;
  CHECK(breaks(c1));
  TraceConventions c2;
  c2.mixedArcExponent = 2;
  CHECK(breaks(c2));
  TraceConventions c3;
  c3.twoTermOnCrossed = false;
  CHECK(breaks(c3));
  TraceConventions c4;
  c4.mixedArcCoeffSign = -1;
  CHECK(breaks(c4));
}
