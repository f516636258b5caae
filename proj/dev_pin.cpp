// Dev-only: brute-force the TraceConventions knob space against the
// audit identities and report all passing combinations.
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "cfq/qtrace.hpp"

using namespace cfq;

static Triangulation load(const std::string& name) {
  std::ifstream in("/root/proj/fixtures/" + name + ".tri");
  std::stringstream ss;
  ss << in.rdbuf();
  return Triangulation::parse(ss.str());
}

// Corner-arc multiplicities of the arc/loop around vertex v.
static CornerVector vertexWeights(const Triangulation& tri, int v, int mult = 1) {
  CornerVector w(3 * tri.faceCount(), 0);
  for (const Corner& c : tri.cornersAtVertex(v)) w[3 * c.face + c.corner] += mult;
  return w;
}

static StatedDiagram allStates(const Triangulation& tri, const CornerVector& w,
                               int state) {
  StatedDiagram d = fromCornerWeights(tri, w);
  for (auto& word : d.states)
    for (int& s : word) s = state;
  return d;
}

// Boundary vertices of component b, in boundary-walk order.
static std::vector<int> boundaryVertexCycle(const Triangulation& tri, int b) {
  int start = -1;
  for (int e = 0; e < tri.edgeCount() && start < 0; ++e)
    if (tri.boundaryComponentOfEdge(e) == b) start = e;
  std::vector<int> cycle;
  int e = start;
  do {
    const EdgeUse& u = tri.edgeUses(e)[0];
    int head = tri.vertexAtCorner({u.face, u.slot});
    cycle.push_back(head);
    // next boundary edge: the one whose tail is `head`
    int next = -1;
    for (int e2 = 0; e2 < tri.edgeCount(); ++e2) {
      if (tri.boundaryComponentOfEdge(e2) != b) continue;
      const EdgeUse& u2 = tri.edgeUses(e2)[0];
      if (tri.vertexAtCorner({u2.face, (u2.slot + 2) % 3}) == head) { next = e2; break; }
    }
    e = next;
  } while (e != start && e >= 0);
  return cycle;
}

static int pointComponent(const DiagramGeometry& geom, const PointRef& p) {
  const auto& segs = geom.segments();
  for (size_t i = 0; i < segs.size(); ++i)
    if (segs[i].pEnd == p || segs[i].qEnd == p)
      return geom.componentOf(static_cast<int>(i));
  return -1;
}

// Height map stacking every point of `topComponent` above all others,
// keeping positive-direction order within each layer.
static std::map<int, std::vector<int>> stackHeights(const DiagramGeometry& geom,
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

struct Audit {
  bool pass = false;
  std::string why;
};

static Audit runAudits(const TraceConventions& conv) {
  Audit a;
  try {
    for (const char* name :
         {"punctured_disc", "hexagon", "annulus", "square", "holed_torus"}) {
      Triangulation tri = load(name);
      QuantumTorus T(tri);

      // B1: peripheral loop around each inner puncture -> H_p + H_p^-1.
      for (int v : tri.innerVertices()) {
        StatedDiagram d = fromCornerWeights(tri, vertexWeights(tri, v));
        TorusTerms got = quantumTrace(T, d, conv);
        TorusTerms want =
            T.add(T.punctureMonomial(v), T.pow(T.punctureMonomial(v), -1));
        if (!T.equal(got, want)) { a.why = std::string(name) + " gamma"; return a; }

        // B2: doubled loop -> (H_p + H_p^-1)^2, exercising mixed-state exchanges.
        StatedDiagram d2 = fromCornerWeights(tri, vertexWeights(tri, v, 2));
        TorusTerms got2 = quantumTrace(T, d2, conv);
        if (!T.equal(got2, T.mul(want, want))) {
          a.why = std::string(name) + " doubled gamma: " + T.str(got2);
          return a;
        }
      }

      // B3: boundary elements.
      for (int b = 0; b < tri.boundaryComponentCount(); ++b) {
        std::vector<int> cycle = boundaryVertexCycle(tri, b);
        (void)cycle;
        for (int st : {kPlus, kMinus}) {
          int sign = (st == kPlus) ? 1 : -1;
          // (a) the full multi-arc diagram traces to omega^m * H_b^{+-1}
          CornerVector wAll(3 * tri.faceCount(), 0);
          for (int v : cycle) {
            CornerVector wv = vertexWeights(tri, v);
            for (size_t i = 0; i < wAll.size(); ++i) wAll[i] += wv[i];
          }
          TorusTerms whole = quantumTrace(T, allStates(tri, wAll, st), conv);
          TorusTerms target = T.boundaryMonomial(b, sign);
          if (whole.size() != 1 || whole.begin()->first != target.begin()->first) {
            a.why = std::string(name) + " b" + std::to_string(b) + " diagram shape";
            return a;
          }
          long mk = 0, mc = 0;
          if (!whole.begin()->second.isUnitMonomial(mk, mc) || mc != 1) {
            a.why = std::string(name) + " b" + std::to_string(b) + " diagram coeff";
            return a;
          }
          (void)mk;
        }
      }
    }

    // B3': punctured disc boundary: ordered product of the two commuting
    // single-arc traces equals H_b^{+-1} exactly.
    {
      Triangulation tri = load("punctured_disc");
      QuantumTorus T(tri);
      for (int st : {kPlus, kMinus}) {
        TorusTerms prod = T.one();
        for (int v : boundaryVertexCycle(tri, 0)) {
          StatedDiagram d = allStates(tri, vertexWeights(tri, v), st);
          prod = T.mul(prod, quantumTrace(T, d, conv));
        }
        if (!T.equal(prod, T.boundaryMonomial(0, st == kPlus ? 1 : -1))) {
          a.why = std::string("pd product") + (st == kPlus ? "+" : "-") +
                  " got " + T.str(prod);
          return a;
        }
      }
    }

    // B4: 2-cable of the corner arc around v_A on the punctured disc,
    // stacked with one copy entirely on top, must equal the squared
    // single-arc trace for every admissible boundary state pair.
    {
      Triangulation tri = load("punctured_disc");
      QuantumTorus T(tri);
      CornerVector w = vertexWeights(tri, 0);  // arc around vertex 0
      // locate the two boundary edges carrying the endpoints
      StatedDiagram probe = fromCornerWeights(tri, w);
      std::vector<int> bEdges;
      for (int e = 0; e < tri.edgeCount(); ++e)
        if (!probe.states[e].empty()) bEdges.push_back(e);
      if (bEdges.size() != 2) { a.why = "B4 setup"; return a; }

      CornerVector w2 = w;
      for (long& x : w2) x *= 2;
      StatedDiagram cable = fromCornerWeights(tri, w2);
      DiagramGeometry geom(tri, cable.weights);
      int nComp = static_cast<int>(geom.components().size());
      if (nComp != 2) { a.why = "B4 components"; return a; }

      int goodTop = -1;  // which component-on-top choice matches throughout
      for (int top = 0; top < 2; ++top) {
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
            try { x = quantumTrace(T, single, conv); }
            catch (const DiagramError&) { continue; }  // bad-arc state pair
            ++tested;
            TorusTerms got = quantumTrace(T, cab, heights, conv);
            if (!T.equal(got, T.mul(x, x))) { ok = false; }
          }
        if (ok && tested >= 3) { goodTop = top; break; }
      }
      if (goodTop < 0) { a.why = "B4 cable"; return a; }
    }

    // B5: boundary cap relation on the triangle, at the level of basis
    // (heights increasing along the positive boundary direction)
    // presentations. For the two points of a boundary edge word with
    // states (earlier +, later -):
    //   [.., +, -] = w^4 [.., -, +] + w^-1 * [capped diagram].
    // (The textbook form A^2 [..] + w [cap] applies to crossed-height
    // presentations; converting both sides to basis presentations via the
    // exchange moves turns the coefficients into w^4 and w^-1.)
    // Capping two adjacent corner arcs at their common side yields the
    // third corner arc, whose mixed-state image this relation pins.
    {
      Triangulation tri = load("triangle");
      QuantumTorus T(tri);
      auto edgeAt = [&](int slot) {
        for (int e = 0; e < tri.edgeCount(); ++e)
          if (tri.edgeUses(e)[0].slot == slot) return e;
        return -1;
      };
      auto traceOrZero = [&](const StatedDiagram& d) -> TorusTerms {
        try { return quantumTrace(T, d, conv); }
        catch (const DiagramError&) { return T.zero(); }
      };
      for (int c = 0; c < 3; ++c) {
        int eC = edgeAt(c), eC1 = edgeAt((c + 1) % 3), eC2 = edgeAt((c + 2) % 3);
        for (int a1 : {kPlus, kMinus})
          for (int a2 : {kPlus, kMinus}) {
            // adjacent corners c, c+1 capped at side c+1 -> corner-(c+2) arc.
            CornerVector w2(3 * tri.faceCount(), 0);
            w2[3 * 0 + c] = 1;
            w2[3 * 0 + (c + 1) % 3] = 1;
            StatedDiagram X2 = fromCornerWeights(tri, w2);
            X2.states[eC] = {a1};
            X2.states[eC1] = {kPlus, kMinus};
            X2.states[eC2] = {a2};
            StatedDiagram X2p = X2;
            X2p.states[eC1] = {kMinus, kPlus};
            CornerVector wy(3 * tri.faceCount(), 0);
            wy[3 * 0 + (c + 2) % 3] = 1;
            StatedDiagram Y = fromCornerWeights(tri, wy);
            Y.states[eC] = {a1};   // Q end of the corner-(c+2) arc
            Y.states[eC2] = {a2};  // P end
            TorusTerms rhs2 = T.add(T.scale(T.omega(4), traceOrZero(X2p)),
                                    T.scale(T.omega(-1), traceOrZero(Y)));
            if (!T.equal(traceOrZero(X2), rhs2)) {
              a.why = "B5 pair c" + std::to_string(c) + (a1 > 0 ? "+" : "-") +
                      (a2 > 0 ? "+" : "-");
              return a;
            }
          }
      }
    }
  } catch (const std::exception& e) {
    a.why = std::string("threw: ") + e.what();
    return a;
  }
  a.pass = true;
  return a;
}

int main() {
  std::vector<TraceConventions> winners;
  for (int sign : {+1, -1})
    for (int tfm : {0, 1})
      for (int toc : {0, 1})
        for (int ihe : {0, 1})
          for (int bhb : {0, 1})
            for (long mix = -6; mix <= 6; ++mix)
              for (int msign : {+1, -1}) {
                TraceConventions c;
                c.exchangeSign = sign;
                c.twoTermWhenFirstMinus = tfm;
                c.twoTermOnCrossed = toc;
                c.interiorHeightsAlongEdge = ihe;
                c.boundaryHeightsAlongBoundary = bhb;
                c.mixedArcExponent = mix;
                c.mixedArcCoeffSign = msign;
                Audit a = runAudits(c);
                if (a.pass) {
                  std::printf("PASS sign=%+d firstMinus=%d onCrossed=%d intAlong=%d bdAlong=%d mix=%ld msign=%+d\n",
                              sign, tfm, toc, ihe, bhb, mix, msign);
                  winners.push_back(c);
                }
              }
  std::printf("total passing: %zu\n", winners.size());
  if (winners.empty()) {
    // diagnostics: print the failure reason of every combo at mix=-1
    for (int sign : {+1, -1})
      for (int tfm : {0, 1})
        for (int toc : {0, 1})
          for (int ihe : {0, 1})
            for (int bhb : {0, 1}) {
              TraceConventions c;
              c.exchangeSign = sign;
              c.twoTermWhenFirstMinus = tfm;
              c.twoTermOnCrossed = toc;
              c.interiorHeightsAlongEdge = ihe;
              c.boundaryHeightsAlongBoundary = bhb;
              c.mixedArcExponent = -1;
              Audit a = runAudits(c);
              std::printf("diag %+d %d %d %d %d: %s\n", sign, tfm, toc, ihe, bhb,
                          a.why.c_str());
            }
    return 1;
  }

  // Agreement among winners with the definitional boundary height order
  // (increasing along the positive boundary direction) and fixed mix=0.
  std::vector<TraceConventions> group;
  for (const TraceConventions& c : winners)
    if (c.boundaryHeightsAlongBoundary) group.push_back(c);
  std::printf("group size (bdAlong=1): %zu\n", group.size());
  TraceConventions other;  // a bdAlong=0 representative, for contrast
  bool haveOther = false;
  for (const TraceConventions& c : winners)
    if (!c.boundaryHeightsAlongBoundary) {
      other = c; haveOther = true; break;
    }

  // Pairwise agreement matrix across the group on a random battery.
  std::mt19937 rng(7);
  size_t n = group.size();
  std::vector<std::vector<int>> differ(n, std::vector<int>(n, 0));
  int otherDiffers = 0, total = 0;
  for (const char* name : {"square", "annulus", "punctured_disc", "hexagon"}) {
    Triangulation tri = load(name);
    QuantumTorus T(tri);
    for (int it = 0; it < 40; ++it) {
      EdgeVector k(tri.edgeCount());
      bool ok = true;
      StatedDiagram d;
      for (int tries = 0; tries < 200; ++tries) {
        for (long& x : k) x = rng() % 4;
        try { d = fromTrainTrack(tri, k); ok = true; break; }
        catch (...) { ok = false; }
      }
      if (!ok) continue;
      for (auto& word : d.states) {
        int flips = word.empty() ? 0 : rng() % (word.size() + 1);
        for (size_t i = 0; i < word.size(); ++i)
          word[i] = (static_cast<int>(i) < flips) ? kMinus : kPlus;
      }
      std::vector<TorusTerms> vals(n);
      try {
        for (size_t wi = 0; wi < n; ++wi) vals[wi] = quantumTrace(T, d, group[wi]);
      } catch (...) { continue; }  // bad-arc diagram, skip
      ++total;
      for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
          if (!T.equal(vals[a], vals[b])) ++differ[a][b];
      if (haveOther) {
        try {
          if (!T.equal(vals[0], quantumTrace(T, d, other))) ++otherDiffers;
        } catch (...) {}
      }
    }
  }
  std::printf("battery: %d diagrams; bdAlong=0 rep differs on %d\n", total, otherDiffers);
  for (size_t a = 0; a < n; ++a) {
    const TraceConventions& c = group[a];
    std::printf("member %2zu (sign=%+d fm=%d oc=%d ia=%d mix=%+ld ms=%+d): ",
                a, c.exchangeSign, (int)c.twoTermWhenFirstMinus,
                (int)c.twoTermOnCrossed, (int)c.interiorHeightsAlongEdge,
                c.mixedArcExponent, c.mixedArcCoeffSign);
    for (size_t b = 0; b < n; ++b)
      std::printf("%4d", a < b ? differ[a][b] : (b < a ? differ[b][a] : 0));
    std::printf("\n");
  }
  return 0;
}
