// Dev-only: hunt for a height presentation of the boundary multi-arc
// diagram whose trace is exactly the boundary central monomial.
#include <cstdio>
#include <fstream>
#include <map>
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

static CornerVector vertexWeights(const Triangulation& tri, int v) {
  CornerVector w(3 * tri.faceCount(), 0);
  for (const Corner& c : tri.cornersAtVertex(v)) w[3 * c.face + c.corner] += 1;
  return w;
}

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

// Which vertex of the cycle owns a given boundary point of the diagram:
// the point belongs to the unique corner-arc segment at that point.
static int pointVertex(const Triangulation& tri, const DiagramGeometry& geom,
                       const PointRef& p) {
  const auto& segs = geom.segments();
  for (size_t i = 0; i < segs.size(); ++i)
    if (segs[i].pEnd == p || segs[i].qEnd == p) {
      const Segment& s = segs[i];
      return tri.vertexAtCorner({s.face, s.corner});
    }
  return -1;
}

int main() {
  for (const char* name : {"punctured_disc", "hexagon", "annulus", "square",
                           "holed_torus", "triangle"}) {
    Triangulation tri = load(name);
    QuantumTorus T(tri);
    for (int b = 0; b < tri.boundaryComponentCount(); ++b) {
      std::vector<int> cycle = boundaryVertexCycle(tri, b);
      CornerVector wAll(3 * tri.faceCount(), 0);
      for (int v : cycle) {
        CornerVector wv = vertexWeights(tri, v);
        for (size_t i = 0; i < wAll.size(); ++i) wAll[i] += wv[i];
      }
      StatedDiagram d = fromCornerWeights(tri, wAll);
      DiagramGeometry geom(tri, d.weights);
      // layer[v] = stacking layer of the arc around v (smaller = higher).
      std::map<int, int> layer;
      for (size_t i = 0; i < cycle.size(); ++i) layer[cycle[i]] = (int)i;
      for (int variant = 0; variant < 2; ++variant) {
        std::map<int, std::vector<int>> h;
        for (int e = 0; e < tri.edgeCount(); ++e) {
          int m = geom.pointCount(e);
          if (m == 0 || !tri.isBoundaryEdge(e)) continue;
          // boundary position -> (layer, keep boundary order within layer)
          std::vector<std::pair<int, int>> key(m);
          for (int pos = 1; pos <= m; ++pos) {
            PointRef p{e, pos};
            int bpos = geom.boundaryOrder(p);
            int lay = layer[pointVertex(tri, geom, p)];
            key[bpos - 1] = {lay, bpos};
          }
          std::vector<int> ranks(m);
          for (int i = 0; i < m; ++i) {
            int r = 1;
            for (int j = 0; j < m; ++j)
              if (j != i && (key[j].first > key[i].first ||
                             (key[j].first == key[i].first &&
                              key[j].second < key[i].second)))
                ++r;
            // rank: higher layer number = lower height; variant flips.
            ranks[i] = variant == 0 ? r : m + 1 - r;
          }
          h[e] = ranks;
        }
        for (int st : {kPlus, kMinus}) {
          StatedDiagram dd = d;
          for (auto& word : dd.states)
            for (int& s : word) s = st;
          TorusTerms got = quantumTrace(T, dd, h);
          TorusTerms dflt = quantumTrace(T, dd);
          TorusTerms want = T.boundaryMonomial(b, st == kPlus ? 1 : -1);
          auto show = [&](const TorusTerms& x) {
            long k = 0, c = 0;
            x.begin()->second.isUnitMonomial(k, c);
            return std::make_pair(k, c);
          };
          auto [gk, gc] = show(got);
          auto [dk, dc] = show(dflt);
          bool shape = got.size() == 1 && got.begin()->first == want.begin()->first;
          std::printf("%-14s b%d var%d st%+d: stacked w^%ld(c%+ld) default w^%ld(c%+ld) shape=%d\n",
                      name, b, variant, st, gk, gc, dk, dc, (int)shape);
        }
      }
    }
  }
  return 0;
}
