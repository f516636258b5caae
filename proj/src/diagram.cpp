#include "cfq/diagram.hpp"

#include <algorithm>

namespace cfq {

namespace {

int slotStartCorner(int slot) { return (slot + 2) % 3; }  // corner at side tail
int slotEndCorner(int slot) { return slot; }              // corner at side head

}  // namespace

DiagramGeometry::DiagramGeometry(const Triangulation& tri, const CornerVector& weights)
    : tri_(&tri), weights_(weights) {
  if (static_cast<int>(weights.size()) != 3 * tri.faceCount())
    throw DiagramError("corner weight vector has wrong length");
  for (long w : weights)
    if (w < 0) throw DiagramError("corner weights must be nonnegative");
  if (!satisfiesSwitchCondition(tri, weights))
    throw DiagramError("corner weights violate the switch condition");

  counts_.resize(tri.edgeCount(), 0);
  offsets_.resize(tri.edgeCount() + 1, 0);
  for (int e = 0; e < tri.edgeCount(); ++e) {
    const EdgeUse& u = tri.edgeUses(e).front();
    counts_[e] = static_cast<int>(slotWeight(weights_, u.face, u.slot));
    offsets_[e + 1] = offsets_[e] + counts_[e];
  }
  total_ = offsets_.back();

  // Segments, ordered by (face, corner, copy).
  for (int f = 0; f < tri.faceCount(); ++f) {
    for (int c = 0; c < 3; ++c) {
      long wc = weights_[3 * f + c];
      long before = weights_[3 * f + slotStartCorner(c)];  // corner c-1 count on side c
      for (long t = 1; t <= wc; ++t) {
        Segment s;
        s.face = f;
        s.corner = c;
        s.copy = static_cast<int>(t);
        // P end: side c, whose head is the corner-c vertex; innermost copy
        // sits closest to the head.
        s.pEnd = facePoint(f, c, static_cast<int>(before + wc - t + 1));
        // Q end: side c+1, whose tail is the corner-c vertex.
        s.qEnd = facePoint(f, (c + 1) % 3, static_cast<int>(t));
        segments_.push_back(s);
      }
    }
  }

  pointSegments_.assign(total_, {});
  for (size_t i = 0; i < segments_.size(); ++i) {
    pointSegments_[pointIndex(segments_[i].pEnd)].push_back({static_cast<int>(i), false});
    pointSegments_[pointIndex(segments_[i].qEnd)].push_back({static_cast<int>(i), true});
  }
  for (int e = 0; e < tri.edgeCount(); ++e) {
    size_t expect = tri.isBoundaryEdge(e) ? 1 : 2;
    for (int p = 1; p <= counts_[e]; ++p)
      if (pointSegments_[pointIndex({e, p})].size() != expect)
        throw DiagramError("internal error: inconsistent point incidence");
  }

  // Trace components.  Open components first, started from the smallest
  // boundary point; then closed ones from the smallest unvisited segment.
  componentOf_.assign(segments_.size(), -1);
  std::vector<char> visited(segments_.size(), 0);
  auto walk = [&](int seg, bool atQ, DiagramComponent& comp) {
    for (;;) {
      visited[seg] = 1;
      componentOf_[seg] = static_cast<int>(components_.size());
      comp.segments.push_back(seg);
      comp.enteredAtQ.push_back(atQ);
      PointRef exit = atQ ? segments_[seg].pEnd : segments_[seg].qEnd;
      const auto& owners = pointSegments_[pointIndex(exit)];
      if (owners.size() == 1) { comp.end = exit; return true; }   // boundary
      for (const auto& [s2, q2] : owners) {
        if (s2 == seg) continue;  // the end of the current segment we exit at
        if (visited[s2]) { comp.end = exit; return false; }       // loop closed
        seg = s2;
        atQ = q2;
        break;
      }
    }
  };
  for (int pi = 0; pi < total_; ++pi) {
    if (pointSegments_[pi].size() != 1) continue;
    auto [seg, atQ] = pointSegments_[pi].front();
    if (visited[seg]) continue;
    DiagramComponent comp;
    comp.closed = false;
    comp.start = pointAt(pi);
    walk(seg, atQ, comp);
    components_.push_back(std::move(comp));
  }
  for (size_t s = 0; s < segments_.size(); ++s) {
    if (visited[s]) continue;
    DiagramComponent comp;
    comp.closed = true;
    walk(static_cast<int>(s), true, comp);
    components_.push_back(std::move(comp));
  }
}

int DiagramGeometry::pointIndex(const PointRef& p) const {
  if (p.edge < 0 || p.edge >= tri_->edgeCount() || p.pos < 1 || p.pos > counts_[p.edge])
    throw DiagramError("point reference out of range");
  return offsets_[p.edge] + p.pos - 1;
}

PointRef DiagramGeometry::pointAt(int index) const {
  int e = 0;
  while (offsets_[e + 1] <= index) ++e;
  return {e, index - offsets_[e] + 1};
}

int DiagramGeometry::boundaryOrder(const PointRef& p) const {
  if (!tri_->isBoundaryEdge(p.edge))
    throw DiagramError("boundaryOrder: interior edge");
  const EdgeUse& u = tri_->edgeUses(p.edge).front();
  return u.forward ? p.pos : counts_[p.edge] - p.pos + 1;
}

PointRef DiagramGeometry::facePoint(int face, int slot, int tpos) const {
  DirectedEdge de = tri_->faces()[face].side[slot];
  int m = counts_[de.edge];
  if (tpos < 1 || tpos > m) throw DiagramError("face point out of range");
  return {de.edge, de.forward ? tpos : m - tpos + 1};
}

std::pair<int, bool> DiagramGeometry::segmentAt(int face, int slot, int tpos) const {
  const auto& owners = pointSegments_[pointIndex(facePoint(face, slot, tpos))];
  for (const auto& [s, q] : owners)
    if (segments_[s].face == face) return {s, q};
  throw DiagramError("no segment at face point");
}

void validateDiagram(const Triangulation& tri, const StatedDiagram& d,
                     bool requireIncreasing, bool requireGood) {
  DiagramGeometry geom(tri, d.weights);  // validates weights
  if (static_cast<int>(d.states.size()) != tri.edgeCount())
    throw DiagramError("state table has wrong length");
  for (int e = 0; e < tri.edgeCount(); ++e) {
    const auto& word = d.states[e];
    if (!tri.isBoundaryEdge(e)) {
      if (!word.empty()) throw DiagramError("state word on an interior edge");
      continue;
    }
    if (static_cast<int>(word.size()) != geom.pointCount(e))
      throw DiagramError("state word length does not match crossing count");
    for (int s : word)
      if (s != kPlus && s != kMinus) throw DiagramError("states must be +1 or -1");
    if (requireIncreasing)
      for (size_t i = 1; i < word.size(); ++i)
        if (word[i - 1] == kPlus && word[i] == kMinus)
          throw DiagramError("state word must be nondecreasing along the boundary");
  }
  if (requireGood) maximalAdmissibleState(geom, d);  // throws on bad arcs
}

int boundaryState(const DiagramGeometry& geom, const StatedDiagram& d,
                  const PointRef& p) {
  return d.states[p.edge][geom.boundaryOrder(p) - 1];
}

std::vector<FullState> enumerateAdmissibleStates(const DiagramGeometry& geom,
                                                 const StatedDiagram& d,
                                                 long budget) {
  const Triangulation& tri = geom.surface();
  int n = geom.totalPoints();
  std::vector<int> fixed(n, 0);  // 0 = free
  for (int e = 0; e < tri.edgeCount(); ++e) {
    if (!tri.isBoundaryEdge(e)) continue;
    for (int p = 1; p <= geom.pointCount(e); ++p) {
      PointRef ref{e, p};
      fixed[geom.pointIndex(ref)] = boundaryState(geom, d, ref);
    }
  }
  // Segments become checkable at the larger of their endpoint indices.
  std::vector<std::vector<int>> checkAt(n);
  for (size_t s = 0; s < geom.segments().size(); ++s) {
    int ip = geom.pointIndex(geom.segments()[s].pEnd);
    int iq = geom.pointIndex(geom.segments()[s].qEnd);
    checkAt[std::max(ip, iq)].push_back(static_cast<int>(s));
  }

  std::vector<FullState> out;
  FullState cur(n, 0);
  long nodes = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (++nodes > budget) throw DiagramError("state enumeration budget exceeded");
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int s : {kMinus, kPlus}) {
      if (fixed[i] != 0 && fixed[i] != s) continue;
      cur[i] = s;
      bool ok = true;
      for (int seg : checkAt[i]) {
        int sq = cur[geom.pointIndex(geom.segments()[seg].qEnd)];
        int sp = cur[geom.pointIndex(geom.segments()[seg].pEnd)];
        if (isBadArcState(sq, sp)) { ok = false; break; }
      }
      if (ok) self(self, i + 1);
    }
    cur[i] = 0;
  };
  rec(rec, 0);
  return out;
}

EdgeVector stateEdgeVector(const DiagramGeometry& geom, const FullState& s) {
  const Triangulation& tri = geom.surface();
  EdgeVector k(tri.edgeCount(), 0);
  for (int e = 0; e < tri.edgeCount(); ++e)
    for (int p = 1; p <= geom.pointCount(e); ++p)
      k[e] += s[geom.pointIndex({e, p})];
  return k;
}

FullState maximalAdmissibleState(const DiagramGeometry& geom,
                                 const StatedDiagram& d) {
  FullState st(geom.totalPoints(), kPlus);
  // Propagate - along the critical prefix starting at every --stated
  // endpoint: as long as the walk enters each segment at its Q end, the -
  // state is forced onto the exit point (otherwise the segment is bad).
  auto propagate = [&](const DiagramComponent& comp, bool fromStart) {
    PointRef entry = fromStart ? comp.start : comp.end;
    if (boundaryState(geom, d, entry) != kMinus) return;
    st[geom.pointIndex(entry)] = kMinus;
    int n = static_cast<int>(comp.segments.size());
    for (int i = 0; i < n; ++i) {
      int seg = comp.segments[fromStart ? i : n - 1 - i];
      bool atQ = fromStart ? comp.enteredAtQ[i] : !comp.enteredAtQ[n - 1 - i];
      if (!atQ) return;  // entered at P: (+,-) is allowed, prefix ends
      PointRef exit = geom.segments()[seg].pEnd;
      if (i == n - 1) {
        // Reached the opposite boundary endpoint.
        if (boundaryState(geom, d, exit) == kPlus)
          throw DiagramError("stated diagram contains a bad arc");
      }
      st[geom.pointIndex(exit)] = kMinus;
    }
  };
  for (const DiagramComponent& comp : geom.components()) {
    if (comp.closed) continue;
    propagate(comp, true);
    propagate(comp, false);
  }
  // No segment may be bad in the resulting state.
  for (const Segment& seg : geom.segments())
    if (isBadArcState(st[geom.pointIndex(seg.qEnd)], st[geom.pointIndex(seg.pEnd)]))
      throw DiagramError("internal error: maximal state is not admissible");
  return st;
}

EdgeVector diagramValuation(const Triangulation& tri, const StatedDiagram& d) {
  DiagramGeometry geom(tri, d.weights);
  return stateEdgeVector(geom, maximalAdmissibleState(geom, d));
}

StatedDiagram fromCornerWeights(const Triangulation& tri, const CornerVector& w) {
  StatedDiagram d;
  d.weights = w;
  DiagramGeometry geom(tri, w);
  d.states.resize(tri.edgeCount());
  for (int e = 0; e < tri.edgeCount(); ++e)
    if (tri.isBoundaryEdge(e))
      d.states[e].assign(geom.pointCount(e), kPlus);
  return d;
}

StatedDiagram fromTrainTrack(const Triangulation& tri, const EdgeVector& k) {
  CornerVector w = trainTrackWeights(tri, k);
  for (long x : w)
    if (x < 0) throw DiagramError("edge vector has negative corner weights");
  return fromCornerWeights(tri, w);
}

ValuationDecomposition decomposeValuation(const Triangulation& tri,
                                          const EdgeVector& k) {
  CornerVector phi = trainTrackWeights(tri, k);
  long n0 = 0;
  for (long x : phi) n0 = std::max(n0, -x);
  CornerVector shifted = phi, pad(phi.size(), n0);
  for (size_t i = 0; i < phi.size(); ++i) shifted[i] += n0;
  return {fromCornerWeights(tri, shifted), fromCornerWeights(tri, pad)};
}

ValuationDecompositionModN decomposeModN(const Triangulation& tri,
                                         const EdgeVector& k, long N) {
  if (N < 1) throw DiagramError("modulus must be positive");
  CornerVector phi = trainTrackWeights(tri, k);
  long n0 = 0;
  for (long x : phi) n0 = std::max(n0, (-x + N - 1) / N);
  CornerVector shifted = phi;
  for (long& x : shifted) x += N * n0;
  // k = v(d) + N * k0 with v(d) the edge vector of the shifted weights.
  CornerVector pad(phi.size(), n0);
  EdgeVector k0 = edgeVectorFromWeights(tri, pad);
  for (long& x : k0) x = -x;
  return {fromCornerWeights(tri, shifted), k0};
}

EdgeCut cutInteriorEdge(const Triangulation& tri, int e) {
  if (e < 0 || e >= tri.edgeCount())
    throw DiagramError("cutInteriorEdge: no such edge");
  if (tri.isBoundaryEdge(e))
    throw DiagramError("cutInteriorEdge: edge is not interior");
  std::vector<std::string> names = tri.edgeNames();
  std::string nb = names[e] + "'";
  while (std::find(names.begin(), names.end(), nb) != names.end()) nb += "'";
  names.push_back(nb);
  int eB = static_cast<int>(names.size()) - 1;
  std::vector<Face> faces = tri.faces();
  for (const EdgeUse& u : tri.edgeUses(e))
    if (!u.forward) faces[u.face].side[u.slot].edge = eB;
  return {Triangulation::fromFaces(std::move(names), std::move(faces)), e, eB};
}

namespace {

// One capping move at the adjacent boundary pair (+ at boundary position
// bpos, - at bpos+1) of boundary edge g.  Walks the two strands from the
// pair; while they run in parallel through the same face corner the cap
// slides along; where they diverge they merge into the third corner of
// that face, and when they exit through a boundary edge first the whole
// capped component is a boundary-parallel arc and is removed together with
// its two far letters.  Mutates weights and states in place.
void applyCappingMove(const Triangulation& tri, CornerVector& w,
                      std::vector<std::vector<int>>& states, int g, int bpos) {
  DiagramGeometry geom(tri, w);
  auto pointAtBoundary = [&](int edge, int b) -> PointRef {
    for (int pos = 1; pos <= geom.pointCount(edge); ++pos)
      if (geom.boundaryOrder({edge, pos}) == b) return {edge, pos};
    throw DiagramError("capping move: boundary position out of range");
  };
  auto segOwning = [&](const PointRef& p, int avoid) -> int {
    const auto& segs = geom.segments();
    for (size_t i = 0; i < segs.size(); ++i)
      if (static_cast<int>(i) != avoid &&
          (segs[i].pEnd == p || segs[i].qEnd == p))
        return static_cast<int>(i);
    throw DiagramError("capping move: no segment at point");
  };
  PointRef q1 = pointAtBoundary(g, bpos), q2 = pointAtBoundary(g, bpos + 1);
  int s1 = segOwning(q1, -1), s2 = segOwning(q2, -1);
  std::vector<std::pair<int, int>> parallel;          // (face, corner) runs
  std::vector<std::pair<int, int>> deletions{{g, bpos}, {g, bpos + 1}};
  for (int guard = 0;; ++guard) {
    if (guard > static_cast<int>(geom.segments().size()))
      throw DiagramError("capping move: walk did not terminate");
    if (s1 == s2) throw DiagramError("capping move: pair closes a loop");
    const Segment& a = geom.segments()[s1];
    const Segment& b = geom.segments()[s2];
    if (a.face != b.face)
      throw DiagramError("capping move: strands in different faces");
    int f = a.face;
    int side1 = (a.pEnd == q1) ? a.corner : (a.corner + 1) % 3;
    int side2 = (b.pEnd == q2) ? b.corner : (b.corner + 1) % 3;
    if (side1 != side2)
      throw DiagramError("capping move: inconsistent entry side");
    if (a.corner != b.corner) {
      // divergence: the cap merges the strands into the third corner
      int third = 3 - a.corner - b.corner;
      w[3 * f + a.corner] -= 1;
      w[3 * f + b.corner] -= 1;
      w[3 * f + third] += 1;
      break;
    }
    parallel.emplace_back(f, a.corner);
    int exitSide = (side1 == a.corner) ? (a.corner + 1) % 3 : a.corner;
    PointRef f1 = (exitSide == a.corner) ? a.pEnd : a.qEnd;
    PointRef f2 = (exitSide == b.corner) ? b.pEnd : b.qEnd;
    int exitEdge = tri.faces()[f].side[exitSide].edge;
    if (tri.isBoundaryEdge(exitEdge)) {
      // the capped component is boundary-parallel: remove it entirely
      int b1 = geom.boundaryOrder(f1), b2 = geom.boundaryOrder(f2);
      if (b1 > b2) std::swap(b1, b2);
      if (b2 != b1 + 1)
        throw DiagramError("capping move: far endpoints not adjacent");
      if (states[exitEdge][b1 - 1] + states[exitEdge][b2 - 1] != 0)
        throw DiagramError("capping move: removed arc is not (+,-) stated");
      deletions.emplace_back(exitEdge, b1);
      deletions.emplace_back(exitEdge, b2);
      break;
    }
    s1 = segOwning(f1, s1);
    s2 = segOwning(f2, s2);
    q1 = f1;
    q2 = f2;
  }
  for (auto [f, c] : parallel) w[3 * f + c] -= 2;
  // erase letters per edge, highest position first
  std::sort(deletions.begin(), deletions.end(),
            [](const auto& x, const auto& y) {
              return x.first != y.first ? x.first < y.first : x.second > y.second;
            });
  for (auto [edge, b] : deletions)
    states[edge].erase(states[edge].begin() + (b - 1));
}

}  // namespace

ThetaCut thetaCut(const Triangulation& tri, const StatedDiagram& d, int e) {
  validateDiagram(tri, d);
  EdgeCut cut = cutInteriorEdge(tri, e);
  const Triangulation& tc = cut.surface;
  StatedDiagram out;
  out.weights = d.weights;
  out.states = d.states;
  out.states.resize(tc.edgeCount());
  DiagramGeometry geom(tc, out.weights);
  int m = geom.pointCount(cut.edgeA);

  // Maximal matching state: one variable per intrinsic position of the
  // original edge, shared by the two copies; start all-plus and lower the
  // plus end of any bad arc (forced, hence this reaches the unique
  // maximum when one exists).
  std::vector<int> x(m + 1, kPlus);
  auto stateOf = [&](const PointRef& p) -> int {
    if (p.edge == cut.edgeA || p.edge == cut.edgeB) return x[p.pos];
    return out.states[p.edge][geom.boundaryOrder(p) - 1];
  };
  // A component is a bad arc when, walked from one endpoint, it enters
  // every segment at its Q end (it spirals around a single vertex, so it
  // is isotopic to a corner arc) and carries - at that endpoint and + at
  // the other.  Lowering the + end is then forced.
  for (bool changed = true; changed;) {
    changed = false;
    for (const DiagramComponent& comp : geom.components()) {
      if (comp.closed) continue;
      int n = static_cast<int>(comp.segments.size());
      for (bool fromStart : {true, false}) {
        PointRef entry = fromStart ? comp.start : comp.end;
        PointRef exit = fromStart ? comp.end : comp.start;
        if (stateOf(entry) != kMinus || stateOf(exit) != kPlus) continue;
        bool allQ = true;
        for (int i = 0; i < n && allQ; ++i)
          allQ = fromStart ? comp.enteredAtQ[i] : !comp.enteredAtQ[n - 1 - i];
        if (!allQ) continue;
        if (exit.edge != cut.edgeA && exit.edge != cut.edgeB)
          throw DiagramError("cutting map: no matching state without bad arcs");
        x[exit.pos] = kMinus;
        changed = true;
      }
    }
  }
  for (int g : {cut.edgeA, cut.edgeB}) {
    auto& word = out.states[g];
    word.assign(m, 0);
    for (int pos = 1; pos <= m; ++pos)
      word[geom.boundaryOrder({g, pos}) - 1] = x[pos];
    int phase = 0;  // expected shape: -..- +..+ -..-
    for (int s : word) {
      if (phase == 0 && s == kPlus) phase = 1;
      else if (phase == 1 && s == kMinus) phase = 2;
      else if (phase == 2 && s == kPlus)
        throw DiagramError("cutting map: matching state is not three-block");
    }
  }

  // Straighten: cap adjacent (+,-) pairs until every word is nondecreasing.
  int cap = geom.totalPoints() / 2 + 1;
  for (int moves = 0;; ++moves) {
    if (moves > cap)
      throw DiagramError("cutting map: straightening did not terminate");
    int edge = -1, b = -1;
    for (int g = 0; g < tc.edgeCount() && edge < 0; ++g)
      for (size_t i = 0; i + 1 < out.states[g].size(); ++i)
        if (out.states[g][i] == kPlus && out.states[g][i + 1] == kMinus) {
          edge = g;
          b = static_cast<int>(i) + 1;
          break;
        }
    if (edge < 0) break;
    applyCappingMove(tc, out.weights, out.states, edge, b);
  }
  validateDiagram(tc, out);
  return {std::move(cut), std::move(out)};
}

int peripheralLoopCount(const DiagramGeometry& geom, int v) {
  const Triangulation& tri = geom.surface();
  if (!tri.isInnerVertex(v)) throw DiagramError("not an inner vertex");
  int count = 0;
  for (const DiagramComponent& comp : geom.components()) {
    if (!comp.closed) continue;
    bool around = true;
    for (int s : comp.segments) {
      const Segment& seg = geom.segments()[s];
      if (tri.vertexAtCorner({seg.face, seg.corner}) != v) { around = false; break; }
    }
    if (around) ++count;
  }
  return count;
}

CornerWitness cornerZeroWitness(const Triangulation& tri, const StatedDiagram& d,
                                int v) {
  DiagramGeometry geom(tri, d.weights);
  CornerWitness out;
  out.peripheralCopies = peripheralLoopCount(geom, v);
  if (out.peripheralCopies > 0) return out;
  CornerVector phi = trainTrackWeights(tri, diagramValuation(tri, d));
  for (const Corner& c : tri.cornersAtVertex(v))
    if (phi[3 * c.face + c.corner] == 0) {
      out.witness = c;
      break;
    }
  return out;
}

}  // namespace cfq
