#include "cfq/qtrace.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace cfq {
namespace {

/// The quantum torus of a single triangle; side j of any face is matched
/// with edge j of this model surface.
const Triangulation& triangleModel() {
  static const Triangulation tri = Triangulation::parse(
      "edge s0\nedge s1\nedge s2\nface T s0 s1 s2\n");
  return tri;
}

/// The unit scalar carried by the image of a mixed-state corner arc
/// (+ at the Q end, - at the P end), derived once per process.
struct MixedImage {
  long exp = 0;
  int sign = 1;
};

/// True while deriveMixedImage() is running; the evaluator then uses a
/// provisional unit coefficient for mixed-state corner arcs.
thread_local bool derivingMixedImage = false;

/**
 * Derive the mixed-state corner-arc scalar from the boundary cap relation.
 *
 * In basis (heights increasing along the positive boundary direction)
 * presentations, two height-adjacent points of a boundary edge word with
 * states (earlier +, later -) satisfy
 *
 *   [.., +, -] = w^4 [.., -, +] + w^-1 [capped diagram],
 *
 * where the capped diagram joins the two points just inside the surface.
 * Applied on a standalone triangle to adjacent corner arcs at corners 0
 * and 1 with the word (+,-) on their common side, the swapped term
 * contains a bad arc and the cap is the corner-2 arc, leaving a one-term
 * equation for the scalar of the mixed-arc image.
 */
MixedImage deriveMixedImage() {
  derivingMixedImage = true;
  struct Reset {
    ~Reset() { derivingMixedImage = false; }
  } reset;

  const Triangulation& tri = triangleModel();
  QuantumTorus T(tri);
  TraceConventions base;

  CornerVector w(3, 0);
  w[0] = 1;
  w[1] = 1;
  StatedDiagram X = fromCornerWeights(tri, w);
  X.states[0] = {kPlus};
  X.states[1] = {kPlus, kMinus};
  X.states[2] = {kPlus};
  StatedDiagram Xswap = X;
  Xswap.states[1] = {kMinus, kPlus};

  CornerVector wy(3, 0);
  wy[2] = 1;
  StatedDiagram Y = fromCornerWeights(tri, wy);
  Y.states[0] = {kPlus};
  Y.states[2] = {kPlus};

  bool swappedVanishes = false;
  try {
    (void)quantumTrace(T, Xswap, base);
  } catch (const DiagramError&) {
    swappedVanishes = true;
  }
  if (!swappedVanishes)
    throw TraceError("mixed-arc derivation: the swapped term does not vanish");

  TorusTerms lhs = quantumTrace(T, X, base);  // provisional unit image
  TorusTerms rhs = quantumTrace(T, Y, base);  // pure corner arc
  if (lhs.size() != 1 || rhs.size() != 1 ||
      lhs.begin()->first != rhs.begin()->first)
    throw TraceError("mixed-arc derivation: unexpected monomial shape");
  long kl = 0, cl = 0, kr = 0, cr = 0;
  if (!lhs.begin()->second.isUnitMonomial(kl, cl) ||
      !rhs.begin()->second.isUnitMonomial(kr, cr))
    throw TraceError("mixed-arc derivation: coefficient is not a power of w");
  // scalar * lhs = w^-1 * rhs.
  return {kr - 1 - kl, static_cast<int>(cl * cr)};
}

const MixedImage& mixedImage() {
  static const MixedImage m = deriveMixedImage();
  return m;
}

/// One crossing point on a side of a face: the corner arc it belongs to
/// and its current state.
struct SidePoint {
  int seg = -1;
  int state = 0;
};

/// The mutable part of a face evaluation: per side, the points listed from
/// the highest to the lowest height.  Positions along the side are fixed
/// per arc and kept separately.
using FaceConfig = std::array<std::vector<SidePoint>, 3>;

class FaceEvaluator {
public:
  FaceEvaluator(const QuantumTorus& torus, const QuantumTorus& triTorus,
                const DiagramGeometry& geom, int face,
                const TraceConventions& conv,
                const std::map<int, std::vector<int>>& customHeights)
      : torus_(&torus), triTorus_(&triTorus), geom_(&geom), face_(face),
        conv_(conv) {
    const Triangulation& tri = geom.surface();
    const Face& f = tri.faces()[face];
    const CornerVector& w = geom.weights();

    // Collect the corner arcs of this face and rank them: the stacked
    // target order is by (corner, copy), first = topmost.
    for (int c = 0; c < 3; ++c) {
      for (long t = 1; t <= w[3 * face + c]; ++t) {
        auto [seg, isQ] = geom.segmentAt(face, (c + 1) % 3, static_cast<int>(t));
        (void)isQ;
        rank_[seg] = static_cast<int>(order_.size());
        order_.push_back(seg);
      }
    }

    for (int j = 0; j < 3; ++j) {
      int m = static_cast<int>(w[3 * face + j] + w[3 * face + (j + 2) % 3]);
      sideSize_[j] = m;
      for (int tpos = 1; tpos <= m; ++tpos) {
        auto [seg, isQ] = geom.segmentAt(face, j, tpos);
        (void)isQ;
        tposOf_[j][seg] = tpos;
        PointRef p = geom.facePoint(face, j, tpos);
        pointOf_[j][seg] = geom.pointIndex(p);
        int edge = f.side[j].edge;
        int h;
        if (auto it = customHeights.find(edge); it != customHeights.end()) {
          int bpos = tri.isBoundaryEdge(edge) ? geom.boundaryOrder(p) : p.pos;
          if (bpos < 1 || bpos > static_cast<int>(it->second.size()))
            throw TraceError("height order has the wrong length");
          h = it->second[bpos - 1];
        } else if (tri.isBoundaryEdge(edge)) {
          int bpos = geom.boundaryOrder(p);
          h = conv.boundaryHeightsAlongBoundary ? bpos : m + 1 - bpos;
        } else {
          h = conv.interiorHeightsAlongEdge ? p.pos : m + 1 - p.pos;
        }
        heightOf_[j][seg] = h;
      }
    }
  }

  /// Coefficient contributed by this face under the given full state.
  Scalar eval(const FullState& s, long& budget) const {
    FaceConfig cfg;
    for (int j = 0; j < 3; ++j) {
      for (const auto& [seg, tpos] : tposOf_[j]) {
        (void)tpos;
        cfg[j].push_back({seg, s[pointOf_[j].at(seg)]});
      }
      std::sort(cfg[j].begin(), cfg[j].end(),
                [&](const SidePoint& a, const SidePoint& b) {
                  return heightOf_[j].at(a.seg) > heightOf_[j].at(b.seg);
                });
    }
    return evalConfig(cfg, budget);
  }

private:
  Scalar omega(long k, long c = 1) const { return torus_->omega(k, c); }

  Scalar evalConfig(FaceConfig& cfg, long& budget) const {
    if (--budget < 0)
      throw TraceError("face evaluation exceeded its rewriting budget");

    for (int j = 0; j < 3; ++j) {
      for (size_t i = 0; i + 1 < cfg[j].size(); ++i) {
        const SidePoint& u = cfg[j][i];      // higher of the pair
        const SidePoint& v = cfg[j][i + 1];  // lower of the pair
        if (rank_.at(u.seg) <= rank_.at(v.seg)) continue;

        // Out of stacked order: exchange the heights of u and v.
        int posU = tposOf_[j].at(u.seg), posV = tposOf_[j].at(v.seg);
        bool crossed = posU < posV;  // positionally earlier point on top
        int a = crossed ? u.state : v.state;  // state in position order
        int b = crossed ? v.state : u.state;

        FaceConfig swapped = cfg;
        std::swap(swapped[j][i], swapped[j][i + 1]);

        int dir = crossed ? +1 : -1;
        if (a == b)
          return omega(2 * conv_.exchangeSign * dir) * evalConfig(swapped, budget);

        bool twoTerm = conv_.twoTermWhenFirstMinus ? (a == kMinus) : (a == kPlus);
        if (!twoTerm)
          return omega(-2 * conv_.exchangeSign * dir) * evalConfig(swapped, budget);

        FaceConfig swappedX = swapped;
        std::swap(swappedX[j][i].state, swappedX[j][i + 1].state);

        // With A = w^-2: the two-term exchange reads
        //   [expanded order] = A^-1 [other order] + (A - A^-3) [other
        //   order, states traded]; inverting it and rewriting the traded
        //   pure pair gives the branch below.
        if (conv_.twoTermOnCrossed == crossed) {
          Scalar first = omega(2) * evalConfig(swapped, budget);  // A^-1
          Scalar extra = (omega(-2) - omega(6)) * evalConfig(swappedX, budget);
          return first + extra;
        }
        Scalar first = omega(-2) * evalConfig(swapped, budget);  // A
        Scalar extra = (omega(-4) - omega(4)) *
                       omega(-2 * conv_.exchangeSign * dir) *
                       evalConfig(swappedX, budget);
        return first - extra;
      }
    }
    return stackValue(cfg);
  }

  /// Value of a configuration whose heights realize the stacked order:
  /// the product, topmost factor first, of the single corner-arc images
  /// in the triangle's quantum torus.
  Scalar stackValue(const FaceConfig& cfg) const {
    std::map<int, std::array<int, 3>> stateOn;  // seg -> state per side
    for (int j = 0; j < 3; ++j)
      for (const SidePoint& sp : cfg[j]) stateOn[sp.seg][j] = sp.state;

    TorusTerms value = triTorus_->one();
    for (int seg : order_) {
      int c = geom_->segments()[seg].corner;
      int sP = stateOn[seg][c];
      int sQ = stateOn[seg][(c + 1) % 3];
      EdgeVector k(3, 0);
      Scalar coeff = triTorus_->scalarOne();
      if (sQ == kPlus && sP == kPlus) {
        k[c] = 1;
        k[(c + 1) % 3] = 1;
      } else if (sQ == kMinus && sP == kMinus) {
        k[c] = -1;
        k[(c + 1) % 3] = -1;
      } else if (sQ == kPlus && sP == kMinus) {
        k[c] = -1;
        k[(c + 1) % 3] = 1;
        coeff = triTorus_->omega(conv_.mixedArcExponent, conv_.mixedArcCoeffSign);
        if (!derivingMixedImage) {
          const MixedImage& mi = mixedImage();
          coeff = coeff * triTorus_->omega(mi.exp, mi.sign);
        }
      } else {
        return torus_->omega(0, 0);  // bad arc: the face contributes zero
      }
      value = triTorus_->mul(value, triTorus_->monomial(k, coeff));
    }

    if (value.empty()) return torus_->omega(0, 0);
    if (value.size() != 1)
      throw TraceError("stacked corner-arc product is not a monomial");

    // The exponent must be the per-side state sum, which every exchange
    // rewriting preserves.
    EdgeVector expect(3, 0);
    for (int j = 0; j < 3; ++j)
      for (const SidePoint& sp : cfg[j]) expect[j] += sp.state;
    if (value.begin()->first != expect)
      throw TraceError("stacked corner-arc product has an unexpected exponent");
    return value.begin()->second;
  }

  const QuantumTorus* torus_;
  const QuantumTorus* triTorus_;
  const DiagramGeometry* geom_;
  int face_;
  TraceConventions conv_;
  std::vector<int> order_;   ///< segments of this face, topmost first
  std::map<int, int> rank_;  ///< position of a segment in `order_`
  std::array<std::map<int, int>, 3> tposOf_, heightOf_, pointOf_;
  std::array<int, 3> sideSize_ = {0, 0, 0};
};

}  // namespace

TorusTerms quantumTrace(const QuantumTorus& T, const StatedDiagram& d,
                        const TraceConventions& conv) {
  return quantumTrace(T, d, {}, conv);
}

TorusTerms quantumTrace(const QuantumTorus& T, const StatedDiagram& d,
                        const std::map<int, std::vector<int>>& heights,
                        const TraceConventions& conv) {
  const Triangulation& tri = T.surface();
  validateDiagram(tri, d, /*requireIncreasing=*/false);
  // The unit-coefficient guarantee below only holds for basis diagrams,
  // whose state words increase along the positive boundary direction.
  bool basisStates = true;
  for (const auto& word : d.states)
    for (size_t i = 1; i < word.size(); ++i)
      if (word[i - 1] == kPlus && word[i] == kMinus) basisStates = false;
  DiagramGeometry geom(tri, d.weights);

  QuantumTorus triTorus(triangleModel(), T.rootOrder());
  std::vector<FaceEvaluator> faces;
  faces.reserve(tri.faceCount());
  for (int f = 0; f < tri.faceCount(); ++f)
    faces.emplace_back(T, triTorus, geom, f, conv, heights);

  TorusTerms result = T.zero();
  for (const FullState& s : enumerateAdmissibleStates(geom, d)) {
    Scalar coeff = T.scalarOne();
    long budget = 1L << 24;
    for (const FaceEvaluator& fe : faces) coeff = coeff * fe.eval(s, budget);

    if (T.rootOrder() == 0 && basisStates) {
      long k = 0, c = 0;
      if (!coeff.isUnitMonomial(k, c) || c != 1)
        throw TraceError("admissible state with a coefficient that is not a "
                         "power of w: " + coeff.str());
    }
    result = T.add(result, T.monomial(stateEdgeVector(geom, s), coeff));
  }
  return result;
}

std::pair<EdgeVector, Scalar> leadingTerm(const TorusTerms& x) {
  if (x.empty()) throw TraceError("leading term of zero");
  auto it = std::prev(x.end());
  return {it->first, it->second};
}

StatedDiagram boundaryArcDiagram(const Triangulation& tri, int b, int sign) {
  if (b < 0 || b >= tri.boundaryComponentCount())
    throw DiagramError("boundaryArcDiagram: no such boundary component");
  if (sign != kPlus && sign != kMinus)
    throw DiagramError("boundaryArcDiagram: state must be +1 or -1");
  CornerVector w(3 * tri.faceCount(), 0);
  for (int v = 0; v < tri.vertexCount(); ++v)
    if (tri.boundaryComponentOfVertex(v) == b)
      for (const Corner& c : tri.cornersAtVertex(v)) w[3 * c.face + c.corner] += 1;
  StatedDiagram d = fromCornerWeights(tri, w);
  for (auto& word : d.states)
    for (int& s : word) s = sign;
  return d;
}

TorusTerms boundaryElementTrace(const QuantumTorus& T, int b, int sign,
                                long* unitPower, const TraceConventions& conv) {
  const Triangulation& tri = T.surface();
  long power[2] = {0, 0};
  TorusTerms out;
  for (int i = 0; i < 2; ++i) {
    int s = i == 0 ? kPlus : kMinus;
    TorusTerms raw = quantumTrace(T, boundaryArcDiagram(tri, b, s), conv);
    TorusTerms want = T.boundaryMonomial(b, s == kPlus ? 1 : -1);
    if (raw.size() != 1 || raw.begin()->first != want.begin()->first)
      throw TraceError("boundaryElementTrace: trace is not a single monomial "
                       "on the boundary exponent");
    long k = 0, c = 0;
    if (!raw.begin()->second.isUnitMonomial(k, c) || c != 1)
      throw TraceError("boundaryElementTrace: coefficient is not +w^k: " +
                       raw.begin()->second.str());
    power[i] = k;
    if (s == sign) out = T.monomial(raw.begin()->first);
  }
  if (power[0] != power[1])
    throw TraceError("boundaryElementTrace: the two signs recover different "
                     "unit powers");
  if (unitPower) *unitPower = power[0];
  return out;
}

}  // namespace cfq
