/**
 * @file diagram.hpp
 *
 * Stated normal diagrams on a triangulated surface.  A diagram is given by
 * nonnegative corner-arc multiplicities (one per face corner, subject to
 * the switch condition on interior edges) together with a +/- state word
 * for each boundary edge.  The file also provides the point/segment
 * geometry of such a diagram, component tracing, bad-arc detection,
 * admissible state enumeration, and the combinatorial valuation.
 *
 * Orientation conventions used throughout:
 *  - faces list their sides in counterclockwise order; corner c of a face
 *    lies between side c and side c+1 (mod 3), so the vertex at corner c is
 *    the head of side c and the tail of side c+1;
 *  - points on an edge are numbered 1..m along the edge's intrinsic
 *    direction; a boundary edge's positive direction is its (unique) face
 *    traversal direction, i.e. the direction that keeps the surface on the
 *    left;
 *  - walking counterclockwise around the vertex at corner (f, c) crosses a
 *    corner arc's endpoint on side c+1 first and its endpoint on side c
 *    second.  An arc state is "bad" when the side-(c+1) endpoint carries -
 *    and the side-c endpoint carries +.
 */
#ifndef CFQ_DIAGRAM_HPP
#define CFQ_DIAGRAM_HPP

#include <optional>
#include <vector>

#include "cfq/lattice.hpp"
#include "cfq/surface.hpp"

namespace cfq {

class DiagramError : public std::runtime_error {
public:
  explicit DiagramError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kPlus = +1;
inline constexpr int kMinus = -1;

struct StatedDiagram {
  /// Corner-arc multiplicities, indexed 3*face + corner, all >= 0.
  CornerVector weights;
  /// Per-edge state words (+1/-1), in positive-direction order along each
  /// boundary edge; must be empty for interior edges.
  std::vector<std::vector<int>> states;
};

/// A point where the diagram crosses an edge (1-based intrinsic position).
struct PointRef {
  int edge = -1;
  int pos = 0;

  friend bool operator==(const PointRef&, const PointRef&) = default;
  friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

/// One corner-arc copy inside a face.  The copy index counts from the
/// vertex outwards (copy 1 is innermost).  The arc's endpoints lie on side
/// `corner` (its P end) and side `corner`+1 (its Q end).
struct Segment {
  int face = -1;
  int corner = -1;
  int copy = 0;
  PointRef pEnd;  ///< on side `corner`
  PointRef qEnd;  ///< on side `corner`+1
};

/// A traced component: a chain of segments glued across interior edges.
struct DiagramComponent {
  bool closed = false;
  std::vector<int> segments;      ///< indices into DiagramGeometry::segments()
  std::vector<bool> enteredAtQ;   ///< per segment: walk enters at its Q end
  PointRef start, end;            ///< boundary endpoints when open
};

/// Point/segment structure derived from corner-arc multiplicities.
class DiagramGeometry {
public:
  DiagramGeometry(const Triangulation& tri, const CornerVector& weights);

  const Triangulation& surface() const { return *tri_; }
  const CornerVector& weights() const { return weights_; }

  int pointCount(int edge) const { return counts_[edge]; }
  int totalPoints() const { return total_; }
  /// Dense 0-based index of a point, ordered by (edge, intrinsic pos).
  int pointIndex(const PointRef& p) const;
  PointRef pointAt(int index) const;

  /// Positive-direction position of a boundary-edge point (1-based).
  int boundaryOrder(const PointRef& p) const;

  const std::vector<Segment>& segments() const { return segments_; }
  /// Segment owning the point at face-traversal position `tpos` (1-based)
  /// on slot `slot` of face `face`, and whether that point is its Q end.
  std::pair<int, bool> segmentAt(int face, int slot, int tpos) const;

  const std::vector<DiagramComponent>& components() const { return components_; }
  /// Component index of each segment.
  int componentOf(int segment) const { return componentOf_[segment]; }

  /// Intrinsic position on the underlying edge of face-traversal position
  /// `tpos` on slot `slot` of `face`.
  PointRef facePoint(int face, int slot, int tpos) const;

private:
  const Triangulation* tri_;
  CornerVector weights_;
  std::vector<int> counts_, offsets_;
  int total_ = 0;
  std::vector<Segment> segments_;
  std::vector<std::vector<std::pair<int, bool>>> pointSegments_;  // per point
  std::vector<DiagramComponent> components_;
  std::vector<int> componentOf_;
};

/// Validate a stated diagram: nonnegative weights, switch condition,
/// state words only on boundary edges with matching lengths.  When
/// `requireIncreasing` also checks every state word is non-decreasing
/// (- before +) in positive-direction order, and when `requireGood` that
/// no component is a bad arc.
void validateDiagram(const Triangulation& tri, const StatedDiagram& d,
                     bool requireIncreasing = true, bool requireGood = true);

/// State of a boundary point under the diagram's state words.
int boundaryState(const DiagramGeometry& geom, const StatedDiagram& d,
                  const PointRef& p);

/// Is the state pair (q, p) of a corner arc bad?
inline bool isBadArcState(int stateQ, int stateP) {
  return stateQ == kMinus && stateP == kPlus;
}

/// A full state assigns +1/-1 to every point, indexed by pointIndex.
using FullState = std::vector<int>;

/// All full states extending the diagram's boundary states in which no
/// segment is bad, in deterministic (lexicographic, - before +) order.
/// Throws when more than `budget` partial assignments are explored.
std::vector<FullState> enumerateAdmissibleStates(const DiagramGeometry& geom,
                                                 const StatedDiagram& d,
                                                 long budget = 1 << 22);

/// Edge vector of a full state: sum of point states on each edge.
EdgeVector stateEdgeVector(const DiagramGeometry& geom, const FullState& s);

/// The admissible full state that dominates every other one pointwise
/// (i.e. the unique maximum with respect to - < +).  Computed directly by
/// propagating - along critical prefixes from every --stated endpoint;
/// asserted admissible.
FullState maximalAdmissibleState(const DiagramGeometry& geom,
                                 const StatedDiagram& d);

/// Valuation of a stated diagram: the edge vector of the maximal
/// admissible state.
EdgeVector diagramValuation(const Triangulation& tri, const StatedDiagram& d);

/// All-plus diagram with the given corner weights (switch condition and
/// nonnegativity required).
StatedDiagram fromCornerWeights(const Triangulation& tri, const CornerVector& w);
/// All-plus diagram with the given nonnegative normal edge coordinates.
StatedDiagram fromTrainTrack(const Triangulation& tri, const EdgeVector& k);

/// Write a balanced vector k as v(d1) - v(d2) for all-plus diagrams d1, d2.
struct ValuationDecomposition {
  StatedDiagram d1, d2;
};
ValuationDecomposition decomposeValuation(const Triangulation& tri,
                                          const EdgeVector& k);

/// Write a balanced vector k as v(d) + N * k0 with d an all-plus diagram.
struct ValuationDecompositionModN {
  StatedDiagram d;
  EdgeVector k0;
};
ValuationDecompositionModN decomposeModN(const Triangulation& tri,
                                         const EdgeVector& k, long N);

/// Result of cutting an interior edge into two boundary edges.  Copy A
/// keeps the original edge index and name and stays in the face that
/// traverses the edge forward; copy B (named with a trailing apostrophe)
/// is appended at the end of the edge list and replaces the edge in the
/// face traversing it backward.  Both copies keep the intrinsic direction
/// of the original edge, so a crossing at intrinsic position i corresponds
/// to position i on either copy.
struct EdgeCut {
  Triangulation surface;
  int edgeA = -1;
  int edgeB = -1;
};
EdgeCut cutInteriorEdge(const Triangulation& tri, int e);

/// Cutting map for basis diagrams: carries a basis diagram across
/// cutInteriorEdge(tri, e) to the unique basis diagram on the cut surface
/// presenting the same element up to a power of w.  The two copies of each
/// crossing receive the maximal matching state without bad arcs (computed
/// by forced lowering from the all-plus state; each resulting word is
/// asserted to consist of three blocks -..- +..+ -..-), and the words are
/// then straightened by repeatedly capping an adjacent (+,-) pair, which
/// merges the two strands or removes a boundary-parallel arc.  The map is
/// injective for a fixed edge and commutes for cuts along distinct edges.
/// Throws DiagramError when e is not interior.
struct ThetaCut {
  EdgeCut cut;
  StatedDiagram diagram;
};
ThetaCut thetaCut(const Triangulation& tri, const StatedDiagram& d, int e);

/// Number of closed components running entirely around inner vertex v
/// (parallel copies of the small loop around v).
int peripheralLoopCount(const DiagramGeometry& geom, int v);

/// For a stated diagram without peripheral loops around inner vertex v,
/// a corner based at v where the corner weights of the valuation vanish.
/// When peripheral loops are present, reports their count instead.
struct CornerWitness {
  int peripheralCopies = 0;
  std::optional<Corner> witness;
};
CornerWitness cornerZeroWitness(const Triangulation& tri, const StatedDiagram& d,
                                int v);

}  // namespace cfq

#endif
