/**
 * @file qtrace.hpp
 *
 * Evaluation of stated diagrams in the balanced quantum torus of a
 * triangulated surface.  A stated diagram is expanded over the admissible
 * full states of its edge crossings; each full state contributes a single
 * monomial whose exponent is the per-edge state sum and whose coefficient
 * is computed face by face: inside every face the crossing heights are
 * sorted into a stacked order using the height-exchange rewriting rules,
 * and the resulting stack of corner arcs is multiplied out in the quantum
 * torus of a single triangle.
 */
#ifndef CFQ_QTRACE_HPP
#define CFQ_QTRACE_HPP

#include <utility>

#include "cfq/diagram.hpp"
#include "cfq/qtorus.hpp"

namespace cfq {

class TraceError : public std::runtime_error {
public:
  explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Conventions entering the face-by-face evaluation: the directions in
 * which endpoint heights increase along interior and boundary edges, the
 * orientation data of the height-exchange rewriting, and a perturbation of
 * the unit carried by a mixed-state corner arc.  The defaults are the
 * unique combination (over the search space documented in the tests) under
 * which peripheral loops, boundary arcs, disjoint unions, cables and the
 * boundary cap relation all evaluate consistently; they are frozen and
 * should not normally be changed.  The knobs exist so that tests can
 * demonstrate that perturbed conventions break those identities.
 */
struct TraceConventions {
  /// Sign s in: same-state pair with earlier point on top = w^{2s} * other order.
  int exchangeSign = -1;
  /// The two-term exchange applies when the positionally earlier point
  /// carries - (otherwise when it carries +).
  bool twoTermWhenFirstMinus = false;
  /// The two-term exchange expands the order with the earlier point on top
  /// (otherwise the order with the earlier point below).
  bool twoTermOnCrossed = true;
  /// Interior-edge heights increase along the edge's intrinsic direction.
  bool interiorHeightsAlongEdge = true;
  /// Boundary-edge heights increase along the boundary direction.
  bool boundaryHeightsAlongBoundary = true;
  /// Extra factor mixedArcCoeffSign * w^mixedArcExponent applied on top of
  /// the derived mixed-state corner-arc image (see quantumTrace below).
  /// The defaults leave the derived image untouched.
  long mixedArcExponent = 0;
  int mixedArcCoeffSign = +1;
};

/**
 * Image of a stated diagram in the balanced quantum torus `T`.
 *
 * The diagram is validated (switch condition, no bad arcs).  State words
 * need not be non-decreasing; a non-basis word presents the same underlying
 * diagram with the states attached in a different order.  In generic mode
 * every admissible full state of a basis diagram is checked to contribute
 * exactly a power of w; a violation throws TraceError (it would indicate
 * an inconsistent convention set).
 *
 * Pure corner arcs map to the corresponding torus monomials with unit
 * coefficient.  The scalar carried by a mixed-state corner arc is not a
 * free parameter: on first use it is derived from the boundary cap
 * relation applied to two adjacent corner arcs of a standalone triangle
 * (whose cap is the third corner arc) and cached for the process lifetime.
 */
TorusTerms quantumTrace(const QuantumTorus& T, const StatedDiagram& d,
                        const TraceConventions& conv = {});

/**
 * As above, but with explicit boundary height orders: for a boundary edge
 * e present in the map, heights[e][i] is the height rank of the point at
 * positive-direction position i+1 (larger = higher).  Edges absent from
 * the map use the default order.  This presents the same underlying
 * diagram as a different element (a product of sub-diagrams, an N-cable,
 * ...) and is what cabling constructions feed in.
 */
TorusTerms quantumTrace(const QuantumTorus& T, const StatedDiagram& d,
                        const std::map<int, std::vector<int>>& heights,
                        const TraceConventions& conv = {});

/// Largest exponent of a nonzero element in lexicographic (edge index)
/// order, together with its coefficient.  Throws on zero input.
std::pair<EdgeVector, Scalar> leadingTerm(const TorusTerms& x);

/// The stated diagram made of one corner arc around every puncture of
/// boundary component b, with every state set to `sign` (+1 or -1).
StatedDiagram boundaryArcDiagram(const Triangulation& tri, int b, int sign);

/// The boundary central element: the trace of boundaryArcDiagram(b, sign)
/// normalized by its recovered unit w-power, so that the +1 and -1 signs
/// give exactly the boundary monomial H_b and its inverse H_b^{-1} (and in
/// particular are exact mutual inverses).  Any concrete height
/// presentation of the diagram evaluates to this value times a
/// presentation-dependent power of w, the same power for both signs; the
/// power recovered from the default presentation is written to *unitPower
/// when non-null.
TorusTerms boundaryElementTrace(const QuantumTorus& T, int b, int sign,
                                long* unitPower = nullptr,
                                const TraceConventions& conv = {});

}  // namespace cfq

#endif
