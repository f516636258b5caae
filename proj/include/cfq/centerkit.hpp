/**
 * @file centerkit.hpp
 *
 * Constructive center machinery for the balanced quantum torus at an odd
 * root of unity.
 *
 * A *basic element* is a unit multiple of the N-cabled trace of a basis
 * diagram (no bad arcs, no peripheral loop components), times powers of
 * the peripheral central elements H_p + H_p^{-1} and of the boundary
 * central monomials H_b.  Basic traces span the center; centralReduce
 * certifies membership by peeling off one basic trace per leading term
 * until the residual vanishes, and rankAudit cross-checks the dimension
 * count [K : K0] by exhibiting one basis diagram per coset of the pairing
 * kernel.
 */
#ifndef CFQ_CENTERKIT_HPP
#define CFQ_CENTERKIT_HPP

#include "cfq/qtrace.hpp"

namespace cfq {

class CenterError : public std::runtime_error {
public:
  explicit CenterError(const std::string& what) : std::runtime_error(what) {}
};

/// An edge order turning exponent comparison into lexicographic order:
/// order[0] is the most significant edge.
struct EdgeIndexing {
  std::vector<int> order;

  static EdgeIndexing standard(const Triangulation& tri);
  /// Validates that `order` is a permutation of the edge indices.
  void validate(const Triangulation& tri) const;
};

/// Lexicographic comparison of edge vectors along the indexing.
bool indexedLess(const EdgeIndexing& I, const EdgeVector& a, const EdgeVector& b);

/// Largest exponent of a nonzero element along the indexing, with its
/// coefficient.  Throws CenterError on zero input.
std::pair<EdgeVector, Scalar> leadingTermIndexed(const TorusTerms& x,
                                                 const EdgeIndexing& I);

/// Smallest exponent of edge e over the terms of x.  Throws on zero input.
long minimalHeight(const TorusTerms& x, int e);

/// scale * (N-cabled trace of base) * prod_p (H_p + H_p^{-1})^loopPowers[p]
/// * prod_b H_b^boundaryPowers[b].
struct BasicElement {
  Scalar scale;
  StatedDiagram base;  ///< basis diagram, no peripheral loop components
  std::vector<long> loopPowers;      ///< per vertex, >= 0, 0 off inner vertices
  std::vector<long> boundaryPowers;  ///< per boundary component, any sign
};

/// Evaluate a basic element in a root-mode torus (rootOrder odd > 1).
/// Closed components of the base are cabled through the Chebyshev
/// polynomial T_N of their single-copy trace; arc components are cabled
/// geometrically, with the parallel copies of an arc returning to a single
/// boundary edge presented with the heights of its later endpoint block
/// reversed (all lower-block heights below all upper-block heights).
TorusTerms basicTrace(const QuantumTorus& T, const BasicElement& b);

struct CentralMove {
  BasicElement basic;
  EdgeVector leadingExponent;  ///< leading term it removed
};

/// Certificate that x lies in the span of basic traces: replaying the
/// subtractions in order ends at the zero residual.
struct CentralCertificate {
  std::vector<CentralMove> moves;
  bool residualZero = false;
  long steps = 0;
};

/// Reduce a central element to a certificate.  Each step checks that the
/// leading exponent pairs to zero mod N with the whole balanced lattice,
/// reconstructs the unique basic element with that leading term (throwing
/// CenterError when none exists), and subtracts; the leading exponent must
/// strictly decrease and no per-edge minimal height may decrease
/// (asserted).  A precomputed finiteness bound caps the number of steps.
CentralCertificate centralReduce(const QuantumTorus& T, const TorusTerms& x,
                                 const EdgeIndexing& I);

/// Subtract the certificate's moves from x and return the residual.
TorusTerms replayCertificate(const QuantumTorus& T, const TorusTerms& x,
                             const CentralCertificate& cert);

/// Coset count of the pairing kernel, with one witness basis diagram per
/// coset (valuations pairwise distinct modulo the kernel of the pairing
/// mod N).
struct RankAudit {
  Int torusRank;  ///< [K : K0] = N^exponent
  int exponent = 0;
  std::vector<EdgeVector> cosetReps;
  std::vector<StatedDiagram> witnesses;
  bool pass = false;
};

RankAudit rankAudit(const Triangulation& tri, long N);

}  // namespace cfq

#endif
