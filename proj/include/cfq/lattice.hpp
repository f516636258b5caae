/**
 * @file lattice.hpp
 *
 * The balanced edge lattice of a triangulated surface, the antisymmetrized
 * edge pairing, its kernel modulo N, and the corner-weight (train track)
 * coordinates.
 *
 * Vectors over edges are stored densely in edge-index order; corner-weight
 * vectors are stored face-major (index 3*face + corner).
 */
#ifndef CFQ_LATTICE_HPP
#define CFQ_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cfq/smith.hpp"
#include "cfq/surface.hpp"

namespace cfq {

using EdgeVector = std::vector<long>;    ///< one entry per edge
using CornerVector = std::vector<long>;  ///< one entry per corner, 3*face+corner

class LatticeError : public std::runtime_error {
public:
  explicit LatticeError(const std::string& what) : std::runtime_error(what) {}
};

/// k is balanced when its sum over the three sides of every face is even.
bool isBalanced(const Triangulation& t, const EdgeVector& k);

/// Antisymmetrized pairing (k1, k2) = sum over edge pairs of
/// k1(e) k2(e') (a[e][e'] - a[e'][e]).
long pairing(const Triangulation& t, const EdgeVector& k1, const EdgeVector& k2);

/// A basis of the balanced lattice: columns of `basis` are edge vectors.
struct LatticeBasis {
  IntMat basis;   ///< edgeCount x rank; rank always equals edgeCount
  IntMat gram;    ///< rank x rank antisymmetrized pairing matrix

  int rank() const { return basis.cols(); }
  EdgeVector vec(int i) const;
  /// Coordinates of k in this basis; throws LatticeError when k is not
  /// in the lattice (i.e. not balanced).
  std::vector<Int> coordinates(const EdgeVector& k) const;
};

LatticeBasis balancedBasis(const Triangulation& t);

/// Kernel of the pairing modulo N inside the balanced lattice, together
/// with its index, which is always a power of N for the surfaces handled
/// here (asserted).
struct PairingKernel {
  std::vector<EdgeVector> generators;  ///< lattice generators of the kernel
  Int index;                           ///< [K : K0]
  int indexExponent;                   ///< index = N^indexExponent
};

PairingKernel pairingKernelModN(const Triangulation& t, const LatticeBasis& basis,
                                long N);

/// Membership test k in K0: (k, b) = 0 mod N for every basis vector b.
bool inPairingKernel(const Triangulation& t, const LatticeBasis& basis,
                     const EdgeVector& k, long N);

/// Corner weights of a balanced vector: at corner c between sides a and b
/// of a face with third side d, the weight is (k(a) + k(b) - k(d)) / 2.
CornerVector trainTrackWeights(const Triangulation& t, const EdgeVector& k);

/// Inverse of trainTrackWeights.  Requires the switch condition: for an
/// interior edge the two adjacent corner-weight sums must agree.  Throws
/// LatticeError otherwise.
EdgeVector edgeVectorFromWeights(const Triangulation& t, const CornerVector& w);

/// Check the switch condition without converting.
bool satisfiesSwitchCondition(const Triangulation& t, const CornerVector& w);

/// The two corners of face `f` adjacent to slot `s` (slot s touches
/// corners s and s-1 mod 3); weight sum of those equals k(edge at slot s).
inline long slotWeight(const CornerVector& w, int f, int s) {
  return w[3 * f + s] + w[3 * f + (s + 2) % 3];
}

/// Vector with entry 1 at every corner based at vertex v, else 0.
CornerVector cornerIndicatorAtVertex(const Triangulation& t, int v);

/// k_v(e) = number of ends of edge e based at vertex v (0, 1 or 2).
EdgeVector endpointCountVector(const Triangulation& t, int v);
/// Sum of endpointCountVector over all punctures of boundary component b.
EdgeVector boundaryEndpointCountVector(const Triangulation& t, int b);

}  // namespace cfq

#endif
