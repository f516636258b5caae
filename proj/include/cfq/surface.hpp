/**
 * @file surface.hpp
 *
 * Combinatorial ideal triangulations of oriented punctured surfaces.
 *
 * A triangulation is a list of named edges together with faces, each face
 * being a counterclockwise-ordered triple of directed edge references.
 * Punctures (ideal vertices) are not part of the input; they are derived as
 * equivalence classes of edge ends under the corner gluing induced by the
 * faces.  Edges used by exactly one face slot are boundary edges, edges used
 * by exactly two slots (once in each direction) are interior edges.
 */
#ifndef CFQ_SURFACE_HPP
#define CFQ_SURFACE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfq {

/// Error thrown for malformed or topologically invalid triangulation input.
class SurfaceError : public std::runtime_error {
public:
  explicit SurfaceError(const std::string& what) : std::runtime_error(what) {}
};

/// A directed reference to an edge inside a face slot.
struct DirectedEdge {
  int edge = -1;     ///< index into Triangulation::edgeNames
  bool forward = true;  ///< true: traversed along the edge's intrinsic direction

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// A face: three directed edges listed counterclockwise.
struct Face {
  std::string name;
  DirectedEdge side[3];
};

/// Identifies one of the three corners of a face.  Corner `c` of face `f`
/// sits between side `c` and side `c+1 (mod 3)`, at the ideal vertex where
/// the counterclockwise traversal leaves side `c` and enters side `c+1`.
struct Corner {
  int face = -1;
  int corner = -1;  ///< 0, 1 or 2

  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// Where an edge appears inside a face.
struct EdgeUse {
  int face = -1;
  int slot = -1;     ///< side index within the face
  bool forward = true;
};

struct ComponentInvariants {
  int genus = 0;
  int punctures = 0;          ///< total ideal vertices in the component
  int innerPunctures = 0;
  int boundaryComponents = 0;
};

/**
 * A validated ideal triangulation.
 *
 * Construction happens through parse() / fromFaces(); both reject inputs
 * that do not describe an oriented surface: an edge used more than twice,
 * used twice in the same direction, a face using the same edge twice
 * (self-folded), or empty input.
 */
class Triangulation {
public:
  /// Parse the plain-text format:
  ///   edge <name>
  ///   face <name> <e1> <e2> <e3>     (prefix "-" reverses an edge)
  /// '#' starts a comment; blank lines are ignored.
  static Triangulation parse(const std::string& text);

  /// Build from already-resolved data (names must be distinct, nonempty).
  static Triangulation fromFaces(std::vector<std::string> edgeNames,
                                 std::vector<Face> faces);

  int edgeCount() const { return static_cast<int>(edgeNames_.size()); }
  int faceCount() const { return static_cast<int>(faces_.size()); }
  const std::vector<std::string>& edgeNames() const { return edgeNames_; }
  const std::vector<Face>& faces() const { return faces_; }
  int edgeIndex(const std::string& name) const;  ///< throws if unknown
  int faceIndex(const std::string& name) const;  ///< throws if unknown

  bool isBoundaryEdge(int e) const { return uses_[e].size() == 1; }
  int interiorEdgeCount() const { return interiorEdges_; }
  int boundaryEdgeCount() const { return edgeCount() - interiorEdges_; }
  /// Face slots referring to edge e (size 1 for boundary, 2 for interior).
  const std::vector<EdgeUse>& edgeUses(int e) const { return uses_[e]; }

  /// Vertex class (puncture id) at the given corner.
  int vertexAtCorner(const Corner& c) const { return cornerVertex_[c.face][c.corner]; }
  /// Vertex class at an edge end (end 0 = intrinsic start, 1 = intrinsic end).
  int vertexAtEdgeEnd(int e, int end) const { return edgeEndVertex_[e][end]; }
  int vertexCount() const { return vertexCount_; }
  bool isInnerVertex(int v) const { return boundaryCompOfVertex_[v] < 0; }
  /// Boundary component id of a boundary vertex, -1 for inner vertices.
  int boundaryComponentOfVertex(int v) const { return boundaryCompOfVertex_[v]; }
  int boundaryComponentOfEdge(int e) const;  ///< -1 for interior edges
  int boundaryComponentCount() const { return boundaryComponentCount_; }
  /// All corners whose vertex is v, in no particular order.
  const std::vector<Corner>& cornersAtVertex(int v) const { return vertexCorners_[v]; }
  std::vector<int> innerVertices() const;

  /// Connected components of the underlying surface (face ids per component).
  int componentCount() const { return static_cast<int>(components_.size()); }
  const std::vector<ComponentInvariants>& componentInvariants() const { return components_; }

  /// Totals over components (equal to the component value when connected).
  int genus() const;
  int punctureCount() const { return vertexCount_; }
  int innerPunctureCount() const;

  /// a[e][e'] = number of face slots where e' immediately follows e
  /// in counterclockwise order.  Used by the antisymmetrized edge pairing.
  const std::vector<std::vector<int>>& adjacencyCounts() const { return adjacency_; }

  /// Corners adjacent to a face slot: slot s touches corners s and s-1 (mod 3).
  static int cornerAfterSlot(int slot) { return slot; }
  static int cornerBeforeSlot(int slot) { return (slot + 2) % 3; }

  /// List of all corners, ordered by (face, corner).
  std::vector<Corner> allCorners() const;

private:
  Triangulation() = default;
  void finalize();  ///< validates and derives everything; throws SurfaceError

  std::vector<std::string> edgeNames_;
  std::vector<Face> faces_;
  std::map<std::string, int> edgeIndex_;
  std::map<std::string, int> faceIndex_;

  std::vector<std::vector<EdgeUse>> uses_;
  int interiorEdges_ = 0;

  int vertexCount_ = 0;
  std::vector<std::array<int, 2>> edgeEndVertex_;
  std::vector<std::array<int, 3>> cornerVertex_;
  std::vector<std::vector<Corner>> vertexCorners_;
  std::vector<int> boundaryCompOfVertex_;
  int boundaryComponentCount_ = 0;

  std::vector<std::vector<int>> adjacency_;
  std::vector<ComponentInvariants> components_;
  std::vector<int> componentOfFace_;
};

}  // namespace cfq

#endif
