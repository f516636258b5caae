/**
 * @file surface.cpp
 *
 * Parsing and validation of ideal triangulations, derivation of punctures,
 * boundary structure and per-component invariants.
 */
#include "cfq/surface.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cfq {

namespace {

/// Minimal union-find over 0..n-1.
class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
  std::vector<int> parent_;
};

[[noreturn]] void fail(const std::string& msg) { throw SurfaceError(msg); }

}  // namespace

Triangulation Triangulation::parse(const std::string& text) {
  std::vector<std::string> edgeNames;
  std::map<std::string, int> edgeIds;
  std::vector<Face> faces;

  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;

    auto where = [&] { return " (line " + std::to_string(lineNo) + ")"; };
    if (keyword == "edge") {
      std::string name, extra;
      if (!(ls >> name) || (ls >> extra))
        fail("malformed edge line" + where());
      if (edgeIds.count(name)) fail("duplicate edge name '" + name + "'" + where());
      edgeIds[name] = static_cast<int>(edgeNames.size());
      edgeNames.push_back(name);
    } else if (keyword == "face") {
      Face f;
      std::string tok[3], extra;
      if (!(ls >> f.name >> tok[0] >> tok[1] >> tok[2]) || (ls >> extra))
        fail("malformed face line" + where());
      for (int i = 0; i < 3; ++i) {
        std::string t = tok[i];
        bool forward = true;
        if (!t.empty() && t[0] == '-') { forward = false; t.erase(0, 1); }
        auto it = edgeIds.find(t);
        if (it == edgeIds.end()) fail("face references unknown edge '" + t + "'" + where());
        f.side[i] = DirectedEdge{it->second, forward};
      }
      faces.push_back(std::move(f));
    } else {
      fail("unknown keyword '" + keyword + "'" + where());
    }
  }
  return fromFaces(std::move(edgeNames), std::move(faces));
}

Triangulation Triangulation::fromFaces(std::vector<std::string> edgeNames,
                                       std::vector<Face> faces) {
  Triangulation t;
  t.edgeNames_ = std::move(edgeNames);
  t.faces_ = std::move(faces);
  for (int i = 0; i < t.edgeCount(); ++i) t.edgeIndex_[t.edgeNames_[i]] = i;
  for (int i = 0; i < t.faceCount(); ++i) {
    if (!t.faceIndex_.emplace(t.faces_[i].name, i).second)
      fail("duplicate face name '" + t.faces_[i].name + "'");
  }
  t.finalize();
  return t;
}

int Triangulation::edgeIndex(const std::string& name) const {
  auto it = edgeIndex_.find(name);
  if (it == edgeIndex_.end()) fail("unknown edge '" + name + "'");
  return it->second;
}

int Triangulation::faceIndex(const std::string& name) const {
  auto it = faceIndex_.find(name);
  if (it == faceIndex_.end()) fail("unknown face '" + name + "'");
  return it->second;
}

void Triangulation::finalize() {
  if (faces_.empty()) fail("empty triangulation: no faces");

  // Edge usage: at most twice overall, and with opposite directions.
  uses_.assign(edgeCount(), {});
  for (int f = 0; f < faceCount(); ++f) {
    const Face& face = faces_[f];
    for (int s = 0; s < 3; ++s)
      for (int s2 = s + 1; s2 < 3; ++s2)
        if (face.side[s].edge == face.side[s2].edge)
          fail("face '" + face.name + "' is self-folded (edge '" +
               edgeNames_[face.side[s].edge] + "' used twice)");
    for (int s = 0; s < 3; ++s)
      uses_[face.side[s].edge].push_back(EdgeUse{f, s, face.side[s].forward});
  }
  interiorEdges_ = 0;
  for (int e = 0; e < edgeCount(); ++e) {
    const auto& u = uses_[e];
    if (u.empty()) fail("edge '" + edgeNames_[e] + "' is unused");
    if (u.size() > 2) fail("edge '" + edgeNames_[e] + "' is used more than twice");
    if (u.size() == 2) {
      if (u[0].forward == u[1].forward)
        fail("edge '" + edgeNames_[e] + "' is used twice in the same direction");
      ++interiorEdges_;
    }
  }

  // Vertices: classes of edge ends.  End id = 2*edge + (0 start | 1 end).
  // Going counterclockwise around face f, side s is traversed from its
  // tail to its head; the head of side s is glued to the tail of side s+1
  // (this shared point is corner s of the face).
  auto headEnd = [&](const DirectedEdge& d) { return 2 * d.edge + (d.forward ? 1 : 0); };
  auto tailEnd = [&](const DirectedEdge& d) { return 2 * d.edge + (d.forward ? 0 : 1); };
  UnionFind ends(2 * edgeCount());
  for (const Face& f : faces_)
    for (int s = 0; s < 3; ++s)
      ends.unite(headEnd(f.side[s]), tailEnd(f.side[(s + 1) % 3]));

  std::map<int, int> vertexId;
  auto vertexOfEnd = [&](int end) {
    int root = ends.find(end);
    auto [it, inserted] = vertexId.emplace(root, static_cast<int>(vertexId.size()));
    return it->second;
  };
  edgeEndVertex_.resize(edgeCount());
  for (int e = 0; e < edgeCount(); ++e) {
    edgeEndVertex_[e][0] = vertexOfEnd(2 * e);
    edgeEndVertex_[e][1] = vertexOfEnd(2 * e + 1);
  }
  vertexCount_ = static_cast<int>(vertexId.size());

  cornerVertex_.resize(faceCount());
  vertexCorners_.assign(vertexCount_, {});
  for (int f = 0; f < faceCount(); ++f)
    for (int c = 0; c < 3; ++c) {
      int v = vertexOfEnd(headEnd(faces_[f].side[c]));
      cornerVertex_[f][c] = v;
      vertexCorners_[v].push_back(Corner{f, c});
    }

  // Boundary components: boundary edges linked through shared vertices.
  // Every vertex must meet exactly 0 or 2 boundary edge ends, otherwise the
  // input is not an oriented surface with 1-valent boundary links.
  std::vector<std::vector<int>> boundaryEndsAtVertex(vertexCount_);
  for (int e = 0; e < edgeCount(); ++e)
    if (isBoundaryEdge(e)) {
      boundaryEndsAtVertex[edgeEndVertex_[e][0]].push_back(e);
      boundaryEndsAtVertex[edgeEndVertex_[e][1]].push_back(e);
    }
  for (int v = 0; v < vertexCount_; ++v) {
    auto n = boundaryEndsAtVertex[v].size();
    if (n != 0 && n != 2)
      fail("vertex " + std::to_string(v) + " meets " + std::to_string(n) +
           " boundary edge ends (expected 0 or 2)");
  }
  UnionFind bComp(edgeCount());
  for (int v = 0; v < vertexCount_; ++v)
    if (boundaryEndsAtVertex[v].size() == 2)
      bComp.unite(boundaryEndsAtVertex[v][0], boundaryEndsAtVertex[v][1]);
  std::map<int, int> bCompId;
  std::vector<int> boundaryCompOfEdge(edgeCount(), -1);
  for (int e = 0; e < edgeCount(); ++e)
    if (isBoundaryEdge(e)) {
      auto [it, ins] = bCompId.emplace(bComp.find(e), static_cast<int>(bCompId.size()));
      boundaryCompOfEdge[e] = it->second;
    }
  boundaryComponentCount_ = static_cast<int>(bCompId.size());
  boundaryCompOfVertex_.assign(vertexCount_, -1);
  for (int v = 0; v < vertexCount_; ++v)
    if (!boundaryEndsAtVertex[v].empty())
      boundaryCompOfVertex_[v] = boundaryCompOfEdge[boundaryEndsAtVertex[v][0]];

  // Adjacency counts for the antisymmetrized pairing.
  adjacency_.assign(edgeCount(), std::vector<int>(edgeCount(), 0));
  for (const Face& f : faces_)
    for (int s = 0; s < 3; ++s)
      ++adjacency_[f.side[s].edge][f.side[(s + 1) % 3].edge];

  // Connected components of the surface (faces glued along interior edges).
  UnionFind comps(faceCount());
  for (int e = 0; e < edgeCount(); ++e)
    if (uses_[e].size() == 2) comps.unite(uses_[e][0].face, uses_[e][1].face);
  std::map<int, int> compId;
  componentOfFace_.resize(faceCount());
  for (int f = 0; f < faceCount(); ++f) {
    auto [it, ins] = compId.emplace(comps.find(f), static_cast<int>(compId.size()));
    componentOfFace_[f] = it->second;
  }
  components_.assign(compId.size(), {});

  // Per-component counts and Euler characteristic.  Each vertex and each
  // edge belongs to the component of any adjacent face.
  std::vector<int> compOfVertex(vertexCount_, -1);
  std::vector<int> vCount(components_.size(), 0), eCount(components_.size(), 0),
      fCount(components_.size(), 0);
  for (int f = 0; f < faceCount(); ++f) ++fCount[componentOfFace_[f]];
  for (int e = 0; e < edgeCount(); ++e) {
    int comp = componentOfFace_[uses_[e][0].face];
    ++eCount[comp];
    for (int end = 0; end < 2; ++end) {
      int v = edgeEndVertex_[e][end];
      if (compOfVertex[v] < 0) { compOfVertex[v] = comp; ++vCount[comp]; }
      else if (compOfVertex[v] != comp)
        fail("inconsistent component structure at vertex " + std::to_string(v));
    }
  }
  std::vector<bool> bCompSeen(boundaryComponentCount_, false);
  for (int e = 0; e < edgeCount(); ++e)
    if (isBoundaryEdge(e) && !bCompSeen[boundaryCompOfEdge[e]]) {
      bCompSeen[boundaryCompOfEdge[e]] = true;
      ++components_[componentOfFace_[uses_[e][0].face]].boundaryComponents;
    }
  for (int v = 0; v < vertexCount_; ++v) {
    auto& c = components_[compOfVertex[v]];
    ++c.punctures;
    if (boundaryCompOfVertex_[v] < 0) ++c.innerPunctures;
  }
  for (size_t i = 0; i < components_.size(); ++i) {
    auto& c = components_[i];
    int chi = vCount[i] - eCount[i] + fCount[i];
    int twoG = 2 - c.boundaryComponents - chi;
    if (twoG < 0 || twoG % 2 != 0)
      fail("component " + std::to_string(i) + " has invalid Euler characteristic " +
           std::to_string(chi));
    c.genus = twoG / 2;
    // Every boundary component of an ideal triangulation carries >= 1 puncture
    // by construction (boundary edges end in punctures); nothing to check.
  }
}

int Triangulation::boundaryComponentOfEdge(int e) const {
  if (!isBoundaryEdge(e)) return -1;
  int v = edgeEndVertex_[e][0];
  return boundaryCompOfVertex_[v];
}

std::vector<int> Triangulation::innerVertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertexCount_; ++v)
    if (isInnerVertex(v)) out.push_back(v);
  return out;
}

int Triangulation::genus() const {
  int g = 0;
  for (const auto& c : components_) g += c.genus;
  return g;
}

int Triangulation::innerPunctureCount() const {
  int n = 0;
  for (const auto& c : components_) n += c.innerPunctures;
  return n;
}

std::vector<Corner> Triangulation::allCorners() const {
  std::vector<Corner> out;
  out.reserve(3 * faceCount());
  for (int f = 0; f < faceCount(); ++f)
    for (int c = 0; c < 3; ++c) out.push_back(Corner{f, c});
  return out;
}

}  // namespace cfq
