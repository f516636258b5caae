#include <cstdio>
#include <fstream>
#include <sstream>

#include "cfq/qtrace.hpp"

using namespace cfq;

static Triangulation load(const std::string& name) {
  std::ifstream in("/root/proj/fixtures/" + name + ".tri");
  std::stringstream ss;
  ss << in.rdbuf();
  return Triangulation::parse(ss.str());
}

int main() {
  Triangulation tri = load("punctured_disc");
  QuantumTorus T(tri);
  int p = tri.innerVertices()[0];
  CornerVector w(3 * tri.faceCount(), 0);
  for (const Corner& c : tri.cornersAtVertex(p)) w[3 * c.face + c.corner] += 1;
  StatedDiagram d = fromCornerWeights(tri, w);
  TraceConventions conv;
  try {
    TorusTerms got = quantumTrace(T, d, conv);
    std::printf("gamma_p trace: %s\n", T.str(got).c_str());
    std::printf("H_p + H_p^-1:  %s\n",
                T.str(T.add(T.punctureMonomial(p), T.pow(T.punctureMonomial(p), -1))).c_str());
  } catch (const std::exception& e) {
    std::printf("gamma threw: %s\n", e.what());
  }

  for (int b = 0; b < tri.boundaryComponentCount(); ++b) {
    CornerVector wb(3 * tri.faceCount(), 0);
    for (int v = 0; v < tri.vertexCount(); ++v) {
      if (tri.boundaryComponentOfVertex(v) != b) continue;
      for (const Corner& c : tri.cornersAtVertex(v)) wb[3 * c.face + c.corner] += 1;
    }
    StatedDiagram db = fromCornerWeights(tri, wb);
    try {
      TorusTerms got = quantumTrace(T, db, conv);
      std::printf("alpha_b%d trace: %s\n", b, T.str(got).c_str());
      std::printf("H_b%d:           %s\n", b, T.str(T.boundaryMonomial(b, 1)).c_str());
    } catch (const std::exception& e) {
      std::printf("alpha_b%d threw: %s\n", b, e.what());
    }
  }
  return 0;
}
