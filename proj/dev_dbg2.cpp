#include <cstdio>
#include <fstream>
#include <sstream>
#include "cfq/qtrace.hpp"
using namespace cfq;
static Triangulation load(const std::string& name) {
  std::ifstream in("/root/proj/fixtures/" + name + ".tri");
  std::stringstream ss; ss << in.rdbuf();
  return Triangulation::parse(ss.str());
}
int main() {
  Triangulation tri = load("triangle");
  QuantumTorus T(tri);
  auto edgeAt = [&](int slot) {
    for (int e = 0; e < tri.edgeCount(); ++e)
      if (tri.edgeUses(e)[0].slot == slot) return e;
    return -1;
  };
  for (int mix : {0}) {
    TraceConventions conv;
    conv.mixedArcExponent = mix;
    auto tzs = [&](const StatedDiagram& d) -> std::string {
      try { return T.str(quantumTrace(T, d, conv)); }
      catch (const DiagramError&) { return "0(bad)"; }
      catch (const TraceError& e) { return std::string("TERR[") + e.what() + "]"; }
    };
    int c = 0;
    int eC = edgeAt(c), eC1 = edgeAt((c+1)%3), eC2 = edgeAt((c+2)%3);
    for (int a1 : {kPlus, kMinus})
      for (int a2 : {kPlus, kMinus}) {
        CornerVector w2(3*tri.faceCount(), 0);
        w2[c] = 1; w2[(c+1)%3] = 1;
        StatedDiagram X2 = fromCornerWeights(tri, w2);
        X2.states[eC] = {a1}; X2.states[eC1] = {kPlus, kMinus}; X2.states[eC2] = {a2};
        StatedDiagram X2p = X2; X2p.states[eC1] = {kMinus, kPlus};
        CornerVector wy(3*tri.faceCount(), 0); wy[(c+2)%3] = 1;
        StatedDiagram Y = fromCornerWeights(tri, wy);
        Y.states[eC] = {a1}; Y.states[eC2] = {a2};
        std::printf("pair %c%c: X={%s}  X'={%s}  Y={%s}\n",
                    a1>0?'+':'-', a2>0?'+':'-',
                    tzs(X2).c_str(), tzs(X2p).c_str(), tzs(Y).c_str());
        CornerVector w(3*tri.faceCount(), 0); w[c] = 2;
        StatedDiagram X = fromCornerWeights(tri, w);
        X.states[eC] = {a2, a1}; X.states[eC1] = {kPlus, kMinus};
        StatedDiagram Xp = X; Xp.states[eC1] = {kMinus, kPlus};
        std::printf("cable %c%c: X={%s}  X'={%s}\n",
                    a1>0?'+':'-', a2>0?'+':'-',
                    tzs(X).c_str(), tzs(Xp).c_str());
      }
  }
  return 0;
}
