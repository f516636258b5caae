/// Test helper: load fixture triangulations from the source tree.
#ifndef CFQ_TESTS_FIXTURES_HPP
#define CFQ_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "cfq/surface.hpp"

inline std::string readFixtureText(const std::string& name) {
  std::ifstream in(std::string(CFQ_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline cfq::Triangulation loadFixture(const std::string& name) {
  return cfq::Triangulation::parse(readFixtureText(name));
}

#endif
