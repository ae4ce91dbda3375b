#pragma once

#include <string>

#include "bucketforge/model.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

// The six-variable network with ids A=0 B=1 C=2 D=3 E=4 G=5.
inline bucketforge::BeliefNetwork sixnode() {
  auto parsed = bucketforge::parse_network(bucketforge::read_file(fixture("sixnode.net")));
  auto net = *parsed.bayes;
  const char* names[] = {"A", "B", "C", "D", "E", "G"};
  for (int v = 0; v < 6; ++v) net.variables[static_cast<std::size_t>(v)].name = names[v];
  return net;
}

enum SixNode { A = 0, B = 1, C = 2, D = 3, E = 4, G = 5 };

}  // namespace testing_support
