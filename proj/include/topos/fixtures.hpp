#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topos/heyting.hpp"

namespace topos::fixtures {

struct AlgebraSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
};

inline AlgebraSpec chain2_spec() { return {{"0", "1"}, {{"0", "1"}}}; }
inline AlgebraSpec chain3_spec() { return {{"0", "h", "1"}, {{"0", "h"}, {"h", "1"}}}; }
// The Boolean algebra 2x2.
inline AlgebraSpec diamond4_spec() {
  return {{"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}};
}
// Non-distributive; build_heyting rejects it.
inline AlgebraSpec m3_spec() {
  return {{"0", "a", "b", "c", "1"},
          {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}};
}

inline const std::vector<std::string>& bundled_names() {
  static const std::vector<std::string> names{"chain2", "chain3", "diamond4", "m3"};
  return names;
}

inline bool is_bundled(std::string_view name) {
  for (const auto& n : bundled_names())
    if (n == name) return true;
  return false;
}

inline AlgebraSpec bundled_spec(std::string_view name) {
  if (name == "chain2") return chain2_spec();
  if (name == "chain3") return chain3_spec();
  if (name == "diamond4") return diamond4_spec();
  if (name == "m3") return m3_spec();
  throw Error(ErrorCode::parse_error, "no bundled algebra named '" + std::string(name) + "'");
}

inline HeytingAlgebra bundled(std::string_view name) {
  auto spec = bundled_spec(name);
  return build_heyting(spec.elements, spec.leq);
}

inline HeytingAlgebra chain2() { return bundled("chain2"); }
inline HeytingAlgebra chain3() { return bundled("chain3"); }
inline HeytingAlgebra diamond4() { return bundled("diamond4"); }

}  // namespace topos::fixtures
