#include "coopcache/types.hpp"

#include <cmath>
#include <stdexcept>

namespace coopcache {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string to_string(Policy p) {
  switch (p) {
    case Policy::NC:
      return "NC";
    case Policy::HopByHop:
      return "HopByHop";
    case Policy::Hybrid:
      return "Hybrid";
  }
  return "?";
}

Policy policy_from_string(const std::string& name) {
  if (name == "NC") return Policy::NC;
  if (name == "HopByHop") return Policy::HopByHop;
  if (name == "Hybrid") return Policy::Hybrid;
  throw std::invalid_argument("unknown policy '" + name + "' (expected NC, HopByHop or Hybrid)");
}

}  // namespace coopcache
