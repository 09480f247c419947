#include "dml/bounds.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "dml/result.hpp"

namespace dml {

std::string Violation::to_string() const {
  std::ostringstream os;
  os << "violation " << axiom;
  if (!witness.empty()) {
    os << " witness=(";
    for (size_t i = 0; i < witness.size(); ++i) {
      if (i) os << ",";
      os << witness[i];
    }
    os << ")";
  }
  if (!detail.empty()) os << " detail=" << detail;
  return os.str();
}

ResourceError::ResourceError(std::string bound_name, long long limit,
                             long long requested)
    : std::runtime_error("bound " + bound_name + " exceeded: requested " +
                         std::to_string(requested) + ", limit " +
                         std::to_string(limit)),
      bound_name_(std::move(bound_name)),
      limit_(limit),
      requested_(requested) {}

void Bounds::apply_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::string pair;
  while (std::getline(in, pair, ',')) {
    if (pair.empty()) continue;
    auto eq = pair.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bounds spec: missing '=' in \"" + pair + "\"");
    std::string key = pair.substr(0, eq);
    long long val = 0;
    try {
      val = std::stoll(pair.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bounds spec: bad value in \"" + pair + "\"");
    }
    if (val <= 0) throw std::invalid_argument("bounds spec: value must be positive");
    if (key == "ring")
      max_ring_order = static_cast<int>(val);
    else if (key == "ncring")
      max_noncomm_ring_order = static_cast<int>(val);
    else if (key == "module")
      max_module_order = static_cast<int>(val);
    else if (key == "lattice")
      max_lattice_size = static_cast<int>(val);
    else if (key == "quantale")
      max_quantale_size = static_cast<int>(val);
    else if (key == "points")
      max_points = static_cast<int>(val);
    else if (key == "homcap")
      max_hom_candidates = val;
    else
      throw std::invalid_argument("bounds spec: unknown key \"" + key + "\"");
  }
}

Bounds Bounds::from_env() {
  Bounds b;
  if (const char* env = std::getenv("DMLCHECK_BOUNDS")) b.apply_spec(env);
  return b;
}

}  // namespace dml
