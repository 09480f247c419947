#pragma once

#include <string>

namespace dml {

/// Size limits for exhaustive enumeration. Defaults keep every harness
/// below a few seconds; override per run via DMLCHECK_BOUNDS or CLI flags.
struct Bounds {
  int max_ring_order = 64;
  int max_noncomm_ring_order = 16;  // matrix and triangular constructions
  int max_module_order = 64;
  int max_lattice_size = 4096;
  int max_quantale_size = 512;
  int max_points = 64;
  long long max_hom_candidates = 1 << 20;

  /// Parse overrides from a spec string like "module=32,ring=8,homcap=65536".
  /// Unknown keys and malformed pairs raise std::invalid_argument.
  void apply_spec(const std::string& spec);

  /// Defaults plus overrides from the DMLCHECK_BOUNDS environment variable.
  static Bounds from_env();
};

}  // namespace dml
