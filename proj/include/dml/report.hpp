#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dml/corpus.hpp"

namespace dml {

struct HarnessSelection {
  bool laws = true;     // DML laws, annihilator lemmas, the three-way harness
  bool spectra = true;  // spectra, mu, Psi, regular core, point spaces
  bool modules = true;  // module-level harnesses
  bool sdml = true;     // residual laws and their equivalences

  static HarnessSelection none() { return {false, false, false, false}; }
};

/// Per-entry outcome. The stable section is an ordered key/value list and
/// is byte-identical across runs; timings are reported separately.
struct RunReport {
  std::string id;
  std::string kind;
  std::string spec;
  bool skipped = false;
  std::string skip_reason;
  bool build_error = false;
  std::string error_text;
  std::vector<std::pair<std::string, std::string>> stable;
  std::map<std::string, bool> predicates;
  std::vector<std::string> disagreements;
  std::vector<std::string> pin_failures;
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// Runs the selected harnesses over every entry. Entries execute
/// concurrently up to `jobs` threads; report order follows corpus order.
std::vector<RunReport> run_harnesses(const std::vector<CorpusEntry>& entries,
                                     const Bounds& bounds,
                                     const HarnessSelection& sel, int jobs,
                                     const std::string& base_dir);

/// The regression-stable section only.
std::string stable_report_text(const std::vector<RunReport>& reports,
                               const std::string& corpus_name);

/// Stable section plus the volatile timing block.
void write_report(std::ostream& out, const std::vector<RunReport>& reports,
                  const std::string& corpus_name, bool timings);

/// 0 when no theorem harness disagreed and every pinned expectation held.
int report_exit_code(const std::vector<RunReport>& reports);

}  // namespace dml
