#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dml/io.hpp"
#include "dml/modalg.hpp"

namespace dml {

/// One corpus line: a structure to build plus optional pinned expectations
/// on report predicates.
struct CorpusEntry {
  std::string id;
  std::string kind;  // ring | module | quantale
  std::string spec;  // constructor expression
  std::map<std::string, bool> expected;
  int line = 0;
};

/// entry <id> <kind> <expr> [expect key=bool ...]
/// Blank lines and # comments are ignored. Duplicate ids are rejected.
std::vector<CorpusEntry> parse_corpus(std::istream& in);

/// The shipped corpus: cyclic rings, small fields and their products, the
/// 2x2 matrix and triangular rings over F2, dual numbers, the rank-two
/// F2 module, and hand-built Boolean and chain quantales.
const std::vector<CorpusEntry>& builtin_corpus();

/// A realized corpus entry. Ring entries are realized as the regular
/// module over themselves; quantale entries carry only the quantale.
struct BuiltEntry {
  std::optional<FiniteModule> module;
  std::optional<Quantale> quantale;
};

/// Evaluates the constructor expression. file(...) paths resolve against
/// base_dir. Throws ParseError, ValidationError or ResourceError.
BuiltEntry build_entry(const CorpusEntry& e, const Bounds& bounds,
                       const std::string& base_dir);

/// Expression-level builders, shared with build_entry.
Result<FiniteRing> build_ring_expr(const std::string& expr, const Bounds& bounds,
                                   const std::string& base_dir);
FiniteLattice build_lattice_expr(const std::string& expr, const Bounds& bounds,
                                 const std::string& base_dir);

}  // namespace dml
