#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dml/bounds.hpp"
#include "dml/modalg.hpp"
#include "dml/spectra.hpp"

namespace dml {

/// Malformed document text; carries the offending line number.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// A structurally well-formed document describing an invalid structure.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(Violation v)
      : std::runtime_error(v.to_string()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

private:
  Violation violation_;
};

// Structured text documents. Lattices list element labels and Hasse edges;
// quantales add the product matrix; rings and modules carry full operation
// tables. Readers throw ParseError or ValidationError; writers emit a
// canonical form that reparses to the same structure.

FiniteLattice read_lattice_doc(std::istream& in);
void write_lattice_doc(std::ostream& out, const FiniteLattice& L);

Quantale read_quantale_doc(std::istream& in);
void write_quantale_doc(std::ostream& out, const Quantale& Q);

FiniteRing read_ring_doc(std::istream& in, const Bounds& bounds = Bounds{});
void write_ring_doc(std::ostream& out, const FiniteRing& R);

FiniteModule read_module_doc(std::istream& in, const Bounds& bounds = Bounds{});
void write_module_doc(std::ostream& out, const FiniteModule& M);

/// Reads any document, dispatching on the leading keyword, and returns a
/// one-line summary. Used by the validate subcommand.
std::string validate_document(std::istream& in, const Bounds& bounds = Bounds{});

/// Hasse diagram, edges pointing upward.
std::string lattice_dot(const FiniteLattice& L);

/// Specialization order of a finite space: an edge q -> p when p lies in
/// the closure of {q}.
std::string space_dot(const FiniteTopSpace& S);

}  // namespace dml
