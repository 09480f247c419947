#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dml/kernels.hpp"
#include "dml/result.hpp"

namespace dml {

using Elem = int;

/// A finite complete lattice over dense element indices. The order is kept
/// as a full reachability matrix and meet/join tables are computed eagerly
/// at construction, so instances are immutable and safe to share across
/// threads.
class FiniteLattice {
public:
  FiniteLattice() = default;

  /// Validates a full order relation: partial order, all binary meets and
  /// joins exist, bounded. O(n^3).
  static Result<FiniteLattice> from_leq(std::vector<std::string> labels,
                                        kernels::BoolTable leq);

  /// Reflexive-transitive closure of cover edges, then from_leq.
  static Result<FiniteLattice> from_covers(
      std::vector<std::string> labels,
      const std::vector<std::pair<Elem, Elem>>& covers);

  /// Builder entry point: tables are taken on faith. Used by the structural
  /// constructors below, which produce lattices by design.
  static FiniteLattice from_tables_unchecked(std::vector<std::string> labels,
                                             kernels::BoolTable leq,
                                             kernels::Table meet,
                                             kernels::Table join);

  int size() const { return n_; }
  bool leq(Elem a, Elem b) const { return leq_[check(a) * n_ + check(b)] != 0; }
  Elem meet(Elem a, Elem b) const { return meet_[check(a) * n_ + check(b)]; }
  Elem join(Elem a, Elem b) const { return join_[check(a) * n_ + check(b)]; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  /// big_join({}) is bottom, big_meet({}) is top.
  Elem big_meet(std::span<const Elem> xs) const;
  Elem big_join(std::span<const Elem> xs) const;

  const std::string& label(Elem a) const { return labels_[check(a)]; }
  std::optional<Elem> find_label(std::string_view s) const;
  const std::vector<std::string>& labels() const { return labels_; }

  /// Hasse edges (a,b) with b covering a, sorted.
  std::vector<std::pair<Elem, Elem>> cover_pairs() const;

  const kernels::BoolTable& leq_table() const { return leq_; }
  const kernels::Table& meet_table() const { return meet_; }
  const kernels::Table& join_table() const { return join_; }

private:
  Elem check(Elem a) const;
  void locate_bounds();

  int n_ = 0;
  std::vector<std::string> labels_;
  kernels::BoolTable leq_;
  kernels::Table meet_, join_;
  Elem bottom_ = 0, top_ = 0;
};

// -- predicates ---------------------------------------------------------------

std::optional<std::array<Elem, 3>> modularity_violation(const FiniteLattice& L);
bool is_modular(const FiniteLattice& L);

std::optional<std::array<Elem, 3>> distributivity_violation(const FiniteLattice& L);
bool is_distributive(const FiniteLattice& L);

/// Finite lattices are frames exactly when they are distributive; the
/// infinitary law collapses to the binary one.
bool is_frame(const FiniteLattice& L);

std::optional<Elem> complement_of(const FiniteLattice& L, Elem a);
bool has_complement(const FiniteLattice& L, Elem a);

/// Every element of a finite lattice is compact.
std::vector<Elem> compact_elements(const FiniteLattice& L);
bool is_compact_lattice(const FiniteLattice& L);

// -- Heyting structure ----------------------------------------------------------

/// Implication table of a frame; construction validates distributivity.
class HeytingTable {
public:
  Elem imp(Elem a, Elem b) const { return imp_[a * n_ + b]; }
  Elem neg(Elem a) const { return imp_[a * n_ + bottom_]; }
  int size() const { return n_; }

private:
  friend Result<HeytingTable> make_heyting(const FiniteLattice&);
  int n_ = 0;
  Elem bottom_ = 0;
  kernels::Table imp_;
};

Result<HeytingTable> make_heyting(const FiniteLattice& L);

/// Single-shot forms. Throw std::domain_error when L is not a frame.
Elem heyting_implication(const FiniteLattice& L, Elem a, Elem b);
Elem negation(const FiniteLattice& L, Elem a);

/// not(a ^ b) == not a v not b for all pairs, with the frame's own negation.
std::optional<std::pair<Elem, Elem>> frame_dml_violation(const FiniteLattice& L,
                                                         const HeytingTable& h);
bool frame_satisfies_dml(const FiniteLattice& L, const HeytingTable& h);

/// a == join of {x : not x v a == top} for every a. Pre: frame.
bool is_regular_frame(const FiniteLattice& L);

// -- substructures ---------------------------------------------------------------

/// A subset of a lattice that is again a lattice under the induced order.
/// to_parent maps local indices to elements of the parent.
struct Sublattice {
  FiniteLattice lat;
  std::vector<Elem> to_parent;

  std::optional<Elem> local_of(Elem parent_elem) const;
};

/// Meets/joins are recomputed inside the subset: the meet of a,b is the
/// greatest member below both, which must exist and be unique.
Result<Sublattice> induced_lattice(const FiniteLattice& L,
                                   std::vector<Elem> members);

// -- structural builders -----------------------------------------------------------

FiniteLattice chain(int n);
FiniteLattice powerset(int atoms);
FiniteLattice diamond_m3();
FiniteLattice pentagon_n5();

/// Two atoms, their join, and a top strictly above it. The smallest frame
/// whose negation fails the De Morgan law.
FiniteLattice kite();

/// Ideals of Z_n ordered by inclusion; the ideal of multiples of d is
/// labelled "(d)", with "(0)" for the zero ideal.
FiniteLattice divisor_lattice(int n);

FiniteLattice lattice_product(const FiniteLattice& a, const FiniteLattice& b);

}  // namespace dml
