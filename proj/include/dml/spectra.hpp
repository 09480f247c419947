#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dml/quantale.hpp"

namespace dml {

/// Subsets of a point set, at most 64 points.
using PointSet = std::uint64_t;

/// A finite point set with its family of open subsets, sorted and deduped.
struct FiniteTopSpace {
  std::vector<std::string> point_labels;
  std::vector<PointSet> opens;

  int points() const { return static_cast<int>(point_labels.size()); }
  PointSet full() const {
    return points() == 64 ? ~PointSet{0} : ((PointSet{1} << points()) - 1);
  }
};

/// Validates that the family contains the empty and full sets and is closed
/// under union and intersection.
Result<FiniteTopSpace> make_space(std::vector<std::string> point_labels,
                                  std::vector<PointSet> opens);

/// Smallest closed superset, from the complements of the opens.
PointSet space_closure(const FiniteTopSpace& S, PointSet xs);

/// Closures of open sets are open.
bool is_extremely_disconnected(const FiniteTopSpace& S);

/// Distinct points are separated by disjoint opens.
bool is_hausdorff(const FiniteTopSpace& S);

/// Backtracking search for a bijection carrying opens onto opens.
bool are_homeomorphic(const FiniteTopSpace& S, const FiniteTopSpace& T);

/// The opens ordered by inclusion form a frame; labels are point-set braces.
FiniteLattice opens_lattice(const FiniteTopSpace& S);

// -- nuclei --------------------------------------------------------------------

/// Axiom-by-axiom analysis of a self-map, with witnesses for failures.
struct SelfMapAnalysis {
  std::vector<Elem> map;
  bool monotone = false;
  bool inflationary = false;
  bool idempotent = false;
  bool prenucleus = false;  // j(a ^ b) == j(a) ^ j(b)
  std::vector<std::string> notes;

  bool is_nucleus() const { return inflationary && idempotent && prenucleus; }
};

SelfMapAnalysis analyze_selfmap(const FiniteLattice& L, std::vector<Elem> map);

/// An inflationary idempotent meet-preserving self-map, validated.
struct NucleusMap {
  FiniteLattice carrier;
  std::vector<Elem> map;
};

Result<NucleusMap> make_nucleus(const FiniteLattice& L, std::vector<Elem> map);

/// Fixed points with inherited meets; the join of fixed points is the image
/// of the carrier join under the nucleus.
struct QuotientLattice {
  FiniteLattice lat;
  std::vector<Elem> to_carrier;
};

QuotientLattice nucleus_quotient(const NucleusMap& j);

/// a |-> ann(ann(a)). A nucleus exactly on members satisfying the algebraic
/// De Morgan law, so validation is gated on that check.
SelfMapAnalysis annann_analysis(const Quantale& Q);
Result<NucleusMap> annann_map(const Quantale& Q);

// -- spectra -------------------------------------------------------------------

/// Elements p != 1 with ab <= p forcing a <= p or b <= p for a,b in B.
/// p ranges over the whole carrier of A.
std::vector<Elem> primes_relative(const Quantale& A, const SubQuantale& B);

/// primes_relative with B the whole carrier.
std::vector<Elem> spec_points(const Quantale& A);

struct SpectrumResult {
  std::vector<Elem> points;  // prime elements, by parent index
  FiniteTopSpace space;      // opens are the U(b) for b in B
};

/// Pre: B satisfies (*). The opens family is verified to be a topology and
/// a witness is reported when closure fails.
Result<SpectrumResult> spectrum_space(const Quantale& A, const SubQuantale& B);

/// The closure operator b |-> join{x in B : U(x) within U(b)} on B, analyzed
/// against the nucleus axioms rather than assumed to satisfy them. u_fixed
/// records whether U(mu(b)) == U(b) held for every b.
struct MuResult {
  std::vector<Elem> members;        // B, sorted parent indices
  FiniteLattice member_lattice;     // induced lattice of B
  std::vector<PointSet> u;          // U(b) per local index
  std::vector<Elem> mu;             // local index -> local index
  SelfMapAnalysis analysis;         // over member_lattice
  bool u_fixed = false;
  std::vector<Elem> fixed_points;   // parent indices with mu(b) == b
};

Result<MuResult> mu_analysis(const Quantale& A, const SubQuantale& B);

/// Order isomorphism b |-> U(b) from mu-fixed points onto the opens.
struct OrderIsoReport {
  bool injective = false;
  bool onto = false;
  bool order_preserving_both_ways = false;
  std::string note;

  bool ok() const { return injective && onto && order_preserving_both_ways; }
};

OrderIsoReport amu_iso_opens(const Quantale& A, const SubQuantale& B);

// -- rather-below, Psi and the regular core ---------------------------------------

/// x is rather below a when ann(x) v a == 1.
bool rather_below(const Quantale& Q, Elem x, Elem a);

/// r(a) = join of {x : x rather below a}.
std::vector<Elem> r_operator_table(const Quantale& Q);

/// Fixed points of r under the induced order.
Result<Sublattice> psi(const Quantale& Q);

/// Iterates the Psi construction, each stage recomputing annihilators and r
/// inside the previous stage (product inherited, joins recomputed there).
/// Finite carriers stabilize in at most |A| stages.
struct RegularCoreResult {
  Sublattice core;
  int stabilized_at = 0;  // least k with stage k+1 == stage k
  bool core_is_frame = false;
  bool core_is_regular = false;
};

Result<RegularCoreResult> regular_core(const Quantale& Q);

/// Points of a finite frame: meet-prime elements with the U(a) topology.
Result<SpectrumResult> frame_points(const FiniteLattice& F);

/// Maximal elements of the carrier minus top, with the subspace topology
/// induced by the U(b).
Result<FiniteTopSpace> max_space(const Quantale& Q);

// -- harnesses ---------------------------------------------------------------------

/// Five conditions that must coincide on a semiprime two-sided member: DML,
/// the product law for annihilators, complemented annihilators with DML,
/// DML in the spectrum's open-set frame, and extreme disconnectedness of
/// the spectrum.
struct Thm311Report {
  bool applicable = false;
  bool c1_dml = false;
  bool c2_law2 = false;
  bool c3_ann_complemented_dml = false;
  bool c4_ospec_dml = false;
  bool c5_spec_ed = false;
  bool all_agree = false;
  std::vector<std::string> notes;
};

Thm311Report theorem311_harness(const Quantale& Q);

/// Psi-side consequences of semiprime + DML: Psi is a frame satisfying the
/// frame De Morgan law, it is regular, and the core iteration stops by
/// stage one.
struct PsiReport {
  bool psi_is_lattice = false;
  bool psi_is_frame = false;
  bool psi_dml = false;
  bool psi_regular = false;
  int core_stabilized_at = -1;
  bool core_is_frame = false;
  bool core_is_regular = false;
  std::vector<std::string> notes;
};

PsiReport psi_report(const Quantale& Q);

/// On a compact normal semiprime member with DML, the points of Psi form an
/// extremely disconnected Hausdorff space. The Max comparison is recorded
/// as an observation, never patched.
struct Cor316Report {
  bool applicable = false;  // normal && semiprime && dml (compactness is free)
  bool pt_psi_ed = false;
  bool pt_psi_hausdorff = false;
  bool max_matches_pt_psi = false;
  bool pass = false;
  std::vector<std::string> notes;
};

Cor316Report cor316_harness(const Quantale& Q);

/// Interaction of mu and r with annihilators, each gated on its hypothesis:
/// mu fixes annihilators on semiprime members; ann(a) == ann(mu(a)) when
/// mu(0) == 0; r fixes annihilators when every annihilator is complemented.
struct MuLemmasReport {
  bool lemma36_applicable = false, lemma36_holds = false;
  bool lemma37_applicable = false, lemma37_holds = false;
  bool lemma313_applicable = false, lemma313_holds = false;
  std::vector<std::string> notes;
};

MuLemmasReport mu_lemmas_report(const Quantale& Q);

}  // namespace dml
