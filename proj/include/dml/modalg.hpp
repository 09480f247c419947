#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dml/bounds.hpp"
#include "dml/quantale.hpp"

namespace dml {

/// Subsets of module elements. Module order is capped at 64 so every
/// submodule fits in one word.
using SubMask = std::uint64_t;

/// A map between module carriers, tabulated per element.
using ModMap = std::vector<std::uint8_t>;

class FiniteRing {
public:
  /// Validates the full ring axioms exhaustively: abelian group under
  /// addition, associative multiplication with identity, distributivity.
  static Result<FiniteRing> check(std::vector<std::string> labels,
                                  kernels::Table add, kernels::Table mul,
                                  const Bounds& bounds = Bounds{});

  int size() const { return n_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool commutative() const;

  const kernels::Table& add_table() const { return add_; }
  const kernels::Table& mul_table() const { return mul_; }

private:
  int n_ = 0;
  std::vector<std::string> labels_;
  kernels::Table add_, mul_;
  std::vector<Elem> neg_;
  Elem zero_ = 0, one_ = 0;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

Result<FiniteRing> ring_Zn(int n, const Bounds& bounds = Bounds{});
Result<FiniteRing> ring_Fp(int p, const Bounds& bounds = Bounds{});
Result<FiniteRing> ring_product(const FiniteRing& a, const FiniteRing& b,
                                const Bounds& bounds = Bounds{});
/// Full 2x2 matrix ring.
Result<FiniteRing> ring_M2(const FiniteRing& base, const Bounds& bounds = Bounds{});
/// Upper triangular 2x2 matrices.
Result<FiniteRing> ring_T2(const FiniteRing& base, const Bounds& bounds = Bounds{});
/// base[x]/(x^2).
Result<FiniteRing> ring_dual(const FiniteRing& base, const Bounds& bounds = Bounds{});

/// A finite unital left module. Submodules, their lattice, the fully
/// invariant sublattice and every hom-set into a submodule target are
/// enumerated at construction; instances are immutable afterwards.
class FiniteModule {
public:
  static Result<FiniteModule> check(RingPtr ring, std::vector<std::string> labels,
                                    kernels::Table add, kernels::Table action,
                                    const Bounds& bounds = Bounds{});

  const FiniteRing& ring() const { return *ring_; }
  RingPtr ring_ptr() const { return ring_; }
  int size() const { return n_; }
  Elem zero() const { return zero_; }
  Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem act(Elem r, Elem m) const { return action_[r * n_ + m]; }
  const std::string& label(Elem a) const { return labels_[a]; }

  /// Smallest submodule containing m: the orbit {r m : r in R}.
  SubMask cyclic(Elem m) const;

  const std::vector<SubMask>& submodules() const { return submodules_; }
  int submodule_index(SubMask mask) const;  // -1 when absent
  int submodule_of_label(const std::string& label) const;
  const FiniteLattice& submodule_lattice() const { return sub_lattice_; }
  std::string submodule_label(int idx) const { return sub_lattice_.label(idx); }

  bool is_fully_invariant(int idx) const { return fi_local_[idx] >= 0; }
  const std::vector<int>& fi_submodules() const { return fi_subs_; }
  const FiniteLattice& fi_lattice() const { return fi_lattice_; }
  int fi_local(int idx) const { return fi_local_[idx]; }

  /// Every additive action-equivariant map M -> K, sorted lexicographically.
  const std::vector<ModMap>& homs(int target_idx) const { return homs_[target_idx]; }
  const std::vector<ModMap>& endomorphisms() const;

  /// Generating set used for hom enumeration (minimal by greedy span growth).
  const std::vector<Elem>& additive_generators() const { return gens_; }

  int top_index() const { return top_idx_; }
  int zero_index() const { return zero_idx_; }

private:
  RingPtr ring_;
  int n_ = 0;
  std::vector<std::string> labels_;
  kernels::Table add_, action_;
  std::vector<Elem> neg_;
  Elem zero_ = 0;

  std::vector<SubMask> submodules_;
  FiniteLattice sub_lattice_;
  std::vector<int> fi_subs_;
  std::vector<int> fi_local_;
  FiniteLattice fi_lattice_;
  std::vector<std::vector<ModMap>> homs_;
  std::vector<Elem> gens_;
  int top_idx_ = -1, zero_idx_ = -1;
};

Result<FiniteModule> module_regular(RingPtr ring, const Bounds& bounds = Bounds{});
Result<FiniteModule> module_free(RingPtr ring, int rank,
                                 const Bounds& bounds = Bounds{});

// -- products, annihilators, residuals -------------------------------------------

/// N_M K: the submodule generated by the images f(N), f ranging over
/// Hom(M, K). Arguments and result are submodule indices.
int bican_product(const FiniteModule& M, int n_idx, int k_idx);

/// Intersection of the kernels of all maps M -> K.
int annihilator(const FiniteModule& M, int k_idx);

/// (N : L) = {m : f(m) in N for every f in Hom(M, L)}.
int colon(const FiniteModule& M, int n_idx, int l_idx);

/// {m : N + Ann(R m) == M}, computed pointwise.
SubMask ler_set(const FiniteModule& M, int n_idx);

// -- predicates --------------------------------------------------------------------

bool is_prime_submodule(const FiniteModule& M, int n_idx);
bool is_semiprime_submodule(const FiniteModule& M, int n_idx);
/// Nonzero fully invariant N with N_M N == 0, if any.
std::optional<int> semiprime_module_witness(const FiniteModule& M);
bool is_semiprime_module(const FiniteModule& M);

/// Fully invariant N whose annihilator is not a direct summand, if any.
std::optional<int> fi_baer_witness(const FiniteModule& M);
bool is_fi_baer(const FiniteModule& M);

/// Nonzero fully invariant K with Hom(M, K) == 0, if any.
std::optional<int> fi_retractable_witness(const FiniteModule& M);
bool is_fi_retractable(const FiniteModule& M);

/// Ann(N cap L) == Ann(N) + Ann(L) over fully invariant pairs.
std::optional<std::pair<int, int>> module_dml_witness(const FiniteModule& M);
bool module_dml(const FiniteModule& M);

struct SdmlReport {
  bool sdml = false, sdml1 = false, sdml2 = false;
  std::optional<std::pair<int, int>> sdml_witness;
  std::optional<std::array<int, 3>> sdml1_witness, sdml2_witness;
};
SdmlReport sdml_checks(const FiniteModule& M);

// -- quantale packaging ---------------------------------------------------------------

/// The fully invariant lattice with the submodule product. Validity means
/// the product is closed on fully invariant members, associative,
/// join-distributive and two-sided; each is checked, never assumed.
struct FiQuantale {
  Quantale q;
  std::vector<int> fi_subs;  // quantale element -> submodule index
};
Result<FiQuantale> fi_quantale(const FiniteModule& M);

/// The full submodule lattice with the same product; two-sidedness is not
/// required here. The fully invariant members of a valid result form a
/// (*)-subquantale.
Result<Quantale> lambda_quantale(const FiniteModule& M);

// -- harnesses -------------------------------------------------------------------------

/// Direct and fixed-point descriptions of Psi(M), compared.
struct PsiModuleReport {
  std::vector<int> fixed_points;  // fi indices with Ler(N) == N
  std::vector<int> direct;        // fi indices with N + Ann(R n) == M for n in N
  bool equal = false;
};
PsiModuleReport psi_module(const FiniteModule& M);

struct Prop62Report {
  bool item1 = false, item2 = false, item3 = false, item4 = false;
  bool gate5 = false, item5 = false;  // gate: M generates its fi submodules
  bool gate6 = false, item6 = false;  // gate: hom-sets split over sums
  std::vector<std::string> notes;

  bool pass() const {
    return item1 && item2 && item3 && item4 && (!gate5 || item5) &&
           (!gate6 || item6);
  }
};
Prop62Report prop62_properties(const FiniteModule& M);

struct Prop63Report {
  bool sdml = false, sdml1 = false, sdml2 = false;
  bool sdml2_implies_sdml = false;
  bool gate_distr = false, distributive_ok = false;
  bool gate_equiv = false, equivalent = false;
  std::vector<std::string> notes;

  bool pass() const {
    return sdml2_implies_sdml && (!gate_distr || distributive_ok) &&
           (!gate_equiv || equivalent);
  }
};
Prop63Report prop63_harness(const FiniteModule& M);

/// Lattice-level Asano conditions: commutative product plus one of the
/// strong De Morgan laws. The localization-side conditions stay out of
/// reach of finite tables, so only the equivalence of these three is
/// exercised.
struct AsanoReport {
  bool fiq_valid = false;
  bool commutative = false;
  bool cond3 = false, cond4 = false, cond5 = false;
  bool applicable = false;  // commutative with a valid quantale
  bool equivalent = false;
};
AsanoReport asano_conditions(const FiniteModule& M);

/// Six conditions evaluated independently and compared pairwise.
struct Thm514Report {
  bool applicable = false;  // fi_quantale valid
  std::array<bool, 6> cond{};
  bool all_agree = false;
  std::optional<bool> common;
  std::vector<std::string> notes;
};
Thm514Report theorem514_harness(const FiniteModule& M);

/// The two candidate realizations of SP(M): semiprime fully invariant
/// submodules (plus M) under inclusion, and the mu-fixed frame of the
/// fully invariant quantale. Their agreement is tested, not assumed.
struct SpRealizationReport {
  bool built = false;
  bool same_member_sets = false;
  bool order_isomorphic = false;
  std::vector<std::string> notes;
};
SpRealizationReport sp_realizations(const FiniteModule& M);

/// Module-level lemma bundle, each item gated on its hypotheses.
struct ModuleLemmasReport {
  bool semiprimelemma_applicable = false, semiprimelemma_holds = false;
  bool annprodinter_applicable = false, annprodinter_holds = false;
  bool summand_fi_applicable = false, summand_fi_holds = false;
  bool idem_holds = false;
  bool retractable_implication_holds = false;  // semiprime forces FI-retractable
  std::vector<std::string> notes;
};
ModuleLemmasReport module_lemmas(const FiniteModule& M);

/// Ann(K) must be fully invariant, kill K under the product, and dominate
/// every submodule that kills K. Returns a description of the first failure.
std::optional<std::string> annihilator_postcondition_violation(const FiniteModule& M);

/// Order-isomorphism search between small lattices.
bool are_order_isomorphic(const FiniteLattice& A, const FiniteLattice& B);

}  // namespace dml
