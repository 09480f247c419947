#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dml/lattice.hpp"
#include "dml/result.hpp"

namespace dml {

/// Which product laws construction enforces. Full mode demands distribution
/// over arbitrary joins (binary plus the empty join). Quasi mode only asks
/// for monotonicity in each variable, which is all that distribution over
/// directed joins amounts to on a finite carrier.
enum class ProductLaw { full, quasi };

/// A finite lattice with an associative product. Annihilator and residual
/// tables are precomputed at validation, so all queries are O(1) lookups
/// and instances are immutable.
class Quantale {
public:
  /// Validates associativity, the selected distributivity law, and (when
  /// require_two_sided) a*b <= a^b. Returns the first broken axiom with a
  /// witness tuple otherwise.
  static Result<Quantale> check(FiniteLattice lattice, kernels::Table product,
                                ProductLaw law = ProductLaw::full,
                                bool require_two_sided = true);

  const FiniteLattice& lattice() const { return lat_; }
  int size() const { return lat_.size(); }
  Elem product(Elem a, Elem b) const { return prod_[check(a) * size() + check(b)]; }
  const kernels::Table& product_table() const { return prod_; }

  /// Largest x with x*a == 0.
  Elem ann_left(Elem a) const { return ann_l_[check(a)]; }
  /// Largest x with a*x == 0.
  Elem ann_right(Elem a) const { return ann_r_[check(a)]; }

  /// Largest x with a*x <= b.
  Elem residual_right(Elem a, Elem b) const {
    return res_r_[check(a) * size() + check(b)];
  }
  /// Largest x with x*a <= b.
  Elem residual_left(Elem b, Elem a) const {
    return res_l_[check(b) * size() + check(a)];
  }

  bool two_sided() const { return two_sided_; }
  bool semiprime() const { return !semiprime_witness_.has_value(); }
  /// An a != 0 with a*a == 0, when one exists.
  std::optional<Elem> semiprime_witness() const { return semiprime_witness_; }

  bool commutative() const;

private:
  Elem check(Elem a) const {
    if (a < 0 || a >= lat_.size())
      throw std::out_of_range("element id " + std::to_string(a) +
                              " outside quantale of size " +
                              std::to_string(lat_.size()));
    return a;
  }

  FiniteLattice lat_;
  kernels::Table prod_;
  kernels::Table ann_l_, ann_r_;
  kernels::Table res_r_, res_l_;
  bool two_sided_ = false;
  std::optional<Elem> semiprime_witness_;
};

bool is_semiprime(const Quantale& Q);

/// ann(a v b) == ann(a) ^ ann(b); ann(ab) == ann(a) v ann(b);
/// ann(a ^ b) == ann(a) v ann(b). Left annihilators throughout. Each law
/// reports its first counterexample pair in element-index order.
struct DmlLaws {
  bool law1 = false, law2 = false, dml = false;
  std::optional<std::pair<Elem, Elem>> law1_witness, law2_witness, dml_witness;
};
DmlLaws check_dml_laws(const Quantale& Q);

/// For every a,b with a v b == 1 there are a',b' with
/// a v b' == 1 == a' v b and a'b' == 0.
std::optional<std::pair<Elem, Elem>> normality_violation(const Quantale& Q);
bool is_normal(const Quantale& Q);

/// Three conditions that must coincide on any two-sided member:
/// semiprime + DML; ann(ab) == ann(a) v ann(b) everywhere; every ann(a)
/// complemented + DML. A disagreement is a reproducible counterexample.
struct Prop34Report {
  bool semiprime_and_dml = false;
  bool law2_all_pairs = false;
  bool ann_complemented_and_dml = false;
  bool all_agree = false;
  std::vector<std::string> notes;
};
Prop34Report prop34_harness(const Quantale& Q);

/// ann(ab) == ann(a ^ b) for all pairs. Pre: semiprime.
std::optional<std::pair<Elem, Elem>> lemma33_violation(const Quantale& Q);
bool lemma33_check(const Quantale& Q);

/// ab == 0 forces ba == 0 and a ^ b == 0. Pre: semiprime.
std::optional<std::pair<Elem, Elem>> lemma38_violation(const Quantale& Q);
bool lemma38_check(const Quantale& Q);

/// A subset closed under the parent's product and joins (including the
/// empty join, so it contains 0).
struct SubQuantale {
  const Quantale* parent = nullptr;
  std::vector<Elem> members;  // sorted
  bool star = false;          // 0,1 in members and 1b <= b, b1 <= b

  bool contains(Elem a) const;
  int local_of(Elem a) const;  // -1 when absent
};

Result<SubQuantale> make_subquantale(const Quantale& Q, std::vector<Elem> members);

/// The whole carrier as a subquantale of itself.
SubQuantale full_subquantale(const Quantale& Q);

}  // namespace dml
