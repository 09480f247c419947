#include "dml/quantale.hpp"

#include <algorithm>
#include <stdexcept>

namespace dml {

Result<Quantale> Quantale::check(FiniteLattice lattice, kernels::Table product,
                                 ProductLaw law, bool require_two_sided) {
  const int n = lattice.size();
  if (product.size() != static_cast<size_t>(n) * n)
    return Violation{"product", {}, "table size mismatch"};
  for (int v : product)
    if (v < 0 || v >= n) return Violation{"product", {}, "entry outside carrier"};

  auto lbl = [&](Elem a) { return lattice.label(a); };

  if (auto w = kernels::associativity_violation(product, n))
    return Violation{"associativity",
                     {lbl(w->a), lbl(w->b), lbl(w->c)},
                     "(ab)c != a(bc)"};

  if (law == ProductLaw::full) {
    if (auto w = kernels::join_distributivity_violation(product, lattice.join_table(),
                                                        n, lattice.bottom())) {
      if (w->side == 'z')
        return Violation{"join_distributivity",
                         {lbl(w->at.a), lbl(w->at.b)},
                         "product with 0 is not 0"};
      return Violation{"join_distributivity",
                       {lbl(w->at.a), lbl(w->at.b), lbl(w->at.c)},
                       w->side == 'l' ? "(a v b)c != ac v bc"
                                      : "c(a v b) != ca v cb"};
    }
  } else {
    if (auto w = kernels::monotonicity_violation(lattice.leq_table(), product, n))
      return Violation{"monotonicity",
                       {lbl(w->a), lbl(w->b), lbl(w->c)},
                       "product not monotone"};
  }

  auto two_sided_witness = kernels::two_sidedness_violation(
      lattice.leq_table(), product, lattice.meet_table(), n);
  if (require_two_sided && two_sided_witness)
    return Violation{"two_sided",
                     {lbl(two_sided_witness->a), lbl(two_sided_witness->b)},
                     "ab not below a ^ b"};

  Quantale Q;
  Q.lat_ = std::move(lattice);
  Q.prod_ = std::move(product);
  Q.two_sided_ = !two_sided_witness.has_value();
  const auto& join = Q.lat_.join_table();
  const auto& leq = Q.lat_.leq_table();
  Q.ann_l_ = kernels::annihilator_table(Q.prod_, join, n, Q.lat_.bottom(), true);
  Q.ann_r_ = kernels::annihilator_table(Q.prod_, join, n, Q.lat_.bottom(), false);
  Q.res_r_ = kernels::residual_table(Q.prod_, join, leq, n, Q.lat_.bottom(), true);
  Q.res_l_ = kernels::residual_table(Q.prod_, join, leq, n, Q.lat_.bottom(), false);
  for (Elem a = 0; a < n; ++a)
    if (a != Q.lat_.bottom() && Q.prod_[a * n + a] == Q.lat_.bottom()) {
      Q.semiprime_witness_ = a;
      break;
    }
  return Q;
}

bool Quantale::commutative() const {
  const int n = size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (prod_[a * n + b] != prod_[b * n + a]) return false;
  return true;
}

bool is_semiprime(const Quantale& Q) { return Q.semiprime(); }

DmlLaws check_dml_laws(const Quantale& Q) {
  DmlLaws out;
  const auto& L = Q.lattice();
  const int n = L.size();
  out.law1 = out.law2 = out.dml = true;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (out.law1 &&
          Q.ann_left(L.join(a, b)) != L.meet(Q.ann_left(a), Q.ann_left(b))) {
        out.law1 = false;
        out.law1_witness = {a, b};
      }
      if (out.law2 &&
          Q.ann_left(Q.product(a, b)) != L.join(Q.ann_left(a), Q.ann_left(b))) {
        out.law2 = false;
        out.law2_witness = {a, b};
      }
      if (out.dml &&
          Q.ann_left(L.meet(a, b)) != L.join(Q.ann_left(a), Q.ann_left(b))) {
        out.dml = false;
        out.dml_witness = {a, b};
      }
      if (!out.law1 && !out.law2 && !out.dml) return out;
    }
  return out;
}

std::optional<std::pair<Elem, Elem>> normality_violation(const Quantale& Q) {
  auto w = kernels::normality_violation(Q.lattice().join_table(), Q.product_table(),
                                        Q.size(), Q.lattice().top(),
                                        Q.lattice().bottom());
  if (!w) return std::nullopt;
  return std::make_pair(w->a, w->b);
}

bool is_normal(const Quantale& Q) { return !normality_violation(Q); }

Prop34Report prop34_harness(const Quantale& Q) {
  if (!Q.two_sided())
    throw std::domain_error("prop34_harness: carrier must be two-sided");
  Prop34Report rep;
  DmlLaws laws = check_dml_laws(Q);
  rep.semiprime_and_dml = Q.semiprime() && laws.dml;
  rep.law2_all_pairs = laws.law2;

  bool all_ann_complemented = true;
  for (Elem a = 0; a < Q.size() && all_ann_complemented; ++a)
    all_ann_complemented = has_complement(Q.lattice(), Q.ann_left(a));
  rep.ann_complemented_and_dml = all_ann_complemented && laws.dml;

  rep.all_agree = rep.semiprime_and_dml == rep.law2_all_pairs &&
                  rep.law2_all_pairs == rep.ann_complemented_and_dml;
  if (!rep.all_agree) {
    rep.notes.push_back("conditions " + std::to_string(rep.semiprime_and_dml) +
                        "," + std::to_string(rep.law2_all_pairs) + "," +
                        std::to_string(rep.ann_complemented_and_dml));
    if (auto w = Q.semiprime_witness())
      rep.notes.push_back("semiprime fails at " + Q.lattice().label(*w));
    if (laws.law2_witness)
      rep.notes.push_back("law2 fails at (" +
                          Q.lattice().label(laws.law2_witness->first) + "," +
                          Q.lattice().label(laws.law2_witness->second) + ")");
    if (laws.dml_witness)
      rep.notes.push_back("dml fails at (" +
                          Q.lattice().label(laws.dml_witness->first) + "," +
                          Q.lattice().label(laws.dml_witness->second) + ")");
  }
  return rep;
}

std::optional<std::pair<Elem, Elem>> lemma33_violation(const Quantale& Q) {
  if (!Q.semiprime())
    throw std::domain_error("lemma33_violation: carrier must be semiprime");
  const int n = Q.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (Q.ann_left(Q.product(a, b)) != Q.ann_left(Q.lattice().meet(a, b)))
        return std::make_pair(a, b);
  return std::nullopt;
}

bool lemma33_check(const Quantale& Q) { return !lemma33_violation(Q); }

std::optional<std::pair<Elem, Elem>> lemma38_violation(const Quantale& Q) {
  if (!Q.semiprime())
    throw std::domain_error("lemma38_violation: carrier must be semiprime");
  const int n = Q.size();
  const Elem zero = Q.lattice().bottom();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (Q.product(a, b) != zero) continue;
      if (Q.product(b, a) != zero || Q.lattice().meet(a, b) != zero)
        return std::make_pair(a, b);
    }
  return std::nullopt;
}

bool lemma38_check(const Quantale& Q) { return !lemma38_violation(Q); }

bool SubQuantale::contains(Elem a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

int SubQuantale::local_of(Elem a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a);
  if (it == members.end() || *it != a) return -1;
  return static_cast<int>(it - members.begin());
}

Result<SubQuantale> make_subquantale(const Quantale& Q, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return Violation{"subquantale", {}, "empty member set"};
  for (Elem x : members)
    if (x < 0 || x >= Q.size())
      return Violation{"subquantale", {}, "member outside carrier"};

  SubQuantale B;
  B.parent = &Q;
  B.members = std::move(members);

  auto lbl = [&](Elem a) { return Q.lattice().label(a); };
  if (!B.contains(Q.lattice().bottom()))
    return Violation{"subquantale_joins", {}, "missing empty join (bottom)"};
  for (Elem a : B.members)
    for (Elem b : B.members) {
      if (!B.contains(Q.lattice().join(a, b)))
        return Violation{"subquantale_joins", {lbl(a), lbl(b)}, "join escapes subset"};
      if (!B.contains(Q.product(a, b)))
        return Violation{"subquantale_product", {lbl(a), lbl(b)},
                         "product escapes subset"};
    }

  B.star = B.contains(Q.lattice().bottom()) && B.contains(Q.lattice().top());
  if (B.star) {
    const Elem one = Q.lattice().top();
    for (Elem b : B.members)
      if (!Q.lattice().leq(Q.product(one, b), b) ||
          !Q.lattice().leq(Q.product(b, one), b)) {
        B.star = false;
        break;
      }
  }
  return B;
}

SubQuantale full_subquantale(const Quantale& Q) {
  std::vector<Elem> all(Q.size());
  for (int i = 0; i < Q.size(); ++i) all[i] = i;
  auto r = make_subquantale(Q, std::move(all));
  return std::move(r).value();
}

}  // namespace dml
