#include "dml/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace dml {

namespace {

Violation label_violation(const std::vector<std::string>& labels) {
  std::unordered_map<std::string_view, int> seen;
  for (size_t i = 0; i < labels.size(); ++i) {
    const std::string& s = labels[i];
    if (s.empty()) return {"labels", {}, "empty label at index " + std::to_string(i)};
    for (char c : s)
      if (c == ' ' || c == '\t' || c == '\n')
        return {"labels", {s}, "whitespace in label"};
    if (!seen.emplace(s, static_cast<int>(i)).second)
      return {"labels", {s}, "duplicate label"};
  }
  return {"", {}, ""};
}

}  // namespace

Elem FiniteLattice::check(Elem a) const {
  if (a < 0 || a >= n_)
    throw std::out_of_range("element id " + std::to_string(a) +
                            " outside lattice of size " + std::to_string(n_));
  return a;
}

void FiniteLattice::locate_bounds() {
  for (Elem x = 0; x < n_; ++x) {
    bool is_bot = true, is_top = true;
    for (Elem y = 0; y < n_; ++y) {
      is_bot &= leq_[x * n_ + y] != 0;
      is_top &= leq_[y * n_ + x] != 0;
    }
    if (is_bot) bottom_ = x;
    if (is_top) top_ = x;
  }
}

Result<FiniteLattice> FiniteLattice::from_leq(std::vector<std::string> labels,
                                              kernels::BoolTable leq) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) return Violation{"carrier", {}, "empty lattice"};
  if (leq.size() != static_cast<size_t>(n) * n)
    return Violation{"carrier", {}, "order table size mismatch"};
  if (Violation lv = label_violation(labels); !lv.axiom.empty()) return lv;

  for (Elem a = 0; a < n; ++a)
    if (!leq[a * n + a]) return Violation{"reflexivity", {labels[a]}, ""};
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (a != b && leq[a * n + b] && leq[b * n + a])
        return Violation{"antisymmetry", {labels[a], labels[b]}, ""};
      if (!leq[a * n + b]) continue;
      for (Elem c = 0; c < n; ++c)
        if (leq[b * n + c] && !leq[a * n + c])
          return Violation{"transitivity", {labels[a], labels[b], labels[c]}, ""};
    }

  FiniteLattice L;
  L.n_ = n;
  L.labels_ = std::move(labels);
  L.leq_ = std::move(leq);
  L.meet_.assign(static_cast<size_t>(n) * n, -1);
  L.join_.assign(static_cast<size_t>(n) * n, -1);

  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      Elem glb = -1, lub = -1;
      for (Elem x = 0; x < n; ++x) {
        if (L.leq_[x * n + a] && L.leq_[x * n + b] &&
            (glb == -1 || L.leq_[glb * n + x]))
          glb = x;
        if (L.leq_[a * n + x] && L.leq_[b * n + x] &&
            (lub == -1 || L.leq_[x * n + lub]))
          lub = x;
      }
      // verify glb/lub actually bound every candidate
      for (Elem x = 0; x < n; ++x) {
        if (L.leq_[x * n + a] && L.leq_[x * n + b] &&
            (glb == -1 || !L.leq_[x * n + glb]))
          return Violation{
              "meet", {L.labels_[a], L.labels_[b]}, "no greatest lower bound"};
        if (L.leq_[a * n + x] && L.leq_[b * n + x] &&
            (lub == -1 || !L.leq_[lub * n + x]))
          return Violation{
              "join", {L.labels_[a], L.labels_[b]}, "no least upper bound"};
      }
      if (glb == -1)
        return Violation{"meet", {L.labels_[a], L.labels_[b]}, "no lower bound"};
      if (lub == -1)
        return Violation{"join", {L.labels_[a], L.labels_[b]}, "no upper bound"};
      L.meet_[a * n + b] = L.meet_[b * n + a] = glb;
      L.join_[a * n + b] = L.join_[b * n + a] = lub;
    }

  L.locate_bounds();
  return L;
}

Result<FiniteLattice> FiniteLattice::from_covers(
    std::vector<std::string> labels,
    const std::vector<std::pair<Elem, Elem>>& covers) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) return Violation{"carrier", {}, "empty lattice"};
  kernels::BoolTable leq(static_cast<size_t>(n) * n, 0);
  for (Elem a = 0; a < n; ++a) leq[a * n + a] = 1;
  for (auto [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      return Violation{"covers", {}, "edge endpoint out of range"};
    leq[a * n + b] = 1;
  }
  // Floyd-Warshall style closure
  for (Elem k = 0; k < n; ++k)
    for (Elem a = 0; a < n; ++a) {
      if (!leq[a * n + k]) continue;
      for (Elem b = 0; b < n; ++b)
        if (leq[k * n + b]) leq[a * n + b] = 1;
    }
  return from_leq(std::move(labels), std::move(leq));
}

FiniteLattice FiniteLattice::from_tables_unchecked(std::vector<std::string> labels,
                                                   kernels::BoolTable leq,
                                                   kernels::Table meet,
                                                   kernels::Table join) {
  FiniteLattice L;
  L.n_ = static_cast<int>(labels.size());
  L.labels_ = std::move(labels);
  L.leq_ = std::move(leq);
  L.meet_ = std::move(meet);
  L.join_ = std::move(join);
  L.locate_bounds();
  return L;
}

Elem FiniteLattice::big_meet(std::span<const Elem> xs) const {
  Elem acc = top_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

Elem FiniteLattice::big_join(std::span<const Elem> xs) const {
  Elem acc = bottom_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

std::optional<Elem> FiniteLattice::find_label(std::string_view s) const {
  for (Elem a = 0; a < n_; ++a)
    if (labels_[a] == s) return a;
  return std::nullopt;
}

std::vector<std::pair<Elem, Elem>> FiniteLattice::cover_pairs() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) {
      if (a == b || !leq_[a * n_ + b]) continue;
      bool covered = true;
      for (Elem c = 0; c < n_ && covered; ++c)
        if (c != a && c != b && leq_[a * n_ + c] && leq_[c * n_ + b])
          covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

// -- predicates ---------------------------------------------------------------

namespace {
std::optional<std::array<Elem, 3>> to_array(std::optional<kernels::Triple> t) {
  if (!t) return std::nullopt;
  return std::array<Elem, 3>{t->a, t->b, t->c};
}
}  // namespace

std::optional<std::array<Elem, 3>> modularity_violation(const FiniteLattice& L) {
  return to_array(kernels::modularity_violation(L.leq_table(), L.meet_table(),
                                                L.join_table(), L.size()));
}

bool is_modular(const FiniteLattice& L) { return !modularity_violation(L); }

std::optional<std::array<Elem, 3>> distributivity_violation(const FiniteLattice& L) {
  return to_array(
      kernels::distributivity_violation(L.meet_table(), L.join_table(), L.size()));
}

bool is_distributive(const FiniteLattice& L) {
  return !distributivity_violation(L);
}

bool is_frame(const FiniteLattice& L) { return is_distributive(L); }

std::optional<Elem> complement_of(const FiniteLattice& L, Elem a) {
  for (Elem b = 0; b < L.size(); ++b)
    if (L.meet(a, b) == L.bottom() && L.join(a, b) == L.top()) return b;
  return std::nullopt;
}

bool has_complement(const FiniteLattice& L, Elem a) {
  return complement_of(L, a).has_value();
}

std::vector<Elem> compact_elements(const FiniteLattice& L) {
  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

bool is_compact_lattice(const FiniteLattice&) { return true; }

// -- Heyting -------------------------------------------------------------------

Result<HeytingTable> make_heyting(const FiniteLattice& L) {
  if (auto w = distributivity_violation(L))
    return Violation{"frame",
                     {L.label((*w)[0]), L.label((*w)[1]), L.label((*w)[2])},
                     "distributivity fails"};
  HeytingTable h;
  h.n_ = L.size();
  h.bottom_ = L.bottom();
  h.imp_ = kernels::heyting_table(L.meet_table(), L.join_table(), L.leq_table(),
                                  L.size(), L.bottom());
  return h;
}

Elem heyting_implication(const FiniteLattice& L, Elem a, Elem b) {
  auto h = make_heyting(L);
  if (!h.ok()) throw std::domain_error("heyting_implication: " + h.error().to_string());
  return h.value().imp(a, b);
}

Elem negation(const FiniteLattice& L, Elem a) {
  return heyting_implication(L, a, L.bottom());
}

std::optional<std::pair<Elem, Elem>> frame_dml_violation(const FiniteLattice& L,
                                                         const HeytingTable& h) {
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      if (h.neg(L.meet(a, b)) != L.join(h.neg(a), h.neg(b)))
        return std::make_pair(a, b);
  return std::nullopt;
}

bool frame_satisfies_dml(const FiniteLattice& L, const HeytingTable& h) {
  return !frame_dml_violation(L, h);
}

bool is_regular_frame(const FiniteLattice& L) {
  auto h = make_heyting(L);
  if (!h.ok()) throw std::domain_error("is_regular_frame: " + h.error().to_string());
  const HeytingTable& ht = h.value();
  for (Elem a = 0; a < L.size(); ++a) {
    Elem acc = L.bottom();
    for (Elem x = 0; x < L.size(); ++x)
      if (L.join(ht.neg(x), a) == L.top()) acc = L.join(acc, x);
    if (acc != a) return false;
  }
  return true;
}

// -- substructures ----------------------------------------------------------------

std::optional<Elem> Sublattice::local_of(Elem parent_elem) const {
  for (size_t i = 0; i < to_parent.size(); ++i)
    if (to_parent[i] == parent_elem) return static_cast<Elem>(i);
  return std::nullopt;
}

Result<Sublattice> induced_lattice(const FiniteLattice& L,
                                   std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const int m = static_cast<int>(members.size());
  if (m == 0) return Violation{"carrier", {}, "empty subset"};
  for (Elem x : members)
    if (x < 0 || x >= L.size())
      return Violation{"carrier", {}, "member outside parent"};

  std::vector<std::string> labels(m);
  kernels::BoolTable leq(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    labels[i] = L.label(members[i]);
    for (int j = 0; j < m; ++j)
      leq[i * m + j] = L.leq(members[i], members[j]) ? 1 : 0;
  }
  kernels::Table meet(static_cast<size_t>(m) * m, -1),
      join(static_cast<size_t>(m) * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      int glb = -1, lub = -1;
      for (int k = 0; k < m; ++k) {
        if (leq[k * m + i] && leq[k * m + j] && (glb == -1 || leq[glb * m + k]))
          glb = k;
        if (leq[i * m + k] && leq[j * m + k] && (lub == -1 || leq[k * m + lub]))
          lub = k;
      }
      for (int k = 0; k < m; ++k) {
        if (leq[k * m + i] && leq[k * m + j] && (glb == -1 || !leq[k * m + glb]))
          return Violation{"induced_meet",
                           {labels[i], labels[j]},
                           "subset has no greatest lower bound"};
        if (leq[i * m + k] && leq[j * m + k] && (lub == -1 || !leq[lub * m + k]))
          return Violation{"induced_join",
                           {labels[i], labels[j]},
                           "subset has no least upper bound"};
      }
      if (glb == -1)
        return Violation{"induced_meet", {labels[i], labels[j]}, "no lower bound"};
      if (lub == -1)
        return Violation{"induced_join", {labels[i], labels[j]}, "no upper bound"};
      meet[i * m + j] = meet[j * m + i] = glb;
      join[i * m + j] = join[j * m + i] = lub;
    }

  Sublattice sub;
  sub.lat = FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                                 std::move(meet), std::move(join));
  sub.to_parent = std::move(members);
  return sub;
}

// -- builders ----------------------------------------------------------------------

FiniteLattice chain(int n) {
  if (n < 1) throw std::invalid_argument("chain: need at least one element");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  const int nn = n;
  kernels::BoolTable leq(static_cast<size_t>(n) * n, 0);
  kernels::Table meet(static_cast<size_t>(n) * n), join(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      leq[a * nn + b] = a <= b;
      meet[a * nn + b] = std::min(a, b);
      join[a * nn + b] = std::max(a, b);
    }
  return FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                              std::move(meet), std::move(join));
}

FiniteLattice powerset(int atoms) {
  if (atoms < 0 || atoms > 20) throw std::invalid_argument("powerset: bad atom count");
  const int n = 1 << atoms;
  std::vector<std::string> labels(n);
  for (int s = 0; s < n; ++s) {
    std::string l = "{";
    for (int i = 0; i < atoms; ++i)
      if (s >> i & 1) {
        if (l.size() > 1) l += ",";
        l += std::to_string(i + 1);
      }
    l += "}";
    labels[s] = l;
  }
  kernels::BoolTable leq(static_cast<size_t>(n) * n, 0);
  kernels::Table meet(static_cast<size_t>(n) * n), join(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      leq[a * n + b] = (a & b) == a;
      meet[a * n + b] = a & b;
      join[a * n + b] = a | b;
    }
  return FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                              std::move(meet), std::move(join));
}

FiniteLattice diamond_m3() {
  auto r = FiniteLattice::from_covers({"0", "a", "b", "c", "1"},
                                      {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  return r.value();
}

FiniteLattice pentagon_n5() {
  auto r = FiniteLattice::from_covers({"0", "a", "c", "b", "1"},
                                      {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  return r.value();
}

FiniteLattice kite() {
  auto r = FiniteLattice::from_covers({"0", "a", "b", "c", "1"},
                                      {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
  return r.value();
}

FiniteLattice divisor_lattice(int n) {
  if (n < 1) throw std::invalid_argument("divisor_lattice: need n >= 1");
  std::vector<int> divs;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  const int m = static_cast<int>(divs.size());
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i)
    labels[i] = divs[i] == n ? "(0)" : "(" + std::to_string(divs[i]) + ")";
  auto idx = [&](long long d) {
    for (int i = 0; i < m; ++i)
      if (divs[i] == d) return i;
    return -1;
  };
  kernels::BoolTable leq(static_cast<size_t>(m) * m, 0);
  kernels::Table meet(static_cast<size_t>(m) * m), join(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // multiples of divs[i] inside multiples of divs[j] iff divs[j] | divs[i]
      leq[i * m + j] = divs[i] % divs[j] == 0;
      long long l = std::lcm<long long>(divs[i], divs[j]);
      meet[i * m + j] = idx(l);
      join[i * m + j] = idx(std::gcd(divs[i], divs[j]));
    }
  return FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                              std::move(meet), std::move(join));
}

FiniteLattice lattice_product(const FiniteLattice& A, const FiniteLattice& B) {
  const int na = A.size(), nb = B.size();
  const int n = na * nb;
  std::vector<std::string> labels(n);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      labels[a * nb + b] = "(" + A.label(a) + "," + B.label(b) + ")";
  kernels::BoolTable leq(static_cast<size_t>(n) * n, 0);
  kernels::Table meet(static_cast<size_t>(n) * n), join(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    const int xa = x / nb, xb = x % nb;
    for (int y = 0; y < n; ++y) {
      const int ya = y / nb, yb = y % nb;
      leq[x * n + y] = A.leq(xa, ya) && B.leq(xb, yb);
      meet[x * n + y] = A.meet(xa, ya) * nb + B.meet(xb, yb);
      join[x * n + y] = A.join(xa, ya) * nb + B.join(xb, yb);
    }
  }
  return FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                              std::move(meet), std::move(join));
}

}  // namespace dml
