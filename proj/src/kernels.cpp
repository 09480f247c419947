#include "dml/kernels.hpp"

#include <omp.h>

#include <atomic>

namespace dml::kernels {

namespace {

std::atomic<int> g_threads{0};  // 0 = use hardware default

inline bool lex_less(const Triple& x, const Triple& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

bool run_parallel() {
  int t = g_threads.load(std::memory_order_relaxed);
  if (t == 0) t = omp_get_max_threads();
  return t > 1 && !omp_in_parallel();
}

int active_threads() {
  int t = g_threads.load(std::memory_order_relaxed);
  return t == 0 ? omp_get_max_threads() : t;
}

// Runs body(a) for a in [0,n) in parallel; body returns the least witness
// found for that slice or nullopt. The global result is the lexicographic
// minimum over all slices, independent of scheduling.
template <typename Body>
std::optional<Triple> min_triple_scan(int n, Body body) {
  Triple best{};
  bool found = false;
#pragma omp parallel num_threads(active_threads())
  {
    Triple local{};
    bool local_found = false;
#pragma omp for schedule(static) nowait
    for (int a = 0; a < n; ++a) {
      if (local_found && local.a < a) continue;
      if (auto w = body(a)) {
        if (!local_found || lex_less(*w, local)) {
          local = *w;
          local_found = true;
        }
      }
    }
#pragma omp critical
    {
      if (local_found && (!found || lex_less(local, best))) {
        best = local;
        found = true;
      }
    }
  }
  if (found) return best;
  return std::nullopt;
}

}  // namespace

void set_parallelism(int threads) {
  g_threads.store(threads < 0 ? 0 : threads, std::memory_order_relaxed);
}

int parallelism() { return g_threads.load(std::memory_order_relaxed); }

int hardware_threads() { return omp_get_max_threads(); }

// -- modularity ---------------------------------------------------------------

namespace {
inline std::optional<Triple> modularity_row(const BoolTable& leq,
                                            const Table& meet, const Table& join,
                                            int n, int a) {
  for (int b = 0; b < n; ++b) {
    if (!leq[a * n + b]) continue;
    for (int c = 0; c < n; ++c) {
      int lhs = meet[join[a * n + c] * n + b];
      int rhs = join[a * n + meet[c * n + b]];
      if (lhs != rhs) return Triple{a, b, c};
    }
  }
  return std::nullopt;
}
}  // namespace

std::optional<Triple> modularity_violation_ref(const BoolTable& leq,
                                               const Table& meet,
                                               const Table& join, int n) {
  for (int a = 0; a < n; ++a)
    if (auto w = modularity_row(leq, meet, join, n, a)) return w;
  return std::nullopt;
}

std::optional<Triple> modularity_violation_omp(const BoolTable& leq,
                                               const Table& meet,
                                               const Table& join, int n) {
  return min_triple_scan(
      n, [&](int a) { return modularity_row(leq, meet, join, n, a); });
}

std::optional<Triple> modularity_violation(const BoolTable& leq,
                                           const Table& meet, const Table& join,
                                           int n) {
  return run_parallel() ? modularity_violation_omp(leq, meet, join, n)
                        : modularity_violation_ref(leq, meet, join, n);
}

// -- distributivity -----------------------------------------------------------

namespace {
inline std::optional<Triple> distributivity_row(const Table& meet,
                                                const Table& join, int n,
                                                int a) {
  for (int b = 0; b < n; ++b) {
    int ab = meet[a * n + b];
    for (int c = 0; c < n; ++c) {
      if (meet[a * n + join[b * n + c]] != join[ab * n + meet[a * n + c]])
        return Triple{a, b, c};
    }
  }
  return std::nullopt;
}
}  // namespace

std::optional<Triple> distributivity_violation_ref(const Table& meet,
                                                   const Table& join, int n) {
  for (int a = 0; a < n; ++a)
    if (auto w = distributivity_row(meet, join, n, a)) return w;
  return std::nullopt;
}

std::optional<Triple> distributivity_violation_omp(const Table& meet,
                                                   const Table& join, int n) {
  return min_triple_scan(n,
                         [&](int a) { return distributivity_row(meet, join, n, a); });
}

std::optional<Triple> distributivity_violation(const Table& meet,
                                               const Table& join, int n) {
  return run_parallel() ? distributivity_violation_omp(meet, join, n)
                        : distributivity_violation_ref(meet, join, n);
}

// -- associativity ------------------------------------------------------------

namespace {
inline std::optional<Triple> associativity_row(const Table& prod, int n, int a) {
  for (int b = 0; b < n; ++b) {
    int ab = prod[a * n + b];
    for (int c = 0; c < n; ++c) {
      if (prod[ab * n + c] != prod[a * n + prod[b * n + c]])
        return Triple{a, b, c};
    }
  }
  return std::nullopt;
}
}  // namespace

std::optional<Triple> associativity_violation_ref(const Table& prod, int n) {
  for (int a = 0; a < n; ++a)
    if (auto w = associativity_row(prod, n, a)) return w;
  return std::nullopt;
}

std::optional<Triple> associativity_violation_omp(const Table& prod, int n) {
  return min_triple_scan(n, [&](int a) { return associativity_row(prod, n, a); });
}

std::optional<Triple> associativity_violation(const Table& prod, int n) {
  return run_parallel() ? associativity_violation_omp(prod, n)
                        : associativity_violation_ref(prod, n);
}

// -- product/join distribution --------------------------------------------------

namespace {
inline std::optional<ProductJoinViolation> join_dist_row(const Table& prod,
                                                         const Table& join, int n,
                                                         int bottom, int a) {
  if (a == 0) {
    for (int c = 0; c < n; ++c) {
      if (prod[bottom * n + c] != bottom)
        return ProductJoinViolation{'z', {bottom, c, -1}};
      if (prod[c * n + bottom] != bottom)
        return ProductJoinViolation{'z', {c, bottom, -1}};
    }
  }
  for (int b = 0; b < n; ++b) {
    int ab = join[a * n + b];
    for (int c = 0; c < n; ++c) {
      if (prod[ab * n + c] != join[prod[a * n + c] * n + prod[b * n + c]])
        return ProductJoinViolation{'l', {a, b, c}};
      if (prod[c * n + ab] != join[prod[c * n + a] * n + prod[c * n + b]])
        return ProductJoinViolation{'r', {a, b, c}};
    }
  }
  return std::nullopt;
}

inline bool pjv_less(const ProductJoinViolation& x, const ProductJoinViolation& y) {
  // zero rules (checked at a==0) sort before pair rules at the same triple
  if (x.side == 'z' && y.side != 'z') return true;
  if (x.side != 'z' && y.side == 'z') return false;
  if (x.at.a != y.at.a) return x.at.a < y.at.a;
  if (x.at.b != y.at.b) return x.at.b < y.at.b;
  if (x.at.c != y.at.c) return x.at.c < y.at.c;
  return x.side < y.side;
}
}  // namespace

std::optional<ProductJoinViolation> join_distributivity_violation_ref(
    const Table& prod, const Table& join, int n, int bottom) {
  for (int a = 0; a < n; ++a)
    if (auto w = join_dist_row(prod, join, n, bottom, a)) return w;
  return std::nullopt;
}

std::optional<ProductJoinViolation> join_distributivity_violation_omp(
    const Table& prod, const Table& join, int n, int bottom) {
  ProductJoinViolation best{};
  bool found = false;
#pragma omp parallel num_threads(active_threads())
  {
    ProductJoinViolation local{};
    bool local_found = false;
#pragma omp for schedule(static) nowait
    for (int a = 0; a < n; ++a) {
      if (auto w = join_dist_row(prod, join, n, bottom, a)) {
        if (!local_found || pjv_less(*w, local)) {
          local = *w;
          local_found = true;
        }
      }
    }
#pragma omp critical
    {
      if (local_found && (!found || pjv_less(local, best))) {
        best = local;
        found = true;
      }
    }
  }
  if (found) return best;
  return std::nullopt;
}

std::optional<ProductJoinViolation> join_distributivity_violation(
    const Table& prod, const Table& join, int n, int bottom) {
  return run_parallel() ? join_distributivity_violation_omp(prod, join, n, bottom)
                        : join_distributivity_violation_ref(prod, join, n, bottom);
}

// -- two-sidedness and monotonicity --------------------------------------------

std::optional<Pair> two_sidedness_violation(const BoolTable& leq,
                                            const Table& prod, const Table& meet,
                                            int n) {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!leq[prod[a * n + b] * n + meet[a * n + b]]) return Pair{a, b};
  return std::nullopt;
}

std::optional<Triple> monotonicity_violation(const BoolTable& leq,
                                             const Table& prod, int n) {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!leq[a * n + b]) continue;
      for (int c = 0; c < n; ++c) {
        if (!leq[prod[a * n + c] * n + prod[b * n + c]]) return Triple{a, b, c};
        if (!leq[prod[c * n + a] * n + prod[c * n + b]]) return Triple{a, b, c};
      }
    }
  return std::nullopt;
}

// -- annihilators ---------------------------------------------------------------

namespace {
inline int ann_of(const Table& prod, const Table& join, int n, int bottom,
                  bool left, int a) {
  int acc = bottom;
  for (int x = 0; x < n; ++x) {
    int p = left ? prod[x * n + a] : prod[a * n + x];
    if (p == bottom) acc = join[acc * n + x];
  }
  return acc;
}
}  // namespace

Table annihilator_table_ref(const Table& prod, const Table& join, int n,
                            int bottom, bool left) {
  Table ann(n);
  for (int a = 0; a < n; ++a) ann[a] = ann_of(prod, join, n, bottom, left, a);
  return ann;
}

Table annihilator_table_omp(const Table& prod, const Table& join, int n,
                            int bottom, bool left) {
  Table ann(n);
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (int a = 0; a < n; ++a) ann[a] = ann_of(prod, join, n, bottom, left, a);
  return ann;
}

Table annihilator_table(const Table& prod, const Table& join, int n, int bottom,
                        bool left) {
  return run_parallel() ? annihilator_table_omp(prod, join, n, bottom, left)
                        : annihilator_table_ref(prod, join, n, bottom, left);
}

// -- residuals -------------------------------------------------------------------

namespace {
inline void residual_row(const Table& prod, const Table& join,
                         const BoolTable& leq, int n, int bottom, bool right,
                         int a, Table& out) {
  for (int b = 0; b < n; ++b) {
    int acc = bottom;
    for (int x = 0; x < n; ++x) {
      int p = right ? prod[a * n + x] : prod[x * n + a];
      if (leq[p * n + b]) acc = join[acc * n + x];
    }
    out[right ? a * n + b : b * n + a] = acc;
  }
}
}  // namespace

Table residual_table_ref(const Table& prod, const Table& join,
                         const BoolTable& leq, int n, int bottom, bool right) {
  Table res(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    residual_row(prod, join, leq, n, bottom, right, a, res);
  return res;
}

Table residual_table_omp(const Table& prod, const Table& join,
                         const BoolTable& leq, int n, int bottom, bool right) {
  Table res(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (int a = 0; a < n; ++a)
    residual_row(prod, join, leq, n, bottom, right, a, res);
  return res;
}

Table residual_table(const Table& prod, const Table& join, const BoolTable& leq,
                     int n, int bottom, bool right) {
  return run_parallel() ? residual_table_omp(prod, join, leq, n, bottom, right)
                        : residual_table_ref(prod, join, leq, n, bottom, right);
}

// -- Heyting implication ----------------------------------------------------------

namespace {
inline void heyting_row(const Table& meet, const Table& join, const BoolTable& leq,
                        int n, int bottom, int a, Table& out) {
  for (int b = 0; b < n; ++b) {
    int acc = bottom;
    for (int x = 0; x < n; ++x)
      if (leq[meet[x * n + a] * n + b]) acc = join[acc * n + x];
    out[a * n + b] = acc;
  }
}
}  // namespace

Table heyting_table_ref(const Table& meet, const Table& join, const BoolTable& leq,
                        int n, int bottom) {
  Table imp(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) heyting_row(meet, join, leq, n, bottom, a, imp);
  return imp;
}

Table heyting_table_omp(const Table& meet, const Table& join, const BoolTable& leq,
                        int n, int bottom) {
  Table imp(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (int a = 0; a < n; ++a) heyting_row(meet, join, leq, n, bottom, a, imp);
  return imp;
}

Table heyting_table(const Table& meet, const Table& join, const BoolTable& leq,
                    int n, int bottom) {
  return run_parallel() ? heyting_table_omp(meet, join, leq, n, bottom)
                        : heyting_table_ref(meet, join, leq, n, bottom);
}

// -- normality ---------------------------------------------------------------------

namespace {
inline std::optional<Pair> normality_row(const Table& join, const Table& prod,
                                         int n, int top, int bottom, int a) {
  for (int b = 0; b < n; ++b) {
    if (join[a * n + b] != top) continue;
    bool witnessed = false;
    for (int ap = 0; ap < n && !witnessed; ++ap) {
      if (join[ap * n + b] != top) continue;
      for (int bp = 0; bp < n; ++bp) {
        if (join[a * n + bp] == top && prod[ap * n + bp] == bottom) {
          witnessed = true;
          break;
        }
      }
    }
    if (!witnessed) return Pair{a, b};
  }
  return std::nullopt;
}
}  // namespace

std::optional<Pair> normality_violation_ref(const Table& join, const Table& prod,
                                            int n, int top, int bottom) {
  for (int a = 0; a < n; ++a)
    if (auto w = normality_row(join, prod, n, top, bottom, a)) return w;
  return std::nullopt;
}

std::optional<Pair> normality_violation_omp(const Table& join, const Table& prod,
                                            int n, int top, int bottom) {
  Pair best{};
  bool found = false;
#pragma omp parallel num_threads(active_threads())
  {
    Pair local{};
    bool local_found = false;
#pragma omp for schedule(dynamic) nowait
    for (int a = 0; a < n; ++a) {
      if (local_found && local.a < a) continue;
      if (auto w = normality_row(join, prod, n, top, bottom, a)) {
        if (!local_found || w->a < local.a ||
            (w->a == local.a && w->b < local.b)) {
          local = *w;
          local_found = true;
        }
      }
    }
#pragma omp critical
    {
      if (local_found &&
          (!found || local.a < best.a || (local.a == best.a && local.b < best.b))) {
        best = local;
        found = true;
      }
    }
  }
  if (found) return best;
  return std::nullopt;
}

std::optional<Pair> normality_violation(const Table& join, const Table& prod,
                                        int n, int top, int bottom) {
  return run_parallel() ? normality_violation_omp(join, prod, n, top, bottom)
                        : normality_violation_ref(join, prod, n, top, bottom);
}

}  // namespace dml::kernels
