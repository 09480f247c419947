#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dml::kernels {

// Quantifier-heavy scans over order/product tables. Every kernel comes in
// two flavours: *_ref is the plain serial loop and *_omp is the OpenMP
// version. The undecorated name dispatches on the configured parallelism.
// Violation searches return the lexicographically least witness, so both
// flavours agree exactly and runs are reproducible.
//
// Tables are n*n row-major: table[a * n + b].

using Table = std::vector<int>;
using BoolTable = std::vector<std::uint8_t>;

struct Triple {
  int a = -1, b = -1, c = -1;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct Pair {
  int a = -1, b = -1;
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Global degree used by the dispatching wrappers. 0 or 1 selects the
/// serial reference; anything larger enables the OpenMP kernels.
void set_parallelism(int threads);
int parallelism();
int hardware_threads();

// -- order axioms -----------------------------------------------------------

/// First triple (a,b,c) with a<=b and (a v c) ^ b != a v (c ^ b).
std::optional<Triple> modularity_violation_ref(const BoolTable& leq,
                                               const Table& meet,
                                               const Table& join, int n);
std::optional<Triple> modularity_violation_omp(const BoolTable& leq,
                                               const Table& meet,
                                               const Table& join, int n);
std::optional<Triple> modularity_violation(const BoolTable& leq,
                                           const Table& meet, const Table& join,
                                           int n);

/// First triple with a ^ (b v c) != (a ^ b) v (a ^ c).
std::optional<Triple> distributivity_violation_ref(const Table& meet,
                                                   const Table& join, int n);
std::optional<Triple> distributivity_violation_omp(const Table& meet,
                                                   const Table& join, int n);
std::optional<Triple> distributivity_violation(const Table& meet,
                                               const Table& join, int n);

// -- product axioms ---------------------------------------------------------

std::optional<Triple> associativity_violation_ref(const Table& prod, int n);
std::optional<Triple> associativity_violation_omp(const Table& prod, int n);
std::optional<Triple> associativity_violation(const Table& prod, int n);

/// Distribution of the product over binary joins, both variables, plus the
/// empty-join rules bottom*a == bottom == a*bottom. The side marks which
/// variable broke: 'l' for (a v b)*c, 'r' for c*(a v b), 'z' for a zero rule.
struct ProductJoinViolation {
  char side = ' ';
  Triple at;
  friend bool operator==(const ProductJoinViolation&,
                         const ProductJoinViolation&) = default;
};
std::optional<ProductJoinViolation> join_distributivity_violation_ref(
    const Table& prod, const Table& join, int n, int bottom);
std::optional<ProductJoinViolation> join_distributivity_violation_omp(
    const Table& prod, const Table& join, int n, int bottom);
std::optional<ProductJoinViolation> join_distributivity_violation(
    const Table& prod, const Table& join, int n, int bottom);

/// First pair with a*b not below a ^ b.
std::optional<Pair> two_sidedness_violation(const BoolTable& leq,
                                            const Table& prod, const Table& meet,
                                            int n);

/// Monotonicity of the product in each variable (the finite content of
/// distribution over directed joins): a<=b must give a*c<=b*c and c*a<=c*b.
std::optional<Triple> monotonicity_violation(const BoolTable& leq,
                                             const Table& prod, int n);

// -- derived tables ---------------------------------------------------------

/// ann[a] = join of {x : x*a == bottom} (left) or {x : a*x == bottom} (right).
Table annihilator_table_ref(const Table& prod, const Table& join, int n,
                            int bottom, bool left);
Table annihilator_table_omp(const Table& prod, const Table& join, int n,
                            int bottom, bool left);
Table annihilator_table(const Table& prod, const Table& join, int n, int bottom,
                        bool left);

/// right=true : res[a*n+b] = join of {x : a*x <= b}
/// right=false: res[b*n+a] = join of {x : x*a <= b}   (stored as [first*n+second])
Table residual_table_ref(const Table& prod, const Table& join,
                         const BoolTable& leq, int n, int bottom, bool right);
Table residual_table_omp(const Table& prod, const Table& join,
                         const BoolTable& leq, int n, int bottom, bool right);
Table residual_table(const Table& prod, const Table& join, const BoolTable& leq,
                     int n, int bottom, bool right);

/// imp[a*n+b] = join of {x : x ^ a <= b}. Caller guarantees a frame.
Table heyting_table_ref(const Table& meet, const Table& join,
                        const BoolTable& leq, int n, int bottom);
Table heyting_table_omp(const Table& meet, const Table& join,
                        const BoolTable& leq, int n, int bottom);
Table heyting_table(const Table& meet, const Table& join, const BoolTable& leq,
                    int n, int bottom);

// -- normality --------------------------------------------------------------

/// First pair a,b with a v b == top admitting no a',b' such that
/// a v b' == top == a' v b and a'*b' == bottom.
std::optional<Pair> normality_violation_ref(const Table& join, const Table& prod,
                                            int n, int top, int bottom);
std::optional<Pair> normality_violation_omp(const Table& join, const Table& prod,
                                            int n, int top, int bottom);
std::optional<Pair> normality_violation(const Table& join, const Table& prod,
                                        int n, int top, int bottom);

}  // namespace dml::kernels
