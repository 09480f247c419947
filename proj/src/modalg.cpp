#include "dml/modalg.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "dml/spectra.hpp"

namespace dml {

namespace {

Violation bad_labels(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, int> seen;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty())
      return {"labels", {}, "empty label at index " + std::to_string(i)};
    for (char c : labels[i])
      if (c == ' ' || c == '\t' || c == '\n')
        return {"labels", {labels[i]}, "whitespace in label"};
    if (!seen.emplace(labels[i], static_cast<int>(i)).second)
      return {"labels", {labels[i]}, "duplicate label"};
  }
  return {"", {}, ""};
}

}  // namespace

// -- FiniteRing -----------------------------------------------------------------

Result<FiniteRing> FiniteRing::check(std::vector<std::string> labels,
                                     kernels::Table add, kernels::Table mul,
                                     const Bounds& bounds) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) return Violation{"carrier", {}, "empty ring"};
  if (n > bounds.max_ring_order)
    throw ResourceError("ring", bounds.max_ring_order, n);
  if (add.size() != static_cast<size_t>(n) * n ||
      mul.size() != static_cast<size_t>(n) * n)
    return Violation{"carrier", {}, "table size mismatch"};
  if (Violation lv = bad_labels(labels); !lv.axiom.empty()) return lv;
  for (int v : add)
    if (v < 0 || v >= n) return Violation{"add", {}, "entry outside carrier"};
  for (int v : mul)
    if (v < 0 || v >= n) return Violation{"mul", {}, "entry outside carrier"};

  auto L = [&](Elem a) { return labels[a]; };

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (add[a * n + b] != add[b * n + a])
        return Violation{"add_commutative", {L(a), L(b)}, ""};
  if (auto w = kernels::associativity_violation(add, n))
    return Violation{"add_associative", {L(w->a), L(w->b), L(w->c)}, ""};

  Elem zero = -1;
  for (Elem e = 0; e < n && zero < 0; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) ok = add[e * n + a] == a;
    if (ok) zero = e;
  }
  if (zero < 0) return Violation{"add_identity", {}, "no additive identity"};

  std::vector<Elem> neg(n, -1);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b)
      if (add[a * n + b] == zero) {
        neg[a] = b;
        break;
      }
    if (neg[a] < 0) return Violation{"add_inverse", {L(a)}, "no additive inverse"};
  }

  if (auto w = kernels::associativity_violation(mul, n))
    return Violation{"mul_associative", {L(w->a), L(w->b), L(w->c)}, ""};

  Elem one = -1;
  for (Elem e = 0; e < n && one < 0; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      ok = mul[e * n + a] == a && mul[a * n + e] == a;
    if (ok) one = e;
  }
  if (one < 0) return Violation{"mul_identity", {}, "no multiplicative identity"};

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        if (mul[a * n + add[b * n + c]] !=
            add[mul[a * n + b] * n + mul[a * n + c]])
          return Violation{"left_distributive", {L(a), L(b), L(c)}, ""};
        if (mul[add[a * n + b] * n + c] !=
            add[mul[a * n + c] * n + mul[b * n + c]])
          return Violation{"right_distributive", {L(a), L(b), L(c)}, ""};
      }

  FiniteRing R;
  R.n_ = n;
  R.labels_ = std::move(labels);
  R.add_ = std::move(add);
  R.mul_ = std::move(mul);
  R.neg_ = std::move(neg);
  R.zero_ = zero;
  R.one_ = one;
  return R;
}

bool FiniteRing::commutative() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = a + 1; b < n_; ++b)
      if (mul_[a * n_ + b] != mul_[b * n_ + a]) return false;
  return true;
}

Result<FiniteRing> ring_Zn(int n, const Bounds& bounds) {
  if (n < 1) return Violation{"carrier", {}, "modulus must be positive"};
  if (n > bounds.max_ring_order) throw ResourceError("ring", bounds.max_ring_order, n);
  std::vector<std::string> labels(n);
  kernels::Table add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) {
      add[a * n + b] = (a + b) % n;
      mul[a * n + b] = (a * b) % n;
    }
  }
  return FiniteRing::check(std::move(labels), std::move(add), std::move(mul), bounds);
}

Result<FiniteRing> ring_Fp(int p, const Bounds& bounds) {
  if (p < 2) return Violation{"field", {std::to_string(p)}, "not prime"};
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return Violation{"field", {std::to_string(p)}, "not prime"};
  return ring_Zn(p, bounds);
}

Result<FiniteRing> ring_product(const FiniteRing& A, const FiniteRing& B,
                                const Bounds& bounds) {
  const long long n = static_cast<long long>(A.size()) * B.size();
  if (n > bounds.max_ring_order) throw ResourceError("ring", bounds.max_ring_order, n);
  const int nb = B.size(), nn = static_cast<int>(n);
  std::vector<std::string> labels(nn);
  kernels::Table add(static_cast<size_t>(nn) * nn), mul(static_cast<size_t>(nn) * nn);
  for (int x = 0; x < nn; ++x) {
    labels[x] = "(" + A.label(x / nb) + "," + B.label(x % nb) + ")";
    for (int y = 0; y < nn; ++y) {
      add[x * nn + y] = A.add(x / nb, y / nb) * nb + B.add(x % nb, y % nb);
      mul[x * nn + y] = A.mul(x / nb, y / nb) * nb + B.mul(x % nb, y % nb);
    }
  }
  return FiniteRing::check(std::move(labels), std::move(add), std::move(mul), bounds);
}

namespace {

// Matrix entries are packed big-endian: [[a,b],[c,d]] -> ((a*r+b)*r+c)*r+d.
Result<FiniteRing> matrix_like_ring(const FiniteRing& R, bool upper_only,
                                    const Bounds& bounds) {
  const int r = R.size();
  long long size = upper_only ? static_cast<long long>(r) * r * r
                              : static_cast<long long>(r) * r * r * r;
  if (size > bounds.max_noncomm_ring_order)
    throw ResourceError("ncring", bounds.max_noncomm_ring_order, size);
  const int n = static_cast<int>(size);

  struct Mat {
    Elem a, b, c, d;
  };
  auto unpack = [&](int x) -> Mat {
    if (upper_only) {
      Elem d = x % r, b = (x / r) % r, a = x / (r * r);
      return {a, b, R.zero(), d};
    }
    Elem d = x % r, c = (x / r) % r, b = (x / (r * r)) % r, a = x / (r * r * r);
    return {a, b, c, d};
  };
  auto pack = [&](Mat m) -> int {
    if (upper_only) return (m.a * r + m.b) * r + m.d;
    return ((m.a * r + m.b) * r + m.c) * r + m.d;
  };

  std::vector<std::string> labels(n);
  kernels::Table add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    Mat mx = unpack(x);
    labels[x] = "[" + R.label(mx.a) + "," + R.label(mx.b) + ";" +
                R.label(mx.c) + "," + R.label(mx.d) + "]";
    for (int y = 0; y < n; ++y) {
      Mat my = unpack(y);
      add[x * n + y] = pack({R.add(mx.a, my.a), R.add(mx.b, my.b),
                             R.add(mx.c, my.c), R.add(mx.d, my.d)});
      mul[x * n + y] =
          pack({R.add(R.mul(mx.a, my.a), R.mul(mx.b, my.c)),
                R.add(R.mul(mx.a, my.b), R.mul(mx.b, my.d)),
                R.add(R.mul(mx.c, my.a), R.mul(mx.d, my.c)),
                R.add(R.mul(mx.c, my.b), R.mul(mx.d, my.d))});
    }
  }
  return FiniteRing::check(std::move(labels), std::move(add), std::move(mul), bounds);
}

}  // namespace

Result<FiniteRing> ring_M2(const FiniteRing& base, const Bounds& bounds) {
  return matrix_like_ring(base, false, bounds);
}

Result<FiniteRing> ring_T2(const FiniteRing& base, const Bounds& bounds) {
  return matrix_like_ring(base, true, bounds);
}

Result<FiniteRing> ring_dual(const FiniteRing& R, const Bounds& bounds) {
  const int r = R.size();
  const long long size = static_cast<long long>(r) * r;
  if (size > bounds.max_ring_order)
    throw ResourceError("ring", bounds.max_ring_order, size);
  const int n = static_cast<int>(size);
  std::vector<std::string> labels(n);
  kernels::Table add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    Elem xa = x / r, xb = x % r;
    if (xb == R.zero())
      labels[x] = R.label(xa);
    else {
      std::string xpart = xb == R.one() ? "x" : R.label(xb) + "x";
      labels[x] = xa == R.zero() ? xpart : R.label(xa) + "+" + xpart;
    }
    for (int y = 0; y < n; ++y) {
      Elem ya = y / r, yb = y % r;
      add[x * n + y] = R.add(xa, ya) * r + R.add(xb, yb);
      // (a + bx)(c + dx) = ac + (ad + bc)x with x^2 = 0
      mul[x * n + y] =
          R.mul(xa, ya) * r + R.add(R.mul(xa, yb), R.mul(xb, ya));
    }
  }
  return FiniteRing::check(std::move(labels), std::move(add), std::move(mul), bounds);
}

// -- FiniteModule ----------------------------------------------------------------

namespace {

SubMask additive_closure(int n, const kernels::Table& add, SubMask seed,
                         Elem zero) {
  SubMask s = seed | (SubMask{1} << zero);
  for (;;) {
    SubMask next = s;
    for (int a = 0; a < n; ++a) {
      if (!(s >> a & 1)) continue;
      for (int b = a; b < n; ++b)
        if (s >> b & 1) next |= SubMask{1} << add[a * n + b];
    }
    if (next == s) return s;
    s = next;
  }
}

// Greedy generating set: grow by the element whose addition to the span
// covers the most new elements.
std::vector<Elem> pick_generators(int n, const kernels::Table& add, Elem zero) {
  std::vector<Elem> gens;
  SubMask span = SubMask{1} << zero;
  const SubMask full = n == 64 ? ~SubMask{0} : (SubMask{1} << n) - 1;
  while (span != full) {
    int best = -1;
    int best_size = -1;
    for (Elem x = 0; x < n; ++x) {
      if (span >> x & 1) continue;
      SubMask grown = additive_closure(n, add, span | (SubMask{1} << x), zero);
      int size = std::popcount(grown);
      if (size > best_size) {
        best = x;
        best_size = size;
      }
    }
    gens.push_back(best);
    span = additive_closure(n, add, span | (SubMask{1} << best), zero);
  }
  return gens;
}

struct HomContext {
  int n;
  const kernels::Table* add;
  const kernels::Table* action;
  int ring_size;
  Elem zero;
  const std::vector<Elem>* gens;
};

// Extends generator images to a full map by propagating sums, then verifies
// additivity on all pairs and equivariance under the whole ring.
bool extend_candidate(const HomContext& ctx, const std::vector<Elem>& images,
                      ModMap& out) {
  const int n = ctx.n;
  const auto& add = *ctx.add;
  const auto& action = *ctx.action;
  std::array<int, 64> f;
  f.fill(-1);
  f[ctx.zero] = ctx.zero;
  std::array<Elem, 64> queue;
  int qh = 0, qt = 0;
  queue[qt++] = ctx.zero;
  for (size_t i = 0; i < ctx.gens->size(); ++i) {
    Elem g = (*ctx.gens)[i];
    if (f[g] == -1) {
      f[g] = images[i];
      queue[qt++] = g;
    } else if (f[g] != images[i]) {
      return false;
    }
  }
  while (qh < qt) {
    Elem e = queue[qh++];
    for (size_t i = 0; i < ctx.gens->size(); ++i) {
      Elem g = (*ctx.gens)[i];
      Elem e2 = add[e * n + g];
      Elem v = add[f[e] * n + images[i]];
      if (f[e2] == -1) {
        f[e2] = v;
        queue[qt++] = e2;
      } else if (f[e2] != v) {
        return false;
      }
    }
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b)
      if (f[add[a * n + b]] != add[f[a] * n + f[b]]) return false;
  for (Elem r = 0; r < ctx.ring_size; ++r)
    for (Elem m = 0; m < n; ++m)
      if (f[action[r * n + m]] != action[r * n + f[m]]) return false;
  out.resize(n);
  for (Elem a = 0; a < n; ++a) out[a] = static_cast<std::uint8_t>(f[a]);
  return true;
}

std::vector<ModMap> enumerate_homs(const HomContext& ctx, SubMask target,
                                   long long cap) {
  std::vector<Elem> targets;
  for (Elem x = 0; x < ctx.n; ++x)
    if (target >> x & 1) targets.push_back(x);
  const long long k = static_cast<long long>(targets.size());
  const int g = static_cast<int>(ctx.gens->size());

  long long candidates = 1;
  for (int i = 0; i < g; ++i) {
    candidates *= k;
    if (candidates > cap) throw ResourceError("homcap", cap, candidates);
  }

  auto decode = [&](long long c, std::vector<Elem>& images) {
    for (int i = 0; i < g; ++i) {
      images[i] = targets[c % k];
      c /= k;
    }
  };

  std::vector<ModMap> maps;
  bool parallel = kernels::parallelism() != 1 && !omp_in_parallel() &&
                  candidates >= 4096;
  if (parallel) {
#pragma omp parallel
    {
      std::vector<ModMap> local;
      std::vector<Elem> images(g);
      ModMap out;
#pragma omp for schedule(static) nowait
      for (long long c = 0; c < candidates; ++c) {
        decode(c, images);
        if (extend_candidate(ctx, images, out)) local.push_back(out);
      }
#pragma omp critical
      maps.insert(maps.end(), local.begin(), local.end());
    }
  } else {
    std::vector<Elem> images(g);
    ModMap out;
    for (long long c = 0; c < candidates; ++c) {
      decode(c, images);
      if (extend_candidate(ctx, images, out)) maps.push_back(out);
    }
  }
  std::sort(maps.begin(), maps.end());
  return maps;
}

}  // namespace

Result<FiniteModule> FiniteModule::check(RingPtr ring,
                                         std::vector<std::string> labels,
                                         kernels::Table add, kernels::Table action,
                                         const Bounds& bounds) {
  if (!ring) throw std::invalid_argument("module: null ring");
  const int n = static_cast<int>(labels.size());
  const int rn = ring->size();
  if (n == 0) return Violation{"carrier", {}, "empty module"};
  if (n > bounds.max_module_order)
    throw ResourceError("module", bounds.max_module_order, n);
  if (n > 64) throw ResourceError("module", 64, n);
  if (add.size() != static_cast<size_t>(n) * n)
    return Violation{"carrier", {}, "add table size mismatch"};
  if (action.size() != static_cast<size_t>(rn) * n)
    return Violation{"carrier", {}, "action table size mismatch"};
  if (Violation lv = bad_labels(labels); !lv.axiom.empty()) return lv;
  for (int v : add)
    if (v < 0 || v >= n) return Violation{"add", {}, "entry outside carrier"};
  for (int v : action)
    if (v < 0 || v >= n) return Violation{"action", {}, "entry outside carrier"};

  auto L = [&](Elem a) { return labels[a]; };
  auto RL = [&](Elem r) { return ring->label(r); };

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (add[a * n + b] != add[b * n + a])
        return Violation{"add_commutative", {L(a), L(b)}, ""};
  if (auto w = kernels::associativity_violation(add, n))
    return Violation{"add_associative", {L(w->a), L(w->b), L(w->c)}, ""};

  Elem zero = -1;
  for (Elem e = 0; e < n && zero < 0; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) ok = add[e * n + a] == a;
    if (ok) zero = e;
  }
  if (zero < 0) return Violation{"add_identity", {}, "no additive identity"};
  std::vector<Elem> neg(n, -1);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (add[a * n + b] == zero) {
        neg[a] = b;
        break;
      }
  for (Elem a = 0; a < n; ++a)
    if (neg[a] < 0) return Violation{"add_inverse", {L(a)}, ""};

  for (Elem m = 0; m < n; ++m)
    if (action[ring->one() * n + m] != m)
      return Violation{"unital", {L(m)}, "1 m != m"};
  for (Elem r = 0; r < rn; ++r)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (action[r * n + add[a * n + b]] !=
            add[action[r * n + a] * n + action[r * n + b]])
          return Violation{"action_add", {RL(r), L(a), L(b)}, "r(m+n) != rm+rn"};
  for (Elem r = 0; r < rn; ++r)
    for (Elem s = 0; s < rn; ++s)
      for (Elem m = 0; m < n; ++m) {
        if (action[ring->add(r, s) * n + m] !=
            add[action[r * n + m] * n + action[s * n + m]])
          return Violation{"action_ring_add", {RL(r), RL(s), L(m)},
                           "(r+s)m != rm+sm"};
        if (action[ring->mul(r, s) * n + m] != action[r * n + action[s * n + m]])
          return Violation{"action_ring_mul", {RL(r), RL(s), L(m)},
                           "(rs)m != r(sm)"};
      }

  FiniteModule M;
  M.ring_ = std::move(ring);
  M.n_ = n;
  M.labels_ = std::move(labels);
  M.add_ = std::move(add);
  M.action_ = std::move(action);
  M.neg_ = std::move(neg);
  M.zero_ = zero;

  // submodules: cyclic orbits closed under pairwise sums
  std::vector<SubMask> family;
  for (Elem m = 0; m < n; ++m) family.push_back(M.cyclic(m));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  auto sum_of = [&](SubMask a, SubMask b) {
    SubMask s = 0;
    for (int x = 0; x < n; ++x) {
      if (!(a >> x & 1)) continue;
      for (int y = 0; y < n; ++y)
        if (b >> y & 1) s |= SubMask{1} << M.add_[x * n + y];
    }
    return s;
  };
  for (;;) {
    std::vector<SubMask> grown = family;
    for (size_t i = 0; i < family.size(); ++i)
      for (size_t j = i + 1; j < family.size(); ++j)
        grown.push_back(sum_of(family[i], family[j]));
    std::sort(grown.begin(), grown.end());
    grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
    if (grown.size() == family.size()) break;
    family = std::move(grown);
  }
  M.submodules_ = std::move(family);
  const int ns = static_cast<int>(M.submodules_.size());
  const SubMask fullmask = n == 64 ? ~SubMask{0} : (SubMask{1} << n) - 1;
  M.zero_idx_ = M.submodule_index(SubMask{1} << zero);
  M.top_idx_ = M.submodule_index(fullmask);

  // hom-sets for every target
  M.gens_ = pick_generators(n, M.add_, zero);
  HomContext ctx{n, &M.add_, &M.action_, rn, zero, &M.gens_};
  M.homs_.resize(ns);
  for (int k = 0; k < ns; ++k)
    M.homs_[k] = enumerate_homs(ctx, M.submodules_[k], bounds.max_hom_candidates);

  // fully invariant members
  const auto& end_maps = M.homs_[M.top_idx_];
  M.fi_local_.assign(ns, -1);
  for (int i = 0; i < ns; ++i) {
    bool fi = true;
    for (const ModMap& f : end_maps) {
      SubMask img = 0;
      for (int x = 0; x < n; ++x)
        if (M.submodules_[i] >> x & 1) img |= SubMask{1} << f[x];
      if (img & ~M.submodules_[i]) {
        fi = false;
        break;
      }
    }
    if (fi) {
      M.fi_local_[i] = static_cast<int>(M.fi_subs_.size());
      M.fi_subs_.push_back(i);
    }
  }

  // submodule lattice: order by inclusion, meet intersection, join sum
  std::vector<std::string> sub_labels(ns);
  for (int i = 0; i < ns; ++i) {
    SubMask s = M.submodules_[i];
    std::string lbl;
    for (Elem m = 0; m < n; ++m)
      if (M.cyclic(m) == s) {
        lbl = "(" + M.labels_[m] + ")";
        break;
      }
    if (lbl.empty()) {
      lbl = "{";
      for (Elem m = 0; m < n; ++m)
        if (s >> m & 1) {
          if (lbl.size() > 1) lbl += ",";
          lbl += M.labels_[m];
        }
      lbl += "}";
    }
    sub_labels[i] = lbl;
  }
  kernels::BoolTable leq(static_cast<size_t>(ns) * ns, 0);
  kernels::Table meet(static_cast<size_t>(ns) * ns), join(static_cast<size_t>(ns) * ns);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      leq[i * ns + j] = (M.submodules_[i] & ~M.submodules_[j]) == 0;
      meet[i * ns + j] = M.submodule_index(M.submodules_[i] & M.submodules_[j]);
      join[i * ns + j] =
          M.submodule_index(sum_of(M.submodules_[i], M.submodules_[j]));
    }
  M.sub_lattice_ = FiniteLattice::from_tables_unchecked(
      std::move(sub_labels), std::move(leq), std::move(meet), std::move(join));

  auto fi_lat = induced_lattice(M.sub_lattice_, M.fi_subs_);
  M.fi_lattice_ = std::move(fi_lat.value().lat);
  return M;
}

SubMask FiniteModule::cyclic(Elem m) const {
  SubMask s = 0;
  for (Elem r = 0; r < ring_->size(); ++r) s |= SubMask{1} << action_[r * n_ + m];
  return s;
}

int FiniteModule::submodule_index(SubMask mask) const {
  auto it = std::lower_bound(submodules_.begin(), submodules_.end(), mask);
  if (it == submodules_.end() || *it != mask) return -1;
  return static_cast<int>(it - submodules_.begin());
}

int FiniteModule::submodule_of_label(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(submodules_.size()); ++i)
    if (sub_lattice_.label(i) == label) return i;
  return -1;
}

const std::vector<ModMap>& FiniteModule::endomorphisms() const {
  return homs_[top_idx_];
}

Result<FiniteModule> module_regular(RingPtr ring, const Bounds& bounds) {
  kernels::Table action = ring->mul_table();
  return FiniteModule::check(ring, ring->labels(), ring->add_table(),
                             std::move(action), bounds);
}

Result<FiniteModule> module_free(RingPtr ring, int rank, const Bounds& bounds) {
  if (rank < 1) return Violation{"carrier", {}, "rank must be positive"};
  const int r = ring->size();
  long long size = 1;
  for (int i = 0; i < rank; ++i) {
    size *= r;
    if (size > bounds.max_module_order)
      throw ResourceError("module", bounds.max_module_order, size);
  }
  const int n = static_cast<int>(size);
  auto digit = [&](int x, int i) {
    for (int k = 0; k < i; ++k) x /= r;
    return x % r;
  };
  std::vector<std::string> labels(n);
  kernels::Table add(static_cast<size_t>(n) * n);
  kernels::Table action(static_cast<size_t>(r) * n);
  for (int x = 0; x < n; ++x) {
    std::string lbl = "(";
    for (int i = rank - 1; i >= 0; --i) {
      lbl += ring->label(digit(x, i));
      if (i) lbl += ",";
    }
    labels[x] = lbl + ")";
    for (int y = 0; y < n; ++y) {
      int s = 0, p = 1;
      for (int i = 0; i < rank; ++i) {
        s += ring->add(digit(x, i), digit(y, i)) * p;
        p *= r;
      }
      add[x * n + y] = s;
    }
  }
  for (int rr = 0; rr < r; ++rr)
    for (int x = 0; x < n; ++x) {
      int s = 0, p = 1;
      for (int i = 0; i < rank; ++i) {
        s += ring->mul(rr, digit(x, i)) * p;
        p *= r;
      }
      action[rr * n + x] = s;
    }
  return FiniteModule::check(ring, std::move(labels), std::move(add),
                             std::move(action), bounds);
}

// -- products, annihilators, residuals ---------------------------------------------

namespace {
SubMask module_sum(const FiniteModule& M, SubMask a, SubMask b) {
  SubMask s = 0;
  for (int x = 0; x < M.size(); ++x) {
    if (!(a >> x & 1)) continue;
    for (int y = 0; y < M.size(); ++y)
      if (b >> y & 1) s |= SubMask{1} << M.add(x, y);
  }
  return s;
}
}  // namespace

int bican_product(const FiniteModule& M, int n_idx, int k_idx) {
  SubMask N = M.submodules()[n_idx];
  SubMask acc = SubMask{1} << M.zero();
  for (const ModMap& f : M.homs(k_idx))
    for (int m = 0; m < M.size(); ++m)
      if (N >> m & 1) acc |= SubMask{1} << f[m];
  // sum of the image submodules: close under addition
  for (;;) {
    SubMask next = acc;
    for (int x = 0; x < M.size(); ++x) {
      if (!(acc >> x & 1)) continue;
      for (int y = x; y < M.size(); ++y)
        if (acc >> y & 1) next |= SubMask{1} << M.add(x, y);
    }
    if (next == acc) break;
    acc = next;
  }
  int idx = M.submodule_index(acc);
  if (idx < 0) throw std::logic_error("bican product escaped the submodule family");
  return idx;
}

int annihilator(const FiniteModule& M, int k_idx) {
  SubMask acc = M.submodules()[M.top_index()];
  for (const ModMap& f : M.homs(k_idx)) {
    SubMask ker = 0;
    for (int m = 0; m < M.size(); ++m)
      if (f[m] == M.zero()) ker |= SubMask{1} << m;
    acc &= ker;
  }
  int idx = M.submodule_index(acc);
  if (idx < 0) throw std::logic_error("annihilator escaped the submodule family");
  return idx;
}

int colon(const FiniteModule& M, int n_idx, int l_idx) {
  SubMask N = M.submodules()[n_idx];
  SubMask acc = 0;
  for (int m = 0; m < M.size(); ++m) {
    bool in = true;
    for (const ModMap& f : M.homs(l_idx))
      if (!(N >> f[m] & 1)) {
        in = false;
        break;
      }
    if (in) acc |= SubMask{1} << m;
  }
  int idx = M.submodule_index(acc);
  if (idx < 0) throw std::logic_error("colon escaped the submodule family");
  return idx;
}

SubMask ler_set(const FiniteModule& M, int n_idx) {
  SubMask N = M.submodules()[n_idx];
  const SubMask full = M.submodules()[M.top_index()];
  SubMask out = 0;
  for (int m = 0; m < M.size(); ++m) {
    int cyc = M.submodule_index(M.cyclic(m));
    SubMask ann = M.submodules()[annihilator(M, cyc)];
    if (module_sum(M, N, ann) == full) out |= SubMask{1} << m;
  }
  return out;
}

// -- predicates ----------------------------------------------------------------------

bool is_prime_submodule(const FiniteModule& M, int n_idx) {
  if (!M.is_fully_invariant(n_idx))
    throw std::domain_error("is_prime_submodule: not fully invariant");
  if (n_idx == M.top_index())
    throw std::domain_error("is_prime_submodule: not a proper submodule");
  SubMask N = M.submodules()[n_idx];
  for (int l : M.fi_submodules())
    for (int k : M.fi_submodules()) {
      SubMask P = M.submodules()[bican_product(M, l, k)];
      if ((P & ~N) == 0 && (M.submodules()[l] & ~N) != 0 &&
          (M.submodules()[k] & ~N) != 0)
        return false;
    }
  return true;
}

bool is_semiprime_submodule(const FiniteModule& M, int n_idx) {
  if (!M.is_fully_invariant(n_idx))
    throw std::domain_error("is_semiprime_submodule: not fully invariant");
  if (n_idx == M.top_index())
    throw std::domain_error("is_semiprime_submodule: not a proper submodule");
  SubMask N = M.submodules()[n_idx];
  for (int l : M.fi_submodules()) {
    SubMask P = M.submodules()[bican_product(M, l, l)];
    if ((P & ~N) == 0 && (M.submodules()[l] & ~N) != 0) return false;
  }
  return true;
}

std::optional<int> semiprime_module_witness(const FiniteModule& M) {
  for (int l : M.fi_submodules()) {
    if (l == M.zero_index()) continue;
    if (bican_product(M, l, l) == M.zero_index()) return l;
  }
  return std::nullopt;
}

bool is_semiprime_module(const FiniteModule& M) {
  return !semiprime_module_witness(M).has_value();
}

std::optional<int> fi_baer_witness(const FiniteModule& M) {
  for (int nfi : M.fi_submodules()) {
    int a = annihilator(M, nfi);
    SubMask A = M.submodules()[a];
    const SubMask zero = SubMask{1} << M.zero();
    const SubMask full = M.submodules()[M.top_index()];
    bool summand = false;
    for (SubMask L : M.submodules())
      if ((A & L) == zero && module_sum(M, A, L) == full) {
        summand = true;
        break;
      }
    if (!summand) return nfi;
  }
  return std::nullopt;
}

bool is_fi_baer(const FiniteModule& M) { return !fi_baer_witness(M).has_value(); }

std::optional<int> fi_retractable_witness(const FiniteModule& M) {
  for (int k : M.fi_submodules()) {
    if (k == M.zero_index()) continue;
    if (M.homs(k).size() <= 1) return k;
  }
  return std::nullopt;
}

bool is_fi_retractable(const FiniteModule& M) {
  return !fi_retractable_witness(M).has_value();
}

std::optional<std::pair<int, int>> module_dml_witness(const FiniteModule& M) {
  const auto& lat = M.submodule_lattice();
  for (int a : M.fi_submodules())
    for (int b : M.fi_submodules()) {
      int lhs = annihilator(M, lat.meet(a, b));
      int rhs = lat.join(annihilator(M, a), annihilator(M, b));
      if (lhs != rhs) return std::make_pair(a, b);
    }
  return std::nullopt;
}

bool module_dml(const FiniteModule& M) { return !module_dml_witness(M).has_value(); }

SdmlReport sdml_checks(const FiniteModule& M) {
  SdmlReport rep;
  const auto& lat = M.submodule_lattice();
  const int top = M.top_index();
  rep.sdml = rep.sdml1 = rep.sdml2 = true;
  for (int a : M.fi_submodules())
    for (int b : M.fi_submodules()) {
      if (rep.sdml && lat.join(colon(M, a, b), colon(M, b, a)) != top) {
        rep.sdml = false;
        rep.sdml_witness = {a, b};
      }
      for (int c : M.fi_submodules()) {
        if (rep.sdml1 &&
            colon(M, lat.join(a, b), c) !=
                lat.join(colon(M, a, c), colon(M, b, c))) {
          rep.sdml1 = false;
          rep.sdml1_witness = {{a, b, c}};
        }
        if (rep.sdml2 &&
            colon(M, a, lat.meet(b, c)) !=
                lat.join(colon(M, a, b), colon(M, a, c))) {
          rep.sdml2 = false;
          rep.sdml2_witness = {{a, b, c}};
        }
      }
    }
  return rep;
}

// -- quantale packaging -----------------------------------------------------------------

Result<FiQuantale> fi_quantale(const FiniteModule& M) {
  const auto& fi = M.fi_submodules();
  const int k = static_cast<int>(fi.size());
  kernels::Table prod(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int p = bican_product(M, fi[i], fi[j]);
      int local = M.fi_local(p);
      if (local < 0)
        return Violation{"fi_closure",
                         {M.submodule_label(fi[i]), M.submodule_label(fi[j])},
                         "product leaves the fully invariant lattice"};
      prod[i * k + j] = local;
    }
  auto q = Quantale::check(M.fi_lattice(), std::move(prod), ProductLaw::full, true);
  if (!q.ok()) return q.error();
  return FiQuantale{std::move(q).value(), fi};
}

Result<Quantale> lambda_quantale(const FiniteModule& M) {
  const int ns = static_cast<int>(M.submodules().size());
  kernels::Table prod(static_cast<size_t>(ns) * ns);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) prod[i * ns + j] = bican_product(M, i, j);
  return Quantale::check(M.submodule_lattice(), std::move(prod), ProductLaw::full,
                         false);
}

// -- harnesses ---------------------------------------------------------------------------

PsiModuleReport psi_module(const FiniteModule& M) {
  PsiModuleReport rep;
  for (int nfi : M.fi_submodules()) {
    SubMask N = M.submodules()[nfi];
    SubMask ler = ler_set(M, nfi);
    if (ler == N) rep.fixed_points.push_back(nfi);
    if ((N & ~ler) == 0) rep.direct.push_back(nfi);  // every n in N lands in Ler(N)
  }
  rep.equal = rep.fixed_points == rep.direct;
  return rep;
}

Prop62Report prop62_properties(const FiniteModule& M) {
  Prop62Report rep;
  const auto& lat = M.submodule_lattice();
  const auto& fi = M.fi_submodules();
  const int top = M.top_index();
  auto sub = [&](int i, int j) { return lat.leq(i, j); };

  rep.item1 = rep.item2 = rep.item3 = rep.item4 = rep.item5 = rep.item6 = true;
  for (int nn : fi)
    for (int ll : fi) {
      if (sub(ll, nn) && colon(M, nn, ll) != top) {
        rep.item1 = false;
        rep.notes.push_back("item1 at (" + M.submodule_label(nn) + "," +
                            M.submodule_label(ll) + ")");
      }
      for (int kk : fi) {
        if (sub(ll, nn)) {
          if (!sub(colon(M, ll, kk), colon(M, nn, kk)) ||
              !sub(colon(M, kk, nn), colon(M, kk, ll))) {
            rep.item2 = false;
            rep.notes.push_back("item2 at (" + M.submodule_label(nn) + "," +
                                M.submodule_label(ll) + "," +
                                M.submodule_label(kk) + ")");
          }
        }
        if (colon(M, lat.meet(nn, ll), kk) !=
            lat.meet(colon(M, nn, kk), colon(M, ll, kk))) {
          rep.item3 = false;
          rep.notes.push_back("item3 at (" + M.submodule_label(nn) + "," +
                              M.submodule_label(ll) + "," + M.submodule_label(kk) +
                              ")");
        }
        if (!sub(colon(M, nn, lat.join(ll, kk)),
                 lat.meet(colon(M, nn, ll), colon(M, nn, kk)))) {
          rep.item4 = false;
          rep.notes.push_back("item4 at (" + M.submodule_label(nn) + "," +
                              M.submodule_label(ll) + "," + M.submodule_label(kk) +
                              ")");
        }
      }
    }

  rep.gate5 = true;
  for (int nn : fi)
    if (bican_product(M, top, nn) != nn) {
      rep.gate5 = false;
      break;
    }
  if (rep.gate5) {
    for (int nn : fi)
      for (int ll : fi)
        if (colon(M, nn, ll) == top && !sub(ll, nn)) {
          rep.item5 = false;
          rep.notes.push_back("item5 at (" + M.submodule_label(nn) + "," +
                              M.submodule_label(ll) + ")");
        }
  }

  // hom-set additivity over sums, the workable face of quasi-projectivity
  rep.gate6 = true;
  for (int ll : fi) {
    for (int kk : fi) {
      int lk = lat.join(ll, kk);
      std::vector<ModMap> sums;
      for (const ModMap& g : M.homs(ll))
        for (const ModMap& h : M.homs(kk)) {
          ModMap s(M.size());
          for (int m = 0; m < M.size(); ++m) s[m] = M.add(g[m], h[m]);
          sums.push_back(std::move(s));
        }
      std::sort(sums.begin(), sums.end());
      sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
      if (sums != M.homs(lk)) {
        rep.gate6 = false;
        break;
      }
    }
    if (!rep.gate6) break;
  }
  if (rep.gate6) {
    for (int nn : fi)
      for (int ll : fi)
        for (int kk : fi)
          if (!sub(lat.meet(colon(M, nn, ll), colon(M, nn, kk)),
                   colon(M, nn, lat.join(ll, kk)))) {
            rep.item6 = false;
            rep.notes.push_back("item6 at (" + M.submodule_label(nn) + "," +
                                M.submodule_label(ll) + "," +
                                M.submodule_label(kk) + ")");
          }
  }
  return rep;
}

Prop63Report prop63_harness(const FiniteModule& M) {
  Prop63Report rep;
  SdmlReport s = sdml_checks(M);
  rep.sdml = s.sdml;
  rep.sdml1 = s.sdml1;
  rep.sdml2 = s.sdml2;
  rep.sdml2_implies_sdml = !s.sdml2 || s.sdml;

  Prop62Report p62 = prop62_properties(M);
  rep.gate_distr = p62.gate5 && p62.gate6;
  if (rep.gate_distr)
    rep.distributive_ok = !s.sdml2 || is_distributive(M.fi_lattice());

  rep.gate_equiv = fi_quantale(M).ok();
  if (rep.gate_equiv)
    rep.equivalent = s.sdml == s.sdml1 && s.sdml1 == s.sdml2;
  return rep;
}

AsanoReport asano_conditions(const FiniteModule& M) {
  AsanoReport rep;
  auto fiq = fi_quantale(M);
  rep.fiq_valid = fiq.ok();
  if (!rep.fiq_valid) return rep;
  rep.commutative = fiq.value().q.commutative();
  SdmlReport s = sdml_checks(M);
  rep.cond3 = rep.commutative && s.sdml;
  rep.cond4 = rep.commutative && s.sdml1;
  rep.cond5 = rep.commutative && s.sdml2;
  rep.applicable = rep.commutative;
  rep.equivalent = rep.cond3 == rep.cond4 && rep.cond4 == rep.cond5;
  return rep;
}

namespace {

// Projection onto A along L for a direct decomposition A + L == M.
ModMap projection_onto(const FiniteModule& M, SubMask A, SubMask L) {
  ModMap pi(M.size());
  for (int m = 0; m < M.size(); ++m) {
    int hit = -1;
    for (int a = 0; a < M.size(); ++a) {
      if (!(A >> a & 1)) continue;
      int rest = M.add(m, M.neg(a));
      if (L >> rest & 1) {
        hit = a;
        break;
      }
    }
    pi[m] = static_cast<std::uint8_t>(hit);
  }
  return pi;
}

bool central_in_end(const FiniteModule& M, const ModMap& pi) {
  for (const ModMap& f : M.endomorphisms())
    for (int m = 0; m < M.size(); ++m)
      if (f[pi[m]] != pi[f[m]]) return false;
  return true;
}

}  // namespace

Thm514Report theorem514_harness(const FiniteModule& M) {
  Thm514Report rep;
  auto fiq = fi_quantale(M);
  rep.applicable = fiq.ok();
  if (!rep.applicable) {
    rep.notes.push_back("fi product is not a quantale: " +
                        fiq.error().to_string());
    return rep;
  }
  const auto& lat = M.submodule_lattice();
  const bool semiprime = is_semiprime_module(M);
  const bool retractable = is_fi_retractable(M);
  const SubMask zero_mask = SubMask{1} << M.zero();
  const SubMask full = M.submodules()[M.top_index()];

  rep.cond[0] = semiprime && module_dml(M);

  bool ann_of_product = true;
  for (int a : M.fi_submodules())
    for (int b : M.fi_submodules())
      if (annihilator(M, bican_product(M, a, b)) !=
          lat.join(annihilator(M, a), annihilator(M, b))) {
        ann_of_product = false;
        break;
      }
  rep.cond[1] = retractable && ann_of_product;

  bool double_ann_summand = true;
  for (int a : M.fi_submodules()) {
    int ann = annihilator(M, a);
    int annann = annihilator(M, ann);
    SubMask A = M.submodules()[ann], B = M.submodules()[annann];
    if ((A & B) != zero_mask || module_sum(M, A, B) != full) {
      double_ann_summand = false;
      break;
    }
  }
  rep.cond[2] = retractable && double_ann_summand;

  bool baer = is_fi_baer(M);
  bool central_projections = baer;
  if (baer) {
    for (int a : M.fi_submodules()) {
      SubMask A = M.submodules()[annihilator(M, a)];
      bool found = false;
      for (SubMask L : M.submodules()) {
        if ((A & L) != zero_mask || module_sum(M, A, L) != full) continue;
        if (central_in_end(M, projection_onto(M, A, L))) {
          found = true;
          break;
        }
      }
      if (!found) {
        central_projections = false;
        break;
      }
    }
  }
  rep.cond[3] = retractable && baer && central_projections;

  // SP(M) as the mu-fixed frame of the fully invariant quantale
  bool sp_dml = false;
  {
    auto mu = mu_analysis(fiq.value().q, full_subquantale(fiq.value().q));
    if (mu.ok()) {
      auto sp = induced_lattice(fiq.value().q.lattice(), mu.value().fixed_points);
      if (sp.ok() && is_frame(sp.value().lat)) {
        auto h = make_heyting(sp.value().lat);
        sp_dml = h.ok() && frame_satisfies_dml(sp.value().lat, h.value());
      } else {
        rep.notes.push_back("SP(M) is not a frame");
      }
    } else {
      rep.notes.push_back("mu: " + mu.error().to_string());
    }
  }
  rep.cond[4] = semiprime && sp_dml;

  bool spec_ed = false;
  {
    auto spec = spectrum_space(fiq.value().q, full_subquantale(fiq.value().q));
    if (spec.ok())
      spec_ed = is_extremely_disconnected(spec.value().space);
    else
      rep.notes.push_back("spectrum: " + spec.error().to_string());
  }
  rep.cond[5] = semiprime && spec_ed;

  rep.all_agree = true;
  for (int i = 1; i < 6; ++i) rep.all_agree &= rep.cond[i] == rep.cond[0];
  if (rep.all_agree) rep.common = rep.cond[0];
  if (!rep.all_agree) {
    std::string s = "conditions ";
    for (int i = 0; i < 6; ++i) s += std::to_string(rep.cond[i]);
    rep.notes.push_back(s);
  }
  return rep;
}

SpRealizationReport sp_realizations(const FiniteModule& M) {
  SpRealizationReport rep;
  auto fiq = fi_quantale(M);
  if (!fiq.ok()) {
    rep.notes.push_back("fi quantale: " + fiq.error().to_string());
    return rep;
  }
  // (a) semiprime fully invariant submodules plus the whole module
  std::vector<Elem> semis;
  for (int nfi : M.fi_submodules()) {
    int local = M.fi_local(nfi);
    if (nfi == M.top_index() || is_semiprime_submodule(M, nfi))
      semis.push_back(local);
  }
  auto latA = induced_lattice(M.fi_lattice(), semis);
  // (b) mu-fixed points of the fully invariant quantale
  auto mu = mu_analysis(fiq.value().q, full_subquantale(fiq.value().q));
  if (!latA.ok() || !mu.ok()) {
    rep.notes.push_back("realizations incomparable");
    return rep;
  }
  auto latB = induced_lattice(fiq.value().q.lattice(), mu.value().fixed_points);
  if (!latB.ok()) {
    rep.notes.push_back("mu-fixed set is not a lattice");
    return rep;
  }
  rep.built = true;
  rep.same_member_sets = semis == mu.value().fixed_points;
  rep.order_isomorphic = are_order_isomorphic(latA.value().lat, latB.value().lat);
  if (!rep.same_member_sets)
    rep.notes.push_back("member sets differ");
  return rep;
}

ModuleLemmasReport module_lemmas(const FiniteModule& M) {
  ModuleLemmasReport rep;
  const auto& lat = M.submodule_lattice();
  const bool semiprime = is_semiprime_module(M);
  const bool fiq_ok = fi_quantale(M).ok();
  const SubMask zero_mask = SubMask{1} << M.zero();
  const SubMask full = M.submodules()[M.top_index()];

  rep.semiprimelemma_applicable = semiprime && fiq_ok;
  if (rep.semiprimelemma_applicable) {
    rep.semiprimelemma_holds = true;
    for (int a : M.fi_submodules())
      for (int b : M.fi_submodules()) {
        if (bican_product(M, a, b) != M.zero_index()) continue;
        if (bican_product(M, b, a) != M.zero_index() ||
            lat.meet(a, b) != M.zero_index()) {
          rep.semiprimelemma_holds = false;
          rep.notes.push_back("products at (" + M.submodule_label(a) + "," +
                              M.submodule_label(b) + ")");
        }
      }
  }

  rep.annprodinter_applicable = semiprime && fiq_ok;
  if (rep.annprodinter_applicable) {
    rep.annprodinter_holds = true;
    for (int a : M.fi_submodules())
      for (int b : M.fi_submodules())
        if (annihilator(M, lat.meet(a, b)) !=
            annihilator(M, bican_product(M, a, b))) {
          rep.annprodinter_holds = false;
          rep.notes.push_back("ann at (" + M.submodule_label(a) + "," +
                              M.submodule_label(b) + ")");
        }
  }

  rep.summand_fi_applicable = semiprime && fiq_ok;
  if (rep.summand_fi_applicable) {
    rep.summand_fi_holds = true;
    for (int nfi : M.fi_submodules()) {
      SubMask N = M.submodules()[nfi];
      for (int l = 0; l < static_cast<int>(M.submodules().size()); ++l) {
        SubMask L = M.submodules()[l];
        if ((N & L) != zero_mask || module_sum(M, N, L) != full) continue;
        if (!M.is_fully_invariant(l)) {
          rep.summand_fi_holds = false;
          rep.notes.push_back("complement " + M.submodule_label(l) +
                              " of " + M.submodule_label(nfi) +
                              " is not fully invariant");
        }
      }
    }
  }

  rep.idem_holds = true;
  for (int nfi : M.fi_submodules())
    for (int lfi : M.fi_submodules()) {
      SubMask N = M.submodules()[nfi], L = M.submodules()[lfi];
      if ((N & L) != zero_mask || module_sum(M, N, L) != full) continue;
      if (!central_in_end(M, projection_onto(M, N, L))) {
        rep.idem_holds = false;
        rep.notes.push_back("projection onto " + M.submodule_label(nfi) +
                            " is not central");
      }
    }

  rep.retractable_implication_holds = !semiprime || is_fi_retractable(M);
  return rep;
}

std::optional<std::string> annihilator_postcondition_violation(
    const FiniteModule& M) {
  const int ns = static_cast<int>(M.submodules().size());
  for (int k = 0; k < ns; ++k) {
    int a = annihilator(M, k);
    if (!M.is_fully_invariant(a))
      return "Ann " + M.submodule_label(k) + " is not fully invariant";
    if (bican_product(M, a, k) != M.zero_index())
      return "Ann " + M.submodule_label(k) + " does not kill the target";
    for (int nn = 0; nn < ns; ++nn)
      if (bican_product(M, nn, k) == M.zero_index() &&
          !M.submodule_lattice().leq(nn, a))
        return "Ann " + M.submodule_label(k) + " is not the largest killer";
  }
  return std::nullopt;
}

// -- order isomorphism ----------------------------------------------------------------

namespace {

bool order_iso_backtrack(const FiniteLattice& A, const FiniteLattice& B,
                         std::vector<int>& image, std::vector<bool>& used, int a) {
  const int n = A.size();
  if (a == n) return true;
  for (int b = 0; b < n; ++b) {
    if (used[b]) continue;
    bool ok = true;
    for (int prev = 0; prev < a && ok; ++prev)
      ok = A.leq(prev, a) == B.leq(image[prev], b) &&
           A.leq(a, prev) == B.leq(b, image[prev]);
    if (!ok) continue;
    image[a] = b;
    used[b] = true;
    if (order_iso_backtrack(A, B, image, used, a + 1)) return true;
    used[b] = false;
  }
  return false;
}

}  // namespace

bool are_order_isomorphic(const FiniteLattice& A, const FiniteLattice& B) {
  if (A.size() != B.size()) return false;
  std::vector<int> image(A.size(), -1);
  std::vector<bool> used(A.size(), false);
  return order_iso_backtrack(A, B, image, used, 0);
}

}  // namespace dml
