#pragma once

// Test-only brute-force calculators, kept independent of the library code
// paths they are used to check. Everything here works on raw residue sets
// or full function scans.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dml/modalg.hpp"

namespace oracle {

using Ideal = std::vector<int>;  // sorted residues mod n

inline bool contains(const Ideal& I, int x) {
  return std::binary_search(I.begin(), I.end(), x);
}

/// Every subset of Z_n closed under addition, negation and multiplication
/// by arbitrary residues. Enumerated by scanning all 2^n subsets.
inline std::vector<Ideal> ideals_of_Zn(int n) {
  std::vector<Ideal> out;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if (!(s & 1)) continue;  // must contain 0
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if (!(s >> a & 1)) continue;
      for (int b = 0; b < n && ok; ++b) {
        if (s >> b & 1)
          ok = (s >> ((a + b) % n)) & 1;
      }
      for (int r = 1; r < n && ok; ++r) ok = (s >> ((r * a) % n)) & 1;
    }
    if (!ok) continue;
    Ideal I;
    for (int a = 0; a < n; ++a)
      if (s >> a & 1) I.push_back(a);
    out.push_back(std::move(I));
  }
  return out;
}

inline Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  Ideal out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline Ideal ideal_sum(int n, const Ideal& a, const Ideal& b) {
  std::vector<bool> seen(n, false);
  for (int x : a)
    for (int y : b) seen[(x + y) % n] = true;
  Ideal out;
  for (int v = 0; v < n; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

inline Ideal ideal_product(int n, const Ideal& a, const Ideal& b) {
  // additive closure of all pairwise products
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (int x : a)
    for (int y : b) seen[(x * y) % n] = true;
  for (;;) {
    bool grew = false;
    for (int x = 0; x < n; ++x) {
      if (!seen[x]) continue;
      for (int y = 0; y < n; ++y)
        if (seen[y] && !seen[(x + y) % n]) {
          seen[(x + y) % n] = true;
          grew = true;
        }
    }
    if (!grew) break;
  }
  Ideal out;
  for (int v = 0; v < n; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

/// Largest ideal X with X * A = 0, found by joining all annihilating ideals.
inline Ideal ideal_annihilator(int n, const std::vector<Ideal>& all,
                               const Ideal& A) {
  Ideal acc{0};
  for (const Ideal& X : all) {
    if (ideal_product(n, X, A) == Ideal{0}) acc = ideal_sum(n, acc, X);
  }
  return acc;
}

/// {r : r * B within A} as a residue set.
inline Ideal ideal_colon(int n, const Ideal& A, const Ideal& B) {
  Ideal out;
  for (int r = 0; r < n; ++r) {
    bool ok = true;
    for (int b : B)
      if (!contains(A, (r * b) % n)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(r);
  }
  return out;
}

/// Two-sided ideals of a finite ring computed from the ring tables alone:
/// close each element under addition and multiplication from both sides,
/// then close the family under sums.
inline dml::SubMask ring_ideal_closure(const dml::FiniteRing& R,
                                       dml::SubMask seed) {
  dml::SubMask s = seed | (dml::SubMask{1} << R.zero());
  for (;;) {
    dml::SubMask next = s;
    for (int a = 0; a < R.size(); ++a) {
      if (!(s >> a & 1)) continue;
      for (int b = 0; b < R.size(); ++b) {
        if (s >> b & 1) next |= dml::SubMask{1} << R.add(a, b);
        next |= dml::SubMask{1} << R.mul(b, a);
        next |= dml::SubMask{1} << R.mul(a, b);
      }
    }
    if (next == s) return s;
    s = next;
  }
}

inline std::vector<dml::SubMask> ring_ideals(const dml::FiniteRing& R) {
  std::vector<dml::SubMask> family;
  for (int a = 0; a < R.size(); ++a)
    family.push_back(ring_ideal_closure(R, dml::SubMask{1} << a));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  for (;;) {
    std::vector<dml::SubMask> grown = family;
    for (size_t i = 0; i < family.size(); ++i)
      for (size_t j = i + 1; j < family.size(); ++j) {
        dml::SubMask sum = 0;
        for (int a = 0; a < R.size(); ++a) {
          if (!(family[i] >> a & 1)) continue;
          for (int b = 0; b < R.size(); ++b)
            if (family[j] >> b & 1) sum |= dml::SubMask{1} << R.add(a, b);
        }
        grown.push_back(sum);
      }
    std::sort(grown.begin(), grown.end());
    grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
    if (grown.size() == family.size()) return family;
    family = std::move(grown);
  }
}

/// Additive closure of all pairwise products of two ideals.
inline dml::SubMask ring_ideal_product(const dml::FiniteRing& R, dml::SubMask I,
                                       dml::SubMask J) {
  dml::SubMask prods = dml::SubMask{1} << R.zero();
  for (int a = 0; a < R.size(); ++a) {
    if (!(I >> a & 1)) continue;
    for (int b = 0; b < R.size(); ++b)
      if (J >> b & 1) prods |= dml::SubMask{1} << R.mul(a, b);
  }
  for (;;) {
    dml::SubMask next = prods;
    for (int a = 0; a < R.size(); ++a) {
      if (!(prods >> a & 1)) continue;
      for (int b = 0; b < R.size(); ++b)
        if (prods >> b & 1) next |= dml::SubMask{1} << R.add(a, b);
    }
    if (next == prods) return prods;
    prods = next;
  }
}

/// Full function-space scan for module maps M -> K: every function is
/// tested for additivity and equivariance. Exponential, test sizes only.
inline std::vector<std::vector<int>> brute_homs(const dml::FiniteModule& M,
                                                dml::SubMask target) {
  std::vector<int> targets;
  for (int x = 0; x < M.size(); ++x)
    if (target >> x & 1) targets.push_back(x);
  const long long k = static_cast<long long>(targets.size());
  long long total = 1;
  for (int i = 0; i < M.size(); ++i) total *= k;

  std::vector<std::vector<int>> out;
  std::vector<int> f(M.size());
  for (long long c = 0; c < total; ++c) {
    long long t = c;
    for (int i = 0; i < M.size(); ++i) {
      f[i] = targets[t % k];
      t /= k;
    }
    bool ok = true;
    for (int a = 0; a < M.size() && ok; ++a)
      for (int b = 0; b < M.size() && ok; ++b)
        ok = f[M.add(a, b)] == M.add(f[a], f[b]);
    for (int r = 0; r < M.ring().size() && ok; ++r)
      for (int m = 0; m < M.size() && ok; ++m)
        ok = f[M.act(r, m)] == M.act(r, f[m]);
    if (ok) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
