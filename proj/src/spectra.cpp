#include "dml/spectra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace dml {

namespace {

std::string pointset_label(const FiniteTopSpace& S, PointSet xs) {
  std::string out = "{";
  for (int p = 0; p < S.points(); ++p)
    if (xs >> p & 1) {
      if (out.size() > 1) out += ",";
      out += S.point_labels[p];
    }
  return out + "}";
}

}  // namespace

Result<FiniteTopSpace> make_space(std::vector<std::string> point_labels,
                                  std::vector<PointSet> opens) {
  if (point_labels.size() > 64)
    throw ResourceError("points", 64, static_cast<long long>(point_labels.size()));
  FiniteTopSpace S;
  S.point_labels = std::move(point_labels);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  S.opens = std::move(opens);

  const PointSet full = S.full();
  for (PointSet o : S.opens)
    if (o & ~full) return Violation{"topology", {}, "open contains unknown point"};
  if (!std::binary_search(S.opens.begin(), S.opens.end(), PointSet{0}))
    return Violation{"topology", {}, "empty set is not open"};
  if (!std::binary_search(S.opens.begin(), S.opens.end(), full))
    return Violation{"topology", {}, "full set is not open"};
  for (PointSet a : S.opens)
    for (PointSet b : S.opens) {
      if (!std::binary_search(S.opens.begin(), S.opens.end(), a | b))
        return Violation{"topology",
                         {pointset_label(S, a), pointset_label(S, b)},
                         "union escapes the family"};
      if (!std::binary_search(S.opens.begin(), S.opens.end(), a & b))
        return Violation{"topology",
                         {pointset_label(S, a), pointset_label(S, b)},
                         "intersection escapes the family"};
    }
  return S;
}

PointSet space_closure(const FiniteTopSpace& S, PointSet xs) {
  PointSet acc = S.full();
  for (PointSet o : S.opens) {
    PointSet closed = S.full() & ~o;
    if ((xs & ~closed) == 0) acc &= closed;
  }
  return acc;
}

bool is_extremely_disconnected(const FiniteTopSpace& S) {
  for (PointSet o : S.opens)
    if (!std::binary_search(S.opens.begin(), S.opens.end(), space_closure(S, o)))
      return false;
  return true;
}

bool is_hausdorff(const FiniteTopSpace& S) {
  for (int p = 0; p < S.points(); ++p)
    for (int q = p + 1; q < S.points(); ++q) {
      bool separated = false;
      for (PointSet u : S.opens) {
        if (!(u >> p & 1)) continue;
        for (PointSet v : S.opens)
          if ((v >> q & 1) && (u & v) == 0) {
            separated = true;
            break;
          }
        if (separated) break;
      }
      if (!separated) return false;
    }
  return true;
}

namespace {

// Signature of a point: sorted sizes of the opens containing it.
std::vector<int> point_signature(const FiniteTopSpace& S, int p) {
  std::vector<int> sig;
  for (PointSet o : S.opens)
    if (o >> p & 1) sig.push_back(std::popcount(o));
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool homeo_backtrack(const FiniteTopSpace& S, const FiniteTopSpace& T,
                     std::vector<int>& image, std::vector<bool>& used, int p,
                     const std::vector<std::vector<int>>& candidates,
                     long long& budget) {
  if (p == S.points()) {
    for (PointSet o : S.opens) {
      PointSet mapped = 0;
      for (int i = 0; i < S.points(); ++i)
        if (o >> i & 1) mapped |= PointSet{1} << image[i];
      if (!std::binary_search(T.opens.begin(), T.opens.end(), mapped)) return false;
    }
    return true;
  }
  for (int q : candidates[p]) {
    if (used[q]) continue;
    if (--budget < 0) throw ResourceError("homeo_search", 1 << 20, 1 << 20);
    image[p] = q;
    used[q] = true;
    if (homeo_backtrack(S, T, image, used, p + 1, candidates, budget)) return true;
    used[q] = false;
  }
  return false;
}

}  // namespace

bool are_homeomorphic(const FiniteTopSpace& S, const FiniteTopSpace& T) {
  if (S.points() != T.points() || S.opens.size() != T.opens.size()) return false;
  std::vector<int> sizes_s, sizes_t;
  for (PointSet o : S.opens) sizes_s.push_back(std::popcount(o));
  for (PointSet o : T.opens) sizes_t.push_back(std::popcount(o));
  std::sort(sizes_s.begin(), sizes_s.end());
  std::sort(sizes_t.begin(), sizes_t.end());
  if (sizes_s != sizes_t) return false;

  std::vector<std::vector<int>> candidates(S.points());
  for (int p = 0; p < S.points(); ++p) {
    auto sig = point_signature(S, p);
    for (int q = 0; q < T.points(); ++q)
      if (sig == point_signature(T, q)) candidates[p].push_back(q);
    if (candidates[p].empty()) return false;
  }
  std::vector<int> image(S.points(), -1);
  std::vector<bool> used(T.points(), false);
  long long budget = 1 << 20;
  return homeo_backtrack(S, T, image, used, 0, candidates, budget);
}

FiniteLattice opens_lattice(const FiniteTopSpace& S) {
  const int n = static_cast<int>(S.opens.size());
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = pointset_label(S, S.opens[i]);
  auto index_of = [&](PointSet o) {
    return static_cast<int>(std::lower_bound(S.opens.begin(), S.opens.end(), o) -
                            S.opens.begin());
  };
  kernels::BoolTable leq(static_cast<size_t>(n) * n, 0);
  kernels::Table meet(static_cast<size_t>(n) * n), join(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      leq[i * n + j] = (S.opens[i] & ~S.opens[j]) == 0;
      meet[i * n + j] = index_of(S.opens[i] & S.opens[j]);
      join[i * n + j] = index_of(S.opens[i] | S.opens[j]);
    }
  return FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                              std::move(meet), std::move(join));
}

// -- nuclei ---------------------------------------------------------------------

SelfMapAnalysis analyze_selfmap(const FiniteLattice& L, std::vector<Elem> map) {
  if (map.size() != static_cast<size_t>(L.size()))
    throw std::invalid_argument("analyze_selfmap: map size mismatch");
  SelfMapAnalysis out;
  out.map = std::move(map);
  out.monotone = out.inflationary = out.idempotent = out.prenucleus = true;
  const int n = L.size();
  for (Elem a = 0; a < n; ++a) {
    if (out.inflationary && !L.leq(a, out.map[a])) {
      out.inflationary = false;
      out.notes.push_back("not inflationary at " + L.label(a));
    }
    if (out.idempotent && out.map[out.map[a]] != out.map[a]) {
      out.idempotent = false;
      out.notes.push_back("not idempotent at " + L.label(a));
    }
    for (Elem b = 0; b < n; ++b) {
      if (out.monotone && L.leq(a, b) && !L.leq(out.map[a], out.map[b])) {
        out.monotone = false;
        out.notes.push_back("not monotone at (" + L.label(a) + "," + L.label(b) + ")");
      }
      if (out.prenucleus &&
          out.map[L.meet(a, b)] != L.meet(out.map[a], out.map[b])) {
        out.prenucleus = false;
        out.notes.push_back("meet not preserved at (" + L.label(a) + "," +
                            L.label(b) + ")");
      }
    }
  }
  return out;
}

Result<NucleusMap> make_nucleus(const FiniteLattice& L, std::vector<Elem> map) {
  SelfMapAnalysis a = analyze_selfmap(L, std::move(map));
  if (!a.is_nucleus())
    return Violation{"nucleus", {}, a.notes.empty() ? "axioms fail" : a.notes.front()};
  return NucleusMap{L, std::move(a.map)};
}

QuotientLattice nucleus_quotient(const NucleusMap& j) {
  const FiniteLattice& L = j.carrier;
  std::vector<Elem> fixed;
  for (Elem a = 0; a < L.size(); ++a)
    if (j.map[a] == a) fixed.push_back(a);
  const int m = static_cast<int>(fixed.size());
  auto local = [&](Elem parent) {
    return static_cast<int>(std::lower_bound(fixed.begin(), fixed.end(), parent) -
                            fixed.begin());
  };
  std::vector<std::string> labels(m);
  kernels::BoolTable leq(static_cast<size_t>(m) * m, 0);
  kernels::Table meet(static_cast<size_t>(m) * m), join(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    labels[i] = L.label(fixed[i]);
    for (int k = 0; k < m; ++k) {
      leq[i * m + k] = L.leq(fixed[i], fixed[k]) ? 1 : 0;
      meet[i * m + k] = local(L.meet(fixed[i], fixed[k]));
      join[i * m + k] = local(j.map[L.join(fixed[i], fixed[k])]);
    }
  }
  QuotientLattice q;
  q.lat = FiniteLattice::from_tables_unchecked(std::move(labels), std::move(leq),
                                               std::move(meet), std::move(join));
  q.to_carrier = std::move(fixed);
  return q;
}

SelfMapAnalysis annann_analysis(const Quantale& Q) {
  std::vector<Elem> map(Q.size());
  for (Elem a = 0; a < Q.size(); ++a) map[a] = Q.ann_left(Q.ann_left(a));
  return analyze_selfmap(Q.lattice(), std::move(map));
}

Result<NucleusMap> annann_map(const Quantale& Q) {
  DmlLaws laws = check_dml_laws(Q);
  if (!laws.dml)
    return Violation{"annann", {}, "carrier does not satisfy the De Morgan law"};
  SelfMapAnalysis a = annann_analysis(Q);
  if (!a.is_nucleus())
    return Violation{"annann", {}, a.notes.empty() ? "axioms fail" : a.notes.front()};
  return NucleusMap{Q.lattice(), std::move(a.map)};
}

// -- spectra ------------------------------------------------------------------------

std::vector<Elem> primes_relative(const Quantale& A, const SubQuantale& B) {
  if (B.parent != &A)
    throw std::invalid_argument("primes_relative: subquantale of a different carrier");
  std::vector<Elem> primes;
  const FiniteLattice& L = A.lattice();
  for (Elem p = 0; p < A.size(); ++p) {
    if (p == L.top()) continue;
    bool prime = true;
    for (Elem a : B.members) {
      for (Elem b : B.members)
        if (L.leq(A.product(a, b), p) && !L.leq(a, p) && !L.leq(b, p)) {
          prime = false;
          break;
        }
      if (!prime) break;
    }
    if (prime) primes.push_back(p);
  }
  return primes;
}

std::vector<Elem> spec_points(const Quantale& A) {
  return primes_relative(A, full_subquantale(A));
}

Result<SpectrumResult> spectrum_space(const Quantale& A, const SubQuantale& B) {
  if (!B.star)
    throw std::domain_error("spectrum_space: subquantale lacks condition (*)");
  SpectrumResult out;
  out.points = primes_relative(A, B);
  if (out.points.size() > 64)
    throw ResourceError("points", 64, static_cast<long long>(out.points.size()));
  std::vector<std::string> labels;
  for (Elem p : out.points) labels.push_back(A.lattice().label(p));
  std::vector<PointSet> opens;
  for (Elem b : B.members) {
    PointSet u = 0;
    for (size_t i = 0; i < out.points.size(); ++i)
      if (!A.lattice().leq(b, out.points[i])) u |= PointSet{1} << i;
    opens.push_back(u);
  }
  auto space = make_space(std::move(labels), std::move(opens));
  if (!space.ok()) return space.error();
  out.space = std::move(space).value();
  return out;
}

Result<MuResult> mu_analysis(const Quantale& A, const SubQuantale& B) {
  auto spec = spectrum_space(A, B);
  if (!spec.ok()) return spec.error();
  const auto& points = spec.value().points;

  MuResult out;
  out.members = B.members;
  auto memlat = induced_lattice(A.lattice(), B.members);
  if (!memlat.ok()) return memlat.error();
  out.member_lattice = std::move(memlat.value().lat);

  const int m = static_cast<int>(B.members.size());
  out.u.resize(m);
  for (int i = 0; i < m; ++i) {
    PointSet u = 0;
    for (size_t k = 0; k < points.size(); ++k)
      if (!A.lattice().leq(B.members[i], points[k])) u |= PointSet{1} << k;
    out.u[i] = u;
  }

  out.mu.resize(m);
  for (int i = 0; i < m; ++i) {
    Elem acc = A.lattice().bottom();  // bottom lies in B
    for (int x = 0; x < m; ++x)
      if ((out.u[x] & ~out.u[i]) == 0) acc = A.lattice().join(acc, B.members[x]);
    int local = B.local_of(acc);
    if (local < 0)
      return Violation{"mu", {A.lattice().label(acc)}, "mu value escapes subquantale"};
    out.mu[i] = local;
  }

  out.u_fixed = true;
  for (int i = 0; i < m; ++i)
    if (out.u[out.mu[i]] != out.u[i]) {
      out.u_fixed = false;
      break;
    }
  out.analysis = analyze_selfmap(out.member_lattice, out.mu);
  for (int i = 0; i < m; ++i)
    if (out.mu[i] == i) out.fixed_points.push_back(B.members[i]);
  return out;
}

OrderIsoReport amu_iso_opens(const Quantale& A, const SubQuantale& B) {
  OrderIsoReport rep;
  auto mu = mu_analysis(A, B);
  if (!mu.ok()) {
    rep.note = mu.error().to_string();
    return rep;
  }
  const MuResult& M = mu.value();

  std::vector<PointSet> images;
  for (Elem b : M.fixed_points) images.push_back(M.u[B.local_of(b)]);

  std::vector<PointSet> sorted_images = images;
  std::sort(sorted_images.begin(), sorted_images.end());
  rep.injective = std::adjacent_find(sorted_images.begin(), sorted_images.end()) ==
                  sorted_images.end();

  std::vector<PointSet> opens;
  for (PointSet u : M.u) opens.push_back(u);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  rep.onto = sorted_images == opens;

  rep.order_preserving_both_ways = true;
  for (size_t i = 0; i < M.fixed_points.size(); ++i)
    for (size_t j = 0; j < M.fixed_points.size(); ++j) {
      bool below = A.lattice().leq(M.fixed_points[i], M.fixed_points[j]);
      bool subset = (images[i] & ~images[j]) == 0;
      if (below != subset) {
        rep.order_preserving_both_ways = false;
        rep.note = "order mismatch at (" + A.lattice().label(M.fixed_points[i]) +
                   "," + A.lattice().label(M.fixed_points[j]) + ")";
      }
    }
  return rep;
}

// -- rather-below, Psi, regular core ------------------------------------------------

bool rather_below(const Quantale& Q, Elem x, Elem a) {
  return Q.lattice().join(Q.ann_left(x), a) == Q.lattice().top();
}

std::vector<Elem> r_operator_table(const Quantale& Q) {
  std::vector<Elem> r(Q.size());
  for (Elem a = 0; a < Q.size(); ++a) {
    Elem acc = Q.lattice().bottom();
    for (Elem x = 0; x < Q.size(); ++x)
      if (rather_below(Q, x, a)) acc = Q.lattice().join(acc, x);
    r[a] = acc;
  }
  return r;
}

Result<Sublattice> psi(const Quantale& Q) {
  std::vector<Elem> r = r_operator_table(Q);
  std::vector<Elem> fixed;
  for (Elem a = 0; a < Q.size(); ++a)
    if (r[a] == a) fixed.push_back(a);
  return induced_lattice(Q.lattice(), std::move(fixed));
}

namespace {

// One application of r inside the stage spanned by `members`, using the
// parent product and the stage's own joins, bottom and top.
Result<std::vector<Elem>> stage_r_fixed_points(const Quantale& Q,
                                               const std::vector<Elem>& members) {
  auto sub = induced_lattice(Q.lattice(), members);
  if (!sub.ok()) return sub.error();
  const FiniteLattice& S = sub.value().lat;
  const std::vector<Elem>& par = sub.value().to_parent;
  const int m = S.size();
  const Elem zero = par[S.bottom()];

  std::vector<int> ann(m);
  for (int x = 0; x < m; ++x) {
    int acc = S.bottom();
    for (int y = 0; y < m; ++y)
      if (Q.lattice().leq(Q.product(par[y], par[x]), zero)) acc = S.join(acc, y);
    ann[x] = acc;
  }
  std::vector<Elem> fixed;
  for (int a = 0; a < m; ++a) {
    int acc = S.bottom();
    for (int x = 0; x < m; ++x)
      if (S.join(ann[x], a) == S.top()) acc = S.join(acc, x);
    if (acc == a) fixed.push_back(par[a]);
  }
  return fixed;
}

}  // namespace

Result<RegularCoreResult> regular_core(const Quantale& Q) {
  std::vector<Elem> current(Q.size());
  for (int i = 0; i < Q.size(); ++i) current[i] = i;

  RegularCoreResult out;
  int stage = 0;
  for (;;) {
    auto next = stage_r_fixed_points(Q, current);
    if (!next.ok()) return next.error();
    if (next.value() == current) break;
    current = std::move(next.value());
    ++stage;
    if (stage > Q.size() + 1)
      return Violation{"regular_core", {}, "iteration failed to stabilize"};
  }
  out.stabilized_at = stage;
  auto sub = induced_lattice(Q.lattice(), current);
  if (!sub.ok()) return sub.error();
  out.core = std::move(sub.value());
  out.core_is_frame = is_frame(out.core.lat);
  out.core_is_regular = out.core_is_frame && is_regular_frame(out.core.lat);
  return out;
}

Result<SpectrumResult> frame_points(const FiniteLattice& F) {
  if (!is_frame(F)) throw std::domain_error("frame_points: not a frame");
  SpectrumResult out;
  for (Elem p = 0; p < F.size(); ++p) {
    if (p == F.top()) continue;
    bool prime = true;
    for (Elem a = 0; a < F.size() && prime; ++a)
      for (Elem b = 0; b < F.size(); ++b)
        if (F.leq(F.meet(a, b), p) && !F.leq(a, p) && !F.leq(b, p)) {
          prime = false;
          break;
        }
    if (prime) out.points.push_back(p);
  }
  if (out.points.size() > 64)
    throw ResourceError("points", 64, static_cast<long long>(out.points.size()));
  std::vector<std::string> labels;
  for (Elem p : out.points) labels.push_back(F.label(p));
  std::vector<PointSet> opens;
  for (Elem a = 0; a < F.size(); ++a) {
    PointSet u = 0;
    for (size_t i = 0; i < out.points.size(); ++i)
      if (!F.leq(a, out.points[i])) u |= PointSet{1} << i;
    opens.push_back(u);
  }
  auto space = make_space(std::move(labels), std::move(opens));
  if (!space.ok()) return space.error();
  out.space = std::move(space).value();
  return out;
}

Result<FiniteTopSpace> max_space(const Quantale& Q) {
  const FiniteLattice& L = Q.lattice();
  std::vector<Elem> maxima;
  for (Elem m = 0; m < L.size(); ++m) {
    if (m == L.top()) continue;
    bool maximal = true;
    for (Elem x = 0; x < L.size(); ++x)
      if (x != m && x != L.top() && L.leq(m, x)) {
        maximal = false;
        break;
      }
    if (maximal) maxima.push_back(m);
  }
  if (maxima.size() > 64)
    throw ResourceError("points", 64, static_cast<long long>(maxima.size()));
  std::vector<std::string> labels;
  for (Elem m : maxima) labels.push_back(L.label(m));
  std::vector<PointSet> opens;
  for (Elem b = 0; b < L.size(); ++b) {
    PointSet u = 0;
    for (size_t i = 0; i < maxima.size(); ++i)
      if (!L.leq(b, maxima[i])) u |= PointSet{1} << i;
    opens.push_back(u);
  }
  return make_space(std::move(labels), std::move(opens));
}

// -- harnesses ------------------------------------------------------------------------

Thm311Report theorem311_harness(const Quantale& Q) {
  Thm311Report rep;
  rep.applicable = Q.semiprime() && Q.two_sided();
  if (!rep.applicable) return rep;

  DmlLaws laws = check_dml_laws(Q);
  rep.c1_dml = laws.dml;
  rep.c2_law2 = laws.law2;
  bool ann_comp = true;
  for (Elem a = 0; a < Q.size() && ann_comp; ++a)
    ann_comp = has_complement(Q.lattice(), Q.ann_left(a));
  rep.c3_ann_complemented_dml = ann_comp && laws.dml;

  auto spec = spectrum_space(Q, full_subquantale(Q));
  if (!spec.ok()) {
    rep.notes.push_back("spectrum: " + spec.error().to_string());
    rep.all_agree = false;
    return rep;
  }
  FiniteLattice ospec = opens_lattice(spec.value().space);
  auto h = make_heyting(ospec);
  if (!h.ok()) {
    rep.notes.push_back("opens not a frame: " + h.error().to_string());
    rep.all_agree = false;
    return rep;
  }
  rep.c4_ospec_dml = frame_satisfies_dml(ospec, h.value());
  rep.c5_spec_ed = is_extremely_disconnected(spec.value().space);

  rep.all_agree = rep.c1_dml == rep.c2_law2 && rep.c1_dml == rep.c3_ann_complemented_dml &&
                  rep.c1_dml == rep.c4_ospec_dml && rep.c1_dml == rep.c5_spec_ed;
  if (!rep.all_agree)
    rep.notes.push_back(
        "conditions " + std::to_string(rep.c1_dml) + "," + std::to_string(rep.c2_law2) +
        "," + std::to_string(rep.c3_ann_complemented_dml) + "," +
        std::to_string(rep.c4_ospec_dml) + "," + std::to_string(rep.c5_spec_ed));
  return rep;
}

PsiReport psi_report(const Quantale& Q) {
  PsiReport rep;
  auto ps = psi(Q);
  rep.psi_is_lattice = ps.ok();
  if (!ps.ok()) {
    rep.notes.push_back(ps.error().to_string());
    return rep;
  }
  const FiniteLattice& P = ps.value().lat;
  rep.psi_is_frame = is_frame(P);
  if (rep.psi_is_frame) {
    auto h = make_heyting(P);
    rep.psi_dml = frame_satisfies_dml(P, h.value());
    rep.psi_regular = is_regular_frame(P);
  }
  auto core = regular_core(Q);
  if (core.ok()) {
    rep.core_stabilized_at = core.value().stabilized_at;
    rep.core_is_frame = core.value().core_is_frame;
    rep.core_is_regular = core.value().core_is_regular;
  } else {
    rep.notes.push_back("core: " + core.error().to_string());
  }
  return rep;
}

Cor316Report cor316_harness(const Quantale& Q) {
  Cor316Report rep;
  DmlLaws laws = check_dml_laws(Q);
  rep.applicable = is_normal(Q) && Q.semiprime() && laws.dml;
  if (!rep.applicable) return rep;

  auto ps = psi(Q);
  if (!ps.ok()) {
    rep.notes.push_back("psi: " + ps.error().to_string());
    return rep;
  }
  if (!is_frame(ps.value().lat)) {
    rep.notes.push_back("psi is not a frame");
    return rep;
  }
  auto pts = frame_points(ps.value().lat);
  if (!pts.ok()) {
    rep.notes.push_back("pt psi: " + pts.error().to_string());
    return rep;
  }
  rep.pt_psi_ed = is_extremely_disconnected(pts.value().space);
  rep.pt_psi_hausdorff = is_hausdorff(pts.value().space);

  auto mx = max_space(Q);
  if (mx.ok()) {
    rep.max_matches_pt_psi = are_homeomorphic(mx.value(), pts.value().space);
    if (!rep.max_matches_pt_psi)
      rep.notes.push_back("Max space is not homeomorphic to pt Psi");
  } else {
    rep.notes.push_back("max space: " + mx.error().to_string());
  }
  rep.pass = rep.pt_psi_ed && rep.pt_psi_hausdorff;
  return rep;
}

MuLemmasReport mu_lemmas_report(const Quantale& Q) {
  MuLemmasReport rep;
  auto mu = mu_analysis(Q, full_subquantale(Q));
  if (!mu.ok()) {
    rep.notes.push_back("mu: " + mu.error().to_string());
    return rep;
  }
  // B is the whole carrier here, so local and parent indices coincide.
  const MuResult& M = mu.value();

  rep.lemma36_applicable = Q.semiprime();
  if (rep.lemma36_applicable) {
    rep.lemma36_holds = true;
    for (Elem a = 0; a < Q.size(); ++a) {
      Elem ann = Q.ann_left(a);
      if (M.members[M.mu[ann]] != ann) {
        rep.lemma36_holds = false;
        rep.notes.push_back("mu moves ann(" + Q.lattice().label(a) + ")");
        break;
      }
    }
  }

  const Elem zero = Q.lattice().bottom();
  rep.lemma37_applicable = M.members[M.mu[zero]] == zero;
  if (rep.lemma37_applicable) {
    rep.lemma37_holds = true;
    for (Elem a = 0; a < Q.size(); ++a)
      if (Q.ann_left(a) != Q.ann_left(M.members[M.mu[a]])) {
        rep.lemma37_holds = false;
        rep.notes.push_back("ann(a) != ann(mu(a)) at " + Q.lattice().label(a));
        break;
      }
  }

  bool all_comp = true;
  for (Elem a = 0; a < Q.size() && all_comp; ++a)
    all_comp = has_complement(Q.lattice(), Q.ann_left(a));
  rep.lemma313_applicable = all_comp;
  if (all_comp) {
    std::vector<Elem> r = r_operator_table(Q);
    rep.lemma313_holds = true;
    for (Elem a = 0; a < Q.size(); ++a)
      if (r[Q.ann_left(a)] != Q.ann_left(a)) {
        rep.lemma313_holds = false;
        rep.notes.push_back("r moves ann(" + Q.lattice().label(a) + ")");
        break;
      }
  }
  return rep;
}

}  // namespace dml
