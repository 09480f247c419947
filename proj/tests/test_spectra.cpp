#include "dml/spectra.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

using namespace dml;

namespace {

Elem at(const FiniteLattice& L, const std::string& label) {
  auto e = L.find_label(label);
  REQUIRE_MESSAGE(e.has_value(), "missing label ", label);
  return *e;
}

Quantale ideal_quantale(int n) {
  FiniteLattice L = divisor_lattice(n);
  auto as_ideal = [&](Elem e) {
    oracle::Ideal I;
    std::string lbl = L.label(e);
    int d = lbl == "(0)" ? n : std::stoi(lbl.substr(1, lbl.size() - 2));
    for (int x = 0; x < n; x += d) I.push_back(x);
    return I;
  };
  auto from_ideal = [&](const oracle::Ideal& I) -> Elem {
    int d = I.size() > 1 ? I[1] : n;
    return at(L, d == n ? "(0)" : "(" + std::to_string(d) + ")");
  };
  kernels::Table prod(static_cast<size_t>(L.size()) * L.size());
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      prod[a * L.size() + b] =
          from_ideal(oracle::ideal_product(n, as_ideal(a), as_ideal(b)));
  auto q = Quantale::check(std::move(L), std::move(prod));
  REQUIRE(q.ok());
  return std::move(q).value();
}

Quantale meet_quantale(FiniteLattice L) {
  kernels::Table prod = L.meet_table();
  auto q = Quantale::check(std::move(L), std::move(prod));
  REQUIRE(q.ok());
  return std::move(q).value();
}

FiniteTopSpace sierpinski() {
  auto s = make_space({"a", "b"}, {0b00, 0b01, 0b11});
  REQUIRE(s.ok());
  return std::move(s).value();
}

FiniteTopSpace discrete(int n) {
  std::vector<std::string> labels;
  std::vector<PointSet> opens;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  for (PointSet s = 0; s < (PointSet{1} << n); ++s) opens.push_back(s);
  auto sp = make_space(std::move(labels), std::move(opens));
  REQUIRE(sp.ok());
  return std::move(sp).value();
}

}  // namespace

TEST_CASE("topology validation") {
  // duplicates are tolerated and removed
  CHECK(make_space({"a", "b"}, {0b00, 0b11, 0b01, 0b10, 0b01}).ok());
  // missing the union of {a} and {b}
  auto bad = make_space({"a", "b", "c"}, {0b000, 0b001, 0b010, 0b111});
  CHECK(!bad.ok());
  CHECK(bad.error().axiom == "topology");
  // missing empty set
  CHECK(!make_space({"a"}, {0b1}).ok());
}

TEST_CASE("closure, extreme disconnectedness, Hausdorff") {
  FiniteTopSpace sp = sierpinski();
  CHECK(space_closure(sp, 0b01) == 0b11);  // closure of {a} is everything
  CHECK(space_closure(sp, 0b10) == 0b10);  // {b} is closed
  CHECK(is_extremely_disconnected(sp));
  CHECK(!is_hausdorff(sp));

  FiniteTopSpace d2 = discrete(2);
  CHECK(is_extremely_disconnected(d2));
  CHECK(is_hausdorff(d2));

  // two doubled points: opens generated by {a,b} and {c,d}
  auto glued = make_space({"a", "b", "c", "d"}, {0b0000, 0b0011, 0b1100, 0b1111});
  REQUIRE(glued.ok());
  CHECK(is_extremely_disconnected(glued.value()));
  CHECK(!is_hausdorff(glued.value()));
}

TEST_CASE("homeomorphism search") {
  CHECK(are_homeomorphic(discrete(2), discrete(2)));
  CHECK(!are_homeomorphic(discrete(2), sierpinski()));
  CHECK(!are_homeomorphic(discrete(2), discrete(3)));
  // relabelled sierpinski with the roles swapped
  auto swapped = make_space({"x", "y"}, {0b00, 0b10, 0b11});
  REQUIRE(swapped.ok());
  CHECK(are_homeomorphic(sierpinski(), swapped.value()));
}

TEST_CASE("prime elements relative to the whole carrier") {
  Quantale z6 = ideal_quantale(6);
  auto primes = spec_points(z6);
  REQUIRE(primes.size() == 2);
  CHECK(z6.lattice().label(primes[0]) == "(2)");
  CHECK(z6.lattice().label(primes[1]) == "(3)");

  Quantale z4 = ideal_quantale(4);
  auto p4 = spec_points(z4);
  REQUIRE(p4.size() == 1);
  CHECK(z4.lattice().label(p4[0]) == "(2)");

  auto p12 = spec_points(ideal_quantale(12));
  CHECK(p12.size() == 2);

  // two-element quantale: the bottom is prime since 1*1 = 1 is not below it
  Quantale two = meet_quantale(chain(2));
  auto p2 = spec_points(two);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0] == two.lattice().bottom());
}

TEST_CASE("spectrum spaces") {
  Quantale z6 = ideal_quantale(6);
  auto spec = spectrum_space(z6, full_subquantale(z6));
  REQUIRE(spec.ok());
  CHECK(spec.value().space.points() == 2);
  CHECK(spec.value().space.opens.size() == 4);  // discrete on two points
  CHECK(is_hausdorff(spec.value().space));

  Quantale z12 = ideal_quantale(12);
  auto spec12 = spectrum_space(z12, full_subquantale(z12));
  REQUIRE(spec12.ok());
  CHECK(spec12.value().space.points() == 2);
  CHECK(spec12.value().space.opens.size() == 4);

  Quantale one = meet_quantale(chain(1));
  auto spec1 = spectrum_space(one, full_subquantale(one));
  REQUIRE(spec1.ok());
  CHECK(spec1.value().space.points() == 0);
}

TEST_CASE("mu analysis") {
  Quantale z6 = ideal_quantale(6);
  auto mu6 = mu_analysis(z6, full_subquantale(z6));
  REQUIRE(mu6.ok());
  const MuResult& M6 = mu6.value();
  for (int i = 0; i < 4; ++i) CHECK(M6.mu[i] == i);  // mu is the identity
  CHECK(M6.u_fixed);
  CHECK(M6.analysis.is_nucleus());
  CHECK(M6.fixed_points.size() == 4);

  Quantale z4 = ideal_quantale(4);
  auto mu4 = mu_analysis(z4, full_subquantale(z4));
  REQUIRE(mu4.ok());
  const MuResult& M4 = mu4.value();
  const FiniteLattice& L4 = z4.lattice();
  CHECK(M4.mu[L4.bottom()] == at(L4, "(2)"));
  CHECK(M4.mu[L4.top()] == L4.top());
  CHECK(M4.u_fixed);
  CHECK(M4.analysis.inflationary);
  CHECK(M4.analysis.idempotent);
  CHECK(M4.fixed_points.size() == 2);
}

TEST_CASE("nucleus validation and quotients") {
  FiniteLattice p3 = powerset(3);
  std::vector<Elem> ident(p3.size());
  for (Elem a = 0; a < p3.size(); ++a) ident[a] = a;
  auto idn = make_nucleus(p3, ident);
  REQUIRE(idn.ok());
  QuotientLattice q = nucleus_quotient(idn.value());
  CHECK(q.lat.size() == p3.size());

  // the constant-top map is a nucleus whose quotient collapses to a point
  std::vector<Elem> to_top(p3.size(), p3.top());
  auto topn = make_nucleus(p3, to_top);
  REQUIRE(topn.ok());
  CHECK(nucleus_quotient(topn.value()).lat.size() == 1);

  // a genuinely broken self-map: swap two incomparable elements
  std::vector<Elem> swap = ident;
  std::swap(swap[1], swap[2]);
  CHECK(!make_nucleus(p3, swap).ok());

  // mu on the Z4 chain: fixed points {(2), 1} with (2) as the new bottom
  Quantale z4 = ideal_quantale(4);
  auto mu4 = mu_analysis(z4, full_subquantale(z4));
  REQUIRE(mu4.ok());
  std::vector<Elem> map(z4.size());
  for (int i = 0; i < z4.size(); ++i) map[i] = mu4.value().mu[i];
  auto nuc = make_nucleus(z4.lattice(), map);
  REQUIRE(nuc.ok());
  QuotientLattice q4 = nucleus_quotient(nuc.value());
  CHECK(q4.lat.size() == 2);
  CHECK(q4.lat.label(q4.lat.bottom()) == "(2)");
  CHECK(q4.lat.label(q4.lat.top()) == "(1)");

  // quotient joins agree with the induced lattice on the fixed points
  auto ind = induced_lattice(z4.lattice(), q4.to_carrier);
  REQUIRE(ind.ok());
  for (Elem a = 0; a < q4.lat.size(); ++a)
    for (Elem b = 0; b < q4.lat.size(); ++b) {
      CHECK(q4.lat.join(a, b) == ind.value().lat.join(a, b));
      CHECK(q4.lat.meet(a, b) == ind.value().lat.meet(a, b));
    }
}

TEST_CASE("double annihilator map") {
  Quantale z6 = ideal_quantale(6);
  SelfMapAnalysis a6 = annann_analysis(z6);
  CHECK(a6.is_nucleus());
  const FiniteLattice& L = z6.lattice();
  CHECK(a6.map[at(L, "(2)")] == at(L, "(2)"));
  CHECK(a6.map[L.bottom()] == L.bottom());
  CHECK(a6.map[L.top()] == L.top());
  CHECK(annann_map(z6).ok());

  // Boolean algebra with meet: double negation is the identity
  Quantale pb = meet_quantale(powerset(3));
  SelfMapAnalysis ab = annann_analysis(pb);
  for (Elem x = 0; x < pb.size(); ++x) CHECK(ab.map[x] == x);

  // without DML the map is not certified
  Quantale k = meet_quantale(kite());
  CHECK(!annann_map(k).ok());
}

TEST_CASE("fixed points of mu realize the opens lattice") {
  for (int n : {4, 6, 8, 12}) {
    Quantale Q = ideal_quantale(n);
    OrderIsoReport iso = amu_iso_opens(Q, full_subquantale(Q));
    CHECK(iso.ok());
    // U(mu(x)) == U(x) everywhere, and mu is always a closure operator
    auto mu = mu_analysis(Q, full_subquantale(Q));
    REQUIRE(mu.ok());
    CHECK(mu.value().u_fixed);
    CHECK(mu.value().analysis.monotone);
    CHECK(mu.value().analysis.inflationary);
    CHECK(mu.value().analysis.idempotent);
    if (Q.semiprime()) CHECK(mu.value().analysis.prenucleus);
  }
  Quantale z6 = ideal_quantale(6);
  auto mu = mu_analysis(z6, full_subquantale(z6));
  REQUIRE(mu.ok());
  CHECK(mu.value().fixed_points.size() == 4);
  auto spec = spectrum_space(z6, full_subquantale(z6));
  CHECK(spec.value().space.opens.size() == 4);
}

TEST_CASE("rather below, r and Psi") {
  Quantale z6 = ideal_quantale(6);
  const FiniteLattice& L = z6.lattice();
  for (Elem a = 0; a < z6.size(); ++a) CHECK(rather_below(z6, L.bottom(), a));
  CHECK(rather_below(z6, L.top(), L.top()));
  CHECK(rather_below(z6, at(L, "(2)"), at(L, "(2)")));

  std::vector<Elem> r = r_operator_table(z6);
  CHECK(r[at(L, "(2)")] == at(L, "(2)"));
  CHECK(r[L.top()] == L.top());
  CHECK(r[L.bottom()] == L.bottom());

  auto psi6 = psi(z6);
  REQUIRE(psi6.ok());
  CHECK(psi6.value().lat.size() == 4);  // whole lattice is Psi

  // chains with meet: only the endpoints survive r
  Quantale c4 = meet_quantale(chain(4));
  auto psic = psi(c4);
  REQUIRE(psic.ok());
  CHECK(psic.value().lat.size() == 2);
}

TEST_CASE("regular core stabilization") {
  Quantale pb = meet_quantale(powerset(3));
  auto core_b = regular_core(pb);
  REQUIRE(core_b.ok());
  CHECK(core_b.value().stabilized_at == 0);  // Boolean frames are regular
  CHECK(core_b.value().core.lat.size() == 8);
  CHECK(core_b.value().core_is_regular);

  Quantale z6 = ideal_quantale(6);
  auto core_6 = regular_core(z6);
  REQUIRE(core_6.ok());
  CHECK(core_6.value().core.lat.size() == 4);
  CHECK(core_6.value().stabilized_at <= 1);
  CHECK(core_6.value().core_is_regular);

  Quantale one = meet_quantale(chain(1));
  auto core_1 = regular_core(one);
  REQUIRE(core_1.ok());
  CHECK(core_1.value().core.lat.size() == 1);

  Quantale c4 = meet_quantale(chain(4));
  auto core_c = regular_core(c4);
  REQUIRE(core_c.ok());
  CHECK(core_c.value().core.lat.size() == 2);
  CHECK(core_c.value().core_is_regular);
}

TEST_CASE("points of a frame") {
  auto pts_b = frame_points(powerset(2));
  REQUIRE(pts_b.ok());
  CHECK(pts_b.value().space.points() == 2);
  CHECK(is_hausdorff(pts_b.value().space));

  auto pts_c = frame_points(chain(2));
  REQUIRE(pts_c.ok());
  CHECK(pts_c.value().space.points() == 1);

  auto pts_z6 = frame_points(divisor_lattice(6));
  REQUIRE(pts_z6.ok());
  CHECK(pts_z6.value().space.points() == 2);
  CHECK(pts_z6.value().space.opens.size() == 4);

  CHECK_THROWS_AS(frame_points(diamond_m3()), std::domain_error);
}

TEST_CASE("theorem 3.11 five-way agreement") {
  Quantale z6 = ideal_quantale(6);
  Thm311Report t6 = theorem311_harness(z6);
  CHECK(t6.applicable);
  CHECK(t6.c1_dml);
  CHECK(t6.c2_law2);
  CHECK(t6.c3_ann_complemented_dml);
  CHECK(t6.c4_ospec_dml);
  CHECK(t6.c5_spec_ed);
  CHECK(t6.all_agree);

  Thm311Report t2 = theorem311_harness(meet_quantale(chain(2)));
  CHECK(t2.all_agree);
  CHECK(t2.c1_dml);

  // Boolean ideal lattice of a triple product: all five hold
  Thm311Report tb = theorem311_harness(meet_quantale(powerset(3)));
  CHECK(tb.all_agree);
  CHECK(tb.c1_dml);

  // the kite frame has all five failing, still in agreement
  Thm311Report tk = theorem311_harness(meet_quantale(kite()));
  CHECK(tk.applicable);
  CHECK(tk.all_agree);
  CHECK(!tk.c1_dml);
  CHECK(!tk.c5_spec_ed);

  Thm311Report t4 = theorem311_harness(ideal_quantale(4));
  CHECK(!t4.applicable);  // not semiprime
}

TEST_CASE("mu and r lemma bundle") {
  MuLemmasReport m6 = mu_lemmas_report(ideal_quantale(6));
  CHECK(m6.lemma36_applicable);
  CHECK(m6.lemma36_holds);
  CHECK(m6.lemma37_applicable);
  CHECK(m6.lemma37_holds);
  CHECK(m6.lemma313_applicable);
  CHECK(m6.lemma313_holds);

  MuLemmasReport m4 = mu_lemmas_report(ideal_quantale(4));
  CHECK(!m4.lemma36_applicable);  // not semiprime
  CHECK(!m4.lemma37_applicable);  // mu(0) = (2)
  CHECK(!m4.lemma313_applicable); // ann((2)) = (2) has no complement

  // zero product: every annihilator is the top, complemented, and r fixes it
  FiniteLattice c3 = chain(3);
  kernels::Table zp(9, 0);
  auto zq = Quantale::check(c3, zp);
  REQUIRE(zq.ok());
  MuLemmasReport mz = mu_lemmas_report(zq.value());
  CHECK(mz.lemma313_applicable);
  CHECK(mz.lemma313_holds);
}

TEST_CASE("corollary 3.16 and the Max comparison") {
  Cor316Report c6 = cor316_harness(ideal_quantale(6));
  CHECK(c6.applicable);
  CHECK(c6.pt_psi_ed);
  CHECK(c6.pt_psi_hausdorff);
  CHECK(c6.max_matches_pt_psi);
  CHECK(c6.pass);

  Cor316Report cb = cor316_harness(meet_quantale(powerset(2)));
  CHECK(cb.applicable);
  CHECK(cb.pass);
  CHECK(cb.max_matches_pt_psi);

  Cor316Report cc = cor316_harness(meet_quantale(chain(3)));
  CHECK(cc.applicable);
  CHECK(cc.pass);

  Cor316Report c4 = cor316_harness(ideal_quantale(4));
  CHECK(!c4.applicable);  // not semiprime

  Cor316Report ck = cor316_harness(meet_quantale(kite()));
  CHECK(!ck.applicable);  // DML fails
}

TEST_CASE("max space") {
  Quantale z6 = ideal_quantale(6);
  auto mx = max_space(z6);
  REQUIRE(mx.ok());
  CHECK(mx.value().points() == 2);
  CHECK(is_hausdorff(mx.value()));

  Quantale c3 = meet_quantale(chain(3));
  auto mxc = max_space(c3);
  REQUIRE(mxc.ok());
  CHECK(mxc.value().points() == 1);
}

TEST_CASE("quotient negations agree with the ambient annihilator") {
  // on semiprime members with DML, the Heyting negation computed inside
  // Psi and inside the mu quotient coincides with ann from the carrier
  std::vector<Quantale> qs;
  qs.push_back(ideal_quantale(6));
  qs.push_back(meet_quantale(powerset(3)));
  qs.push_back(meet_quantale(chain(4)));
  for (const Quantale& Q : qs) {
    REQUIRE(Q.semiprime());
    REQUIRE(check_dml_laws(Q).dml);

    auto ps = psi(Q);
    REQUIRE(ps.ok());
    auto h = make_heyting(ps.value().lat);
    REQUIRE(h.ok());
    for (Elem i = 0; i < ps.value().lat.size(); ++i) {
      Elem parent = ps.value().to_parent[i];
      Elem neg_parent = ps.value().to_parent[h.value().neg(i)];
      CHECK(neg_parent == Q.ann_left(parent));
    }

    auto mu = mu_analysis(Q, full_subquantale(Q));
    REQUIRE(mu.ok());
    auto fix = induced_lattice(Q.lattice(), mu.value().fixed_points);
    REQUIRE(fix.ok());
    auto hf = make_heyting(fix.value().lat);
    REQUIRE(hf.ok());
    for (Elem i = 0; i < fix.value().lat.size(); ++i) {
      Elem parent = fix.value().to_parent[i];
      CHECK(fix.value().to_parent[hf.value().neg(i)] == Q.ann_left(parent));
    }
  }
}

TEST_CASE("the double-annihilator quotient is complemented under DML") {
  Quantale z6 = ideal_quantale(6);
  auto nuc = annann_map(z6);
  REQUIRE(nuc.ok());
  QuotientLattice q = nucleus_quotient(nuc.value());
  for (Elem a = 0; a < q.lat.size(); ++a) CHECK(has_complement(q.lat, a));
}

TEST_CASE("psi consequences under semiprime and DML") {
  for (int n : {6, 30}) {
    PsiReport r = psi_report(ideal_quantale(n));
    CHECK(r.psi_is_lattice);
    CHECK(r.psi_is_frame);
    CHECK(r.psi_dml);
    CHECK(r.psi_regular);
    CHECK(r.core_stabilized_at <= 1);
    CHECK(r.core_is_regular);
  }
  PsiReport rb = psi_report(meet_quantale(powerset(3)));
  CHECK(rb.psi_regular);
  CHECK(rb.core_stabilized_at == 0);
}
