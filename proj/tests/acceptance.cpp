// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Structures come from the builtin corpus plus a few purpose-built
// negative controls.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dml/corpus.hpp"
#include "dml/report.hpp"
#include "dml/spectra.hpp"

using namespace dml;

namespace {

struct Ctx {
  std::vector<CorpusEntry> entries;
  std::vector<BuiltEntry> built;

  // every two-sided quantale in the corpus: fully invariant quantales of
  // the ring/module entries plus the hand-built quantale entries
  std::vector<std::pair<std::string, Quantale>> iqs;
  std::vector<std::pair<std::string, const FiniteModule*>> modules;
};

Ctx load() {
  Ctx ctx;
  ctx.entries = builtin_corpus();
  for (const auto& e : ctx.entries) ctx.built.push_back(build_entry(e, Bounds{}, "."));
  for (size_t i = 0; i < ctx.entries.size(); ++i) {
    if (ctx.built[i].module) {
      ctx.modules.emplace_back(ctx.entries[i].id, &*ctx.built[i].module);
      auto fiq = fi_quantale(*ctx.built[i].module);
      if (fiq.ok()) ctx.iqs.emplace_back(ctx.entries[i].id, std::move(fiq).value().q);
    } else if (ctx.built[i].quantale->two_sided()) {
      ctx.iqs.emplace_back(ctx.entries[i].id, *ctx.built[i].quantale);
    }
  }
  return ctx;
}

bool check(bool cond, std::string& log, const std::string& what) {
  if (!cond) log += "    failed: " + what + "\n";
  return cond;
}

const FiniteModule& module_of(const Ctx& ctx, const std::string& id) {
  for (const auto& [mid, m] : ctx.modules)
    if (mid == id) return *m;
  throw std::runtime_error("no module " + id);
}

// 1. the product of a line with the whole plane is the whole plane, and the
// line is not fully invariant
bool criterion1(const Ctx& ctx, std::string& log) {
  const FiniteModule& klein = module_of(ctx, "klein");
  int line = klein.submodule_of_label("((1,0))");
  bool ok = check(line >= 0, log, "line submodule present");
  ok &= check(bican_product(klein, line, klein.top_index()) == klein.top_index(),
              log, "line product with the plane is the plane");
  ok &= check(!klein.is_fully_invariant(line), log, "line is not fully invariant");
  return ok;
}

bool criterion2(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, Q] : ctx.iqs) {
    Prop34Report r = prop34_harness(Q);
    ok &= check(r.all_agree, log, "prop34 agreement on " + id);
  }
  return ok;
}

bool criterion3(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, Q] : ctx.iqs) {
    if (!Q.semiprime()) continue;
    Thm311Report r = theorem311_harness(Q);
    ok &= check(r.applicable && r.all_agree, log, "thm311 agreement on " + id);
  }
  return ok;
}

bool criterion4(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, Q] : ctx.iqs) {
    if (Q.semiprime()) {
      ok &= check(lemma33_check(Q), log, "ann(ab)=ann(a^b) on " + id);
      ok &= check(lemma38_check(Q), log, "ab=0 symmetry on " + id);
    }
    MuLemmasReport m = mu_lemmas_report(Q);
    if (m.lemma36_applicable)
      ok &= check(m.lemma36_holds, log, "mu fixes annihilators on " + id);
    if (m.lemma37_applicable)
      ok &= check(m.lemma37_holds, log, "ann(a)=ann(mu(a)) on " + id);
    if (m.lemma313_applicable)
      ok &= check(m.lemma313_holds, log, "r fixes annihilators on " + id);
  }
  return ok;
}

bool criterion5(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, Q] : ctx.iqs) {
    SubQuantale B = full_subquantale(Q);
    if (!B.star) continue;
    ok &= check(amu_iso_opens(Q, B).ok(), log, "A_mu iso opens on " + id);
  }
  // the large spectrum side, where the whole submodule lattice is a quantale
  for (const auto& [id, M] : ctx.modules) {
    auto lam = lambda_quantale(*M);
    if (!lam.ok()) continue;
    std::vector<Elem> fi(M->fi_submodules().begin(), M->fi_submodules().end());
    auto B = make_subquantale(lam.value(), fi);
    if (!B.ok() || !B.value().star) continue;
    ok &= check(amu_iso_opens(lam.value(), B.value()).ok(), log,
                "large spectrum iso on " + id);
  }
  // derived anchor: four fixed points onto four opens for Z6
  for (const auto& [id, Q] : ctx.iqs) {
    if (id != "z6") continue;
    auto mu = mu_analysis(Q, full_subquantale(Q));
    ok &= check(mu.ok() && mu.value().fixed_points.size() == 4, log,
                "Z6 has four mu-fixed points");
    auto spec = spectrum_space(Q, full_subquantale(Q));
    ok &= check(spec.ok() && spec.value().space.opens.size() == 4, log,
                "Z6 spectrum has four opens");
  }
  return ok;
}

bool criterion6(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, Q] : ctx.iqs) {
    if (!Q.semiprime() || !check_dml_laws(Q).dml) continue;
    PsiReport r = psi_report(Q);
    ok &= check(r.psi_is_frame, log, "Psi is a frame on " + id);
    ok &= check(r.psi_dml, log, "Psi satisfies DML on " + id);
    ok &= check(r.psi_regular, log, "Psi is regular on " + id);
    ok &= check(r.core_stabilized_at <= 1, log, "core stabilizes by stage 1 on " + id);
    ok &= check(r.core_is_regular, log, "core is a regular frame on " + id);
  }
  return ok;
}

bool criterion7(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, Q] : ctx.iqs) {
    Cor316Report r = cor316_harness(Q);
    if (!r.applicable) continue;
    ok &= check(r.pt_psi_ed, log, "pt Psi extremely disconnected on " + id);
    ok &= check(r.pt_psi_hausdorff, log, "pt Psi Hausdorff on " + id);
  }
  return ok;
}

bool criterion8(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, M] : ctx.modules) {
    Thm514Report r = theorem514_harness(*M);
    if (!r.applicable) continue;
    ok &= check(r.all_agree, log, "thm514 agreement on " + id);
  }
  auto common_is = [&](const std::string& id, bool expected) {
    Thm514Report r = theorem514_harness(module_of(ctx, id));
    return r.applicable && r.all_agree && r.common.has_value() &&
           *r.common == expected;
  };
  ok &= check(common_is("z6", true), log, "Z6 satisfies all six conditions");
  ok &= check(common_is("z4", false), log, "Z4 fails all six conditions");
  ok &= check(common_is("m2f2", true), log, "M2(F2) satisfies all six conditions");
  ok &= check(common_is("t2f2", false), log, "T2(F2) fails all six conditions");
  return ok;
}

bool criterion9(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, M] : ctx.modules) {
    Prop62Report r = prop62_properties(*M);
    ok &= check(r.item1 && r.item2 && r.item3 && r.item4, log,
                "prop62 items 1-4 on " + id);
    if (r.gate5) ok &= check(r.item5, log, "prop62 item 5 on " + id);
    if (r.gate6) ok &= check(r.item6, log, "prop62 item 6 on " + id);
  }
  const FiniteModule& z12 = module_of(ctx, "z12");
  int two = z12.submodule_of_label("(2)");
  int three = z12.submodule_of_label("(3)");
  ok &= check(z12.submodule_lattice().join(colon(z12, two, three),
                                           colon(z12, three, two)) ==
                  z12.top_index(),
              log, "Z12 residual pair sums to everything");
  return ok;
}

bool criterion10(const Ctx& ctx, std::string& log) {
  bool ok = true;
  for (const auto& [id, M] : ctx.modules) {
    Prop63Report r = prop63_harness(*M);
    ok &= check(r.sdml2_implies_sdml, log, "sdml2 implies sdml on " + id);
    if (r.gate_equiv)
      ok &= check(r.equivalent, log, "sdml variants agree on " + id);
    if (r.gate_distr && r.sdml2)
      ok &= check(is_distributive(M->fi_lattice()), log,
                  "sdml2 member has a distributive lattice on " + id);
  }
  return ok;
}

bool criterion11(const Ctx& ctx, std::string& log) {
  bool ok = true;
  const FiniteModule& z4 = module_of(ctx, "z4");
  auto w4 = semiprime_module_witness(z4);
  ok &= check(w4 && z4.submodule_label(*w4) == "(2)", log,
              "Z4 witness is the ideal (2)");
  const FiniteModule& t2 = module_of(ctx, "t2f2");
  auto wt = semiprime_module_witness(t2);
  ok &= check(wt.has_value(), log, "T2(F2) has a square-zero witness");
  if (wt) {
    // the witness squares to zero
    ok &= check(bican_product(t2, *wt, *wt) == t2.zero_index(), log,
                "T2(F2) witness squares to zero");
  }

  ok &= check(!is_modular(pentagon_n5()), log, "pentagon rejected by modularity");

  // product table with m*m = 1 on the chain is rejected at construction
  FiniteLattice c3 = chain(3);
  kernels::Table prod(9, 0);
  prod[1 * 3 + 1] = 2;
  ok &= check(!Quantale::check(c3, prod).ok(), log,
              "product above the meet rejected");

  // and a monotone distributive one failing only two-sidedness
  kernels::Table prod2(9, 0);
  prod2[1 * 3 + 1] = 1;
  prod2[1 * 3 + 2] = 2;
  prod2[2 * 3 + 1] = 1;
  prod2[2 * 3 + 2] = 2;
  auto two_violation = Quantale::check(c3, prod2);
  ok &= check(!two_violation.ok() && two_violation.error().axiom == "two_sided",
              log, "two-sidedness violation reported");
  return ok;
}

bool criterion12(const Ctx& ctx, std::string& log) {
  auto r1 = run_harnesses(ctx.entries, Bounds{}, HarnessSelection{}, 2, ".");
  auto r2 = run_harnesses(ctx.entries, Bounds{}, HarnessSelection{}, 1, ".");
  bool ok = check(stable_report_text(r1, "builtin") ==
                      stable_report_text(r2, "builtin"),
                  log, "stable sections byte-identical");
  ok &= check(report_exit_code(r1) == 0, log, "builtin corpus run is clean");
  return ok;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    double budget_s;  // 0 = untimed
    std::function<bool(const Ctx&, std::string&)> fn;
  };
  const std::vector<Item> items = {
      {1, "submodule product example on the rank-two plane", 1.0, criterion1},
      {2, "prop 3.4 three-way agreement across the corpus", 10.0, criterion2},
      {3, "thm 3.11 five-way agreement on semiprime members", 30.0, criterion3},
      {4, "annihilator lemmas where their hypotheses hold", 0.0, criterion4},
      {5, "mu-fixed points realize the spectrum opens", 0.0, criterion5},
      {6, "Psi consequences and one-stage regular cores", 0.0, criterion6},
      {7, "points of Psi extremely disconnected Hausdorff", 0.0, criterion7},
      {8, "thm 5.14 six-way agreement with pinned anchors", 60.0, criterion8},
      {9, "residual laws of prop 6.2 with gated items", 0.0, criterion9},
      {10, "sdml hierarchy of prop 6.3", 0.0, criterion10},
      {11, "negative controls fail in the expected way", 0.0, criterion11},
      {12, "byte-identical stable report sections", 0.0, criterion12},
  };

  Ctx ctx = load();
  int failures = 0;
  for (const auto& item : items) {
    std::string log;
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = item.fn(ctx, log);
    } catch (const std::exception& e) {
      log += std::string("    exception: ") + e.what() + "\n";
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (item.budget_s > 0 && secs > item.budget_s) {
      pass = false;
      log += "    over time budget\n";
    }
    std::printf("%s criterion %2d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", item.id,
                item.name, secs);
    if (!log.empty()) std::fputs(log.c_str(), stdout);
    if (!pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failures,
              items.size());
  return failures == 0 ? 0 : 1;
}
