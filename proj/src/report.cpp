#include "dml/report.hpp"

#include <omp.h>

#include <chrono>
#include <ostream>
#include <sstream>

#include "dml/spectra.hpp"

namespace dml {

namespace {

const char* b2s(bool v) { return v ? "true" : "false"; }

struct EntryRunner {
  const CorpusEntry& entry;
  const Bounds& bounds;
  const HarnessSelection& sel;
  const std::string& base_dir;
  RunReport& rep;
  std::chrono::steady_clock::time_point mark;

  void tick(const std::string& label) {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - mark).count();
    rep.timings_ms.emplace_back(label, ms);
    mark = now;
  }

  void put(const std::string& key, const std::string& value) {
    rep.stable.emplace_back(key, value);
  }
  // A key evaluated twice (module side and quantale side) must agree;
  // matching repeats are folded into one line.
  void put_bool(const std::string& key, bool value) {
    auto it = rep.predicates.find(key);
    if (it != rep.predicates.end()) {
      if (it->second != value)
        disagree("predicate " + key + " differs between evaluation routes");
      return;
    }
    rep.stable.emplace_back(key, b2s(value));
    rep.predicates[key] = value;
  }
  void disagree(const std::string& what) { rep.disagreements.push_back(what); }

  void run() {
    mark = std::chrono::steady_clock::now();
    BuiltEntry built;
    try {
      built = build_entry(entry, bounds, base_dir);
    } catch (const ResourceError& e) {
      rep.skipped = true;
      rep.skip_reason = e.what();
      return;
    } catch (const ValidationError& e) {
      rep.build_error = true;
      rep.error_text = e.what();
      rep.disagreements.push_back("entry failed validation");
      return;
    }
    tick("build");
    if (built.module)
      run_module(*built.module);
    else
      run_quantale(*built.quantale, "q");
    check_pins();
  }

  // Quantale-level harnesses; prefix distinguishes the fully invariant
  // quantale of a module entry from a standalone quantale entry.
  void run_quantale(const Quantale& Q, const std::string& p) {
    put(p + "_size", std::to_string(Q.size()));
    put_bool(p + "_two_sided", Q.two_sided());
    put_bool("semiprime", Q.semiprime());
    if (auto w = Q.semiprime_witness())
      put(p + "_semiprime_witness", Q.lattice().label(*w));
    put_bool(p + "_modular", is_modular(Q.lattice()));
    put_bool(p + "_frame", is_frame(Q.lattice()));

    if (sel.laws) {
      DmlLaws laws = check_dml_laws(Q);
      put_bool("law1", laws.law1);
      put_bool("law2", laws.law2);
      put_bool("dml", laws.dml);
      if (!laws.law1) disagree("law1 failed: product table is inconsistent");
      if (laws.dml_witness)
        put(p + "_dml_witness", "(" + Q.lattice().label(laws.dml_witness->first) +
                                    "," + Q.lattice().label(laws.dml_witness->second) +
                                    ")");
      put_bool("normal", is_normal(Q));
      if (Q.two_sided()) {
        Prop34Report p34 = prop34_harness(Q);
        put_bool("prop34_c1", p34.semiprime_and_dml);
        put_bool("prop34_c2", p34.law2_all_pairs);
        put_bool("prop34_c3", p34.ann_complemented_and_dml);
        put_bool("prop34_agree", p34.all_agree);
        if (!p34.all_agree) {
          std::string msg = "prop34 conditions disagree";
          for (const auto& n : p34.notes) msg += "; " + n;
          disagree(msg);
        }
      }
      if (Q.semiprime()) {
        auto w33 = lemma33_violation(Q);
        put_bool("lemma33", !w33);
        if (w33)
          disagree("ann(ab) != ann(a^b) at (" + Q.lattice().label(w33->first) + "," +
                   Q.lattice().label(w33->second) + ")");
        auto w38 = lemma38_violation(Q);
        put_bool("lemma38", !w38);
        if (w38)
          disagree("ab=0 without ba=0, a^b=0 at (" + Q.lattice().label(w38->first) +
                   "," + Q.lattice().label(w38->second) + ")");
      }
      tick(p + "_laws");
    }

    if (sel.spectra && Q.two_sided()) {
      auto spec = spectrum_space(Q, full_subquantale(Q));
      if (spec.ok()) {
        put(p + "_spec_points", std::to_string(spec.value().points.size()));
        put(p + "_spec_opens", std::to_string(spec.value().space.opens.size()));
        put_bool(p + "_spec_ed", is_extremely_disconnected(spec.value().space));
        put_bool(p + "_spec_hausdorff", is_hausdorff(spec.value().space));
      } else {
        put(p + "_spec_points", "invalid");
        disagree("spectrum topology invalid: " + spec.error().to_string());
      }

      if (Q.semiprime()) {
        Thm311Report t = theorem311_harness(Q);
        put(p + "_thm311_conditions", cond_string({t.c1_dml, t.c2_law2,
                                                   t.c3_ann_complemented_dml,
                                                   t.c4_ospec_dml, t.c5_spec_ed}));
        put_bool("thm311_agree", t.all_agree);
        if (!t.all_agree) {
          std::string msg = "thm311 conditions disagree";
          for (const auto& n : t.notes) msg += "; " + n;
          disagree(msg);
        }
      }

      MuLemmasReport ml = mu_lemmas_report(Q);
      report_gated("lemma36", ml.lemma36_applicable, ml.lemma36_holds);
      report_gated("lemma37", ml.lemma37_applicable, ml.lemma37_holds);
      report_gated("lemma313", ml.lemma313_applicable, ml.lemma313_holds);

      OrderIsoReport iso = amu_iso_opens(Q, full_subquantale(Q));
      put_bool("amu_iso", iso.ok());
      if (!iso.ok()) disagree("A_mu is not isomorphic to the spectrum opens");

      PsiReport psir = psi_report(Q);
      put_bool(p + "_psi_lattice", psir.psi_is_lattice);
      put_bool(p + "_psi_frame", psir.psi_is_frame);
      put_bool(p + "_psi_dml", psir.psi_dml);
      put_bool(p + "_psi_regular", psir.psi_regular);
      put(p + "_core_stage", std::to_string(psir.core_stabilized_at));
      put_bool(p + "_core_regular", psir.core_is_regular);
      DmlLaws laws = check_dml_laws(Q);
      if (Q.semiprime() && laws.dml) {
        if (!psir.psi_is_frame || !psir.psi_dml || !psir.psi_regular)
          disagree("Psi lacks the frame/DML/regularity consequences");
        if (psir.core_stabilized_at > 1) disagree("regular core needed extra stages");
        if (!psir.core_is_regular) disagree("regular core is not a regular frame");
      }

      Cor316Report c316 = cor316_harness(Q);
      put_bool(p + "_cor316_applicable", c316.applicable);
      if (c316.applicable) {
        put_bool("ptpsi_ed", c316.pt_psi_ed);
        put_bool("ptpsi_hausdorff", c316.pt_psi_hausdorff);
        put_bool("max_homeo_ptpsi", c316.max_matches_pt_psi);
        if (!c316.pass) disagree("pt Psi is not extremely disconnected Hausdorff");
      }
      tick(p + "_spectra");
    }
  }

  void report_gated(const std::string& key, bool applicable, bool holds) {
    put(key, applicable ? b2s(holds) : "skipped");
    if (applicable) {
      rep.predicates[key] = holds;
      if (!holds) disagree(key + " fails where its hypotheses hold");
    }
  }

  static std::string cond_string(std::initializer_list<bool> conds) {
    std::string s;
    for (bool c : conds) s += c ? '1' : '0';
    return s;
  }

  void run_module(const FiniteModule& M) {
    put("ring_order", std::to_string(M.ring().size()));
    put("module_order", std::to_string(M.size()));
    put("submodules", std::to_string(M.submodules().size()));
    put("fi_submodules", std::to_string(M.fi_submodules().size()));

    bool lam_modular = is_modular(M.submodule_lattice());
    put_bool("lambda_modular", lam_modular);
    if (!lam_modular) disagree("submodule lattice is not modular");
    put_bool("fi_distributive", is_distributive(M.fi_lattice()));

    auto fiq = fi_quantale(M);
    put_bool("fiq_valid", fiq.ok());
    if (!fiq.ok()) put("fiq_violation", fiq.error().to_string());
    tick("structure");

    put_bool("semiprime", is_semiprime_module(M));
    if (auto w = semiprime_module_witness(M))
      put("semiprime_witness", M.submodule_label(*w));
    put_bool("fi_baer", is_fi_baer(M));
    put_bool("fi_retractable", is_fi_retractable(M));
    put_bool("dml", module_dml(M));

    if (sel.sdml) {
      SdmlReport s = sdml_checks(M);
      put_bool("sdml", s.sdml);
      put_bool("sdml1", s.sdml1);
      put_bool("sdml2", s.sdml2);
      tick("sdml");
    }

    if (sel.modules) {
      PsiModuleReport pm = psi_module(M);
      put("psi_module_size", std::to_string(pm.fixed_points.size()));
      put_bool("psi_module_equal", pm.equal);
      if (entry.kind == "ring" && !pm.equal)
        disagree("Ler fixed points differ from the pointwise Psi description");

      Thm514Report t = theorem514_harness(M);
      put_bool("thm514_applicable", t.applicable);
      if (t.applicable) {
        put("thm514_conditions", cond_string({t.cond[0], t.cond[1], t.cond[2],
                                              t.cond[3], t.cond[4], t.cond[5]}));
        put_bool("thm514_agree", t.all_agree);
        if (t.common) put_bool("thm514_value", *t.common);
        if (!t.all_agree) {
          std::string msg = "thm514 conditions disagree";
          for (const auto& n : t.notes) msg += "; " + n;
          disagree(msg);
        }
      }
      tick("thm514");

      Prop62Report p62 = prop62_properties(M);
      put_bool("prop62_item1", p62.item1);
      put_bool("prop62_item2", p62.item2);
      put_bool("prop62_item3", p62.item3);
      put_bool("prop62_item4", p62.item4);
      report_gated("prop62_item5", p62.gate5, p62.item5);
      report_gated("prop62_item6", p62.gate6, p62.item6);
      if (!p62.item1 || !p62.item2 || !p62.item3 || !p62.item4) {
        std::string msg = "prop62 unconditional items fail";
        for (const auto& n : p62.notes) msg += "; " + n;
        disagree(msg);
      }

      ModuleLemmasReport lem = module_lemmas(M);
      report_gated("semiprimelemma", lem.semiprimelemma_applicable,
                   lem.semiprimelemma_holds);
      report_gated("annprodinter", lem.annprodinter_applicable,
                   lem.annprodinter_holds);
      report_gated("summand_fi", lem.summand_fi_applicable, lem.summand_fi_holds);
      put_bool("idem_central", lem.idem_holds);
      if (!lem.idem_holds) disagree("a fully invariant projection is not central");
      put_bool("semiprime_retractable", lem.retractable_implication_holds);
      if (!lem.retractable_implication_holds)
        disagree("semiprime member is not FI-retractable");

      if (auto bad = annihilator_postcondition_violation(M)) {
        put("ann_postconditions", *bad);
        disagree("annihilator postcondition: " + *bad);
      } else {
        put("ann_postconditions", "ok");
      }

      SpRealizationReport sp = sp_realizations(M);
      if (sp.built) {
        put_bool("sp_same_sets", sp.same_member_sets);
        put_bool("sp_isomorphic", sp.order_isomorphic);
      }
      tick("module_harnesses");
    }

    if (sel.sdml) {
      Prop63Report p63 = prop63_harness(M);
      put_bool("prop63_sdml2_implies_sdml", p63.sdml2_implies_sdml);
      report_gated("prop63_distributive", p63.gate_distr, p63.distributive_ok);
      report_gated("prop63_equivalent", p63.gate_equiv, p63.equivalent);
      if (!p63.sdml2_implies_sdml) disagree("sdml2 without sdml");

      AsanoReport as = asano_conditions(M);
      put_bool("asano_commutative", as.commutative);
      if (as.applicable) {
        put("asano_conditions",
            cond_string({as.cond3, as.cond4, as.cond5}));
        put_bool("asano_equivalent", as.equivalent);
        if (!as.equivalent) disagree("asano lattice conditions disagree");
      }
      tick("prop63");
    }

    if (fiq.ok()) {
      // annihilators computed through the quantale must match the module side
      bool ann_agree = true;
      for (int nfi : M.fi_submodules()) {
        int via_module = annihilator(M, nfi);
        Elem via_q = fiq.value().q.ann_left(M.fi_local(nfi));
        if (fiq.value().fi_subs[via_q] != via_module) {
          ann_agree = false;
          break;
        }
      }
      put_bool("ann_agree", ann_agree);
      if (!ann_agree) disagree("quantale annihilator disagrees with Ann");

      run_quantale(fiq.value().q, "fiq");
    }

    if (sel.spectra) {
      auto lam = lambda_quantale(M);
      put_bool("lambda_quantale_valid", lam.ok());
      if (lam.ok()) {
        std::vector<Elem> fi_elems;
        for (int nfi : M.fi_submodules()) fi_elems.push_back(nfi);
        auto B = make_subquantale(lam.value(), fi_elems);
        put_bool("lgspec_star", B.ok() && B.value().star);
        if (B.ok() && B.value().star) {
          put("lgspec_points",
              std::to_string(primes_relative(lam.value(), B.value()).size()));
          OrderIsoReport iso = amu_iso_opens(lam.value(), B.value());
          put_bool("lgspec_amu_iso", iso.ok());
          if (!iso.ok())
            disagree("mu-fixed points of the large spectrum miss its opens");
        }
      }
      tick("lgspec");
    }
  }

  void check_pins() {
    const bool full_selection = sel.laws && sel.spectra && sel.modules && sel.sdml;
    for (const auto& [key, want] : entry.expected) {
      auto it = rep.predicates.find(key);
      if (it == rep.predicates.end()) {
        // under a partial harness selection an unevaluated pin is not an
        // error; under the full run it is a stale or misspelled key
        if (full_selection)
          rep.pin_failures.push_back("expected " + key + "=" + b2s(want) +
                                     " but the predicate was not evaluated");
        else
          put(std::string("pin_not_evaluated"), key);
      } else if (it->second != want) {
        rep.pin_failures.push_back("expected " + key + "=" + b2s(want) + ", got " +
                                   b2s(it->second));
      }
    }
  }
};

}  // namespace

std::vector<RunReport> run_harnesses(const std::vector<CorpusEntry>& entries,
                                     const Bounds& bounds,
                                     const HarnessSelection& sel, int jobs,
                                     const std::string& base_dir) {
  std::vector<RunReport> reports(entries.size());
  const int n = static_cast<int>(entries.size());
  if (jobs < 1) jobs = kernels::hardware_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int i = 0; i < n; ++i) {
    RunReport& rep = reports[i];
    rep.id = entries[i].id;
    rep.kind = entries[i].kind;
    rep.spec = entries[i].spec;
    EntryRunner runner{entries[i], bounds, sel, base_dir, rep, {}};
    try {
      runner.run();
    } catch (const ResourceError& e) {
      rep.skipped = true;
      rep.skip_reason = e.what();
    } catch (const std::exception& e) {
      rep.build_error = true;
      rep.error_text = e.what();
      rep.disagreements.push_back(std::string("unexpected error: ") + e.what());
    }
  }
  return reports;
}

std::string stable_report_text(const std::vector<RunReport>& reports,
                               const std::string& corpus_name) {
  std::ostringstream out;
  out << "dmlcheck report\n";
  out << "corpus " << corpus_name << "\n";
  out << "entries " << reports.size() << "\n";
  for (const auto& r : reports) {
    out << "\nentry " << r.id << "\n";
    out << "kind " << r.kind << "\n";
    out << "spec " << r.spec << "\n";
    if (r.skipped) {
      out << "skipped " << r.skip_reason << "\n";
    } else if (r.build_error) {
      out << "error " << r.error_text << "\n";
    } else {
      for (const auto& [k, v] : r.stable) out << k << " " << v << "\n";
    }
    for (const auto& d : r.disagreements) out << "disagreement " << d << "\n";
    for (const auto& p : r.pin_failures) out << "pin_failure " << p << "\n";
    out << "end\n";
  }
  return out.str();
}

void write_report(std::ostream& out, const std::vector<RunReport>& reports,
                  const std::string& corpus_name, bool timings) {
  out << stable_report_text(reports, corpus_name);
  if (!timings) return;
  out << "\n== timings (volatile) ==\n";
  char buf[64];
  for (const auto& r : reports)
    for (const auto& [label, ms] : r.timings_ms) {
      std::snprintf(buf, sizeof(buf), "%.3f", ms);
      out << r.id << " " << label << " " << buf << " ms\n";
    }
}

int report_exit_code(const std::vector<RunReport>& reports) {
  for (const auto& r : reports)
    if (!r.disagreements.empty() || !r.pin_failures.empty()) return 1;
  return 0;
}

}  // namespace dml
