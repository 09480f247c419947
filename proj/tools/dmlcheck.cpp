// Command line front end: validate structure documents, run the harness
// suites over a corpus, export lattices and spectra, list builtins.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dml/io.hpp"
#include "dml/report.hpp"
#include "dml/spectra.hpp"

namespace {

int cmd_validate(const std::string& path, const dml::Bounds& bounds) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  // corpus files validate entry by entry; structure documents in one shot
  std::string first_word, line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    if (ls >> first_word) break;
  }
  in.clear();
  in.seekg(0);
  try {
    if (first_word == "entry") {
      auto entries = dml::parse_corpus(in);
      for (const auto& e : entries) {
        dml::build_entry(e, bounds, path.substr(0, path.find_last_of('/')));
        std::cout << "ok entry " << e.id << " " << e.kind << " " << e.spec << "\n";
      }
      std::cout << "ok corpus entries=" << entries.size() << "\n";
    } else {
      std::cout << dml::validate_document(in, bounds) << "\n";
    }
  } catch (const dml::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const dml::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const dml::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

std::string export_quantale_view(const dml::Quantale& Q, const std::string& what) {
  if (what == "lattice") return dml::lattice_dot(Q.lattice());
  if (what == "spectrum") {
    auto spec = dml::spectrum_space(Q, dml::full_subquantale(Q));
    if (!spec.ok()) throw dml::ValidationError(spec.error());
    return dml::space_dot(spec.value().space);
  }
  if (what == "psi") {
    auto ps = dml::psi(Q);
    if (!ps.ok()) throw dml::ValidationError(ps.error());
    return dml::lattice_dot(ps.value().lat);
  }
  if (what == "max") {
    auto mx = dml::max_space(Q);
    if (!mx.ok()) throw dml::ValidationError(mx.error());
    return dml::space_dot(mx.value());
  }
  return {};
}

std::vector<dml::CorpusEntry> load_entries(const std::string& corpus_path,
                                           std::string& name, std::string& dir) {
  if (corpus_path.empty()) {
    name = "builtin";
    dir = ".";
    return dml::builtin_corpus();
  }
  std::ifstream in(corpus_path);
  if (!in) throw dml::ParseError(0, "cannot open " + corpus_path);
  name = corpus_path;
  auto slash = corpus_path.find_last_of('/');
  dir = slash == std::string::npos ? "." : corpus_path.substr(0, slash);
  return dml::parse_corpus(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite idiomatic quantale and module De Morgan law checker"};
  app.require_subcommand(1);

  dml::Bounds bounds = dml::Bounds::from_env();
  std::string bounds_spec;

  auto add_bounds_flag = [&](CLI::App* cmd) {
    cmd->add_option("--bounds", bounds_spec,
                    "size bound overrides, e.g. module=32,ring=8,homcap=65536");
  };

  // validate
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a document or corpus");
  validate->add_option("file", validate_path)->required();
  add_bounds_flag(validate);

  // run
  std::string corpus_path, out_path;
  int jobs = 0;
  bool no_timings = false;
  bool laws = false, spectra = false, modules = false, sdml = false;
  auto* run = app.add_subcommand("run", "run harnesses over a corpus");
  run->add_option("--corpus", corpus_path, "corpus file (builtin when omitted)");
  run->add_option("--out", out_path, "write the report here instead of stdout");
  run->add_option("--jobs", jobs, "parallelism degree (0 = hardware)");
  run->add_flag("--laws", laws, "select the De Morgan law harnesses");
  run->add_flag("--spectra", spectra, "select the spectrum harnesses");
  run->add_flag("--modules", modules, "select the module harnesses");
  run->add_flag("--sdml", sdml, "select the residual law harnesses");
  run->add_flag("--no-timings", no_timings, "omit the volatile timing section");
  add_bounds_flag(run);

  // export
  std::string export_entry, what = "lattice", export_out;
  std::string export_corpus;
  auto* exp = app.add_subcommand("export", "export lattices, spectra or reports");
  exp->add_option("--entry", export_entry, "corpus entry id")->required();
  exp->add_option("--what", what,
                  "lattice | fi | spectrum | psi | max | report");
  exp->add_option("--out", export_out, "output file")->required();
  exp->add_option("--corpus", export_corpus, "corpus file (builtin when omitted)");
  add_bounds_flag(exp);

  auto* list = app.add_subcommand("list-builtins", "print the builtin corpus");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!bounds_spec.empty()) bounds.apply_spec(bounds_spec);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (validate->parsed()) return cmd_validate(validate_path, bounds);

  if (list->parsed()) {
    for (const auto& e : dml::builtin_corpus()) {
      std::cout << "entry " << e.id << " " << e.kind << " " << e.spec;
      for (const auto& [k, v] : e.expected)
        std::cout << " expect " << k << "=" << (v ? "true" : "false");
      std::cout << "\n";
    }
    return 0;
  }

  if (run->parsed()) {
    dml::HarnessSelection sel;
    if (laws || spectra || modules || sdml) {
      sel = dml::HarnessSelection::none();
      sel.laws = laws;
      sel.spectra = spectra;
      sel.modules = modules;
      sel.sdml = sdml;
    }
    try {
      std::string name, dir;
      auto entries = load_entries(corpus_path, name, dir);
      dml::kernels::set_parallelism(jobs);
      auto reports = dml::run_harnesses(entries, bounds, sel, jobs, dir);
      if (out_path.empty()) {
        dml::write_report(std::cout, reports, name, !no_timings);
      } else {
        std::ofstream out(out_path);
        dml::write_report(out, reports, name, !no_timings);
      }
      for (const auto& r : reports) {
        for (const auto& d : r.disagreements)
          std::cerr << r.id << ": " << d << "\n";
        for (const auto& p : r.pin_failures) std::cerr << r.id << ": " << p << "\n";
      }
      return dml::report_exit_code(reports);
    } catch (const dml::ParseError& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return 2;
    }
  }

  if (exp->parsed()) {
    try {
      std::string name, dir;
      auto entries = load_entries(export_corpus, name, dir);
      const dml::CorpusEntry* found = nullptr;
      for (const auto& e : entries)
        if (e.id == export_entry) found = &e;
      if (!found) {
        std::cerr << "no entry \"" << export_entry << "\" in " << name << "\n";
        return 2;
      }
      dml::BuiltEntry built = dml::build_entry(*found, bounds, dir);
      std::ostringstream payload;
      if (what == "report") {
        auto reports = dml::run_harnesses({*found}, bounds, {}, 1, dir);
        payload << dml::stable_report_text(reports, name);
      } else if (built.module) {
        const dml::FiniteModule& M = *built.module;
        if (what == "lattice") {
          payload << dml::lattice_dot(M.submodule_lattice());
        } else if (what == "fi") {
          payload << dml::lattice_dot(M.fi_lattice());
        } else {
          auto fiq = dml::fi_quantale(M);
          if (!fiq.ok()) {
            std::cerr << "entry has no valid quantale: " << fiq.error().to_string()
                      << "\n";
            return 2;
          }
          payload << export_quantale_view(fiq.value().q, what);
        }
      } else {
        payload << export_quantale_view(*built.quantale, what);
      }
      if (payload.str().empty()) {
        std::cerr << "nothing to export for --what " << what << "\n";
        return 2;
      }
      std::ofstream out(export_out);
      if (!out) {
        std::cerr << "cannot write " << export_out << "\n";
        return 2;
      }
      out << payload.str();
      return 0;
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
