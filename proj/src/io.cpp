#include "dml/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace dml {

namespace {

struct DocReader {
  std::istream& in;
  int line = 0;
  std::vector<std::string> toks;
  size_t pos = 0;

  explicit DocReader(std::istream& s) : in(s) {}

  bool next_line() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      toks.clear();
      pos = 0;
      std::istringstream ls(raw);
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return true;
    }
    ++line;
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, msg); }

  std::string word() {
    if (pos >= toks.size()) fail("unexpected end of line");
    return toks[pos++];
  }

  void end_of_line() const {
    if (pos != toks.size()) fail("trailing tokens");
  }

  int number() {
    std::string w = word();
    try {
      size_t used = 0;
      int v = std::stoi(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
      return v;
    } catch (const std::exception&) {
      fail("expected a number, got \"" + w + "\"");
    }
  }

  void keyword(const std::string& k) {
    if (!next_line()) fail("expected \"" + k + "\"");
    if (word() != k) fail("expected \"" + k + "\"");
  }
};

std::vector<std::string> read_header(DocReader& r, const std::string& kind) {
  // caller consumed the kind keyword line already
  if (!r.next_line() || r.word() != "elements")
    r.fail(kind + ": expected \"elements <n>\"");
  int n = r.number();
  r.end_of_line();
  if (n < 1) r.fail(kind + ": need at least one element");
  if (!r.next_line() || r.word() != "labels") r.fail(kind + ": expected \"labels\"");
  std::vector<std::string> labels;
  while (r.pos < r.toks.size()) labels.push_back(r.word());
  if (static_cast<int>(labels.size()) != n)
    r.fail(kind + ": expected " + std::to_string(n) + " labels, got " +
           std::to_string(labels.size()));
  return labels;
}

int label_index(DocReader& r, const std::vector<std::string>& labels,
                const std::string& w) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == w) return static_cast<int>(i);
  r.fail("unknown label \"" + w + "\"");
}

kernels::Table read_matrix(DocReader& r, const std::vector<std::string>& labels,
                           int rows) {
  const int n = static_cast<int>(labels.size());
  kernels::Table t(static_cast<size_t>(rows) * n);
  for (int i = 0; i < rows; ++i) {
    if (!r.next_line()) r.fail("expected matrix row");
    for (int j = 0; j < n; ++j) t[i * n + j] = label_index(r, labels, r.word());
    r.end_of_line();
  }
  return t;
}

FiniteLattice read_lattice_body(DocReader& r) {
  auto labels = read_header(r, "lattice");
  if (!r.next_line() || r.word() != "covers") r.fail("expected \"covers\"");
  std::vector<std::pair<Elem, Elem>> covers;
  for (;;) {
    if (!r.next_line()) r.fail("expected cover line or terminator");
    std::string first = r.word();
    if (first == "end" || first == "product") {
      r.pos = 0;  // let the caller see the terminator
      break;
    }
    int a = label_index(r, labels, first);
    int b = label_index(r, labels, r.word());
    r.end_of_line();
    covers.emplace_back(a, b);
  }
  auto L = FiniteLattice::from_covers(std::move(labels), covers);
  if (!L.ok()) throw ValidationError(L.error());
  return std::move(L).value();
}

}  // namespace

FiniteLattice read_lattice_doc(std::istream& in) {
  DocReader r(in);
  if (!r.next_line() || r.word() != "lattice") r.fail("expected \"lattice\"");
  FiniteLattice L = read_lattice_body(r);
  if (r.word() != "end") r.fail("expected \"end\"");
  return L;
}

void write_lattice_doc(std::ostream& out, const FiniteLattice& L) {
  out << "lattice\n";
  out << "elements " << L.size() << "\n";
  out << "labels";
  for (const auto& l : L.labels()) out << " " << l;
  out << "\ncovers\n";
  for (auto [a, b] : L.cover_pairs())
    out << L.label(a) << " " << L.label(b) << "\n";
  out << "end\n";
}

Quantale read_quantale_doc(std::istream& in) {
  DocReader r(in);
  if (!r.next_line() || r.word() != "quantale") r.fail("expected \"quantale\"");
  FiniteLattice L = read_lattice_body(r);
  if (r.word() != "product") r.fail("expected \"product\"");
  kernels::Table prod = read_matrix(r, L.labels(), L.size());
  r.keyword("end");
  auto Q = Quantale::check(std::move(L), std::move(prod), ProductLaw::full, true);
  if (!Q.ok()) throw ValidationError(Q.error());
  return std::move(Q).value();
}

void write_quantale_doc(std::ostream& out, const Quantale& Q) {
  const FiniteLattice& L = Q.lattice();
  out << "quantale\n";
  out << "elements " << L.size() << "\n";
  out << "labels";
  for (const auto& l : L.labels()) out << " " << l;
  out << "\ncovers\n";
  for (auto [a, b] : L.cover_pairs())
    out << L.label(a) << " " << L.label(b) << "\n";
  out << "product\n";
  for (Elem a = 0; a < L.size(); ++a) {
    for (Elem b = 0; b < L.size(); ++b)
      out << (b ? " " : "") << L.label(Q.product(a, b));
    out << "\n";
  }
  out << "end\n";
}

FiniteRing read_ring_doc(std::istream& in, const Bounds& bounds) {
  DocReader r(in);
  if (!r.next_line() || r.word() != "ring") r.fail("expected \"ring\"");
  auto labels = read_header(r, "ring");
  const int n = static_cast<int>(labels.size());
  if (!r.next_line() || r.word() != "add") r.fail("expected \"add\"");
  kernels::Table add = read_matrix(r, labels, n);
  if (!r.next_line() || r.word() != "mul") r.fail("expected \"mul\"");
  kernels::Table mul = read_matrix(r, labels, n);
  r.keyword("end");
  auto R = FiniteRing::check(std::move(labels), std::move(add), std::move(mul), bounds);
  if (!R.ok()) throw ValidationError(R.error());
  return std::move(R).value();
}

void write_ring_doc(std::ostream& out, const FiniteRing& R) {
  out << "ring\n";
  out << "elements " << R.size() << "\n";
  out << "labels";
  for (const auto& l : R.labels()) out << " " << l;
  out << "\nadd\n";
  for (Elem a = 0; a < R.size(); ++a) {
    for (Elem b = 0; b < R.size(); ++b)
      out << (b ? " " : "") << R.label(R.add(a, b));
    out << "\n";
  }
  out << "mul\n";
  for (Elem a = 0; a < R.size(); ++a) {
    for (Elem b = 0; b < R.size(); ++b)
      out << (b ? " " : "") << R.label(R.mul(a, b));
    out << "\n";
  }
  out << "end\n";
}

FiniteModule read_module_doc(std::istream& in, const Bounds& bounds) {
  DocReader r(in);
  if (!r.next_line() || r.word() != "module") r.fail("expected \"module\"");
  // embedded ring block
  if (!r.next_line() || r.word() != "ring") r.fail("expected embedded \"ring\"");
  auto ring_labels = read_header(r, "ring");
  const int rn = static_cast<int>(ring_labels.size());
  if (!r.next_line() || r.word() != "add") r.fail("expected ring \"add\"");
  kernels::Table ring_add = read_matrix(r, ring_labels, rn);
  if (!r.next_line() || r.word() != "mul") r.fail("expected ring \"mul\"");
  kernels::Table ring_mul = read_matrix(r, ring_labels, rn);
  r.keyword("end");
  auto R = FiniteRing::check(std::move(ring_labels), std::move(ring_add),
                             std::move(ring_mul), bounds);
  if (!R.ok()) throw ValidationError(R.error());
  auto ring = std::make_shared<const FiniteRing>(std::move(R).value());

  auto labels = read_header(r, "module");
  const int n = static_cast<int>(labels.size());
  if (!r.next_line() || r.word() != "add") r.fail("expected module \"add\"");
  kernels::Table add = read_matrix(r, labels, n);
  if (!r.next_line() || r.word() != "action") r.fail("expected \"action\"");
  kernels::Table action = read_matrix(r, labels, rn);
  r.keyword("end");
  auto M = FiniteModule::check(std::move(ring), std::move(labels), std::move(add),
                               std::move(action), bounds);
  if (!M.ok()) throw ValidationError(M.error());
  return std::move(M).value();
}

void write_module_doc(std::ostream& out, const FiniteModule& M) {
  out << "module\n";
  write_ring_doc(out, M.ring());
  out << "elements " << M.size() << "\n";
  out << "labels";
  for (Elem a = 0; a < M.size(); ++a) out << " " << M.label(a);
  out << "\nadd\n";
  for (Elem a = 0; a < M.size(); ++a) {
    for (Elem b = 0; b < M.size(); ++b)
      out << (b ? " " : "") << M.label(M.add(a, b));
    out << "\n";
  }
  out << "action\n";
  for (Elem r = 0; r < M.ring().size(); ++r) {
    for (Elem m = 0; m < M.size(); ++m)
      out << (m ? " " : "") << M.label(M.act(r, m));
    out << "\n";
  }
  out << "end\n";
}

std::string validate_document(std::istream& in, const Bounds& bounds) {
  std::ostringstream buffered;
  buffered << in.rdbuf();
  std::string text = buffered.str();

  std::istringstream probe(text);
  std::string kind;
  {
    DocReader r(probe);
    if (!r.next_line()) throw ParseError(1, "empty document");
    kind = r.word();
  }
  std::istringstream body(text);
  std::ostringstream summary;
  if (kind == "lattice") {
    FiniteLattice L = read_lattice_doc(body);
    summary << "ok lattice elements=" << L.size()
            << " frame=" << (is_frame(L) ? "true" : "false")
            << " modular=" << (is_modular(L) ? "true" : "false");
  } else if (kind == "quantale") {
    Quantale Q = read_quantale_doc(body);
    summary << "ok quantale elements=" << Q.size()
            << " semiprime=" << (Q.semiprime() ? "true" : "false");
  } else if (kind == "ring") {
    FiniteRing R = read_ring_doc(body, bounds);
    summary << "ok ring order=" << R.size()
            << " commutative=" << (R.commutative() ? "true" : "false");
  } else if (kind == "module") {
    FiniteModule M = read_module_doc(body, bounds);
    summary << "ok module order=" << M.size() << " ring=" << M.ring().size()
            << " submodules=" << M.submodules().size()
            << " fi=" << M.fi_submodules().size();
  } else {
    throw ParseError(1, "unknown document kind \"" + kind + "\"");
  }
  return summary.str();
}

std::string lattice_dot(const FiniteLattice& L) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Elem a = 0; a < L.size(); ++a)
    out << "  n" << a << " [label=\"" << L.label(a) << "\"];\n";
  for (auto [a, b] : L.cover_pairs()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string space_dot(const FiniteTopSpace& S) {
  std::ostringstream out;
  out << "digraph space {\n  node [shape=ellipse];\n";
  for (int p = 0; p < S.points(); ++p)
    out << "  p" << p << " [label=\"" << S.point_labels[p] << "\"];\n";
  for (int q = 0; q < S.points(); ++q) {
    PointSet cl = space_closure(S, PointSet{1} << q);
    for (int p = 0; p < S.points(); ++p)
      if (p != q && (cl >> p & 1))
        out << "  p" << q << " -> p" << p << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dml
