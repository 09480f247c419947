#include "dml/corpus.hpp"

#include <fstream>
#include <istream>
#include <memory>
#include <set>
#include <sstream>

namespace dml {

namespace {

// Recursive-descent reader for constructor expressions like
// prod(Z2,M2(F2)) or meet(powerset(3)).
struct ExprReader {
  const std::string& text;
  size_t pos = 0;
  int line;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, "in \"" + text + "\": " + msg);
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  char take() {
    if (pos >= text.size()) fail("unexpected end of expression");
    return text[pos++];
  }
  void expect(char c) {
    if (take() != c) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '.' || text[pos] == '/'))
      ++pos;
    if (pos == start) fail("expected a name");
    return text.substr(start, pos - start);
  }

  int number_suffix(const std::string& word, size_t at) {
    if (at >= word.size()) fail("expected a number in \"" + word + "\"");
    for (size_t i = at; i < word.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(word[i])))
        fail("expected a number in \"" + word + "\"");
    return std::stoi(word.substr(at));
  }

  void done() {
    if (pos != text.size()) fail("trailing characters");
  }
};

FiniteRing ring_or_throw(Result<FiniteRing> r) {
  if (!r.ok()) throw ValidationError(r.error());
  return std::move(r).value();
}

FiniteRing parse_ring(ExprReader& r, const Bounds& bounds,
                      const std::string& base_dir);

FiniteRing parse_ring_call(ExprReader& r, const std::string& head,
                           const Bounds& bounds, const std::string& base_dir) {
  if (head == "prod") {
    r.expect('(');
    FiniteRing acc = parse_ring(r, bounds, base_dir);
    while (r.peek() == ',') {
      r.take();
      FiniteRing next = parse_ring(r, bounds, base_dir);
      acc = ring_or_throw(ring_product(acc, next, bounds));
    }
    r.expect(')');
    return acc;
  }
  if (head == "M2" || head == "T2" || head == "dual") {
    r.expect('(');
    FiniteRing base = parse_ring(r, bounds, base_dir);
    r.expect(')');
    if (head == "M2") return ring_or_throw(ring_M2(base, bounds));
    if (head == "T2") return ring_or_throw(ring_T2(base, bounds));
    return ring_or_throw(ring_dual(base, bounds));
  }
  if (head == "file") {
    r.expect('(');
    std::string path = r.ident();
    r.expect(')');
    std::ifstream in(base_dir.empty() ? path : base_dir + "/" + path);
    if (!in) r.fail("cannot open \"" + path + "\"");
    return read_ring_doc(in, bounds);
  }
  if (head.size() > 1 && head[0] == 'Z')
    return ring_or_throw(ring_Zn(r.number_suffix(head, 1), bounds));
  if (head.size() > 1 && head[0] == 'F')
    return ring_or_throw(ring_Fp(r.number_suffix(head, 1), bounds));
  r.fail("unknown ring constructor \"" + head + "\"");
}

FiniteRing parse_ring(ExprReader& r, const Bounds& bounds,
                      const std::string& base_dir) {
  return parse_ring_call(r, r.ident(), bounds, base_dir);
}

FiniteLattice parse_lattice(ExprReader& r, const Bounds& bounds,
                            const std::string& base_dir) {
  std::string head = r.ident();
  if (head == "chain") {
    r.expect('(');
    int n = r.number_suffix(r.ident(), 0);
    r.expect(')');
    if (n > bounds.max_lattice_size)
      throw ResourceError("lattice", bounds.max_lattice_size, n);
    return chain(n);
  }
  if (head == "powerset") {
    r.expect('(');
    int k = r.number_suffix(r.ident(), 0);
    r.expect(')');
    if (k > 20 || (1LL << k) > bounds.max_lattice_size)
      throw ResourceError("lattice", bounds.max_lattice_size, 1LL << k);
    return powerset(k);
  }
  if (head == "divisors") {
    r.expect('(');
    int n = r.number_suffix(r.ident(), 0);
    r.expect(')');
    return divisor_lattice(n);
  }
  if (head == "m3") return diamond_m3();
  if (head == "n5") return pentagon_n5();
  if (head == "kite") return kite();
  if (head == "product") {
    r.expect('(');
    FiniteLattice a = parse_lattice(r, bounds, base_dir);
    r.expect(',');
    FiniteLattice b = parse_lattice(r, bounds, base_dir);
    r.expect(')');
    if (static_cast<long long>(a.size()) * b.size() > bounds.max_lattice_size)
      throw ResourceError("lattice", bounds.max_lattice_size,
                          static_cast<long long>(a.size()) * b.size());
    return lattice_product(a, b);
  }
  if (head == "file") {
    r.expect('(');
    std::string path = r.ident();
    r.expect(')');
    std::ifstream in(base_dir.empty() ? path : base_dir + "/" + path);
    if (!in) r.fail("cannot open \"" + path + "\"");
    return read_lattice_doc(in);
  }
  r.fail("unknown lattice constructor \"" + head + "\"");
}

FiniteModule module_or_throw(Result<FiniteModule> m) {
  if (!m.ok()) throw ValidationError(m.error());
  return std::move(m).value();
}

FiniteModule parse_module(ExprReader& r, const Bounds& bounds,
                          const std::string& base_dir) {
  std::string head = r.ident();
  if (head == "reg") {
    r.expect('(');
    auto ring = std::make_shared<const FiniteRing>(parse_ring(r, bounds, base_dir));
    r.expect(')');
    return module_or_throw(module_regular(std::move(ring), bounds));
  }
  if (head == "free") {
    r.expect('(');
    auto ring = std::make_shared<const FiniteRing>(parse_ring(r, bounds, base_dir));
    r.expect(',');
    int k = r.number_suffix(r.ident(), 0);
    r.expect(')');
    return module_or_throw(module_free(std::move(ring), k, bounds));
  }
  if (head == "file") {
    r.expect('(');
    std::string path = r.ident();
    r.expect(')');
    std::ifstream in(base_dir.empty() ? path : base_dir + "/" + path);
    if (!in) r.fail("cannot open \"" + path + "\"");
    return read_module_doc(in, bounds);
  }
  r.fail("unknown module constructor \"" + head + "\"");
}

Quantale quantale_or_throw(Result<Quantale> q) {
  if (!q.ok()) throw ValidationError(q.error());
  return std::move(q).value();
}

Quantale parse_quantale(ExprReader& r, const Bounds& bounds,
                        const std::string& base_dir) {
  std::string head = r.ident();
  if (head == "ideals") {
    r.expect('(');
    auto ring = std::make_shared<const FiniteRing>(parse_ring(r, bounds, base_dir));
    r.expect(')');
    FiniteModule M = module_or_throw(module_regular(std::move(ring), bounds));
    auto fiq = fi_quantale(M);
    if (!fiq.ok()) throw ValidationError(fiq.error());
    return std::move(fiq).value().q;
  }
  if (head == "meet") {
    r.expect('(');
    FiniteLattice L = parse_lattice(r, bounds, base_dir);
    r.expect(')');
    if (L.size() > bounds.max_quantale_size)
      throw ResourceError("quantale", bounds.max_quantale_size, L.size());
    kernels::Table prod = L.meet_table();
    return quantale_or_throw(
        Quantale::check(std::move(L), std::move(prod), ProductLaw::full, true));
  }
  if (head == "zero") {
    r.expect('(');
    FiniteLattice L = parse_lattice(r, bounds, base_dir);
    r.expect(')');
    if (L.size() > bounds.max_quantale_size)
      throw ResourceError("quantale", bounds.max_quantale_size, L.size());
    kernels::Table prod(static_cast<size_t>(L.size()) * L.size(), L.bottom());
    return quantale_or_throw(
        Quantale::check(std::move(L), std::move(prod), ProductLaw::full, true));
  }
  if (head == "file") {
    r.expect('(');
    std::string path = r.ident();
    r.expect(')');
    std::ifstream in(base_dir.empty() ? path : base_dir + "/" + path);
    if (!in) r.fail("cannot open \"" + path + "\"");
    return read_quantale_doc(in);
  }
  r.fail("unknown quantale constructor \"" + head + "\"");
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::set<std::string> ids;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok != "entry") throw ParseError(line, "expected \"entry\"");
    CorpusEntry e;
    e.line = line;
    if (!(ls >> e.id)) throw ParseError(line, "missing entry id");
    if (!(ls >> e.kind)) throw ParseError(line, "missing entry kind");
    if (e.kind != "ring" && e.kind != "module" && e.kind != "quantale")
      throw ParseError(line, "unknown kind \"" + e.kind + "\"");
    if (!(ls >> e.spec)) throw ParseError(line, "missing constructor expression");
    while (ls >> tok) {
      if (tok == "expect") {
        std::string pair;
        if (!(ls >> pair)) throw ParseError(line, "missing expectation");
        auto eq = pair.find('=');
        if (eq == std::string::npos)
          throw ParseError(line, "expectation needs key=value");
        std::string key = pair.substr(0, eq), val = pair.substr(eq + 1);
        if (val != "true" && val != "false")
          throw ParseError(line, "expectation value must be true or false");
        e.expected[key] = val == "true";
      } else {
        throw ParseError(line, "unexpected token \"" + tok + "\"");
      }
    }
    if (!ids.insert(e.id).second)
      throw ParseError(line, "duplicate entry id \"" + e.id + "\"");
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::string text =
        "entry z2 ring Z2 expect semiprime=true expect thm514_agree=true expect thm514_value=true\n"
        "entry z3 ring Z3 expect semiprime=true expect thm514_value=true\n"
        "entry z4 ring Z4 expect semiprime=false expect thm514_agree=true expect thm514_value=false\n"
        "entry z6 ring Z6 expect semiprime=true expect dml=true expect sdml=true expect thm514_agree=true expect thm514_value=true\n"
        "entry z8 ring Z8 expect semiprime=false expect thm514_value=false\n"
        "entry z12 ring Z12 expect semiprime=false expect sdml=true expect thm514_value=false\n"
        "entry f2 ring F2 expect semiprime=true\n"
        "entry f3 ring F3 expect semiprime=true\n"
        "entry f2xf2 ring prod(F2,F2) expect semiprime=true expect thm514_value=true\n"
        "entry z2z4 ring prod(Z2,Z4) expect semiprime=false expect thm514_value=false\n"
        "entry z2z2z2 ring prod(Z2,Z2,Z2) expect semiprime=true expect thm514_value=true\n"
        "entry m2f2 ring M2(F2) expect semiprime=true expect thm514_agree=true expect thm514_value=true\n"
        "entry t2f2 ring T2(F2) expect semiprime=false expect thm514_agree=true expect thm514_value=false\n"
        "entry dualf2 ring dual(F2) expect semiprime=false expect thm514_value=false\n"
        "entry klein module free(F2,2) expect semiprime=true\n"
        "entry qchain2 quantale meet(chain(2)) expect semiprime=true expect dml=true\n"
        "entry qchain3 quantale meet(chain(3)) expect semiprime=true expect dml=true\n"
        "entry qchain5 quantale meet(chain(5)) expect semiprime=true expect dml=true\n"
        "entry qbool2 quantale meet(powerset(2)) expect semiprime=true expect dml=true\n"
        "entry qbool3 quantale meet(powerset(3)) expect semiprime=true expect dml=true\n"
        "entry qgrid quantale meet(product(chain(3),chain(2))) expect semiprime=true expect dml=true\n"
        "entry qkite quantale meet(kite) expect semiprime=true expect dml=false\n";
    std::istringstream in(text);
    return parse_corpus(in);
  }();
  return entries;
}

BuiltEntry build_entry(const CorpusEntry& e, const Bounds& bounds,
                       const std::string& base_dir) {
  BuiltEntry out;
  ExprReader r{e.spec, 0, e.line};
  if (e.kind == "ring") {
    auto ring = std::make_shared<const FiniteRing>(parse_ring(r, bounds, base_dir));
    r.done();
    out.module = module_or_throw(module_regular(std::move(ring), bounds));
  } else if (e.kind == "module") {
    out.module = parse_module(r, bounds, base_dir);
    r.done();
  } else {
    out.quantale = parse_quantale(r, bounds, base_dir);
    r.done();
  }
  return out;
}

Result<FiniteRing> build_ring_expr(const std::string& expr, const Bounds& bounds,
                                   const std::string& base_dir) {
  ExprReader r{expr, 0, 0};
  FiniteRing ring = parse_ring(r, bounds, base_dir);
  r.done();
  return ring;
}

FiniteLattice build_lattice_expr(const std::string& expr, const Bounds& bounds,
                                 const std::string& base_dir) {
  ExprReader r{expr, 0, 0};
  FiniteLattice L = parse_lattice(r, bounds, base_dir);
  r.done();
  return L;
}

}  // namespace dml
