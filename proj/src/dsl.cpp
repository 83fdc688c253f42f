#include "cfh/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

namespace cfh {

namespace {

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  throw Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

// Internal signal for polynomial syntax errors: offset within the entry
// text, converted to an absolute position by the caller.
struct PolySyntax {
  std::size_t off;
  std::string msg;
};

// Recursive-descent reader for the entry grammar
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := atom ('*' atom)*
//   atom   := rational | ('d' | 'l' nat) ('^' nat)?
//   rational := nat ('/' nat)?
class PolyReader {
 public:
  explicit PolyReader(const std::string& s) : s_(s) {}

  Poly parse() {
    skip_ws();
    if (done()) err(i_, "empty polynomial");
    Poly total;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (!done() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
        skip_ws();
      } else if (!first) {
        break;
      }
      Poly t = term();
      total += sign < 0 ? -t : t;
      first = false;
      skip_ws();
      if (done()) break;
      if (peek() != '+' && peek() != '-' && peek() != '*')
        err(i_, std::string("unexpected character '") + peek() + "'");
    }
    skip_ws();
    if (!done()) err(i_, std::string("unexpected character '") + peek() + "'");
    return total;
  }

 private:
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
  }
  [[noreturn]] void err(std::size_t off, std::string msg) const {
    throw PolySyntax{off, std::move(msg)};
  }

  std::string digits(const char* what) {
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      err(i_, std::string("expected ") + what);
    std::size_t b = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    return s_.substr(b, i_ - b);
  }

  int small_nat(const char* what, int max) {
    std::size_t at = i_;
    std::string ds = digits(what);
    if (ds.size() > 9 || std::stol(ds) > max)
      err(at, std::string(what) + " too large");
    return static_cast<int>(std::stol(ds));
  }

  // After a variable name, forbid trailing identifier characters ("dx").
  void guard_name_end() {
    if (!done() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                    peek() == '_'))
      err(i_, "unexpected characters after a variable name");
  }

  Poly power(Poly base) {
    skip_ws();
    if (!done() && peek() == '^') {
      ++i_;
      skip_ws();
      int e = small_nat("exponent", 64);
      return pow(base, e);
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (done()) err(i_, "expected a number, 'd', or 'l<k>'");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits("a number");
      std::string den;
      if (!done() && peek() == '/') {
        ++i_;
        std::size_t at = i_;
        den = digits("a denominator");
        if (mpz_class(den) == 0) err(at, "zero denominator");
      }
      Rational r(mpz_class(num), den.empty() ? mpz_class(1) : mpz_class(den));
      r.canonicalize();
      return Poly(r);
    }
    if (c == 'd') {
      ++i_;
      guard_name_end();
      return power(Poly::del());
    }
    if (c == 'l') {
      ++i_;
      std::size_t at = i_;
      int k = small_nat("lambda index", 999);
      if (k < 1) err(at, "lambda indices start at 1");
      guard_name_end();
      return power(Poly::lam(k));
    }
    err(i_, "expected a number, 'd', or 'l<k>'");
  }

  Poly term() {
    Poly t(1);
    while (true) {
      t = t * atom();
      skip_ws();
      if (!done() && peek() == '*') {
        ++i_;
        continue;
      }
      break;
    }
    return t;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

// One physical line of a definition file (comments already stripped).
class LineParser {
 public:
  LineParser(std::string line, int no) : s_(std::move(line)), line_(no) {}

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
  }
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  int col() const { return static_cast<int>(i_) + 1; }
  int line_no() const { return line_; }

  [[noreturn]] void fail(const std::string& msg) const {
    fail_at(line_, col(), msg);
  }

  bool try_char(char c) {
    skip_ws();
    if (!done() && peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  void end() {
    skip_ws();
    if (!done()) fail("unexpected trailing characters");
  }

  bool next_is_digit() {
    skip_ws();
    return !done() && std::isdigit(static_cast<unsigned char>(peek()));
  }

  std::string ident() {
    skip_ws();
    if (done() || !(std::isalpha(static_cast<unsigned char>(peek())) ||
                    peek() == '_'))
      fail("expected an identifier");
    std::size_t b = i_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                       peek() == '_'))
      ++i_;
    return s_.substr(b, i_ - b);
  }

  int nat(const char* what) {
    skip_ws();
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail(std::string("expected ") + what);
    std::size_t b = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    std::string ds = s_.substr(b, i_ - b);
    if (ds.size() > 9) {
      i_ = b;
      fail("number too large");
    }
    return static_cast<int>(std::stol(ds));
  }

  // '[' entry (',' entry)* ']' with entries optionally double-quoted.
  std::vector<Poly> vec() {
    expect('[');
    std::vector<Poly> out;
    if (try_char(']')) return out;
    while (true) {
      skip_ws();
      std::size_t base;
      std::string entry;
      if (!done() && peek() == '"') {
        std::size_t quote = i_;
        ++i_;
        base = i_;
        while (!done() && peek() != '"') ++i_;
        if (done()) fail_at(line_, static_cast<int>(quote) + 1,
                            "unterminated string");
        entry = s_.substr(base, i_ - base);
        ++i_;
      } else {
        base = i_;
        while (!done() && peek() != ',' && peek() != ']') ++i_;
        entry = s_.substr(base, i_ - base);
      }
      try {
        out.push_back(PolyReader(entry).parse());
      } catch (const PolySyntax& e) {
        fail_at(line_, static_cast<int>(base + e.off) + 1, e.msg);
      }
      if (try_char(',')) continue;
      expect(']');
      break;
    }
    return out;
  }

 private:
  std::string s_;
  std::size_t i_ = 0;
  int line_;
};

PolyVector to_vector(const std::vector<Poly>& entries) {
  PolyVector v(static_cast<int>(entries.size()));
  for (int k = 0; k < v.rank(); ++k) v[k] = entries[k];
  return v;
}

// Variable legality for table entries (products and actions): d and l1 only.
void check_table_vars(const std::vector<Poly>& entries, int line, int col,
                      const char* where) {
  for (const Poly& p : entries)
    for (const Var& v : p.vars())
      if (!v.is_del() && v.lam_index() != 1)
        fail_at(line, col,
                std::string("only d and l1 may appear in ") + where);
}

// Variable legality for a degree-n cochain value: d and l1..l(n-1);
// constants only at degree 0.
void check_value_vars(const std::vector<Poly>& entries, int degree, int line,
                      int col) {
  for (const Poly& p : entries)
    for (const Var& v : p.vars()) {
      if (degree == 0)
        fail_at(line, col, "degree-0 values must be constant");
      if (!v.is_del() && v.lam_index() > degree - 1)
        fail_at(line, col,
                "lambda index l" + std::to_string(v.lam_index()) +
                    " out of range for a degree-" + std::to_string(degree) +
                    " cochain");
    }
}

}  // namespace

Poly parse_poly(const std::string& text) {
  try {
    return PolyReader(text).parse();
  } catch (const PolySyntax& e) {
    throw Error("invalid polynomial (column " + std::to_string(e.off + 1) +
                "): " + e.msg);
  }
}

DefinitionFile parse_definition(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }

  DefinitionFile def;
  enum class Block { none, algebra, bimodule, cochain, extension };
  Block block = Block::none;
  bool have_algebra = false;
  int header_line = 0;
  bool rank_set = false;
  std::set<std::tuple<int, int, int>> seen_entries;  // (tag, i, j)
  std::set<std::vector<int>> seen_tuples;

  CochainDef cur_cochain;
  bool degree_known = false, coeffs_set = false, has_values = false;

  auto finish_block = [&]() {
    switch (block) {
      case Block::none:
        break;
      case Block::algebra:
      case Block::bimodule:
        if (!rank_set)
          fail_at(header_line, 1,
                  block == Block::algebra
                      ? "[algebra] block must declare a rank"
                      : "[bimodule] block must declare a rank");
        break;
      case Block::cochain:
        if (!degree_known)
          fail_at(header_line, 1,
                  "cochain '" + cur_cochain.name +
                      "' declares neither degree nor values");
        def.cochains.push_back(std::move(cur_cochain));
        break;
      case Block::extension:
        break;
    }
  };

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const int line_no = static_cast<int>(ln) + 1;
    std::string line = lines[ln];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::size_t h = line.find('#'); h != std::string::npos)
      line = line.substr(0, h);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;

    LineParser lp(line, line_no);
    lp.skip_ws();

    if (lp.peek() == '[') {
      lp.expect('[');
      std::string kind = lp.ident();
      std::string name;
      bool has_name = false;
      if (!lp.try_char(']')) {
        name = lp.ident();
        has_name = true;
        lp.expect(']');
      }
      lp.end();

      finish_block();
      rank_set = false;
      seen_entries.clear();
      seen_tuples.clear();
      header_line = line_no;

      if (kind == "algebra") {
        if (has_name) fail_at(line_no, 1, "block '[algebra]' takes no name");
        if (have_algebra) fail_at(line_no, 1, "duplicate [algebra] block");
        if (block != Block::none)
          fail_at(line_no, 1, "the [algebra] block must come first");
        have_algebra = true;
        block = Block::algebra;
      } else if (kind == "bimodule") {
        if (has_name) fail_at(line_no, 1, "block '[bimodule]' takes no name");
        if (!have_algebra)
          fail_at(line_no, 1,
                  "bimodule block requires the [algebra] block first");
        if (def.bimodule)
          fail_at(line_no, 1, "duplicate [bimodule] block");
        def.bimodule.emplace();
        block = Block::bimodule;
      } else if (kind == "cochain") {
        if (!has_name) fail_at(line_no, 1, "cochain block requires a name");
        if (!have_algebra)
          fail_at(line_no, 1,
                  "cochain block requires the [algebra] block first");
        for (const CochainDef& c : def.cochains)
          if (c.name == name)
            fail_at(line_no, 1, "duplicate cochain name '" + name + "'");
        cur_cochain = CochainDef{};
        cur_cochain.name = name;
        degree_known = coeffs_set = has_values = false;
        block = Block::cochain;
      } else if (kind == "extension") {
        if (has_name) fail_at(line_no, 1, "block '[extension]' takes no name");
        if (!have_algebra)
          fail_at(line_no, 1,
                  "extension block requires the [algebra] block first");
        if (!def.bimodule)
          fail_at(line_no, 1,
                  "extension block requires a [bimodule] block earlier in "
                  "the file");
        if (def.extension)
          fail_at(line_no, 1, "duplicate [extension] block");
        def.extension.emplace();
        const int m = def.bimodule->rank;
        def.extension->fiber_prod.assign(
            m, std::vector<PolyVector>(m, PolyVector(m)));
        block = Block::extension;
      } else {
        fail_at(line_no, 1, "unknown block type '" + kind + "'");
      }
      continue;
    }

    if (block == Block::none) lp.fail("expected a block header");
    std::string key = lp.ident();

    if (key == "rank") {
      if (block != Block::algebra && block != Block::bimodule)
        lp.fail("'rank' is only valid in [algebra] and [bimodule] blocks");
      if (rank_set) lp.fail("duplicate rank");
      lp.expect('=');
      int r = lp.nat("a rank");
      lp.end();
      if (r < 1) fail_at(line_no, 1, "rank must be >= 1");
      if (r > 256) fail_at(line_no, 1, "rank too large (max 256)");
      if (block == Block::algebra) {
        def.algebra.rank = r;
        def.algebra.prod.assign(r, std::vector<PolyVector>(r, PolyVector(r)));
      } else {
        def.bimodule->rank = r;
        def.bimodule->left.assign(
            def.algebra.rank, std::vector<PolyVector>(r, PolyVector(r)));
        def.bimodule->right.assign(
            r, std::vector<PolyVector>(def.algebra.rank, PolyVector(r)));
      }
      rank_set = true;
    } else if (key == "prod") {
      if (block != Block::algebra && block != Block::extension)
        lp.fail("'prod' entries belong in [algebra] or [extension] blocks");
      if (block == Block::algebra && !rank_set)
        lp.fail("rank must be declared before table entries");
      const int bound =
          block == Block::algebra ? def.algebra.rank : def.bimodule->rank;
      const char* index_kind =
          block == Block::algebra ? "generator index" : "fiber index";
      int i = lp.nat("a generator index");
      int j = lp.nat("a generator index");
      lp.expect('=');
      lp.skip_ws();
      int vcol = lp.col();
      std::vector<Poly> v = lp.vec();
      lp.end();
      if (i >= bound || j >= bound)
        fail_at(line_no, 1,
                std::string(index_kind) + " out of range (rank " +
                    std::to_string(bound) + ")");
      if (static_cast<int>(v.size()) != bound)
        fail_at(line_no, vcol,
                "expected " + std::to_string(bound) + " entries, found " +
                    std::to_string(v.size()));
      check_table_vars(v, line_no, vcol, "product tables");
      if (!seen_entries.insert({0, i, j}).second)
        fail_at(line_no, 1, "duplicate product entry " + std::to_string(i) +
                                " " + std::to_string(j));
      PolyVector pv = to_vector(v);
      if (!pv.is_zero()) {
        auto& table = block == Block::algebra ? def.algebra.prod
                                              : def.extension->fiber_prod;
        table[i][j] = std::move(pv);
      }
    } else if (key == "left" || key == "right") {
      if (block != Block::bimodule)
        lp.fail("'" + key + "' entries belong in the [bimodule] block");
      if (!rank_set) lp.fail("rank must be declared before table entries");
      const bool is_left = key == "left";
      int a = lp.nat("an index");
      int b = lp.nat("an index");
      lp.expect('=');
      lp.skip_ws();
      int vcol = lp.col();
      std::vector<Poly> v = lp.vec();
      lp.end();
      const int ab = is_left ? def.algebra.rank : def.bimodule->rank;
      const int bb = is_left ? def.bimodule->rank : def.algebra.rank;
      if (a >= ab)
        fail_at(line_no, 1,
                std::string(is_left ? "generator" : "module") +
                    " index out of range (rank " + std::to_string(ab) + ")");
      if (b >= bb)
        fail_at(line_no, 1,
                std::string(is_left ? "module" : "generator") +
                    " index out of range (rank " + std::to_string(bb) + ")");
      if (static_cast<int>(v.size()) != def.bimodule->rank)
        fail_at(line_no, vcol,
                "expected " + std::to_string(def.bimodule->rank) +
                    " entries, found " + std::to_string(v.size()));
      check_table_vars(v, line_no, vcol, "action tables");
      if (!seen_entries.insert({is_left ? 1 : 2, a, b}).second)
        fail_at(line_no, 1, "duplicate " + key + " entry " +
                                std::to_string(a) + " " + std::to_string(b));
      PolyVector pv = to_vector(v);
      if (!pv.is_zero()) {
        auto& table = is_left ? def.bimodule->left : def.bimodule->right;
        table[a][b] = std::move(pv);
      }
    } else if (key == "degree") {
      if (block != Block::cochain)
        lp.fail("'degree' is only valid in cochain blocks");
      if (degree_known)
        lp.fail(has_values ? "degree must be declared before value entries"
                           : "duplicate degree");
      lp.expect('=');
      int n = lp.nat("a degree");
      lp.end();
      if (n > 8) fail_at(line_no, 1, "degree too large (max 8)");
      cur_cochain.degree = n;
      degree_known = true;
    } else if (key == "coefficients") {
      if (block != Block::cochain)
        lp.fail("'coefficients' is only valid in cochain blocks");
      if (coeffs_set) lp.fail("duplicate coefficients");
      if (has_values)
        lp.fail("coefficients must be declared before value entries");
      lp.expect('=');
      std::string w = lp.ident();
      lp.end();
      if (w == "regular") {
        cur_cochain.over_bimodule = false;
      } else if (w == "bimodule") {
        if (!def.bimodule)
          fail_at(line_no, 1,
                  "coefficients = bimodule requires a [bimodule] block "
                  "earlier in the file");
        cur_cochain.over_bimodule = true;
      } else {
        fail_at(line_no, 1, "coefficients must be 'regular' or 'bimodule'");
      }
      coeffs_set = true;
    } else if (key == "value") {
      if (block != Block::cochain)
        lp.fail("'value' entries belong in cochain blocks");
      std::vector<int> idx;
      while (lp.next_is_digit()) idx.push_back(lp.nat("an index"));
      lp.expect('=');
      lp.skip_ws();
      int vcol = lp.col();
      std::vector<Poly> v = lp.vec();
      lp.end();
      if (!degree_known) {
        cur_cochain.degree = static_cast<int>(idx.size());
        degree_known = true;
      } else if (static_cast<int>(idx.size()) != cur_cochain.degree) {
        fail_at(line_no, 1,
                "expected " + std::to_string(cur_cochain.degree) +
                    " indices for a degree-" +
                    std::to_string(cur_cochain.degree) + " cochain, found " +
                    std::to_string(idx.size()));
      }
      for (int k : idx)
        if (k >= def.algebra.rank)
          fail_at(line_no, 1,
                  "generator index out of range (rank " +
                      std::to_string(def.algebra.rank) + ")");
      const int want = cur_cochain.over_bimodule ? def.bimodule->rank
                                                 : def.algebra.rank;
      if (static_cast<int>(v.size()) != want)
        fail_at(line_no, vcol,
                "expected " + std::to_string(want) + " entries, found " +
                    std::to_string(v.size()));
      check_value_vars(v, cur_cochain.degree, line_no, vcol);
      if (!seen_tuples.insert(idx).second)
        fail_at(line_no, 1, "duplicate value entry");
      has_values = true;
      PolyVector pv = to_vector(v);
      if (!pv.is_zero()) cur_cochain.values[idx] = std::move(pv);
    } else {
      lp.fail("unknown key '" + key + "'");
    }
  }

  finish_block();
  if (!have_algebra) throw Error("1:1: missing [algebra] block");
  return def;
}

std::string print_definition(const DefinitionFile& def) {
  std::ostringstream os;
  os << "[algebra]\nrank = " << def.algebra.rank << "\n";
  for (std::size_t i = 0; i < def.algebra.prod.size(); ++i)
    for (std::size_t j = 0; j < def.algebra.prod[i].size(); ++j)
      if (!def.algebra.prod[i][j].is_zero())
        os << "prod " << i << " " << j << " = "
           << def.algebra.prod[i][j].str() << "\n";

  if (def.bimodule) {
    os << "\n[bimodule]\nrank = " << def.bimodule->rank << "\n";
    for (std::size_t i = 0; i < def.bimodule->left.size(); ++i)
      for (std::size_t j = 0; j < def.bimodule->left[i].size(); ++j)
        if (!def.bimodule->left[i][j].is_zero())
          os << "left " << i << " " << j << " = "
             << def.bimodule->left[i][j].str() << "\n";
    for (std::size_t i = 0; i < def.bimodule->right.size(); ++i)
      for (std::size_t j = 0; j < def.bimodule->right[i].size(); ++j)
        if (!def.bimodule->right[i][j].is_zero())
          os << "right " << i << " " << j << " = "
             << def.bimodule->right[i][j].str() << "\n";
  }

  for (const CochainDef& c : def.cochains) {
    os << "\n[cochain " << c.name << "]\ndegree = " << c.degree
       << "\ncoefficients = " << (c.over_bimodule ? "bimodule" : "regular")
       << "\n";
    for (const auto& [t, v] : c.values) {
      if (v.is_zero()) continue;
      os << "value";
      for (int k : t) os << " " << k;
      os << " = " << v.str() << "\n";
    }
  }

  if (def.extension) {
    os << "\n[extension]\n";
    for (std::size_t i = 0; i < def.extension->fiber_prod.size(); ++i)
      for (std::size_t j = 0; j < def.extension->fiber_prod[i].size(); ++j)
        if (!def.extension->fiber_prod[i][j].is_zero())
          os << "prod " << i << " " << j << " = "
             << def.extension->fiber_prod[i][j].str() << "\n";
  }
  return os.str();
}

Materialized materialize(const DefinitionFile& def) {
  if (def.algebra.rank < 1)
    throw Error("materialize: algebra rank must be >= 1");
  AlgebraPtr alg =
      std::make_shared<ConformalAlgebra>(def.algebra.rank, def.algebra.prod);
  Materialized out{alg, nullptr, {}};
  if (def.bimodule)
    out.bimodule = std::make_shared<ConformalBimodule>(
        alg, def.bimodule->rank, def.bimodule->left, def.bimodule->right);
  BimodulePtr reg = regular_bimodule(alg);

  for (const CochainDef& cd : def.cochains) {
    if (cd.over_bimodule && !out.bimodule)
      throw Error("materialize: cochain '" + cd.name +
                  "' needs a [bimodule] block");
    if (std::pow(static_cast<double>(def.algebra.rank), cd.degree) >
        static_cast<double>(1 << 20))
      throw Error("materialize: cochain '" + cd.name + "' is too large");
    Cochain c(alg, cd.over_bimodule ? out.bimodule : reg, cd.degree);
    for (const auto& [t, v] : cd.values) c.set_value(t, v);
    out.cochains.emplace_back(cd.name, std::move(c));
  }
  return out;
}

std::string render_cochain_block(const Cochain& c, const std::string& name) {
  std::ostringstream os;
  os << "[cochain " << name << "]\ndegree = " << c.degree()
     << "\ncoefficients = "
     << (is_regular(*c.coefficients()) ? "regular" : "bimodule") << "\n";
  for (int idx = 0; idx < c.tuple_count(); ++idx) {
    std::vector<int> t = c.tuple_at(idx);
    const PolyVector& v = c.value(t);
    if (v.is_zero()) continue;
    os << "value";
    for (int k : t) os << " " << k;
    os << " = " << v.str() << "\n";
  }
  return os.str();
}

}  // namespace cfh
