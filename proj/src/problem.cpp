#include "toricfam/problem.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "toricfam/error.hpp"

namespace toricfam {

namespace {

class TomlParser {
 public:
  TomlParser(const std::string& text, std::map<std::string, int>* lines) : s_(text), lines_(lines) {}

  ojson run() {
    ojson root = ojson::object();
    ojson* table = &root;
    std::string prefix;
    for (;;) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        const bool array = s_.compare(i_, 2, "[[") == 0;
        i_ += array ? 2 : 1;
        ws();
        const std::string name = key();
        ws();
        if (array) expect("]]");
        else expect("]");
        end_of_line();
        if (array) {
          ojson& arr = root[name];
          if (arr.is_null()) arr = ojson::array();
          if (!arr.is_array()) fail("'" + name + "' is not an array of tables");
          arr.push_back(ojson::object());
          table = &arr.back();
          prefix = name + "[" + std::to_string(arr.size() - 1) + "].";
        } else {
          if (root.contains(name)) fail("table '" + name + "' defined twice");
          root[name] = ojson::object();
          table = &root[name];
          prefix = name + ".";
        }
        record(prefix.substr(0, prefix.size() - 1));
        continue;
      }
      const int line = line_;
      const std::string k = key();
      ws();
      expect("=");
      ws();
      if (table->contains(k)) fail("duplicate key '" + k + "'");
      (*table)[k] = value();
      if (lines_) (*lines_)[prefix + k] = line;
      end_of_line();
    }
    return root;
  }

 private:
  const std::string& s_;
  std::map<std::string, int>* lines_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      line_start_ = i_ + 1;
    }
    ++i_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::Parse,
                "line " + std::to_string(line_) + ", column " + std::to_string(i_ - line_start_ + 1) + ": " + msg);
  }
  void record(const std::string& path) {
    if (lines_) (*lines_)[path] = line_;
  }
  void ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) advance();
  }
  void comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') advance();
  }
  // whitespace, comments and newlines
  void ws_all() {
    for (;;) {
      ws();
      comment();
      if (!eof() && (peek() == '\n' || peek() == '\r')) {
        advance();
        continue;
      }
      break;
    }
  }
  void skip_blank_lines() { ws_all(); }
  void end_of_line() {
    ws();
    comment();
    if (!eof() && peek() == '\r') advance();
    if (!eof() && peek() != '\n') fail("expected end of line");
  }
  void expect(const std::string& t) {
    if (s_.compare(i_, t.size(), t) != 0) fail("expected '" + t + "'");
    for (std::size_t k = 0; k < t.size(); ++k) advance();
  }
  std::string key() {
    if (peek() == '"') return string();
    std::string k;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
      k += peek();
      advance();
    }
    if (k.empty()) fail("expected a key");
    return k;
  }
  std::string string() {
    expect("\"");
    std::string out;
    for (;;) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated string");
        const char e = peek();
        advance();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
        continue;
      }
      out += c;
    }
    return out;
  }
  ojson value() {
    const char c = peek();
    if (c == '"') return string();
    if (c == '[') {
      advance();
      ojson arr = ojson::array();
      ws_all();
      while (peek() != ']') {
        arr.push_back(value());
        ws_all();
        if (peek() == ',') {
          advance();
          ws_all();
        } else if (peek() != ']') {
          fail("expected ',' or ']'");
        }
      }
      advance();
      return arr;
    }
    if (c == '{') {
      advance();
      ojson obj = ojson::object();
      ws();
      while (peek() != '}') {
        const std::string k = key();
        ws();
        expect("=");
        ws();
        if (obj.contains(k)) fail("duplicate key '" + k + "'");
        obj[k] = value();
        ws();
        if (peek() == ',') {
          advance();
          ws();
        } else if (peek() != '}') {
          fail("expected ',' or '}'");
        }
      }
      advance();
      return obj;
    }
    if (s_.compare(i_, 4, "true") == 0) {
      expect("true");
      return true;
    }
    if (s_.compare(i_, 5, "false") == 0) {
      expect("false");
      return false;
    }
    std::string num;
    if (c == '+' || c == '-') {
      num += c;
      advance();
    }
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_')) {
      if (peek() != '_') num += peek();
      advance();
    }
    if (num.empty() || num == "+" || num == "-") fail("expected a value");
    if (!eof() && (peek() == '.' || peek() == 'e' || peek() == 'E')) fail("floating-point values are not supported");
    try {
      return std::stoll(num);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }
};

struct Converter {
  const ojson& j;
  const std::map<std::string, int>& lines;

  [[noreturn]] void fail(const std::string& path, const std::string& msg, Errc code = Errc::Parse) const {
    std::string where = "'" + path + "'";
    // the closest recorded ancestor gives the line
    for (std::string p = path; !p.empty();) {
      const auto it = lines.find(p);
      if (it != lines.end()) {
        where += " (line " + std::to_string(it->second) + ")";
        break;
      }
      const auto cut = p.find_last_of(".[");
      p = cut == std::string::npos ? "" : p.substr(0, cut);
    }
    throw Error(code, where + ": " + msg);
  }

  long integer(const ojson& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
  }
  ZPoint ints(const ojson& v, const std::string& path, std::size_t len) const {
    if (!v.is_array()) fail(path, "expected an integer array");
    ZPoint out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
    if (out.size() != len)
      fail(path, "expected " + std::to_string(len) + " entries, found " + std::to_string(out.size()), Errc::DimensionMismatch);
    return out;
  }
  Elem coeff(const ojson& v, const std::string& path, const FieldLevel& F) const {
    if (v.is_number_integer()) return F.scale(1, v.get<long>());
    if (v.is_array()) {
      std::vector<int> d;
      for (std::size_t i = 0; i < v.size(); ++i)
        d.push_back(static_cast<int>(integer(v[i], path + "[" + std::to_string(i) + "]")));
      if (static_cast<int>(d.size()) > F.degree())
        fail(path, "more digits than the extension degree " + std::to_string(F.degree()));
      return F.from_digits(d);
    }
    fail(path, "expected an integer or a digit list");
  }
  int get_int(const ojson& obj, const std::string& k, const std::string& path, int dflt, bool required) const {
    if (!obj.contains(k)) {
      if (required) fail(path + k, "missing required key");
      return dflt;
    }
    return static_cast<int>(integer(obj.at(k), path + k));
  }

  Problem convert() const {
    if (!j.is_object()) fail("", "expected a table at top level");
    static const std::vector<std::string> known{"p", "a", "modulus", "n", "s", "base", "fiber_space", "S2",
                                                "operations", "f", "P", "budget"};
    for (const auto& [k, v] : j.items())
      if (std::find(known.begin(), known.end(), k) == known.end()) fail(k, "unknown key");
    Problem pr;
    auto& sp = pr.spec;
    sp.p = get_int(j, "p", "", 2, true);
    sp.a = get_int(j, "a", "", 1, false);
    if (sp.p < 2 || !is_prime(sp.p)) fail("p", "not a prime", Errc::NotPrime);
    if (sp.a < 1) fail("a", "must be at least 1", Errc::Validation);
    if (j.contains("modulus")) {
      const ZPoint m = ints(j.at("modulus"), "modulus", static_cast<std::size_t>(sp.a) + 1);
      sp.modulus = fp_poly::Poly(m.begin(), m.end());
    }
    sp.n = get_int(j, "n", "", 1, true);
    sp.s = get_int(j, "s", "", 0, false);
    if (sp.n < 1) fail("n", "must be at least 1", Errc::Validation);
    if (sp.s < 0) fail("s", "must be nonnegative", Errc::Validation);
    const std::string base = j.value("base", std::string("torus"));
    if (base == "torus") sp.base = SpaceKind::Torus;
    else if (base == "affine") sp.base = SpaceKind::Affine;
    else fail("base", "expected \"torus\" or \"affine\"");
    const std::string fs = j.value("fiber_space", std::string("torus"));
    if (j.contains("S2")) {
      const auto& v = j.at("S2");
      if (!v.is_array()) fail("S2", "expected an integer array");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const long x = integer(v[i], "S2[" + std::to_string(i) + "]");
        if (x < 0 || x >= sp.n) fail("S2[" + std::to_string(i) + "]", "index out of range", Errc::Validation);
        sp.S2.push_back(static_cast<int>(x));
      }
    }
    if (fs == "torus") {
      if (!sp.S2.empty()) fail("S2", "a torus fiber has no affine variables", Errc::Validation);
    } else if (fs == "affine") {
      sp.S2.clear();
      for (int i = 0; i < sp.n; ++i) sp.S2.push_back(i);
    } else if (fs != "mixed") {
      fail("fiber_space", "expected \"torus\", \"mixed\" or \"affine\"");
    }

    try {
      pr.tower = std::make_shared<FieldTower>(sp.p, sp.a, sp.modulus);
    } catch (const Error& e) {
      fail(sp.modulus ? "modulus" : "p", e.what(), e.code());
    }
    const FieldLevel& F = pr.tower->base();

    if (!j.contains("f") || !j.at("f").is_array() || j.at("f").empty()) fail("f", "expected a nonempty array of terms");
    for (std::size_t i = 0; i < j.at("f").size(); ++i) {
      const auto& t = j.at("f")[i];
      const std::string path = "f[" + std::to_string(i) + "]";
      if (!t.is_object()) fail(path, "expected a table");
      if (!t.contains("exponent")) fail(path + ".exponent", "missing required key");
      const auto e = ints(t.at("exponent"), path + ".exponent", static_cast<std::size_t>(sp.n));
      sp.f_terms.emplace_back(e, t.contains("coeff") ? coeff(t.at("coeff"), path + ".coeff", F) : 1);
    }
    if (j.contains("P")) {
      if (!j.at("P").is_array()) fail("P", "expected an array of terms");
      for (std::size_t i = 0; i < j.at("P").size(); ++i) {
        const auto& t = j.at("P")[i];
        const std::string path = "P[" + std::to_string(i) + "]";
        if (!t.is_object()) fail(path, "expected a table");
        for (const char* k : {"gamma", "mu"})
          if (!t.contains(k)) fail(path + "." + k, "missing required key");
        PTerm pt;
        pt.gamma = ints(t.at("gamma"), path + ".gamma", static_cast<std::size_t>(sp.s));
        pt.mu = ints(t.at("mu"), path + ".mu", static_cast<std::size_t>(sp.n));
        pt.coeff = t.contains("coeff") ? coeff(t.at("coeff"), path + ".coeff", F) : 1;
        sp.P_terms.push_back(pt);
      }
    }
    if (j.contains("operations")) {
      const auto& ops = j.at("operations");
      if (!ops.is_array()) fail("operations", "expected an array of strings");
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::string path = "operations[" + std::to_string(i) + "]";
        if (!ops[i].is_string()) fail(path, "expected a string");
        try {
          pr.ops.push_back(parse_linop(ops[i].get<std::string>()));
        } catch (const Error& e) {
          fail(path, e.what());
        }
      }
    }
    if (pr.ops.empty()) pr.ops.push_back(LinOp::sym(1));
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      if (!b.is_object()) fail("budget", "expected a table");
      for (const auto& [k, v] : b.items())
        if (k != "k_max" && k != "M" && k != "d_max" && k != "guard") fail("budget." + k, "unknown key");
      pr.budget.k_max = get_int(b, "k_max", "budget.", pr.budget.k_max, false);
      pr.budget.M = get_int(b, "M", "budget.", pr.budget.M, false);
      pr.budget.d_max = get_int(b, "d_max", "budget.", pr.budget.d_max, false);
      pr.budget.guard = get_int(b, "guard", "budget.", pr.budget.guard, false);
      if (pr.budget.k_max < 1 || pr.budget.M < 0 || pr.budget.d_max < 0 || pr.budget.guard < 0)
        fail("budget", "values must be nonnegative (k_max positive)", Errc::Validation);
    }
    try {
      validate(sp, *pr.tower);
    } catch (const Error& e) {
      // point at the first P term that breaks the weight condition
      if (e.code() == Errc::WeightOne || e.code() == Errc::NotInCone || e.code() == Errc::Validation) {
        const auto nd = newton_data(family_f(sp, *pr.tower));
        for (std::size_t i = 0; i < sp.P_terms.size(); ++i) {
          const auto w = nd.delta.weight(sp.P_terms[i].mu);
          bool neg = false;
          for (long g : sp.P_terms[i].gamma) neg = neg || (sp.base == SpaceKind::Affine && g < 0);
          if (!w || *w >= 1 || neg) fail("P[" + std::to_string(i) + "]", e.what(), e.code());
        }
      }
      throw;
    }
    return pr;
  }
};

}  // namespace

ojson parse_toml(const std::string& text, std::map<std::string, int>* lines) {
  return TomlParser(text, lines).run();
}

Problem parse_problem(const std::string& text) {
  std::size_t k = 0;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  std::map<std::string, int> lines;
  ojson j;
  if (k < text.size() && text[k] == '{') {
    try {
      j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::Parse, e.what());
    }
  } else {
    j = parse_toml(text, &lines);
  }
  Problem pr = Converter{j, lines}.convert();
  pr.lines = std::move(lines);
  return pr;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace toricfam
