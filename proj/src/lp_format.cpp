#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "wifiplan/error.hpp"
#include "wifiplan/milp.hpp"

namespace wifiplan {

namespace {

constexpr int kTermsPerLine = 8;

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_expr(std::ostream& out, const MilpModel& m, const std::vector<Term>& terms) {
  const auto& vars = m.variables();
  if (terms.empty()) {
    if (!vars.empty()) out << " 0 " << vars.front().name;
    return;
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) out << "\n  ";
    const double c = terms[k].coef;
    const double mag = std::abs(c);
    if (k == 0) {
      out << (c < 0 ? " -" : "");
    } else {
      out << (c < 0 ? " -" : " +");
    }
    if (mag != 1.0) out << ' ' << number(mag);
    out << ' ' << vars[terms[k].var].name;
  }
}

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
  }
  return "=";
}

}  // namespace

std::string emit_lp(const MilpModel& model) {
  std::ostringstream out;
  if (!model.comment.empty()) out << "\\ " << model.comment << "\n";
  out << "Maximize\n obj:";
  write_expr(out, model, model.objective());
  out << "\nSubject To\n";
  for (const Row& row : model.rows()) {
    out << ' ' << row.name << ':';
    write_expr(out, model, row.terms);
    out << ' ' << relation_text(row.relation) << ' ' << number(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::Continuous) {
      out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << '\n';
    }
  }
  out << "Binary\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::Binary) out << ' ' << v.name << '\n';
  }
  out << "End\n";
  return out.str();
}

void emit_lp(const MilpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << emit_lp(model);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string lp_file_name(const std::string& stem, Formulation f, double alpha, int num_freqs) {
  std::string param;
  if (is_psap(f)) {
    param = number(alpha);
    if (param.find('.') == std::string::npos) param += ".0";
  } else {
    param = std::to_string(num_freqs);
  }
  return stem + "_" + to_string(f) + "_" + param + ".lp";
}

namespace {

enum class Section { None, Objective, Constraints, Bounds, Binary, End };

struct Token {
  std::string text;
  int line;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<Section> section_of(const std::string& line) {
  const std::string l = lower(line);
  if (l == "maximize" || l == "maximise" || l == "maximum" || l == "max") return Section::Objective;
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") return Section::Constraints;
  if (l == "bounds" || l == "bound") return Section::Bounds;
  if (l == "binary" || l == "binaries" || l == "bin") return Section::Binary;
  if (l == "end") return Section::End;
  return std::nullopt;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line), what);
}

std::optional<double> to_number(const std::string& s) {
  const std::string l = lower(s);
  if (l == "inf" || l == "+inf" || l == "infinity" || l == "+infinity") {
    return std::numeric_limits<double>::infinity();
  }
  if (l == "-inf" || l == "-infinity") return -std::numeric_limits<double>::infinity();
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) return std::nullopt;
  return v;
}

std::optional<Relation> to_relation(const std::string& s) {
  if (s == "<=" || s == "=<" || s == "<") return Relation::LessEqual;
  if (s == ">=" || s == "=>" || s == ">") return Relation::GreaterEqual;
  if (s == "=") return Relation::Equal;
  return std::nullopt;
}

bool is_name(const std::string& s) {
  if (s.empty()) return false;
  const unsigned char c = static_cast<unsigned char>(s.front());
  return std::isalpha(c) || c == '_';
}

class LpReader {
 public:
  explicit LpReader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    Section sec = Section::None;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto bs = raw.find('\\');
      if (bs != std::string::npos) {
        if (line_no == 1 && bs == 0) comment_ = trim(std::string_view(raw).substr(1));
        raw.resize(bs);
      }
      const std::string line = trim(raw);
      if (line.empty()) continue;
      if (auto s = section_of(line)) {
        sec = *s;
        if (sec == Section::Objective) seen_objective_ = true;
        continue;
      }
      if (lower(line).starts_with("minimi")) fail(line_no, "only maximization models are supported");
      if (sec == Section::None) fail(line_no, "content before the objective section");
      if (sec == Section::End) fail(line_no, "content after End");
      if (sec == Section::Bounds) {
        bound_lines_.push_back({line, line_no});
        continue;
      }
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_[sec].push_back({w, line_no});
    }
    if (!seen_objective_) fail(line_no, "missing Maximize section");
  }

  MilpModel read() {
    MilpModel m;
    m.comment = comment_;
    for (const auto& [line, no] : bound_lines_) read_bound(m, line, no);
    for (const Token& t : tokens_[Section::Binary]) {
      if (!is_name(t.text)) fail(t.line, "expected a variable name, got '" + t.text + "'");
      if (auto idx = m.find(t.text)) {
        fail(t.line, "variable '" + t.text + "' is both bounded and binary");
      }
      m.add_binary(t.text);
    }
    read_objective(m);
    read_rows(m);
    return m;
  }

 private:
  int ensure(MilpModel& m, const std::string& name) {
    if (auto idx = m.find(name)) return *idx;
    return m.add_continuous(name, 0.0, std::numeric_limits<double>::infinity());
  }

  void read_bound(MilpModel& m, const std::string& line, int no) {
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::string name;
    auto num = [&](const std::string& s) {
      auto v = to_number(s);
      if (!v) fail(no, "expected a number, got '" + s + "'");
      return *v;
    };
    if (w.size() == 5 && to_relation(w[1]) == Relation::LessEqual &&
        to_relation(w[3]) == Relation::LessEqual) {
      lo = num(w[0]);
      name = w[2];
      hi = num(w[4]);
    } else if (w.size() == 3 && is_name(w[0])) {
      name = w[0];
      const auto rel = to_relation(w[1]);
      if (!rel) fail(no, "bad bound relation '" + w[1] + "'");
      const double v = num(w[2]);
      if (*rel == Relation::LessEqual) hi = v;
      if (*rel == Relation::GreaterEqual) lo = v;
      if (*rel == Relation::Equal) lo = hi = v;
    } else if (w.size() == 2 && lower(w[1]) == "free") {
      name = w[0];
      lo = -std::numeric_limits<double>::infinity();
    } else {
      fail(no, "unrecognized bound '" + line + "'");
    }
    if (!is_name(name)) fail(no, "expected a variable name, got '" + name + "'");
    if (m.find(name)) fail(no, "duplicate bound for '" + name + "'");
    m.add_continuous(name, lo, hi);
  }

  // Consumes terms from toks[pos] until a relation or the end.
  std::vector<Term> read_terms(MilpModel& m, const std::vector<Token>& toks, std::size_t& pos) {
    std::vector<Term> terms;
    double sign = 1.0;
    double coef = 1.0;
    bool has_coef = false;
    for (; pos < toks.size(); ++pos) {
      const Token& t = toks[pos];
      if (to_relation(t.text)) break;
      if (t.text == "+") continue;
      if (t.text == "-") {
        sign = -sign;
        continue;
      }
      if (auto v = to_number(t.text); v && !is_name(t.text)) {
        if (has_coef) fail(t.line, "two coefficients in a row");
        coef = *v;
        has_coef = true;
        continue;
      }
      if (!is_name(t.text)) fail(t.line, "unexpected token '" + t.text + "'");
      terms.push_back({ensure(m, t.text), sign * coef});
      sign = 1.0;
      coef = 1.0;
      has_coef = false;
    }
    if (has_coef) fail(toks[pos == 0 ? 0 : pos - 1].line, "dangling coefficient");
    return terms;
  }

  void read_objective(MilpModel& m) {
    const auto& toks = tokens_[Section::Objective];
    std::size_t pos = 0;
    if (pos < toks.size() && toks[pos].text.back() == ':') ++pos;
    auto terms = read_terms(m, toks, pos);
    if (pos != toks.size()) fail(toks[pos].line, "relation in objective");
    for (const Term& t : terms) m.add_objective(t.var, t.coef);
  }

  void read_rows(MilpModel& m) {
    const auto& toks = tokens_[Section::Constraints];
    std::size_t pos = 0;
    int unnamed = 0;
    while (pos < toks.size()) {
      std::string name;
      const int line = toks[pos].line;
      if (toks[pos].text.size() > 1 && toks[pos].text.back() == ':') {
        name = toks[pos].text.substr(0, toks[pos].text.size() - 1);
        ++pos;
      } else if (pos + 1 < toks.size() && toks[pos + 1].text == ":") {
        name = toks[pos].text;
        pos += 2;
      } else {
        name = "R" + std::to_string(++unnamed);
      }
      auto terms = read_terms(m, toks, pos);
      if (pos >= toks.size()) fail(line, "row '" + name + "' lacks a relation");
      const Relation rel = *to_relation(toks[pos].text);
      ++pos;
      double sign = 1.0;
      if (pos < toks.size() && (toks[pos].text == "-" || toks[pos].text == "+")) {
        sign = toks[pos].text == "-" ? -1.0 : 1.0;
        ++pos;
      }
      if (pos >= toks.size()) fail(line, "row '" + name + "' lacks a right-hand side");
      const auto rhs = to_number(toks[pos].text);
      if (!rhs) fail(toks[pos].line, "bad right-hand side '" + toks[pos].text + "'");
      ++pos;
      m.add_row(name, std::move(terms), rel, sign * *rhs);
    }
  }

  std::string comment_;
  bool seen_objective_ = false;
  std::map<Section, std::vector<Token>> tokens_;
  std::vector<std::pair<std::string, int>> bound_lines_;
};

}  // namespace

MilpModel parse_lp(std::string_view text) { return LpReader(text).read(); }

}  // namespace wifiplan
