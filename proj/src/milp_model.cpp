#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "wifiplan/error.hpp"
#include "wifiplan/milp.hpp"

namespace wifiplan {

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::LinA: return "lin-a";
    case Formulation::LinB: return "lin-b";
    case Formulation::PsapL: return "psap-l";
    case Formulation::WfapH: return "wfap-h";
    case Formulation::WfapH2: return "wfap-h2";
    case Formulation::WfapL: return "wfap-l";
  }
  return "?";
}

Formulation parse_formulation(std::string_view text) {
  for (auto f : {Formulation::LinA, Formulation::LinB, Formulation::PsapL, Formulation::WfapH,
                 Formulation::WfapH2, Formulation::WfapL}) {
    if (text == to_string(f)) return f;
  }
  throw InvalidConfig("unknown formulation '" + std::string(text) + "'");
}

bool is_psap(Formulation f) {
  return f == Formulation::LinA || f == Formulation::LinB || f == Formulation::PsapL;
}

int MilpModel::add_variable(Variable v) {
  const int idx = static_cast<int>(vars_.size());
  if (!index_.emplace(v.name, idx).second) {
    throw std::logic_error("duplicate variable '" + v.name + "'");
  }
  vars_.push_back(std::move(v));
  return idx;
}

int MilpModel::add_binary(std::string name) {
  return add_variable({std::move(name), VarKind::Binary, 0.0, 1.0});
}

int MilpModel::add_continuous(std::string name, double lower, double upper) {
  return add_variable({std::move(name), VarKind::Continuous, lower, upper});
}

void MilpModel::add_row(std::string name, std::vector<Term> terms, Relation rel, double rhs) {
  std::vector<Term> merged;
  std::unordered_map<int, std::size_t> slot;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size())) {
      throw std::logic_error("row '" + name + "' references an undeclared variable");
    }
    auto [it, fresh] = slot.emplace(t.var, merged.size());
    if (fresh) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  rows_.push_back({std::move(name), std::move(merged), rel, rhs});
}

void MilpModel::add_objective(int var, double coef) {
  if (coef == 0.0) return;
  auto [it, fresh] = objective_slot_.emplace(var, objective_.size());
  if (fresh) {
    objective_.push_back({var, coef});
  } else {
    objective_[it->second].coef += coef;
  }
}

std::optional<int> MilpModel::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(),
                                        [](const Variable& v) { return v.kind == VarKind::Binary; }));
}

bool same_model(const MilpModel& a, const MilpModel& b) {
  if (a.variables().size() != b.variables().size()) return false;
  for (const Variable& v : a.variables()) {
    const auto idx = b.find(v.name);
    if (!idx) return false;
    const Variable& w = b.variables()[*idx];
    if (v.kind != w.kind || v.lower != w.lower || v.upper != w.upper) return false;
  }
  auto same_terms = [&](const std::vector<Term>& x, const std::vector<Term>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (a.variables()[x[k].var].name != b.variables()[y[k].var].name) return false;
      if (x[k].coef != y[k].coef) return false;
    }
    return true;
  };
  if (!same_terms(a.objective(), b.objective())) return false;
  if (a.rows().size() != b.rows().size()) return false;
  for (std::size_t r = 0; r < a.rows().size(); ++r) {
    const Row& x = a.rows()[r];
    const Row& y = b.rows()[r];
    if (x.name != y.name || x.relation != y.relation || x.rhs != y.rhs) return false;
    if (!same_terms(x.terms, y.terms)) return false;
  }
  return true;
}

std::string annotation_of(std::string_view name) {
  struct Prefix {
    std::string_view prefix;
    std::string_view meaning;
  };
  // Longest prefixes first.
  static constexpr Prefix kTable[] = {
      {"xf_", "x_jf: AP j operates on frequency f"},
      {"zy_", "z_ihj = c_ij * y_ih"},
      {"zl_", "z_ihj = c_ij * l_hj"},
      {"zu_", "z_ihj = c_ij * [h associates to a site in J_ij]"},
      {"wa_", "w_iA: APs sharing a_i's frequency among C_i are exactly A"},
      {"x_", "x_j: AP installed at site j"},
      {"l_", "l_ij: TP i associates to AP j"},
      {"y_", "y_ih: TPs i and h interfere"},
      {"c_", "c: efficiency term of a TP"},
      {"z_", "z_ih = c_i * (interference indicator of h on i)"},
      {"w_", "w_is: TP i realizes interference scenario s"},
      {"p_", "p_jkf: APs j and k both on frequency f"},
      {"v_", "v_jk: APs j and k share a frequency"},
  };
  for (const auto& p : kTable) {
    if (name.starts_with(p.prefix)) return std::string(p.meaning);
  }
  return "unknown";
}

double SolutionVector::operator[](const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? 0.0 : it->second;
}

CheckResult check_solution(const MilpModel& model, const SolutionVector& sol) {
  std::vector<double> x(model.variables().size(), 0.0);
  for (const auto& [name, value] : sol.values) {
    const auto idx = model.find(name);
    if (!idx) throw UnknownVariable(name);
    x[*idx] = value;
  }
  CheckResult res;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Variable& v = model.variables()[k];
    bool ok = x[k] >= v.lower - kRowTolerance && x[k] <= v.upper + kRowTolerance;
    if (v.kind == VarKind::Binary) ok = ok && std::abs(x[k] - std::round(x[k])) <= kRowTolerance;
    if (!ok) res.violated_rows.push_back("bounds:" + v.name);
  }
  for (const Row& row : model.rows()) {
    double lhs = 0.0;
    for (const Term& t : row.terms) lhs += t.coef * x[t.var];
    bool ok = true;
    switch (row.relation) {
      case Relation::LessEqual: ok = lhs <= row.rhs + kRowTolerance; break;
      case Relation::GreaterEqual: ok = lhs >= row.rhs - kRowTolerance; break;
      case Relation::Equal: ok = std::abs(lhs - row.rhs) <= kRowTolerance; break;
    }
    if (!ok) res.violated_rows.push_back(row.name);
  }
  for (const Term& t : model.objective()) res.objective += t.coef * x[t.var];
  res.feasible = res.violated_rows.empty();
  return res;
}

}  // namespace wifiplan
