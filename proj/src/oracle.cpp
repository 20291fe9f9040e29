#include "wifiplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wifiplan/error.hpp"

namespace wifiplan::oracle {

namespace {

constexpr double kTie = 1e-9;

// Coverage matrix and signal order, straight from the raw instance.
struct Raw {
  int n_tp = 0;
  int n_cs = 0;
  std::vector<std::vector<bool>> hears;  // hears[i][j]: j covers i
  std::vector<std::vector<int>> order;
  std::vector<std::vector<int>> gamma;  // gamma[i][j], 0 if j does not cover i

  explicit Raw(const Instance& inst)
      : n_tp(inst.num_tps()),
        n_cs(inst.num_css()),
        hears(n_tp, std::vector<bool>(n_cs, false)),
        order(inst.signal_order),
        gamma(n_tp, std::vector<int>(n_cs, 0)) {
    for (int j = 0; j < n_cs; ++j) {
      for (int i : inst.covers[j]) hears[i][j] = true;
    }
    for (int i = 0; i < n_tp; ++i) {
      for (std::size_t k = 0; k < order[i].size(); ++k) gamma[i][order[i][k]] = inst.rates[i][k];
    }
  }

  // -1 for an uncovered TP.
  std::vector<int> assoc(const std::vector<bool>& installed) const {
    std::vector<int> a(n_tp, -1);
    for (int i = 0; i < n_tp; ++i) {
      for (int j : order[i]) {
        if (installed[j]) {
          a[i] = j;
          break;
        }
      }
    }
    return a;
  }

  bool reach(int i, int h, const std::vector<int>& a) const {
    return hears[h][a[i]] || hears[i][a[h]];
  }
};

std::vector<bool> mask_of(const Raw& raw, const std::vector<int>& sites) {
  std::vector<bool> m(raw.n_cs, false);
  for (int j : sites) {
    if (j < 0 || j >= raw.n_cs) throw InvalidConfig("site id out of range");
    m[j] = true;
  }
  return m;
}

bool all_covered(const std::vector<int>& a) {
  return std::none_of(a.begin(), a.end(), [](int j) { return j < 0; });
}

double design_value(const Raw& raw, const std::vector<int>& a, const std::vector<int>& freq) {
  double total = 0.0;
  for (int i = 0; i < raw.n_tp; ++i) {
    int phi = 0;
    for (int h = 0; h < raw.n_tp; ++h) {
      if (h != i && freq[a[i]] == freq[a[h]] && raw.reach(i, h, a)) ++phi;
    }
    total += raw.gamma[i][a[i]] / (1.0 + phi);
  }
  return total;
}

double pcs_value(const Raw& raw, const std::vector<int>& a, double alpha) {
  double total = 0.0;
  for (int i = 0; i < raw.n_tp; ++i) {
    int sf = 0;
    int cs = 0;
    for (int h = 0; h < raw.n_tp; ++h) {
      if (h == i) continue;
      if (raw.reach(i, h, a)) ++sf;
      if (a[h] == a[i]) ++cs;
    }
    total += raw.gamma[i][a[i]] / (1.0 + alpha * sf + (1.0 - alpha) * cs);
  }
  return total;
}

std::vector<int> sites_of(std::uint64_t mask, int n) {
  std::vector<int> s;
  for (int j = 0; j < n; ++j) {
    if (mask >> j & 1U) s.push_back(j);
  }
  return s;
}

std::uint64_t power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int k = 0; k < exp; ++k) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

// Calls visit(map) for every map S → {0..F-1} (canonical: restricted growth).
template <class Visit>
void for_each_map(int n, int num_freqs, bool canonical, Visit visit) {
  std::vector<int> c(n, 0);
  auto rec = [&](auto&& self, int k, int used) -> void {
    if (k == n) {
      visit(c);
      return;
    }
    const int top = canonical ? std::min(num_freqs, used + 1) : num_freqs;
    for (int v = 0; v < top; ++v) {
      c[k] = v;
      self(self, k + 1, std::max(used, v + 1));
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

double efficiency(const Instance& inst, const std::vector<int>& sites, const std::vector<int>& freq) {
  const Raw raw(inst);
  const auto a = raw.assoc(mask_of(raw, sites));
  if (!all_covered(a)) return -1.0;
  return design_value(raw, a, freq);
}

double pcs_efficiency(const Instance& inst, const std::vector<int>& sites, double alpha) {
  const Raw raw(inst);
  const auto a = raw.assoc(mask_of(raw, sites));
  if (!all_covered(a)) return -1.0;
  return pcs_value(raw, a, alpha);
}

PsapAnswer brute_force_psap(const Instance& inst, double alpha, const Limits& limits) {
  const Raw raw(inst);
  if (raw.n_cs > limits.max_sites_psap) {
    throw TooLarge(std::to_string(raw.n_cs) + " sites exceed the PSAP oracle limit");
  }
  PsapAnswer best;
  best.objective = -1.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << raw.n_cs); ++mask) {
    std::vector<bool> installed(raw.n_cs);
    for (int j = 0; j < raw.n_cs; ++j) installed[j] = mask >> j & 1U;
    const auto a = raw.assoc(installed);
    if (!all_covered(a)) continue;
    const double v = pcs_value(raw, a, alpha);
    auto s = sites_of(mask, raw.n_cs);
    if (v > best.objective + kTie || (v >= best.objective - kTie && s < best.sites)) {
      best = {std::move(s), v};
    }
  }
  if (best.objective < 0) throw UncoverableInstance("no cover exists");
  return best;
}

WfapAnswer brute_force_wfap(const Instance& inst, const std::vector<int>& sites, int num_freqs,
                            bool canonical, const Limits& limits) {
  if (num_freqs < 1) throw InvalidConfig("num_freqs must be positive");
  const Raw raw(inst);
  const auto a = raw.assoc(mask_of(raw, sites));
  if (!all_covered(a)) throw InconsistentDesign("sites do not form a cover");
  std::vector<int> s = sites;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (power(num_freqs, static_cast<int>(s.size()), limits.max_assignments) > limits.max_assignments) {
    throw TooLarge("too many frequency maps to enumerate");
  }
  WfapAnswer best;
  best.objective = -1.0;
  std::vector<int> freq(raw.n_cs, -1);
  for_each_map(static_cast<int>(s.size()), num_freqs, canonical, [&](const std::vector<int>& c) {
    for (std::size_t k = 0; k < s.size(); ++k) freq[s[k]] = c[k];
    const double v = design_value(raw, a, freq);
    if (v > best.objective + kTie) best = {freq, v};
  });
  return best;
}

WppAnswer brute_force_wpp(const Instance& inst, int num_freqs, const Limits& limits) {
  if (num_freqs < 1) throw InvalidConfig("num_freqs must be positive");
  const Raw raw(inst);
  if (raw.n_cs > limits.max_sites_wpp ||
      power(num_freqs, raw.n_cs, limits.max_assignments) > limits.max_assignments) {
    throw TooLarge("instance too large for the joint oracle");
  }
  WppAnswer best;
  best.objective = -1.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << raw.n_cs); ++mask) {
    const auto s = sites_of(mask, raw.n_cs);
    std::vector<bool> installed(raw.n_cs);
    for (int j : s) installed[j] = true;
    const auto a = raw.assoc(installed);
    if (!all_covered(a)) continue;
    std::vector<int> freq(raw.n_cs, -1);
    for_each_map(static_cast<int>(s.size()), num_freqs, true, [&](const std::vector<int>& c) {
      for (std::size_t k = 0; k < s.size(); ++k) freq[s[k]] = c[k];
      const double v = design_value(raw, a, freq);
      if (v > best.objective + kTie) best = {s, freq, v};
    });
  }
  if (best.objective < 0) throw UncoverableInstance("no cover exists");
  return best;
}

namespace {

// Fixes continuous variables from the binaries, then checks every row.
class MilpEnumerator {
 public:
  MilpEnumerator(const MilpModel& m, const Limits& limits) : m_(m) {
    const auto& vars = m.variables();
    std::vector<int> pos(vars.size(), -1);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (vars[k].kind == VarKind::Binary) {
        pos[k] = static_cast<int>(binaries_.size());
        binaries_.push_back(static_cast<int>(k));
      }
    }
    if (static_cast<int>(binaries_.size()) > limits.max_binaries) {
      throw TooLarge(std::to_string(binaries_.size()) + " binaries exceed the enumeration limit");
    }
    plan_continuous();
    rows_at_.resize(binaries_.size() + 1);
    for (std::size_t r = 0; r < m.rows().size(); ++r) {
      int last = -1;
      bool pure = true;
      for (const Term& t : m.rows()[r].terms) {
        if (pos[t.var] < 0) pure = false;
        last = std::max(last, pos[t.var]);
      }
      // Pure binary rows are checked as soon as their last binary is set.
      if (pure) {
        rows_at_[static_cast<std::size_t>(last + 1)].push_back(r);
      } else {
        mixed_.push_back(r);
      }
    }
    x_.assign(vars.size(), 0.0);
  }

  MilpAnswer run() {
    dfs(0);
    return best_;
  }

 private:
  struct Factor {
    int var;
    int row;
  };

  void plan_continuous() {
    const auto& vars = m_.variables();
    std::vector<bool> known(vars.size(), false);
    for (int b : binaries_) known[b] = true;
    for (const ProductLink& p : m_.products) known[p.product] = true;
    for (const ProductLink& p : m_.products) {
      if (std::find_if(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.var == p.factor; }) != factors_.end()) {
        continue;
      }
      factors_.push_back({p.factor, defining_row(p.factor)});
      known[p.factor] = true;
    }
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (known[k]) continue;
      factors_.push_back({static_cast<int>(k), defining_row(static_cast<int>(k))});
    }
  }

  bool is_product_of(int var, int factor) const {
    return std::any_of(m_.products.begin(), m_.products.end(),
                       [&](const ProductLink& p) { return p.product == var && p.factor == factor; });
  }

  int defining_row(int c) const {
    for (std::size_t r = 0; r < m_.rows().size(); ++r) {
      const Row& row = m_.rows()[r];
      if (row.relation != Relation::Equal) continue;
      bool has_c = false;
      bool ok = true;
      for (const Term& t : row.terms) {
        if (t.var == c) {
          has_c = true;
        } else if (m_.variables()[t.var].kind == VarKind::Continuous && !is_product_of(t.var, c)) {
          ok = false;
        }
      }
      if (has_c && ok) return static_cast<int>(r);
    }
    throw InvalidConfig("continuous variable '" + m_.variables()[c].name +
                        "' is not determined by the binaries");
  }

  double eval(const std::vector<Term>& terms) const {
    double s = 0.0;
    for (const Term& t : terms) s += t.coef * x_[t.var];
    return s;
  }

  bool row_ok(const Row& row) const {
    const double lhs = eval(row.terms);
    switch (row.relation) {
      case Relation::LessEqual: return lhs <= row.rhs + kRowTolerance;
      case Relation::GreaterEqual: return lhs >= row.rhs - kRowTolerance;
      case Relation::Equal: return std::abs(lhs - row.rhs) <= kRowTolerance;
    }
    return false;
  }

  // Solves row: a·c + Σ coef·(c·b_z) + Σ binary terms = rhs for c.
  bool complete() {
    for (const Factor& f : factors_) {
      const Row& row = m_.rows()[f.row];
      double slope = 0.0;
      double rest = 0.0;
      for (const Term& t : row.terms) {
        if (t.var == f.var) {
          slope += t.coef;
        } else if (m_.variables()[t.var].kind == VarKind::Binary) {
          rest += t.coef * x_[t.var];
        } else {
          const auto it = std::find_if(m_.products.begin(), m_.products.end(),
                                       [&](const ProductLink& p) { return p.product == t.var; });
          slope += t.coef * eval(it->binary_expr);
        }
      }
      if (std::abs(slope) < 1e-12) return false;
      x_[f.var] = (row.rhs - rest) / slope;
    }
    for (const ProductLink& p : m_.products) x_[p.product] = x_[p.factor] * eval(p.binary_expr);
    for (std::size_t k = 0; k < x_.size(); ++k) {
      const Variable& v = m_.variables()[k];
      if (x_[k] < v.lower - kRowTolerance || x_[k] > v.upper + kRowTolerance) return false;
    }
    return true;
  }

  void dfs(std::size_t depth) {
    for (std::size_t r : rows_at_[depth]) {
      if (!row_ok(m_.rows()[r])) return;
    }
    if (depth == binaries_.size()) {
      if (!complete()) return;
      for (std::size_t r : mixed_) {
        if (!row_ok(m_.rows()[r])) return;
      }
      const double obj = eval(m_.objective());
      if (!best_.feasible || obj > best_.objective + kTie) {
        best_.feasible = true;
        best_.objective = obj;
        best_.solution.values.clear();
        for (std::size_t k = 0; k < x_.size(); ++k) {
          best_.solution.values[m_.variables()[k].name] = x_[k];
        }
      }
      return;
    }
    for (double v : {0.0, 1.0}) {
      x_[binaries_[depth]] = v;
      dfs(depth + 1);
    }
    x_[binaries_[depth]] = 0.0;
  }

  const MilpModel& m_;
  std::vector<int> binaries_;
  std::vector<Factor> factors_;
  std::vector<std::vector<std::size_t>> rows_at_;
  std::vector<std::size_t> mixed_;
  std::vector<double> x_;
  MilpAnswer best_;
};

}  // namespace

MilpAnswer brute_force_milp(const MilpModel& model, const Limits& limits) {
  return MilpEnumerator(model, limits).run();
}

Instance reference_instance() {
  Instance inst;
  inst.css = {{0, {0.0, 0.0}}, {1, {20.0, 0.0}}};
  inst.tps = {{0, {-5.0, 0.0}}, {1, {8.0, 0.0}}, {2, {25.0, 0.0}}};
  inst.num_frequencies = 2;
  inst.covers = {{0, 1}, {1, 2}};
  inst.signal_order = {{0}, {0, 1}, {1}};
  inst.rates = {{54}, {54, 54}, {54}};
  inst.meta = {{"name", "inst-a"}};
  return inst;
}

}  // namespace wifiplan::oracle
