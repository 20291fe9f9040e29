#include <algorithm>
#include <set>

#include "wifiplan/aploc.hpp"
#include "wifiplan/error.hpp"
#include "wifiplan/freqassign.hpp"
#include "wifiplan/milp.hpp"

namespace wifiplan {

namespace {

std::string nm(std::string_view prefix, std::initializer_list<long long> idx) {
  std::string s(prefix);
  for (long long v : idx) {
    s += '_';
    s += std::to_string(v);
  }
  return s;
}

std::string pair_name(std::string_view prefix, int a, int b) {
  return nm(prefix, {std::min(a, b), std::max(a, b)});
}

std::string scenario_name(int tp, std::size_t s) {
  return "w_" + std::to_string(tp) + "_s" + std::to_string(s);
}

std::string subset_name(int tp, std::uint64_t mask) {
  return "wa_" + std::to_string(tp) + "_" + std::to_string(mask);
}

int var(const MilpModel& m, const std::string& name) {
  const auto idx = m.find(name);
  if (!idx) throw std::logic_error("model lacks variable '" + name + "'");
  return *idx;
}

// z = c·b for binary-valued b, with c ∈ [lo, hi].
void add_product_rows(MilpModel& m, int z, int c, const std::vector<Term>& b, double lo, double hi) {
  const std::string& zn = m.variables()[z].name;
  auto with_b = [&](std::vector<Term> t, double scale) {
    for (const Term& bt : b) t.push_back({bt.var, scale * bt.coef});
    return t;
  };
  m.add_row(zn + "_ge_c", with_b({{z, 1.0}, {c, -1.0}}, -hi), Relation::GreaterEqual, -hi);
  m.add_row(zn + "_le_c", with_b({{z, 1.0}, {c, -1.0}}, -lo), Relation::LessEqual, -lo);
  m.add_row(zn + "_ge_lo", with_b({{z, 1.0}}, -lo), Relation::GreaterEqual, 0.0);
  m.add_row(zn + "_le_hi", with_b({{z, 1.0}}, -hi), Relation::LessEqual, 0.0);
  m.products.push_back({z, c, b});
}

std::string alpha_text(double alpha) {
  std::string s = std::to_string(alpha);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.push_back('0');
  return s;
}

// x_j, l_ij and rows (4)-(6), shared by every AP location model.
void add_location_part(MilpModel& m, const Topology& topo) {
  for (int j = 0; j < topo.num_css(); ++j) m.add_binary(nm("x", {j}));
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int j : topo.covering(i)) m.add_binary(nm("l", {i, j}));
  }
}

void add_location_rows(MilpModel& m, const Topology& topo) {
  for (int i = 0; i < topo.num_tps(); ++i) {
    std::vector<Term> t;
    for (int j : topo.covering(i)) t.push_back({var(m, nm("l", {i, j})), 1.0});
    m.add_row(nm("cov", {i}), std::move(t), Relation::Equal, 1.0);
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int j : topo.covering(i)) {
      m.add_row(nm("open", {i, j}), {{var(m, nm("l", {i, j})), 1.0}, {var(m, nm("x", {j})), -1.0}},
                Relation::LessEqual, 0.0);
    }
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto order = topo.covering(i);
    for (std::size_t r = 0; r < order.size(); ++r) {
      std::vector<Term> t{{var(m, nm("x", {order[r]})), 1.0}};
      for (int k : topo.weaker(i, static_cast<int>(r))) t.push_back({var(m, nm("l", {i, k})), 1.0});
      m.add_row(nm("near", {i, order[r]}), std::move(t), Relation::LessEqual, 1.0);
    }
  }
}

std::vector<int> shared_sites(const Topology& topo, int i, int h) {
  std::vector<int> out;
  for (int j : topo.covering(i)) {
    if (topo.covers(j, h)) out.push_back(j);
  }
  return out;
}

}  // namespace

MilpModel build_psap_lin(const Topology& topo, Alpha alpha, LinVariant variant) {
  const double a = alpha.value();
  const bool lin_a = variant == LinVariant::LinA;
  MilpModel m;
  m.formulation = lin_a ? Formulation::LinA : Formulation::LinB;
  m.alpha = a;
  m.comment = std::string(to_string(*m.formulation)) + " alpha=" + alpha_text(a);
  add_location_part(m, topo);

  if (lin_a) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      for (int h : topo.neighbors(i)) {
        if (h > i) m.add_binary(pair_name("y", i, h));
      }
    }
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int j : topo.covering(i)) m.add_continuous(nm("c", {i, j}), 0.0, topo.rate(i, j));
  }
  // Products, grouped by family.
  struct Pending {
    int z;
    int c;
    std::vector<Term> b;
    double hi;
  };
  std::vector<Pending> products;
  auto product = [&](std::string zname, int i, int j, std::vector<Term> b) {
    const double hi = topo.rate(i, j);
    const int z = m.add_continuous(std::move(zname), 0.0, hi);
    products.push_back({z, var(m, nm("c", {i, j})), std::move(b), hi});
  };
  if (lin_a && a > 0.0) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      for (int j : topo.covering(i)) {
        for (int h : topo.neighbors(i)) {
          if (h != i) product(nm("zy", {i, h, j}), i, j, {{var(m, pair_name("y", i, h)), 1.0}});
        }
      }
    }
  }
  if (!lin_a && a > 0.0) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      const auto order = topo.covering(i);
      for (std::size_t r = 0; r < order.size(); ++r) {
        const auto weaker = topo.weaker(i, static_cast<int>(r));
        for (int h : topo.sf_set(i, static_cast<int>(r))) {
          std::vector<Term> b;
          for (int k : weaker) {
            if (topo.covers(k, h)) b.push_back({var(m, nm("l", {h, k})), 1.0});
          }
          product(nm("zu", {i, h, order[r]}), i, order[r], std::move(b));
        }
      }
    }
  }
  if (a < 1.0) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      for (int j : topo.covering(i)) {
        for (int h : topo.covered(j)) {
          if (h != i) product(nm("zl", {i, h, j}), i, j, {{var(m, nm("l", {h, j})), 1.0}});
        }
      }
    }
  }

  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int j : topo.covering(i)) m.add_objective(var(m, nm("c", {i, j})), 1.0);
  }
  add_location_rows(m, topo);
  if (lin_a) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      for (int h : topo.neighbors(i)) {
        if (h == i) continue;
        std::vector<Term> t{{var(m, pair_name("y", i, h)), 1.0}};
        for (int j : shared_sites(topo, i, h)) t.push_back({var(m, nm("l", {i, j})), -1.0});
        m.add_row(nm("intf", {i, h}), std::move(t), Relation::GreaterEqual, 0.0);
      }
    }
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto order = topo.covering(i);
    for (std::size_t r = 0; r < order.size(); ++r) {
      const int j = order[r];
      const double ncs = static_cast<double>(topo.cs_set(i, static_cast<int>(r)).size());
      std::vector<Term> t{{var(m, nm("c", {i, j})), lin_a ? 1.0 : 1.0 + a * ncs}};
      if (a > 0.0) {
        if (lin_a) {
          for (int h : topo.neighbors(i)) {
            if (h != i) t.push_back({var(m, nm("zy", {i, h, j})), a});
          }
        } else {
          for (int h : topo.sf_set(i, static_cast<int>(r))) t.push_back({var(m, nm("zu", {i, h, j})), a});
        }
      }
      if (a < 1.0) {
        for (int h : topo.cs_set(i, static_cast<int>(r))) {
          t.push_back({var(m, nm("zl", {i, h, j})), 1.0 - a});
        }
      }
      t.push_back({var(m, nm("l", {i, j})), -static_cast<double>(topo.rate(i, j))});
      m.add_row(nm("def", {i, j}), std::move(t), Relation::Equal, 0.0);
    }
  }
  for (const Pending& p : products) add_product_rows(m, p.z, p.c, p.b, 0.0, p.hi);
  return m;
}

MilpModel build_psap_enum(const Topology& topo, Alpha alpha, std::uint64_t cap) {
  const double a = alpha.value();
  MilpModel m;
  m.formulation = Formulation::PsapL;
  m.alpha = a;
  m.scenario_cap = cap;
  m.comment = std::string("psap-l alpha=") + alpha_text(a);

  std::vector<std::vector<InterferenceScenario>> scen(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) scen[i] = enumerate_scenarios(topo, i, alpha, cap);

  add_location_part(m, topo);
  std::vector<std::vector<int>> w(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (std::size_t s = 0; s < scen[i].size(); ++s) {
      w[i].push_back(m.add_binary(scenario_name(i, s)));
      m.add_objective(w[i].back(), scen[i][s].coeff);
    }
  }
  add_location_rows(m, topo);

  auto contains = [](const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
  };
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int j : topo.covering(i)) {
      std::vector<Term> t;
      for (std::size_t s = 0; s < scen[i].size(); ++s) {
        if (scen[i][s].site == j) t.push_back({w[i][s], 1.0});
      }
      t.push_back({var(m, nm("l", {i, j})), -1.0});
      m.add_row(nm("asg", {i, j}), std::move(t), Relation::Equal, 0.0);
    }
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : topo.neighbors(i)) {
      if (h <= i) continue;
      std::vector<Term> t;
      for (std::size_t s = 0; s < scen[i].size(); ++s) {
        if (contains(scen[i][s].hidden, h)) t.push_back({w[i][s], 1.0});
      }
      for (std::size_t s = 0; s < scen[h].size(); ++s) {
        if (contains(scen[h][s].hidden, i)) t.push_back({w[h][s], -1.0});
      }
      for (int j : shared_sites(topo, i, h)) {
        t.push_back({var(m, nm("l", {i, j})), 1.0});
        t.push_back({var(m, nm("l", {h, j})), -1.0});
      }
      m.add_row(nm("sym", {i, h}), std::move(t), Relation::Equal, 0.0);
    }
  }
  for (int ge = 0; ge < 2; ++ge) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      const auto order = topo.covering(i);
      for (std::size_t r = 0; r < order.size(); ++r) {
        const int j = order[r];
        for (int h : topo.cs_set(i, static_cast<int>(r))) {
          std::vector<Term> t;
          for (std::size_t s = 0; s < scen[i].size(); ++s) {
            if (scen[i][s].site == j && contains(scen[i][s].co_associated, h)) {
              t.push_back({w[i][s], 1.0});
            }
          }
          t.push_back({var(m, nm("l", {h, j})), -1.0});
          if (ge) {
            t.push_back({var(m, nm("l", {i, j})), -1.0});
            m.add_row(nm("co_ge", {i, j, h}), std::move(t), Relation::GreaterEqual, -1.0);
          } else {
            m.add_row(nm("co_le", {i, j, h}), std::move(t), Relation::LessEqual, 0.0);
          }
        }
      }
    }
  }
  return m;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

void check_wfap_freqs(int num_freqs) {
  if (num_freqs < 1) throw InvalidConfig("need at least one frequency");
}

// Pair variables v_jk for all j < k in S with the pigeonhole and
// transitivity rows of the partition formulation.
void add_partition_vars(MilpModel& m, const std::vector<int>& sites) {
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) m.add_binary(pair_name("v", sites[a], sites[b]));
  }
}

void add_partition_rows(MilpModel& m, const std::vector<int>& sites, int num_freqs) {
  const std::size_t n = sites.size();
  auto v = [&](int j, int k) { return var(m, pair_name("v", j, k)); };
  // Every (|F|+1)-subset holds two APs on one frequency.
  const std::size_t t = static_cast<std::size_t>(num_freqs) + 1;
  if (n >= t) {
    std::vector<std::size_t> pick(t);
    for (std::size_t k = 0; k < t; ++k) pick[k] = k;
    while (true) {
      std::vector<Term> terms;
      std::string name = "pg";
      for (std::size_t a = 0; a < t; ++a) {
        name += "_" + std::to_string(sites[pick[a]]);
        for (std::size_t b = a + 1; b < t; ++b) terms.push_back({v(sites[pick[a]], sites[pick[b]]), 1.0});
      }
      m.add_row(std::move(name), std::move(terms), Relation::GreaterEqual, 1.0);
      std::size_t k = t;
      while (k > 0 && pick[k - 1] == n - t + (k - 1)) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t q = k; q < t; ++q) pick[q] = pick[q - 1] + 1;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const int j = sites[a], k = sites[b], l = sites[c];
        m.add_row(nm("tr1", {j, k, l}), {{v(j, k), 1.0}, {v(j, l), -1.0}, {v(k, l), -1.0}},
                  Relation::GreaterEqual, -1.0);
        m.add_row(nm("tr2", {j, k, l}), {{v(k, l), 1.0}, {v(j, k), -1.0}, {v(j, l), -1.0}},
                  Relation::GreaterEqual, -1.0);
        m.add_row(nm("tr3", {j, k, l}), {{v(j, l), 1.0}, {v(j, k), -1.0}, {v(k, l), -1.0}},
                  Relation::GreaterEqual, -1.0);
      }
    }
  }
}

void check_row_budget(std::size_t n, int num_freqs, std::uint64_t budget) {
  const std::uint64_t rows =
      binomial(n, static_cast<std::uint64_t>(num_freqs) + 1) + 3 * binomial(n, 3);
  if (rows > budget) {
    throw TooManyAPs("partition rows for " + std::to_string(n) + " APs (" + std::to_string(rows) +
                     ") exceed the row budget " + std::to_string(budget));
  }
}

// Upper bound of c_i: Γ_{i,a_i} / (1 + |H_i|).
std::vector<double> efficiency_bounds(const Topology& topo, const FixedAssociationSets& fas) {
  std::vector<double> hi(topo.num_tps());
  for (int i = 0; i < topo.num_tps(); ++i) {
    hi[i] = topo.rate(i, fas.association.ap[i]) /
            (1.0 + static_cast<double>(fas.co_associated[i].size()));
  }
  return hi;
}

// c_i (objective) and z_ih for h in Ū_i.
void add_efficiency_vars(MilpModel& m, const Topology& topo, const FixedAssociationSets& fas) {
  const auto hi = efficiency_bounds(topo, fas);
  for (int i = 0; i < topo.num_tps(); ++i) m.add_objective(m.add_continuous(nm("c", {i}), 0.0, hi[i]), 1.0);
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : fas.contested[i]) m.add_continuous(nm("z", {i, h}), 0.0, hi[i]);
  }
}

// c_i(1+|H_i|) + Σ z_ih = Γ_{i,a_i} with z_ih = c_i · indicator(i, h).
template <class Indicator>
void add_efficiency_rows(MilpModel& m, const Topology& topo, const FixedAssociationSets& fas,
                         Indicator indicator) {
  const auto hi = efficiency_bounds(topo, fas);
  for (int i = 0; i < topo.num_tps(); ++i) {
    std::vector<Term> t{{var(m, nm("c", {i})), 1.0 + static_cast<double>(fas.co_associated[i].size())}};
    for (int h : fas.contested[i]) t.push_back({var(m, nm("z", {i, h})), 1.0});
    m.add_row(nm("def", {i}), std::move(t), Relation::Equal, topo.rate(i, fas.association.ap[i]));
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : fas.contested[i]) {
      add_product_rows(m, var(m, nm("z", {i, h})), var(m, nm("c", {i})), indicator(i, h), 0.0, hi[i]);
    }
  }
}

MilpModel wfap_shell(Formulation f, const Cover& cover, int num_freqs) {
  MilpModel m;
  m.formulation = f;
  m.num_freqs = num_freqs;
  m.sites = cover;
  m.comment = std::string(to_string(f)) + " F=" + std::to_string(num_freqs);
  return m;
}

}  // namespace

MilpModel build_wfap_h(const Topology& topo, const Cover& cover, int num_freqs) {
  check_wfap_freqs(num_freqs);
  const FixedAssociationSets fas = fixed_association_sets(topo, cover);
  const auto& ap = fas.association.ap;
  MilpModel m = wfap_shell(Formulation::WfapH, cover, num_freqs);

  for (int j : cover.sites()) {
    for (int f = 0; f < num_freqs; ++f) m.add_binary(nm("xf", {j, f}));
  }
  std::set<std::pair<int, int>> ap_pairs;
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : fas.contested[i]) ap_pairs.emplace(std::min(ap[i], ap[h]), std::max(ap[i], ap[h]));
  }
  for (const auto& [j, k] : ap_pairs) {
    for (int f = 0; f < num_freqs; ++f) m.add_binary(nm("p", {j, k, f}));
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : fas.contested[i]) {
      if (h > i) m.add_binary(pair_name("y", i, h));
    }
  }
  add_efficiency_vars(m, topo, fas);

  for (int j : cover.sites()) {
    std::vector<Term> t;
    for (int f = 0; f < num_freqs; ++f) t.push_back({var(m, nm("xf", {j, f})), 1.0});
    m.add_row(nm("freq", {j}), std::move(t), Relation::Equal, 1.0);
  }
  for (const auto& [j, k] : ap_pairs) {
    for (int f = 0; f < num_freqs; ++f) {
      const int p = var(m, nm("p", {j, k, f}));
      const int xj = var(m, nm("xf", {j, f}));
      const int xk = var(m, nm("xf", {k, f}));
      m.add_row(nm("and1", {j, k, f}), {{p, 1.0}, {xj, -1.0}}, Relation::LessEqual, 0.0);
      m.add_row(nm("and2", {j, k, f}), {{p, 1.0}, {xk, -1.0}}, Relation::LessEqual, 0.0);
      m.add_row(nm("and3", {j, k, f}), {{p, 1.0}, {xj, -1.0}, {xk, -1.0}}, Relation::GreaterEqual,
                  -1.0);
    }
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    for (int h : fas.contested[i]) {
      if (h < i) continue;
      const int j = std::min(ap[i], ap[h]);
      const int k = std::max(ap[i], ap[h]);
      std::vector<Term> t{{var(m, pair_name("y", i, h)), 1.0}};
      for (int f = 0; f < num_freqs; ++f) t.push_back({var(m, nm("p", {j, k, f})), -1.0});
      m.add_row(nm("pair", {i, h}), std::move(t), Relation::Equal, 0.0);
    }
  }
  add_efficiency_rows(m, topo, fas, [&](int i, int h) {
    return std::vector<Term>{{var(m, pair_name("y", i, h)), 1.0}};
  });
  return m;
}

MilpModel build_wfap_h2(const Topology& topo, const Cover& cover, int num_freqs,
                        std::uint64_t row_budget) {
  if (num_freqs != 2 && num_freqs != 3) throw InvalidConfig("WFAP-H2 needs 2 or 3 frequencies");
  const FixedAssociationSets fas = fixed_association_sets(topo, cover);
  check_row_budget(cover.sites().size(), num_freqs, row_budget);
  const auto& ap = fas.association.ap;
  MilpModel m = wfap_shell(Formulation::WfapH2, cover, num_freqs);
  add_partition_vars(m, cover.sites());
  add_efficiency_vars(m, topo, fas);
  add_partition_rows(m, cover.sites(), num_freqs);
  add_efficiency_rows(m, topo, fas, [&](int i, int h) {
    return std::vector<Term>{{var(m, pair_name("v", ap[i], ap[h])), 1.0}};
  });
  return m;
}

MilpModel build_wfap_enum(const Topology& topo, const Cover& cover, int num_freqs,
                          std::uint64_t cap, std::uint64_t row_budget) {
  if (num_freqs != 2 && num_freqs != 3) throw InvalidConfig("WFAP-L needs 2 or 3 frequencies");
  const FixedAssociationSets fas = fixed_association_sets(topo, cover);
  check_row_budget(cover.sites().size(), num_freqs, row_budget);
  const auto& ap = fas.association.ap;
  for (int i = 0; i < topo.num_tps(); ++i) {
    const std::uint64_t bits = fas.contested_aps[i].size();
    if (bits >= 63 || (std::uint64_t{1} << bits) > cap) throw ScenarioExplosion(i, ap[i], bits);
  }
  MilpModel m = wfap_shell(Formulation::WfapL, cover, num_freqs);
  m.scenario_cap = cap;
  add_partition_vars(m, cover.sites());
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto& aps = fas.contested_aps[i];
    const double base = 1.0 + static_cast<double>(fas.co_associated[i].size());
    const double rate = topo.rate(i, ap[i]);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << aps.size()); ++mask) {
      int count = 0;
      for (int h : fas.contested[i]) {
        const auto pos = std::lower_bound(aps.begin(), aps.end(), ap[h]) - aps.begin();
        if (mask >> pos & 1U) ++count;
      }
      const int w = m.add_binary(subset_name(i, mask));
      m.add_objective(w, rate / (base + count));
    }
  }
  add_partition_rows(m, cover.sites(), num_freqs);
  for (int i = 0; i < topo.num_tps(); ++i) {
    const auto& aps = fas.contested_aps[i];
    for (std::size_t b = 0; b < aps.size(); ++b) {
      std::vector<Term> t{{var(m, pair_name("v", ap[i], aps[b])), 1.0}};
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << aps.size()); ++mask) {
        if (mask >> b & 1U) t.push_back({var(m, subset_name(i, mask)), -1.0});
      }
      m.add_row(nm("link", {i, aps[b]}), std::move(t), Relation::Equal, 0.0);
    }
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    std::vector<Term> t;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << fas.contested_aps[i].size()); ++mask) {
      t.push_back({var(m, subset_name(i, mask)), 1.0});
    }
    m.add_row(nm("conv", {i}), std::move(t), Relation::Equal, 1.0);
  }
  return m;
}

SolutionVector embed_design(const MilpModel& model, const Topology& topo, const Cover& cover,
                            const std::optional<FrequencyAssignment>& f) {
  if (!model.formulation) throw InconsistentDesign("model carries no build context");
  const Formulation form = *model.formulation;
  SolutionVector sol;
  auto set = [&](const std::string& name, double value) {
    if (!model.find(name)) throw UnknownVariable(name);
    sol.values[name] = value;
  };

  if (is_psap(form)) {
    Association assoc;
    try {
      assoc = associate(topo, cover);
    } catch (const NotACover& e) {
      throw InconsistentDesign(e.what());
    }
    const double a = model.alpha;
    const auto counts = interference_counts(topo, assoc);
    for (int j : cover.sites()) set(nm("x", {j}), 1.0);
    for (int i = 0; i < topo.num_tps(); ++i) set(nm("l", {i, assoc.ap[i]}), 1.0);
    if (form == Formulation::PsapL) {
      for (int i = 0; i < topo.num_tps(); ++i) {
        set(scenario_name(i, realized_scenario_index(topo, assoc, i)), 1.0);
      }
      return sol;
    }
    const auto sf = sf_interferers(topo, assoc);
    for (int i = 0; i < topo.num_tps(); ++i) {
      const int j = assoc.ap[i];
      const int r = topo.rank(i, j);
      const double term = pcs_term(topo.rate(i, j), counts[i], a);
      set(nm("c", {i, j}), term);
      if (a < 1.0) {
        for (int h : topo.cs_set(i, r)) set(nm("zl", {i, h, j}), assoc.ap[h] == j ? term : 0.0);
      }
      if (form == Formulation::LinA) {
        for (int h : sf[i]) {
          if (h > i) set(pair_name("y", i, h), 1.0);
        }
        if (a > 0.0) {
          for (int h : topo.neighbors(i)) {
            if (h == i) continue;
            const bool y = std::binary_search(sf[i].begin(), sf[i].end(), h);
            set(nm("zy", {i, h, j}), y ? term : 0.0);
          }
        }
      } else if (a > 0.0) {
        for (int h : topo.sf_set(i, r)) set(nm("zu", {i, h, j}), topo.covers(assoc.ap[h], i) ? term : 0.0);
      }
    }
    return sol;
  }

  if (cover != model.sites) throw InconsistentDesign("cover differs from the model's cover");
  if (!f) throw InconsistentDesign("frequency assignment required for WFAP models");
  try {
    check_assignment(topo, cover, *f);
  } catch (const InconsistentDesign&) {
    throw;
  }
  for (int j : cover.sites()) {
    if ((*f)[j] >= model.num_freqs) {
      throw InconsistentDesign("site " + std::to_string(j) + " uses frequency " +
                               std::to_string((*f)[j]) + " beyond |F|");
    }
  }
  const FixedAssociationSets fas = fixed_association_sets(topo, cover);
  const auto& ap = fas.association.ap;
  auto same = [&](int j, int k) { return (*f)[j] == (*f)[k]; };

  if (form == Formulation::WfapH) {
    for (int j : cover.sites()) set(nm("xf", {j, (*f)[j]}), 1.0);
  } else {
    const auto& s = cover.sites();
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        if (same(s[a], s[b])) set(pair_name("v", s[a], s[b]), 1.0);
      }
    }
  }
  if (form == Formulation::WfapL) {
    for (int i = 0; i < topo.num_tps(); ++i) {
      const auto& aps = fas.contested_aps[i];
      std::uint64_t mask = 0;
      for (std::size_t b = 0; b < aps.size(); ++b) {
        if (same(aps[b], ap[i])) mask |= std::uint64_t{1} << b;
      }
      set(subset_name(i, mask), 1.0);
    }
    return sol;
  }
  for (int i = 0; i < topo.num_tps(); ++i) {
    int clash = 0;
    for (int h : fas.contested[i]) clash += same(ap[i], ap[h]) ? 1 : 0;
    const double c =
        topo.rate(i, ap[i]) / (1.0 + static_cast<double>(fas.co_associated[i].size()) + clash);
    set(nm("c", {i}), c);
    for (int h : fas.contested[i]) {
      const bool on = same(ap[i], ap[h]);
      set(nm("z", {i, h}), on ? c : 0.0);
      if (form == Formulation::WfapH && h > i && on) {
        set(pair_name("y", i, h), 1.0);
        const int j = std::min(ap[i], ap[h]);
        const int k = std::max(ap[i], ap[h]);
        set(nm("p", {j, k, (*f)[ap[i]]}), 1.0);
      }
    }
  }
  return sol;
}

}  // namespace wifiplan
