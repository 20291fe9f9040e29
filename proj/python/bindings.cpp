#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "wifiplan/aploc.hpp"
#include "wifiplan/error.hpp"
#include "wifiplan/freqassign.hpp"
#include "wifiplan/milp.hpp"
#include "wifiplan/oracle.hpp"
#include "wifiplan/pipeline.hpp"

namespace py = pybind11;
namespace wp = wifiplan;

namespace {

wp::FrequencyAssignment assignment_from(const wp::Topology& topo, const std::map<int, int>& freq) {
  wp::FrequencyAssignment f{std::vector<int>(static_cast<std::size_t>(topo.num_css()), -1)};
  for (const auto& [site, value] : freq) {
    if (site < 0 || site >= topo.num_css()) throw wp::InconsistentDesign("unknown site " + std::to_string(site));
    f.freq[static_cast<std::size_t>(site)] = value;
  }
  return f;
}

std::map<int, int> assignment_to(const wp::Cover& cover, const wp::FrequencyAssignment& f) {
  std::map<int, int> out;
  for (int j : cover.sites()) out[j] = f[j];
  return out;
}

py::dict psap_dict(const wp::PsapResult& r) {
  py::dict d;
  d["sites"] = r.cover.sites();
  d["objective"] = r.objective;
  d["proof_status"] = wp::to_string(r.proof_status);
  d["nodes_explored"] = r.nodes_explored;
  return d;
}

py::dict fa_dict(const wp::Cover& cover, const wp::FaResult& r) {
  py::dict d;
  d["freq"] = assignment_to(cover, r.assignment);
  d["objective"] = r.value.total;
  d["optimal"] = r.optimal;
  return d;
}

wp::MilpModel build_model(const wp::Topology& topo, const std::string& formulation, double alpha,
                          int num_freqs, const std::vector<int>& sites) {
  const wp::Formulation f = wp::parse_formulation(formulation);
  switch (f) {
    case wp::Formulation::LinA: return wp::build_psap_lin(topo, wp::Alpha(alpha), wp::LinVariant::LinA);
    case wp::Formulation::LinB: return wp::build_psap_lin(topo, wp::Alpha(alpha), wp::LinVariant::LinB);
    case wp::Formulation::PsapL: return wp::build_psap_enum(topo, wp::Alpha(alpha));
    default: break;
  }
  const wp::Cover cover = wp::prune_unused_aps(topo, wp::Cover(sites));
  if (f == wp::Formulation::WfapH) return wp::build_wfap_h(topo, cover, num_freqs);
  if (f == wp::Formulation::WfapH2) return wp::build_wfap_h2(topo, cover, num_freqs);
  return wp::build_wfap_enum(topo, cover, num_freqs);
}

}  // namespace

PYBIND11_MODULE(_wifiplan, m) {
  m.doc() = "Access point location and frequency assignment for wireless LANs";

  auto base = py::register_exception<wp::Error>(m, "WifiplanError");
  py::register_exception<wp::NotACover>(m, "NotACover", base);
  py::register_exception<wp::InvalidAlpha>(m, "InvalidAlpha", base);
  py::register_exception<wp::InvalidConfig>(m, "InvalidConfig", base);
  py::register_exception<wp::ParseError>(m, "ParseError", base);
  py::register_exception<wp::IoError>(m, "IoError", base);
  py::register_exception<wp::BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<wp::ScenarioExplosion>(m, "ScenarioExplosion", base);
  py::register_exception<wp::InconsistentDesign>(m, "InconsistentDesign", base);

  py::class_<wp::Instance>(m, "Instance")
      .def_property_readonly("num_tps", &wp::Instance::num_tps)
      .def_property_readonly("num_css", &wp::Instance::num_css)
      .def_readonly("covers", &wp::Instance::covers)
      .def_readonly("signal_order", &wp::Instance::signal_order)
      .def("to_json", [](const wp::Instance& inst) { return wp::dump_instance(inst); })
      .def_static("from_json", &wp::parse_instance, py::arg("text"))
      .def_static("load", [](const std::string& path) { return wp::load(path); }, py::arg("path"))
      .def("save", [](const wp::Instance& inst, const std::string& path) { wp::save(inst, path); },
           py::arg("path"))
      .def(py::self == py::self);

  m.def(
      "generate",
      [](int num_tps, int num_css, std::uint64_t seed, int num_freqs, const std::string& propagation,
         double radius_min, double radius_max, double side) {
        wp::GeneratorConfig cfg;
        cfg.num_tps = num_tps;
        cfg.num_css = num_css;
        cfg.rng_seed = seed;
        cfg.num_frequencies = num_freqs;
        cfg.area_side = side;
        if (propagation == "isotropic") {
          cfg.propagation = wp::IsotropicPropagation{radius_max};
        } else if (propagation == "anisotropic") {
          cfg.propagation = wp::AnisotropicPropagation{16, radius_min, radius_max};
        } else {
          throw wp::InvalidConfig("propagation must be 'isotropic' or 'anisotropic'");
        }
        return wp::generate(cfg);
      },
      py::arg("num_tps"), py::arg("num_css"), py::arg("seed") = 1, py::arg("num_freqs") = 3,
      py::arg("propagation") = "anisotropic", py::arg("radius_min") = 0.25, py::arg("radius_max") = 0.45,
      py::arg("side") = 1.0);
  m.def("reference_instance", &wp::oracle::reference_instance);

  py::class_<wp::Topology>(m, "Topology")
      .def(py::init<wp::Instance>(), py::arg("instance"))
      .def_property_readonly("num_tps", &wp::Topology::num_tps)
      .def_property_readonly("num_css", &wp::Topology::num_css)
      .def("associate", [](const wp::Topology& t, const std::vector<int>& sites) {
        return wp::associate(t, wp::Cover(sites)).ap;
      });

  m.def(
      "eval_design",
      [](const wp::Topology& t, const std::vector<int>& sites, const std::map<int, int>& freq) {
        return wp::eval_design(t, wp::Cover(sites), assignment_from(t, freq)).total;
      },
      py::arg("topology"), py::arg("sites"), py::arg("freq"));
  m.def(
      "eval_pcs",
      [](const wp::Topology& t, const std::vector<int>& sites, double alpha) {
        return wp::eval_pcs(t, wp::Cover(sites), wp::Alpha(alpha)).total;
      },
      py::arg("topology"), py::arg("sites"), py::arg("alpha"));
  m.def("eval_sf", [](const wp::Topology& t, const std::vector<int>& s) { return wp::eval_sf(t, wp::Cover(s)).total; });
  m.def("eval_cs", [](const wp::Topology& t, const std::vector<int>& s) { return wp::eval_cs(t, wp::Cover(s)).total; });

  m.def(
      "solve_exact",
      [](const wp::Topology& t, double alpha, int max_sites) {
        wp::ExactBudget b;
        b.max_sites = max_sites;
        return psap_dict(wp::solve_exact(t, wp::Alpha(alpha), b));
      },
      py::arg("topology"), py::arg("alpha"), py::arg("max_sites") = 20);
  m.def(
      "solve_local_search",
      [](const wp::Topology& t, double alpha, std::uint64_t seed, int iters) {
        return psap_dict(wp::solve_local_search(t, wp::Alpha(alpha), seed, iters));
      },
      py::arg("topology"), py::arg("alpha"), py::arg("seed") = 0, py::arg("iters") = 1000);
  m.def(
      "solve_exact_fa",
      [](const wp::Topology& t, const std::vector<int>& sites, int num_freqs) {
        const wp::Cover c(sites);
        return fa_dict(c, wp::solve_exact_fa(t, c, num_freqs));
      },
      py::arg("topology"), py::arg("sites"), py::arg("num_freqs"));
  m.def(
      "reduce_then_solve",
      [](const wp::Topology& t, const std::vector<int>& sites, int num_freqs) {
        const wp::Cover c(sites);
        return fa_dict(c, wp::reduce_then_solve(t, c, num_freqs));
      },
      py::arg("topology"), py::arg("sites"), py::arg("num_freqs"));
  m.def(
      "prune_unused_aps",
      [](const wp::Topology& t, const std::vector<int>& sites) {
        return wp::prune_unused_aps(t, wp::Cover(sites)).sites();
      },
      py::arg("topology"), py::arg("sites"));
  m.def(
      "overlap_edges",
      [](const wp::Topology& t, const std::vector<int>& sites) {
        return wp::build_overlap_graph(t, wp::Cover(sites)).edges();
      },
      py::arg("topology"), py::arg("sites"));

  m.def(
      "emit_lp",
      [](const wp::Topology& t, const std::string& formulation, double alpha, int num_freqs,
         const std::vector<int>& sites) {
        return wp::emit_lp(build_model(t, formulation, alpha, num_freqs, sites));
      },
      py::arg("topology"), py::arg("formulation"), py::arg("alpha") = 0.5, py::arg("num_freqs") = 3,
      py::arg("sites") = std::vector<int>{});

  m.def(
      "run_pipeline",
      [](const wp::Topology& t, std::vector<double> alphas, std::vector<int> freqs,
         const std::string& solver, int budget_sites, std::uint64_t seed) {
        wp::PipelineConfig cfg;
        if (!alphas.empty()) cfg.alphas = std::move(alphas);
        cfg.freqs = std::move(freqs);
        cfg.solver = wp::parse_solver(solver);
        cfg.budget_sites = budget_sites;
        cfg.seed = seed;
        return wp::report_csv(wp::run_pipeline(t, cfg));
      },
      py::arg("topology"), py::arg("alphas") = std::vector<double>{}, py::arg("freqs") = std::vector<int>{2, 3},
      py::arg("solver") = "auto", py::arg("budget_sites") = 20, py::arg("seed") = 0,
      "Runs the α sweep and returns the CSV report.");
}
