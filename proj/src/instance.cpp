#include "wifiplan/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "wifiplan/error.hpp"

namespace wifiplan {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool is_valid_rate(int mbps) {
  return std::find(kRateSet.begin(), kRateSet.end(), mbps) != kRateSet.end();
}

int Instance::rate(int tp, int site) const {
  const auto& order = signal_order.at(static_cast<std::size_t>(tp));
  auto it = std::find(order.begin(), order.end(), site);
  if (it == order.end()) {
    throw std::out_of_range("site " + std::to_string(site) + " does not cover test point " +
                            std::to_string(tp));
  }
  return rates.at(static_cast<std::size_t>(tp)).at(static_cast<std::size_t>(it - order.begin()));
}

std::vector<RateThreshold> default_rate_thresholds() {
  return {{0.25, 54}, {0.4, 48}, {0.5, 36}, {0.65, 24},
          {0.75, 18}, {0.85, 12}, {0.95, 9},  {1.0, 6}};
}

void validate(const Instance& inst) {
  const int n_tp = inst.num_tps();
  const int n_cs = inst.num_css();
  auto fail = [](const std::string& where, const std::string& what) {
    throw ParseError(where, what);
  };
  for (int i = 0; i < n_tp; ++i) {
    if (inst.tps[i].id != i) fail("tps[" + std::to_string(i) + "].id", "ids must be contiguous from 0");
  }
  for (int j = 0; j < n_cs; ++j) {
    if (inst.css[j].id != j) fail("css[" + std::to_string(j) + "].id", "ids must be contiguous from 0");
  }
  if (inst.num_frequencies < 1) fail("num_frequencies", "must be >= 1");
  if (static_cast<int>(inst.covers.size()) != n_cs) fail("covers", "expected one list per CS");
  if (static_cast<int>(inst.signal_order.size()) != n_tp) {
    fail("signal_order", "expected one list per TP");
  }
  if (static_cast<int>(inst.rates.size()) != n_tp) fail("rates", "expected rates for every TP");

  std::vector<std::vector<char>> in_cover(n_cs, std::vector<char>(n_tp, 0));
  for (int j = 0; j < n_cs; ++j) {
    const auto& cov = inst.covers[j];
    for (std::size_t k = 0; k < cov.size(); ++k) {
      const std::string where = "covers[" + std::to_string(j) + "]";
      if (cov[k] < 0 || cov[k] >= n_tp) fail(where, "unknown TP id " + std::to_string(cov[k]));
      if (k > 0 && cov[k - 1] >= cov[k]) fail(where, "must be sorted without duplicates");
      in_cover[j][cov[k]] = 1;
    }
  }
  for (int i = 0; i < n_tp; ++i) {
    const std::string where = "signal_order[" + std::to_string(i) + "]";
    const auto& order = inst.signal_order[i];
    if (order.empty()) fail(where, "test point is not coverable");
    std::vector<char> seen(n_cs, 0);
    for (int j : order) {
      if (j < 0 || j >= n_cs) fail(where, "unknown CS id " + std::to_string(j));
      if (seen[j]) fail(where, "order not strict: CS " + std::to_string(j) + " repeated");
      seen[j] = 1;
      if (!in_cover[j][i]) {
        fail(where, "coverage asymmetry: CS " + std::to_string(j) + " listed but covers[" +
                        std::to_string(j) + "] lacks TP " + std::to_string(i));
      }
    }
    if (inst.rates[i].size() != order.size()) {
      fail("rates", "TP " + std::to_string(i) + " needs one rate per covering CS");
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (!is_valid_rate(inst.rates[i][k])) {
        fail("rates[\"" + std::to_string(i) + "," + std::to_string(order[k]) + "\"]",
             "rate " + std::to_string(inst.rates[i][k]) + " is not an 802.11g rate");
      }
    }
  }
  for (int j = 0; j < n_cs; ++j) {
    for (int i : inst.covers[j]) {
      const auto& order = inst.signal_order[i];
      if (std::find(order.begin(), order.end(), j) == order.end()) {
        fail("covers[" + std::to_string(j) + "]",
             "coverage asymmetry: TP " + std::to_string(i) + " missing CS " + std::to_string(j) +
                 " in its signal_order");
      }
    }
  }
}

namespace {

// Portable uniform double in [0, 1): mt19937_64 output is fixed by the
// standard, distributions are not.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_config(const GeneratorConfig& cfg) {
  auto fail = [](const std::string& what) { throw InvalidConfig(what); };
  if (cfg.num_tps < 0 || cfg.num_css < 0) fail("num_tps and num_css must be non-negative");
  if (cfg.num_frequencies < 1) fail("num_frequencies must be >= 1");
  if (!(cfg.area_side > 0.0)) fail("area_side must be positive");
  if (cfg.max_retries < 1) fail("max_retries must be >= 1");
  if (const auto* iso = std::get_if<IsotropicPropagation>(&cfg.propagation)) {
    if (!(iso->radius > 0.0)) fail("radius must be positive");
  } else {
    const auto& an = std::get<AnisotropicPropagation>(cfg.propagation);
    if (an.num_sectors < 1) fail("num_sectors must be >= 1");
    if (!(an.radius_min > 0.0)) fail("radius_min must be positive");
    if (an.radius_min > an.radius_max) fail("radius_min must not exceed radius_max");
  }
  const auto& th = cfg.rate_thresholds;
  if (th.empty()) fail("rate_thresholds must not be empty");
  for (std::size_t k = 0; k < th.size(); ++k) {
    if (!(th[k].distance_fraction > 0.0)) fail("rate threshold fractions must be positive");
    if (!is_valid_rate(th[k].rate)) fail("rate threshold uses a non-802.11g rate");
    if (k > 0 && !(th[k - 1].distance_fraction < th[k].distance_fraction)) {
      fail("rate thresholds must be sorted by increasing distance fraction");
    }
    if (k > 0 && !(th[k - 1].rate > th[k].rate)) fail("threshold rates must strictly decrease");
  }
  if (th.back().distance_fraction < 1.0) {
    fail("last rate threshold must reach the coverage radius (fraction >= 1)");
  }
}

class RadiusModel {
 public:
  RadiusModel(const GeneratorConfig& cfg, std::mt19937_64& rng) {
    if (const auto* iso = std::get_if<IsotropicPropagation>(&cfg.propagation)) {
      iso_radius_ = iso->radius;
      return;
    }
    const auto& an = std::get<AnisotropicPropagation>(cfg.propagation);
    sectors_.resize(static_cast<std::size_t>(cfg.num_css));
    for (auto& radii : sectors_) {
      radii.resize(static_cast<std::size_t>(an.num_sectors));
      for (auto& r : radii) r = an.radius_min + (an.radius_max - an.radius_min) * unit(rng);
    }
  }

  // Radius of `site` toward the direction of `to`. Anisotropic radii are
  // given at sector centers and interpolated linearly in angle.
  double toward(int site, const Point& from, const Point& to) const {
    if (sectors_.empty()) return iso_radius_;
    const auto& radii = sectors_[static_cast<std::size_t>(site)];
    const int k = static_cast<int>(radii.size());
    if (k == 1) return radii[0];
    double theta = std::atan2(to.y - from.y, to.x - from.x);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    const double width = 2.0 * std::numbers::pi / k;
    const double u = theta / width - 0.5;
    const double base = std::floor(u);
    const double t = u - base;
    const int k0 = ((static_cast<int>(base) % k) + k) % k;
    const int k1 = (k0 + 1) % k;
    return (1.0 - t) * radii[k0] + t * radii[k1];
  }

 private:
  double iso_radius_ = 0.0;
  std::vector<std::vector<double>> sectors_;
};

}  // namespace

nlohmann::json to_json(const GeneratorConfig& cfg) {
  nlohmann::json prop;
  if (const auto* iso = std::get_if<IsotropicPropagation>(&cfg.propagation)) {
    prop = {{"model", "isotropic"}, {"radius", iso->radius}};
  } else {
    const auto& an = std::get<AnisotropicPropagation>(cfg.propagation);
    prop = {{"model", "anisotropic"},
            {"num_sectors", an.num_sectors},
            {"radius_min", an.radius_min},
            {"radius_max", an.radius_max}};
  }
  nlohmann::json th = nlohmann::json::array();
  for (const auto& t : cfg.rate_thresholds) th.push_back({t.distance_fraction, t.rate});
  return {{"generator", "random-2d"},
          {"num_tps", cfg.num_tps},
          {"num_css", cfg.num_css},
          {"area_side", cfg.area_side},
          {"propagation", prop},
          {"rate_thresholds", th},
          {"seed", cfg.rng_seed}};
}

Instance generate(const GeneratorConfig& cfg) {
  check_config(cfg);
  std::mt19937_64 rng(cfg.rng_seed);

  Instance inst;
  inst.num_frequencies = cfg.num_frequencies;
  inst.meta = to_json(cfg);
  for (int j = 0; j < cfg.num_css; ++j) {
    const double x = cfg.area_side * unit(rng);
    const double y = cfg.area_side * unit(rng);
    inst.css.push_back({j, {x, y}});
  }
  const RadiusModel radius(cfg, rng);

  inst.covers.assign(static_cast<std::size_t>(cfg.num_css), {});
  for (int i = 0; i < cfg.num_tps; ++i) {
    struct Hit {
      double dist;
      int site;
      int rate;
    };
    std::vector<Hit> hits;
    Point pos;
    for (int attempt = 0; attempt < cfg.max_retries && hits.empty(); ++attempt) {
      pos.x = cfg.area_side * unit(rng);
      pos.y = cfg.area_side * unit(rng);
      for (const auto& cs : inst.css) {
        const double d = distance(pos, cs.pos);
        const double r = radius.toward(cs.id, cs.pos, pos);
        if (d > r) continue;
        int rate = cfg.rate_thresholds.back().rate;
        for (const auto& t : cfg.rate_thresholds) {
          if (t.distance_fraction * r >= d) {
            rate = t.rate;
            break;
          }
        }
        hits.push_back({d, cs.id, rate});
      }
    }
    if (hits.empty()) {
      throw UncoverableInstance("test point " + std::to_string(i) + " uncovered after " +
                                std::to_string(cfg.max_retries) + " draws");
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
      return a.dist != b.dist ? a.dist < b.dist : a.site < b.site;
    });
    inst.tps.push_back({i, pos});
    std::vector<int> order;
    std::vector<int> rates;
    for (const auto& h : hits) {
      order.push_back(h.site);
      rates.push_back(h.rate);
      inst.covers[static_cast<std::size_t>(h.site)].push_back(i);
    }
    inst.signal_order.push_back(std::move(order));
    inst.rates.push_back(std::move(rates));
  }
  return inst;
}

nlohmann::json to_json(const Instance& inst) {
  using nlohmann::json;
  json tps = json::array();
  for (const auto& tp : inst.tps) tps.push_back({{"id", tp.id}, {"x", tp.pos.x}, {"y", tp.pos.y}});
  json css = json::array();
  for (const auto& cs : inst.css) css.push_back({{"id", cs.id}, {"x", cs.pos.x}, {"y", cs.pos.y}});
  json rates = json::object();
  for (int i = 0; i < inst.num_tps(); ++i) {
    for (std::size_t k = 0; k < inst.signal_order[i].size(); ++k) {
      rates[std::to_string(i) + "," + std::to_string(inst.signal_order[i][k])] = inst.rates[i][k];
    }
  }
  return {{"tps", tps},
          {"css", css},
          {"num_frequencies", inst.num_frequencies},
          {"covers", inst.covers},
          {"signal_order", inst.signal_order},
          {"rates", rates},
          {"meta", inst.meta}};
}

namespace {

template <class T>
T field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where, std::string("missing key '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + "." + key, e.what());
  }
}

Point read_point(const nlohmann::json& obj, const std::string& where) {
  return {field<double>(obj, "x", where), field<double>(obj, "y", where)};
}

}  // namespace

Instance instance_from_json(const nlohmann::json& doc) {
  Instance inst;
  if (!doc.is_object()) throw ParseError("document", "top level must be an object");
  const auto tps = field<std::vector<nlohmann::json>>(doc, "tps", "document");
  for (std::size_t k = 0; k < tps.size(); ++k) {
    const std::string where = "tps[" + std::to_string(k) + "]";
    inst.tps.push_back({field<int>(tps[k], "id", where), read_point(tps[k], where)});
  }
  const auto css = field<std::vector<nlohmann::json>>(doc, "css", "document");
  for (std::size_t k = 0; k < css.size(); ++k) {
    const std::string where = "css[" + std::to_string(k) + "]";
    inst.css.push_back({field<int>(css[k], "id", where), read_point(css[k], where)});
  }
  inst.num_frequencies = field<int>(doc, "num_frequencies", "document");
  inst.covers = field<std::vector<std::vector<int>>>(doc, "covers", "document");
  inst.signal_order = field<std::vector<std::vector<int>>>(doc, "signal_order", "document");
  if (doc.contains("meta")) inst.meta = doc.at("meta");

  const auto rates = field<std::map<std::string, int>>(doc, "rates", "document");
  std::size_t used = 0;
  inst.rates.resize(inst.signal_order.size());
  for (std::size_t i = 0; i < inst.signal_order.size(); ++i) {
    for (int j : inst.signal_order[i]) {
      const std::string key = std::to_string(i) + "," + std::to_string(j);
      auto it = rates.find(key);
      if (it == rates.end()) throw ParseError("rates", "missing rate for pair \"" + key + "\"");
      inst.rates[i].push_back(it->second);
      ++used;
    }
  }
  if (used != rates.size()) throw ParseError("rates", "rate given for a non-covering pair");
  validate(inst);
  return inst;
}

std::string dump_instance(const Instance& inst) { return to_json(inst).dump(1) + "\n"; }

Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("json", e.what());
  }
  return instance_from_json(doc);
}

void save(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << dump_instance(inst);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Instance load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace wifiplan
