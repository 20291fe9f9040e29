#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace wifiplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

struct TestPoint {
  int id = 0;
  Point pos;
  bool operator==(const TestPoint&) const = default;
};

struct CandidateSite {
  int id = 0;
  Point pos;
  bool operator==(const CandidateSite&) const = default;
};

/// IEEE 802.11g rate set, Mbps.
inline constexpr std::array<int, 8> kRateSet = {6, 9, 12, 18, 24, 36, 48, 54};

bool is_valid_rate(int mbps);

/// A planning instance. Every CS/TP id is its index in `css`/`tps`.
///
/// `signal_order[i]` is the strict order >_i on J_i (strongest first);
/// `covers[j]` is I_j, sorted ascending. `rates[i][k]` is the rate between TP
/// i and the CS `signal_order[i][k]`, so rates line up with the order.
struct Instance {
  std::vector<TestPoint> tps;
  std::vector<CandidateSite> css;
  int num_frequencies = 3;
  std::vector<std::vector<int>> covers;
  std::vector<std::vector<int>> signal_order;
  std::vector<std::vector<int>> rates;
  nlohmann::json meta = nlohmann::json::object();

  int num_tps() const { return static_cast<int>(tps.size()); }
  int num_css() const { return static_cast<int>(css.size()); }

  /// Rate Γ_ij; throws std::out_of_range when j does not cover i.
  int rate(int tp, int site) const;

  bool operator==(const Instance&) const = default;
};

/// Throws ParseError naming the first violated invariant.
void validate(const Instance& inst);

struct IsotropicPropagation {
  double radius = 1.0;
};

struct AnisotropicPropagation {
  int num_sectors = 16;
  double radius_min = 0.5;
  double radius_max = 1.0;
};

struct RateThreshold {
  double distance_fraction = 1.0;
  int rate = 6;
};

std::vector<RateThreshold> default_rate_thresholds();

struct GeneratorConfig {
  int num_tps = 100;
  int num_css = 50;
  int num_frequencies = 3;
  double area_side = 1.0;
  std::variant<IsotropicPropagation, AnisotropicPropagation> propagation =
      IsotropicPropagation{};
  std::vector<RateThreshold> rate_thresholds = default_rate_thresholds();
  std::uint64_t rng_seed = 1;
  int max_retries = 1000;
};

nlohmann::json to_json(const GeneratorConfig& cfg);

/// Draws a random 2D instance. Positions are uniform in the square, signal
/// strength decreases with distance (ties by CS id) and a TP whose position
/// is covered by no CS is re-drawn up to `max_retries` times.
Instance generate(const GeneratorConfig& cfg);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

/// Serialized form used by save(); byte-stable for a given instance.
std::string dump_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

void save(const Instance& inst, const std::filesystem::path& path);
Instance load(const std::filesystem::path& path);

}  // namespace wifiplan
