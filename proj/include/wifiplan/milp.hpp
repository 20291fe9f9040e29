#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wifiplan/efficiency.hpp"
#include "wifiplan/topology.hpp"

namespace wifiplan {

enum class VarKind { Binary, Continuous };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Row {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::Equal;
  double rhs = 0.0;
};

enum class Formulation { LinA, LinB, PsapL, WfapH, WfapH2, WfapL };

/// "lin-a", "lin-b", "psap-l", "wfap-h", "wfap-h2", "wfap-l".
const char* to_string(Formulation f);
Formulation parse_formulation(std::string_view text);
bool is_psap(Formulation f);

/// z = c · (Σ binary terms). Records how the hyperbolic device ties a
/// product variable to its factors; not part of the LP text.
struct ProductLink {
  int product = 0;
  int factor = 0;
  std::vector<Term> binary_expr;
};

/// Linear 0-1 maximization model. Variable and row names are unique.
class MilpModel {
 public:
  int add_binary(std::string name);
  int add_continuous(std::string name, double lower, double upper);
  /// Merges repeated variables and drops zero coefficients.
  void add_row(std::string name, std::vector<Term> terms, Relation rel, double rhs);
  void add_objective(int var, double coef);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Term>& objective() const { return objective_; }
  std::optional<int> find(std::string_view name) const;
  int num_binaries() const;

  /// First comment line of the LP text.
  std::string comment;

  // Build context, used to embed designs. Absent after parsing LP text.
  std::optional<Formulation> formulation;
  double alpha = 0.0;
  int num_freqs = 0;
  Cover sites;
  std::uint64_t scenario_cap = 0;
  std::vector<ProductLink> products;

 private:
  int add_variable(Variable v);

  std::vector<Variable> vars_;
  std::vector<Row> rows_;
  std::vector<Term> objective_;
  std::unordered_map<int, std::size_t> objective_slot_;
  std::unordered_map<std::string, int> index_;
};

/// Same variables (by name), objective and rows (in order).
bool same_model(const MilpModel& a, const MilpModel& b);

/// Domain meaning of a variable from its name prefix, e.g. "x_j: AP
/// installed at site j".
std::string annotation_of(std::string_view name);

enum class LinVariant { LinA, LinB };

/// PSAP-H with its products linearized. LinA: c_ij·y_ih and c_ij·l_hj for
/// every neighbor. LinB: y is replaced by its aggregated definition, so the
/// constant part α|N^CS_ij| moves into c's coefficient and only hidden
/// neighbors (N^SF_ij) need a product with Σ_{k∈J_ij∩J_h} l_hk.
MilpModel build_psap_lin(const Topology& topo, Alpha alpha, LinVariant variant);

/// PSAP-L over enumerated interference scenarios.
MilpModel build_psap_enum(const Topology& topo, Alpha alpha,
                          std::uint64_t cap = 4096);

/// WFAP-H on x_jf with AND-linearized products and the c/z device.
MilpModel build_wfap_h(const Topology& topo, const Cover& cover, int num_freqs);

inline constexpr std::uint64_t kDefaultRowBudget = 2'000'000;

/// WFAP-H2 on pair variables v_jk; num_freqs must be 2 or 3.
MilpModel build_wfap_h2(const Topology& topo, const Cover& cover, int num_freqs,
                        std::uint64_t row_budget = kDefaultRowBudget);

/// WFAP-L: enumerates subsets of C_i per TP, plus a convexity row per TP.
MilpModel build_wfap_enum(const Topology& topo, const Cover& cover, int num_freqs,
                          std::uint64_t cap = 4096,
                          std::uint64_t row_budget = kDefaultRowBudget);

std::string emit_lp(const MilpModel& model);
void emit_lp(const MilpModel& model, const std::filesystem::path& path);
/// Reads the LP subset written by emit_lp. Throws ParseError("line N", ...).
MilpModel parse_lp(std::string_view text);

/// `<stem>_<formulation>_<param>.lp`, param being α for AP location and
/// |F| for frequency assignment.
std::string lp_file_name(const std::string& stem, Formulation f, double alpha, int num_freqs);

struct SolutionVector {
  std::map<std::string, double> values;
  double operator[](const std::string& name) const;
};

struct CheckResult {
  bool feasible = true;
  std::vector<std::string> violated_rows;
  double objective = 0.0;
};

inline constexpr double kRowTolerance = 1e-6;

/// Missing variables read as 0; a name the model lacks throws UnknownVariable.
/// Bound and integrality violations are reported as "bounds:<var>".
CheckResult check_solution(const MilpModel& model, const SolutionVector& sol);

/// Maps a design onto the model's variables. PSAP models take the cover
/// (α is the model's); WFAP models take the model's own cover plus `f`.
/// Throws InconsistentDesign for a non-cover, a cover differing from the
/// model's, or a missing/partial assignment.
SolutionVector embed_design(const MilpModel& model, const Topology& topo, const Cover& cover,
                            const std::optional<FrequencyAssignment>& f = std::nullopt);

}  // namespace wifiplan
