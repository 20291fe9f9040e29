#pragma once

#include <vector>

#include "wifiplan/topology.hpp"

namespace wifiplan {

/// α ∈ [0,1]; construction throws InvalidAlpha otherwise.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const { return value_; }

 private:
  double value_;
};

struct EfficiencyValue {
  double total = 0.0;
  std::vector<double> per_tp;
};

/// Interferer counts of one TP under a fixed association.
struct InterferenceCount {
  int sf = 0;  // |Φ^SF_i(S)|
  int cs = 0;  // |Φ^CS_i(S)|
};

std::vector<InterferenceCount> interference_counts(const Topology& topo, const Association& assoc);

/// Throws InconsistentDesign unless f is defined on every site of the cover.
void check_assignment(const Topology& topo, const Cover& cover, const FrequencyAssignment& f);

/// e(S,f): Σ Γ_{i,a_i} / (1 + |Φ_i(S,f)|).
EfficiencyValue eval_design(const Topology& topo, const Cover& cover, const FrequencyAssignment& f);
EfficiencyValue eval_sf(const Topology& topo, const Cover& cover);
EfficiencyValue eval_cs(const Topology& topo, const Cover& cover);
/// e^PCS(S,α): Σ Γ_{i,a_i} / (1 + α|Φ^SF_i| + (1-α)|Φ^CS_i|).
EfficiencyValue eval_pcs(const Topology& topo, const Cover& cover, Alpha alpha);

/// Per-TP term of e^PCS; shared by the solvers so that their reported
/// objectives agree bit-for-bit with eval_pcs.
inline double pcs_term(double rate, InterferenceCount c, double alpha) {
  return rate / (1.0 + alpha * c.sf + (1.0 - alpha) * c.cs);
}

/// Σ_i pcs_term for an association; eval_pcs reduces to this.
double pcs_total(const Topology& topo, const Association& assoc, double alpha);

}  // namespace wifiplan
