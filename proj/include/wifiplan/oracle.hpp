#pragma once

#include <cstdint>
#include <vector>

#include "wifiplan/instance.hpp"
#include "wifiplan/milp.hpp"

// Exhaustive reference solvers. They read the raw Instance and rebuild every
// derived set themselves, so they share no logic with the production solvers.
namespace wifiplan::oracle {

/// Sites are CS ids in increasing order; `freq` is indexed by CS id with -1
/// off the cover.
struct PsapAnswer {
  std::vector<int> sites;
  double objective = 0.0;
};

struct WfapAnswer {
  std::vector<int> freq;
  double objective = 0.0;
};

struct WppAnswer {
  std::vector<int> sites;
  std::vector<int> freq;
  double objective = 0.0;
};

struct Limits {
  int max_sites_psap = 16;
  int max_sites_wpp = 10;
  std::uint64_t max_assignments = 20'000'000;
  int max_binaries = 22;
};

/// e(S,f), or -1 if S is not a cover.
double efficiency(const Instance& inst, const std::vector<int>& sites, const std::vector<int>& freq);
/// e^PCS(S,α), or -1 if S is not a cover.
double pcs_efficiency(const Instance& inst, const std::vector<int>& sites, double alpha);

/// Best cover for e^PCS; ties (1e-9) go to the lexicographically smallest.
PsapAnswer brute_force_psap(const Instance& inst, double alpha, const Limits& limits = {});

/// All |F|^|S| maps, or restricted-growth maps only when `canonical`.
WfapAnswer brute_force_wfap(const Instance& inst, const std::vector<int>& sites, int num_freqs,
                            bool canonical = false, const Limits& limits = {});

/// Joint optimum of e(S,f) over covers and canonical maps.
WppAnswer brute_force_wpp(const Instance& inst, int num_freqs, const Limits& limits = {});

struct MilpAnswer {
  bool feasible = false;
  double objective = 0.0;
  SolutionVector solution;
};

/// Enumerates the binaries of a built model. Each continuous variable must
/// be fixed by the binaries: either a recorded product z = c·b, or a factor
/// c with an equality row whose other continuous terms are its products.
MilpAnswer brute_force_milp(const MilpModel& model, const Limits& limits = {});

/// Two sites, three TPs: I_0 = {0,1}, I_1 = {1,2}, TP 1 hears site 0 first,
/// every rate 54.
Instance reference_instance();

}  // namespace wifiplan::oracle
