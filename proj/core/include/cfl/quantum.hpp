#pragma once

#include <cstdint>
#include <string>

#include "cfl/atom.hpp"
#include "cfl/model.hpp"

namespace cfl {

// Two-qubit pure state cos(theta)|00> + sin(theta)|11> measured in real
// bases. A setting with angle a has outcome vectors
//   |+> = cos(a)|0> + sin(a)|1>,   |-> = -sin(a)|0> + cos(a)|1>.
struct HardyConfig {
  double theta = 0.0;
  double angle_l1 = 0.0;
  double angle_l2 = 0.0;
  double angle_r1 = 0.0;
  double angle_r2 = 0.0;

  double angle(Region region, Setting setting) const noexcept;
  bool finite() const noexcept;
  // theta in (0, pi/2).
  bool entangled() const noexcept;

  friend bool operator==(const HardyConfig&, const HardyConfig&) = default;
};

// Born-rule probability of (left_outcome, right_outcome) when the regions
// measure `left` and `right`. Throws Error on a non-finite config.
double joint_probability(const HardyConfig& cfg, Setting left, Setting right, Sign left_outcome,
                         Sign right_outcome);

// Probabilities at or below this are exported as exact zeros.
inline constexpr double kBornZero = 1e-10;

ProbabilityTable export_table(const HardyConfig& cfg);

struct PredictionReport {
  double c1 = 0.0;  // P(L2-, R2+ | L2, R2), must vanish
  double c2 = 0.0;  // P(L2+, R1+ | L2, R1), must vanish
  double c3 = 0.0;  // P(L1-, R2- | L1, R2), must vanish
  double c4 = 0.0;  // P(L1-, R1+ | L1, R1), must be positive
  double marginal_l1_minus = 0.0;  // P(L1- | L1, R1)
  bool c1_pass = false;
  bool c2_pass = false;
  bool c3_pass = false;
  bool c4_pass = false;
  double tolerance = 0.0;
  double positivity_floor = 0.0;

  bool pass() const noexcept { return c1_pass && c2_pass && c3_pass && c4_pass; }
};

inline constexpr double kDefaultPositivityFloor = 1e-6;

PredictionReport verify_hardy(const HardyConfig& cfg, double tol,
                              double positivity_floor = kDefaultPositivityFloor);

struct SearchParams {
  std::uint64_t seed = 0;
  int grid = 96;                 // grid points per search axis
  int refine_iterations = 400;   // pattern-search iterations per start
  int starts = 6;                // refined starting points
};

// Maximizes the positive Hardy probability c4 over the constraint surface
// c1 = c2 = c3 = 0.
//
// The three vanishing cells are each linear in one measurement angle, so the
// surface is parametrized exactly by (theta, angle_r2): angle_l2 is solved
// from c1, angle_r1 from c2, and angle_l1 from c3 (projection method). The
// search grids (theta, angle_r2), perturbs the best cells with a seeded RNG,
// and refines each start by a compass pattern search. Returned angles lie in
// [0, pi). Throws SearchError if the result misses the constraints.
HardyConfig find_hardy(const SearchParams& params = {});

// Completes (theta, angle_r2) into the config on the constraint surface.
HardyConfig project_onto_hardy_surface(double theta, double angle_r2);

}  // namespace cfl
