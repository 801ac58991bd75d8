#include "cfl/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cfl/error.hpp"

namespace cfl {

namespace {

constexpr Setting kSettings[] = {Setting::One, Setting::Two};
constexpr Sign kSigns[] = {Sign::Plus, Sign::Minus};
constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double zero;
  double one;
};

Vec2 basis_vector(double angle, Sign sign) {
  if (sign == Sign::Plus) return {std::cos(angle), std::sin(angle)};
  return {-std::sin(angle), std::cos(angle)};
}

// Angle reduced to [0, pi). Outcome probabilities are invariant under a
// shift by pi, which only flips the sign of both basis vectors.
double reduce_angle(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

double c4_on_surface(double theta, double angle_r2) {
  HardyConfig cfg = project_onto_hardy_surface(theta, angle_r2);
  return joint_probability(cfg, Setting::One, Setting::One, Sign::Minus, Sign::Plus);
}

struct Candidate {
  double theta;
  double angle_r2;
  double value;
};

// Compass search on (theta, angle_r2), maximizing c4. theta stays inside
// (0, pi/2); angle_r2 is periodic.
Candidate refine(Candidate start, double step, int iterations) {
  constexpr double kMinStep = 1e-13;
  constexpr double kThetaMargin = 1e-9;
  Candidate best = start;
  for (int it = 0; it < iterations && step > kMinStep; ++it) {
    bool improved = false;
    const double moves[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    for (const auto& mv : moves) {
      double theta = best.theta + mv[0];
      if (theta <= kThetaMargin || theta >= kPi / 2 - kThetaMargin) continue;
      double r2 = best.angle_r2 + mv[1];
      double v = c4_on_surface(theta, r2);
      if (v > best.value) {
        best = {theta, r2, v};
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

double HardyConfig::angle(Region region, Setting setting) const noexcept {
  if (region == Region::Left) return setting == Setting::One ? angle_l1 : angle_l2;
  return setting == Setting::One ? angle_r1 : angle_r2;
}

bool HardyConfig::finite() const noexcept {
  return std::isfinite(theta) && std::isfinite(angle_l1) && std::isfinite(angle_l2) &&
         std::isfinite(angle_r1) && std::isfinite(angle_r2);
}

bool HardyConfig::entangled() const noexcept { return theta > 0.0 && theta < kPi / 2; }

double joint_probability(const HardyConfig& cfg, Setting left, Setting right, Sign left_outcome,
                         Sign right_outcome) {
  if (!cfg.finite()) throw Error("Hardy config has a non-finite parameter");
  const Vec2 u = basis_vector(cfg.angle(Region::Left, left), left_outcome);
  const Vec2 v = basis_vector(cfg.angle(Region::Right, right), right_outcome);
  const double amplitude = std::cos(cfg.theta) * u.zero * v.zero + std::sin(cfg.theta) * u.one * v.one;
  return std::clamp(amplitude * amplitude, 0.0, 1.0);
}

ProbabilityTable export_table(const HardyConfig& cfg) {
  ProbabilityTable table;
  for (Setting l : kSettings) {
    for (Setting r : kSettings) {
      for (Sign ol : kSigns) {
        for (Sign orr : kSigns) {
          double p = joint_probability(cfg, l, r, ol, orr);
          table.set(l, r, ol, orr, p <= kBornZero ? 0.0 : p);
        }
      }
    }
  }
  return table;
}

PredictionReport verify_hardy(const HardyConfig& cfg, double tol, double positivity_floor) {
  if (!(tol > 0.0)) throw Error("tolerance must be positive");
  PredictionReport r;
  r.tolerance = tol;
  r.positivity_floor = positivity_floor;
  r.c1 = joint_probability(cfg, Setting::Two, Setting::Two, Sign::Minus, Sign::Plus);
  r.c2 = joint_probability(cfg, Setting::Two, Setting::One, Sign::Plus, Sign::Plus);
  r.c3 = joint_probability(cfg, Setting::One, Setting::Two, Sign::Minus, Sign::Minus);
  r.c4 = joint_probability(cfg, Setting::One, Setting::One, Sign::Minus, Sign::Plus);
  r.marginal_l1_minus = r.c4 + joint_probability(cfg, Setting::One, Setting::One, Sign::Minus,
                                                  Sign::Minus);
  r.c1_pass = r.c1 <= tol;
  r.c2_pass = r.c2 <= tol;
  r.c3_pass = r.c3 <= tol;
  r.c4_pass = r.c4 >= positivity_floor;
  return r;
}

HardyConfig project_onto_hardy_surface(double theta, double angle_r2) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  HardyConfig cfg;
  cfg.theta = theta;
  cfg.angle_r2 = angle_r2;
  // c1: <-_{L2} +_{R2}|psi> = -ct sin(l2) cos(r2) + st cos(l2) sin(r2) = 0
  cfg.angle_l2 = std::atan2(st * std::sin(angle_r2), ct * std::cos(angle_r2));
  // c2: <+_{L2} +_{R1}|psi> = ct cos(l2) cos(r1) + st sin(l2) sin(r1) = 0
  cfg.angle_r1 = std::atan2(ct * std::cos(cfg.angle_l2), -st * std::sin(cfg.angle_l2));
  // c3: <-_{L1} -_{R2}|psi> = ct sin(l1) sin(r2) + st cos(l1) cos(r2) = 0
  cfg.angle_l1 = std::atan2(st * std::cos(angle_r2), -ct * std::sin(angle_r2));
  return cfg;
}

HardyConfig find_hardy(const SearchParams& params) {
  if (params.grid < 2 || params.refine_iterations < 0 || params.starts < 1) {
    throw SearchError("invalid search parameters");
  }
  const int n = params.grid;
  const double theta_step = (kPi / 2) / n;
  const double r2_step = kPi / n;

  std::vector<Candidate> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double theta = (i + 0.5) * theta_step;
      double r2 = (j + 0.5) * r2_step;
      cells.push_back({theta, r2, c4_on_surface(theta, r2)});
    }
  }
  const std::size_t starts = std::min<std::size_t>(params.starts, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + starts, cells.end(),
                    [](const Candidate& a, const Candidate& b) {
                      if (a.value != b.value) return a.value > b.value;
                      if (a.theta != b.theta) return a.theta < b.theta;
                      return a.angle_r2 < b.angle_r2;
                    });

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  Candidate best{0.0, 0.0, -1.0};
  for (std::size_t s = 0; s < starts; ++s) {
    Candidate start = cells[s];
    start.theta = std::clamp(start.theta + jitter(rng) * theta_step, 1e-6, kPi / 2 - 1e-6);
    start.angle_r2 += jitter(rng) * r2_step;
    start.value = c4_on_surface(start.theta, start.angle_r2);
    Candidate c = refine(start, std::max(theta_step, r2_step), params.refine_iterations);
    // Ordered reduction: first strict improvement wins.
    if (c.value > best.value) best = c;
  }

  HardyConfig cfg = project_onto_hardy_surface(best.theta, best.angle_r2);
  cfg.angle_l1 = reduce_angle(cfg.angle_l1);
  cfg.angle_l2 = reduce_angle(cfg.angle_l2);
  cfg.angle_r1 = reduce_angle(cfg.angle_r1);
  cfg.angle_r2 = reduce_angle(cfg.angle_r2);

  constexpr double kConstraintTolerance = 1e-10;
  PredictionReport report = verify_hardy(cfg, kConstraintTolerance);
  if (!report.pass()) {
    throw SearchError("Hardy search failed to satisfy the constraints (c1=" +
                      std::to_string(report.c1) + ", c2=" + std::to_string(report.c2) +
                      ", c3=" + std::to_string(report.c3) + ", c4=" + std::to_string(report.c4) +
                      ")");
  }
  return cfg;
}

}  // namespace cfl
