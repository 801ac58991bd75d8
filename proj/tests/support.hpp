#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfl/formula.hpp"
#include "cfl/model.hpp"
#include "cfl/quantum.hpp"

namespace cfl::test {

inline constexpr double kHardyOptimum = 0.09016994374947424;  // (5*sqrt(5) - 11) / 2

inline const HardyConfig& hardy_config() {
  static const HardyConfig cfg = find_hardy();
  return cfg;
}

inline const ProbabilityTable& hardy_table() {
  static const ProbabilityTable t = export_table(hardy_config());
  return t;
}

inline const Model& hardy_model() {
  static const Model m = build_model(hardy_table());
  return m;
}

// Hardy table whose (L1,R1) row sends every R1+ outcome to R1- with the same
// L outcome. The L1-,R1+ cell vanishes, L1-,R1- stays positive, and the L
// marginal is unchanged.
inline ProbabilityTable control_table() {
  ProbabilityTable t = hardy_table();
  for (Sign l : {Sign::Plus, Sign::Minus}) {
    const double moved = t.get(Setting::One, Setting::One, l, Sign::Plus);
    t.set(Setting::One, Setting::One, l, Sign::Plus, 0.0);
    t.set(Setting::One, Setting::One, l, Sign::Minus,
          t.get(Setting::One, Setting::One, l, Sign::Minus) + moved);
  }
  return t;
}

// Only the L1-,R1+ cell is zeroed, its mass moved to L1-,R1-.
inline ProbabilityTable narrow_control_table() {
  ProbabilityTable t = hardy_table();
  const double moved = t.get(Setting::One, Setting::One, Sign::Minus, Sign::Plus);
  t.set(Setting::One, Setting::One, Sign::Minus, Sign::Plus, 0.0);
  t.set(Setting::One, Setting::One, Sign::Minus, Sign::Minus,
        t.get(Setting::One, Setting::One, Sign::Minus, Sign::Minus) + moved);
  return t;
}

inline World W(std::string_view text) { return parse_world(text); }

// ---------------------------------------------------------------------------
// Independent Born-rule oracle. Written from the state and basis definitions
// without going through the library.

struct Angles {
  double theta, l1, l2, r1, r2;
};

inline double born(double theta, double a, Sign sa, double b, Sign sb) {
  const double u0 = sa == Sign::Plus ? std::cos(a) : -std::sin(a);
  const double u1 = sa == Sign::Plus ? std::sin(a) : std::cos(a);
  const double v0 = sb == Sign::Plus ? std::cos(b) : -std::sin(b);
  const double v1 = sb == Sign::Plus ? std::sin(b) : std::cos(b);
  const double amp = std::cos(theta) * u0 * v0 + std::sin(theta) * u1 * v1;
  return amp * amp;
}

struct OracleValues {
  double c1, c2, c3, c4;
};

inline OracleValues oracle_values(const Angles& x) {
  return {born(x.theta, x.l2, Sign::Minus, x.r2, Sign::Plus),
          born(x.theta, x.l2, Sign::Plus, x.r1, Sign::Plus),
          born(x.theta, x.l1, Sign::Minus, x.r2, Sign::Minus),
          born(x.theta, x.l1, Sign::Minus, x.r1, Sign::Plus)};
}

struct OracleResult {
  Angles best;
  OracleValues values;
};

// Dense grid over (theta, four angles) followed by compass pattern search on
// a quadratic penalty with an increasing weight.
inline OracleResult hardy_oracle(int grid = 14, int starts = 6) {
  const double pi = std::acos(-1.0);
  auto objective = [](const Angles& x, double mu) {
    const OracleValues v = oracle_values(x);
    return v.c4 - mu * (v.c1 + v.c2 + v.c3);
  };
  std::vector<std::pair<double, Angles>> cells;
  const double ht = (pi / 2) / grid;
  const double ha = pi / grid;
  for (int t = 0; t < grid; ++t) {
    for (int a = 0; a < grid; ++a) {
      for (int b = 0; b < grid; ++b) {
        for (int c = 0; c < grid; ++c) {
          for (int d = 0; d < grid; ++d) {
            Angles x{(t + 0.5) * ht, a * ha, b * ha, c * ha, d * ha};
            cells.emplace_back(objective(x, 10.0), x);
          }
        }
      }
    }
  }
  std::partial_sort(cells.begin(), cells.begin() + starts, cells.end(),
                    [](const auto& p, const auto& q) { return p.first > q.first; });

  OracleResult out{};
  double out_c4 = -1.0;
  for (int s = 0; s < starts; ++s) {
    Angles x = cells[s].second;
    for (double mu : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}) {
      double step = 0.05;
      double f = objective(x, mu);
      while (step > 1e-11) {
        bool moved = false;
        for (int k = 0; k < 5; ++k) {
          for (double sgn : {1.0, -1.0}) {
            Angles y = x;
            double* p = &y.theta + k;
            *p += sgn * step;
            const double g = objective(y, mu);
            if (g > f) {
              x = y;
              f = g;
              moved = true;
            }
          }
        }
        if (!moved) step *= 0.5;
      }
    }
    const OracleValues v = oracle_values(x);
    if (v.c1 + v.c2 + v.c3 < 1e-6 && v.c4 > out_c4) {
      out = {x, v};
      out_c4 = v.c4;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random generators.

inline Atom random_atom(std::mt19937_64& rng) {
  return Atom::from_index(std::uniform_int_distribution<std::size_t>(0, Atom::kCount - 1)(rng));
}

inline Atom random_choice(std::mt19937_64& rng, Region region) {
  return Atom::choice(region, std::bernoulli_distribution(0.5)(rng) ? Setting::One : Setting::Two);
}

// Arbitrary formula over all seven node kinds.
inline Formula random_formula(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 7);
  switch (pick(rng)) {
    case 0:
    case 1: return Formula::atom(random_atom(rng));
    case 2: return Formula::negation(random_formula(rng, depth - 1));
    case 3: return Formula::conjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return Formula::disjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return Formula::implication(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6: return Formula::strict(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default:
      return Formula::counterfactual(random_formula(rng, depth - 1),
                                     random_formula(rng, depth - 1));
  }
}

// Formula over atoms, ~, &, | and ->.
inline Formula random_rudimentary(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 5);
  switch (pick(rng)) {
    case 0:
    case 1: return Formula::atom(random_atom(rng));
    case 2: return Formula::negation(random_rudimentary(rng, depth - 1));
    case 3:
      return Formula::conjunction(random_rudimentary(rng, depth - 1),
                                  random_rudimentary(rng, depth - 1));
    case 4:
      return Formula::disjunction(random_rudimentary(rng, depth - 1),
                                  random_rudimentary(rng, depth - 1));
    default:
      return Formula::implication(random_rudimentary(rng, depth - 1),
                                  random_rudimentary(rng, depth - 1));
  }
}

// Random table with random zero cells; every choice pair keeps at least one
// positive cell.
inline ProbabilityTable random_table(std::mt19937_64& rng, double zero_rate = 0.35) {
  std::bernoulli_distribution zero(zero_rate);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  ProbabilityTable t;
  for (Setting l : {Setting::One, Setting::Two}) {
    for (Setting r : {Setting::One, Setting::Two}) {
      std::array<double, 4> w{};
      double sum = 0.0;
      while (sum == 0.0) {
        for (double& x : w) {
          x = zero(rng) ? 0.0 : weight(rng);
          sum += x;
        }
      }
      int i = 0;
      for (Sign a : {Sign::Plus, Sign::Minus}) {
        for (Sign b : {Sign::Plus, Sign::Minus}) t.set(l, r, a, b, w[i++] / sum);
      }
    }
  }
  return t;
}

inline HardyConfig random_config(std::mt19937_64& rng) {
  const double pi = std::acos(-1.0);
  std::uniform_real_distribution<double> t(0.0, pi / 2);
  std::uniform_real_distribution<double> a(-pi, pi);
  return {t(rng), a(rng), a(rng), a(rng), a(rng)};
}

// ---------------------------------------------------------------------------

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("cfl-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace cfl::test
