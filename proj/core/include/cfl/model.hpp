#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/atom.hpp"

namespace cfl {

// One of the sixteen world-histories: a measurement choice and an outcome in
// each region.
struct World {
  Setting left_choice = Setting::One;
  Setting right_choice = Setting::One;
  Sign left_outcome = Sign::Plus;
  Sign right_outcome = Sign::Plus;

  static constexpr std::size_t kCount = 16;

  // Canonical index: left choice, right choice, left outcome, right outcome,
  // most significant first, each in declared order.
  constexpr std::size_t index() const noexcept {
    return (static_cast<std::size_t>(left_choice) << 3) |
           (static_cast<std::size_t>(right_choice) << 2) |
           (static_cast<std::size_t>(left_outcome) << 1) |
           static_cast<std::size_t>(right_outcome);
  }
  static constexpr World from_index(std::size_t i) noexcept {
    return World{static_cast<Setting>((i >> 3) & 1), static_cast<Setting>((i >> 2) & 1),
                 static_cast<Sign>((i >> 1) & 1), static_cast<Sign>(i & 1)};
  }

  Setting choice(Region r) const noexcept { return r == Region::Left ? left_choice : right_choice; }
  Sign outcome(Region r) const noexcept { return r == Region::Left ? left_outcome : right_outcome; }

  friend constexpr bool operator==(const World&, const World&) = default;
};

// "L1,R2,-,+"
std::string to_string(const World& w);
// Accepts the to_string form, with optional spaces. Throws SchemaError.
World parse_world(std::string_view text);

// All sixteen worlds in canonical order.
const std::array<World, World::kCount>& enumerate_worlds();

// Choice atoms hold when the region's choice matches; outcome atoms also
// require the matching choice to have been made.
bool satisfies_atom(const World& w, Atom a) noexcept;

// A subset of the sixteen worlds.
class WorldSet {
 public:
  WorldSet() = default;
  static WorldSet all() { return WorldSet(std::bitset<World::kCount>().set()); }

  bool contains(const World& w) const noexcept { return bits_.test(w.index()); }
  void insert(const World& w) noexcept { bits_.set(w.index()); }
  void erase(const World& w) noexcept { bits_.reset(w.index()); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  std::optional<World> first() const noexcept;
  std::vector<World> worlds() const;

  bool is_subset_of(const WorldSet& other) const noexcept {
    return (bits_ & ~other.bits_).none();
  }
  WorldSet operator&(const WorldSet& o) const noexcept { return WorldSet(bits_ & o.bits_); }
  WorldSet operator|(const WorldSet& o) const noexcept { return WorldSet(bits_ | o.bits_); }
  // Complement relative to all sixteen worlds.
  WorldSet operator~() const noexcept { return WorldSet(~bits_); }
  std::uint16_t bits() const noexcept { return static_cast<std::uint16_t>(bits_.to_ulong()); }

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

 private:
  explicit WorldSet(std::bitset<World::kCount> bits) : bits_(bits) {}
  std::bitset<World::kCount> bits_;
};

// Joint outcome distribution for each of the four choice pairs.
class ProbabilityTable {
 public:
  static constexpr double kSumTolerance = 1e-9;

  ProbabilityTable() = default;
  static ProbabilityTable uniform();

  double get(Setting left, Setting right, Sign left_outcome, Sign right_outcome) const noexcept {
    return cells_[pair_index(left, right)][outcome_index(left_outcome, right_outcome)];
  }
  double get(const World& w) const noexcept {
    return get(w.left_choice, w.right_choice, w.left_outcome, w.right_outcome);
  }
  void set(Setting left, Setting right, Sign left_outcome, Sign right_outcome, double p) noexcept {
    cells_[pair_index(left, right)][outcome_index(left_outcome, right_outcome)] = p;
  }
  void set(const World& w, double p) noexcept {
    set(w.left_choice, w.right_choice, w.left_outcome, w.right_outcome, p);
  }

  // Probability of `outcome` in `region` given both choices.
  double marginal(Region region, Sign outcome, Setting left, Setting right) const noexcept;

  // Throws TableError on a negative or non-finite entry or a distribution
  // whose sum is off by more than kSumTolerance.
  void validate() const;

  // Largest difference between a region's outcome marginal under the two
  // choices of the other region. Zero for quantum-generated tables.
  double no_signaling_deviation() const noexcept;

  friend bool operator==(const ProbabilityTable&, const ProbabilityTable&) = default;

 private:
  static constexpr std::size_t pair_index(Setting l, Setting r) noexcept {
    return static_cast<std::size_t>(l) * 2 + static_cast<std::size_t>(r);
  }
  static constexpr std::size_t outcome_index(Sign l, Sign r) noexcept {
    return static_cast<std::size_t>(l) * 2 + static_cast<std::size_t>(r);
  }

  std::array<std::array<double, 4>, 4> cells_{};
};

// Table plus the worlds whose probability exceeds the threshold.
// Immutable once built.
class Model {
 public:
  static constexpr double kDefaultEpsilon = 1e-12;
  static constexpr double kMaxEpsilon = 1e-3;

  const ProbabilityTable& table() const noexcept { return table_; }
  double epsilon() const noexcept { return epsilon_; }
  const WorldSet& possible() const noexcept { return possible_; }
  bool is_possible(const World& w) const noexcept { return possible_.contains(w); }

 private:
  friend Model build_model(const ProbabilityTable& table, double epsilon);
  Model(ProbabilityTable table, double epsilon, WorldSet possible)
      : table_(table), epsilon_(epsilon), possible_(possible) {}

  ProbabilityTable table_;
  double epsilon_;
  WorldSet possible_;
};

// Throws TableError for an invalid table or epsilon outside [0, 1e-3], and
// DegenerateModelError when some choice pair has no possible world.
Model build_model(const ProbabilityTable& table, double epsilon = Model::kDefaultEpsilon);

// A single-cell quantum prediction of the Hardy setup: the probability of the
// given outcome pair under the given choice pair either vanishes or is
// strictly positive.
struct CellPrediction {
  std::string_view tag;
  Setting left_choice;
  Setting right_choice;
  Sign left_outcome;
  Sign right_outcome;
  bool must_vanish;

  World world() const noexcept {
    return World{left_choice, right_choice, left_outcome, right_outcome};
  }
};

// The three vanishing cells and the one positive cell, in order
// PRED21, PRED22, PRED23, PRED24.
const std::array<CellPrediction, 4>& hardy_predictions();

// Human-readable descriptions of the predictions the model violates, judged
// by its possibility set. Empty when the model realizes the Hardy pattern.
std::vector<std::string> hardy_violations(const Model& m);

}  // namespace cfl
