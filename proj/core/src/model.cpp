#include "cfl/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "cfl/error.hpp"

namespace cfl {

namespace {

constexpr Setting kSettings[] = {Setting::One, Setting::Two};
constexpr Sign kSigns[] = {Sign::Plus, Sign::Minus};

std::string pair_name(Setting l, Setting r) {
  return std::string{'L', setting_digit(l), ',', 'R', setting_digit(r)};
}

}  // namespace

std::string to_string(const World& w) {
  return std::string{'L', setting_digit(w.left_choice), ',', 'R', setting_digit(w.right_choice),
                     ',', sign_char(w.left_outcome), ',', sign_char(w.right_outcome)};
}

World parse_world(std::string_view text) {
  std::vector<std::string> parts(1);
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == ',') {
      parts.emplace_back();
    } else {
      parts.back().push_back(c);
    }
  }
  auto fail = [&] {
    throw SchemaError("malformed world '" + std::string(text) +
                      "': expected the form L1,R2,-,+");
  };
  if (parts.size() != 4) fail();
  auto left = atom_from_string(parts[0]);
  auto right = atom_from_string(parts[1]);
  if (!left || !right || !left->is_choice() || !right->is_choice() ||
      left->region() != Region::Left || right->region() != Region::Right) {
    fail();
  }
  auto sign_of = [&](const std::string& s) {
    if (s == "+") return Sign::Plus;
    if (s == "-") return Sign::Minus;
    fail();
    return Sign::Plus;
  };
  return World{left->setting(), right->setting(), sign_of(parts[2]), sign_of(parts[3])};
}

const std::array<World, World::kCount>& enumerate_worlds() {
  static const std::array<World, World::kCount> worlds = [] {
    std::array<World, World::kCount> out{};
    std::size_t i = 0;
    for (Setting l : kSettings)
      for (Setting r : kSettings)
        for (Sign ol : kSigns)
          for (Sign orr : kSigns) out[i++] = World{l, r, ol, orr};
    return out;
  }();
  return worlds;
}

bool satisfies_atom(const World& w, Atom a) noexcept {
  if (w.choice(a.region()) != a.setting()) return false;
  if (auto sign = a.sign()) return w.outcome(a.region()) == *sign;
  return true;
}

std::optional<World> WorldSet::first() const noexcept {
  for (std::size_t i = 0; i < World::kCount; ++i) {
    if (bits_.test(i)) return World::from_index(i);
  }
  return std::nullopt;
}

std::vector<World> WorldSet::worlds() const {
  std::vector<World> out;
  for (std::size_t i = 0; i < World::kCount; ++i) {
    if (bits_.test(i)) out.push_back(World::from_index(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

ProbabilityTable ProbabilityTable::uniform() {
  ProbabilityTable t;
  for (auto& row : t.cells_) row.fill(0.25);
  return t;
}

double ProbabilityTable::marginal(Region region, Sign outcome, Setting left,
                                  Setting right) const noexcept {
  double p = 0.0;
  for (Sign other_sign : kSigns) {
    p += region == Region::Left ? get(left, right, outcome, other_sign)
                                : get(left, right, other_sign, outcome);
  }
  return p;
}

void ProbabilityTable::validate() const {
  for (Setting l : kSettings) {
    for (Setting r : kSettings) {
      double sum = 0.0;
      for (Sign ol : kSigns) {
        for (Sign orr : kSigns) {
          double p = get(l, r, ol, orr);
          if (!std::isfinite(p) || p < 0.0) {
            throw TableError("invalid probability " + std::to_string(p) + " for " +
                             pair_name(l, r) + " outcome " + sign_char(ol) + sign_char(orr));
          }
          sum += p;
        }
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        throw TableError("distribution for " + pair_name(l, r) + " sums to " +
                         std::to_string(sum) + ", not 1");
      }
    }
  }
}

double ProbabilityTable::no_signaling_deviation() const noexcept {
  double worst = 0.0;
  for (Sign s : kSigns) {
    for (Setting fixed : kSettings) {
      worst = std::max(worst, std::abs(marginal(Region::Left, s, fixed, Setting::One) -
                                       marginal(Region::Left, s, fixed, Setting::Two)));
      worst = std::max(worst, std::abs(marginal(Region::Right, s, Setting::One, fixed) -
                                       marginal(Region::Right, s, Setting::Two, fixed)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

Model build_model(const ProbabilityTable& table, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= Model::kMaxEpsilon)) {
    throw TableError("epsilon " + std::to_string(epsilon) + " outside [0, 1e-3]");
  }
  table.validate();
  WorldSet possible;
  for (const World& w : enumerate_worlds()) {
    if (table.get(w) > epsilon) possible.insert(w);
  }
  for (Setting l : kSettings) {
    for (Setting r : kSettings) {
      bool any = false;
      for (Sign ol : kSigns)
        for (Sign orr : kSigns) any = any || possible.contains(World{l, r, ol, orr});
      if (!any) {
        throw DegenerateModelError("no possible world for choice pair " + pair_name(l, r));
      }
    }
  }
  return Model(table, epsilon, possible);
}

const std::array<CellPrediction, 4>& hardy_predictions() {
  static const std::array<CellPrediction, 4> predictions{{
      {"PRED21", Setting::Two, Setting::Two, Sign::Minus, Sign::Plus, true},
      {"PRED22", Setting::Two, Setting::One, Sign::Plus, Sign::Plus, true},
      {"PRED23", Setting::One, Setting::Two, Sign::Minus, Sign::Minus, true},
      {"PRED24", Setting::One, Setting::One, Sign::Minus, Sign::Plus, false},
  }};
  return predictions;
}

std::vector<std::string> hardy_violations(const Model& m) {
  std::vector<std::string> out;
  for (const auto& p : hardy_predictions()) {
    const World w = p.world();
    const bool possible = m.is_possible(w);
    if (p.must_vanish && possible) {
      out.push_back(std::string(p.tag) + ": world " + to_string(w) +
                    " should be impossible but has probability " +
                    std::to_string(m.table().get(w)));
    } else if (!p.must_vanish && !possible) {
      out.push_back(std::string(p.tag) + ": world " + to_string(w) +
                    " should be possible but has probability " +
                    std::to_string(m.table().get(w)));
    }
  }
  return out;
}

}  // namespace cfl
