#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cfl {

// The two spacelike-separated experimental regions.
enum class Region : std::uint8_t { Left, Right };

// Which of the two alternative measurements a region performs.
enum class Setting : std::uint8_t { One, Two };

enum class Sign : std::uint8_t { Plus, Minus };

constexpr Region other(Region r) noexcept {
  return r == Region::Left ? Region::Right : Region::Left;
}
constexpr Setting other(Setting s) noexcept {
  return s == Setting::One ? Setting::Two : Setting::One;
}
constexpr Sign other(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

char region_letter(Region r) noexcept;
char setting_digit(Setting s) noexcept;
char sign_char(Sign s) noexcept;

// One of the twelve propositional atoms: a choice atom such as L1 ("L1 is
// performed") or an outcome atom such as R1- ("R1 is performed and yields -").
class Atom {
 public:
  static constexpr std::size_t kCount = 12;

  static constexpr Atom choice(Region region, Setting setting) noexcept {
    return Atom(region, setting, std::nullopt);
  }
  static constexpr Atom outcome(Region region, Setting setting, Sign sign) noexcept {
    return Atom(region, setting, sign);
  }
  // Inverse of index().
  static Atom from_index(std::size_t index);
  static const std::array<Atom, kCount>& all();

  constexpr Region region() const noexcept { return region_; }
  constexpr Setting setting() const noexcept { return setting_; }
  constexpr std::optional<Sign> sign() const noexcept { return sign_; }
  constexpr bool is_choice() const noexcept { return !sign_.has_value(); }
  constexpr bool is_outcome() const noexcept { return sign_.has_value(); }

  // Dense index in [0, 12): choice atoms first, then outcome atoms.
  std::size_t index() const noexcept;

  friend constexpr bool operator==(const Atom&, const Atom&) = default;
  friend constexpr auto operator<=>(const Atom& a, const Atom& b) noexcept {
    return a.index_key() <=> b.index_key();
  }

 private:
  constexpr Atom(Region region, Setting setting, std::optional<Sign> sign) noexcept
      : region_(region), setting_(setting), sign_(sign) {}

  constexpr int index_key() const noexcept {
    int base = static_cast<int>(region_) * 2 + static_cast<int>(setting_);
    return sign_ ? 4 + base * 2 + static_cast<int>(*sign_) : base;
  }

  Region region_;
  Setting setting_;
  std::optional<Sign> sign_;
};

std::string to_string(Atom atom);
std::optional<Atom> atom_from_string(std::string_view text);

}  // namespace cfl
