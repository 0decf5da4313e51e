#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace stance {

// Binary stance towards the topic. Supporting is the positive (+1) and
// majority class throughout.
enum class Stance { Supporting, Opposing };

inline constexpr Stance kStances[] = {Stance::Supporting, Stance::Opposing};

constexpr int to_sign(Stance s) { return s == Stance::Supporting ? +1 : -1; }
constexpr std::size_t to_index(Stance s) { return s == Stance::Supporting ? 0 : 1; }
constexpr Stance opposite(Stance s) {
  return s == Stance::Supporting ? Stance::Opposing : Stance::Supporting;
}

// "support" / "oppose": the spelling used in every file format.
constexpr std::string_view to_string(Stance s) {
  return s == Stance::Supporting ? "support" : "oppose";
}

inline std::optional<Stance> parse_stance(std::string_view word) {
  if (word == "support") return Stance::Supporting;
  if (word == "oppose") return Stance::Opposing;
  return std::nullopt;
}

}  // namespace stance
