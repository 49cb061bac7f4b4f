#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "cdiff/morph.hpp"

namespace cdiff {

// The on-disk morphism format (UTF-8, LF newlines):
//   # comment (anywhere; runs to end of line)
//   dom <n>
//   cod <m>
//   scalar <exact|float>
//   split <n1> <n2>       (optional; n1 + n2 = n)
//   expr <expression>     (exactly m lines, in coordinate order)
struct MorphFile {
  Morph morph;
  std::optional<std::pair<int, int>> split;
};

MorphFile parse_morph_file(std::string_view text, bool nat_semiring = false);

std::string print_morph_file(
    const Morph& m, std::optional<std::pair<int, int>> split = std::nullopt);

}  // namespace cdiff
