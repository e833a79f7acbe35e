#pragma once

#include <cstdint>
#include <optional>

#include "constellation/latin.hpp"

namespace constellation::detail {

struct MateOutcome {
  std::optional<LatinSquare> mate;
  std::uint64_t transversal_count = 0;
};

MateOutcome mate_search(const LatinSquare& square);

}  // namespace constellation::detail
