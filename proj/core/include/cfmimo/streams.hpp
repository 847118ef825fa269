#pragma once

#include <cstdint>

namespace cfmimo {

// Purpose tags for deriving independent RNG streams. Part of the
// reproducibility contract: every random draw belongs to a stream keyed as
// {master seed, purpose, drop index, ...}, so results do not depend on
// thread scheduling.
enum StreamPurpose : std::uint64_t {
  kStreamGeometry = 1,
  kStreamShadowing = 2,
  kStreamSmallScale = 3,
  kStreamEstimationNoise = 4,
};

}  // namespace cfmimo
