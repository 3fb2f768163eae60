#pragma once

#include <cstdint>
#include <utility>

#include "fqgate/rng.hpp"
#include "fqgate/types.hpp"

namespace fqgate {

// Deterministic train/test partition. Stratified mode keeps per-class train
// proportions within one sample of the overall fraction (largest-remainder
// allocation over the classes that are actually present). Sample order within
// each side follows the input dataset order.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, const SplitSpec& spec);

// Split seed used by train runs so shuffling stays decoupled from the model's
// own random stream under a shared user-facing seed.
inline std::uint64_t split_seed_for(std::uint64_t run_seed) {
    return derive_seed(run_seed, 0x53504c49ULL);  // "SPLI"
}

}  // namespace fqgate
