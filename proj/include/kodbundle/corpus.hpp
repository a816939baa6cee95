#pragma once

#include <cstdint>
#include <vector>

#include "kodbundle/kodaira.hpp"

namespace kodbundle {

struct CorpusOptions {
    std::uint64_t seed = 1;
    int count = 100;
    long max_r = 4;
};

// Deterministic pseudo-random instances over D in {1, 2, 3, 7}, r <= max_r,
// cycling through the four routing strata: delta < 0, d = r, 1 < d < r,
// d = 1.  The sequence depends only on the options.
std::vector<ChernInstance> generate_corpus(const CorpusOptions& opt);

}  // namespace kodbundle
