#pragma once

#include <cstdint>

#include "bigraph/bigraph.hpp"

namespace bigraph {

struct GenParams {
    int nodes = 0;
    int edges = 0;
    int sites = 0;
    int roots = 1;
    int inner_names = 0;
    int outer_names = 0;
    std::uint64_t seed = 0;
};

// Small deterministic PRNG (splitmix64); identical sequences on every
// platform, which keeps generated corpora and CLI output byte-stable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound)
    {
        return next() % bound;
    }

private:
    std::uint64_t state_;
};

// Always-valid random bigraph: parents are drawn among roots and earlier
// nodes (so the place structure is a forest by construction), every port and
// inner name is linked. Throws std::invalid_argument on parameters that
// cannot produce a valid bigraph.
Bigraph random_bigraph(const Signature& sig, const GenParams& params);

// The signature the CLI generator uses: A (arity 2) and B (arity 1), active.
Signature default_signature();

} // namespace bigraph
