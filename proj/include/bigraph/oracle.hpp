#pragma once

#include <vector>

#include "bigraph/bigraph.hpp"
#include "bigraph/embedding.hpp"
#include "bigraph/encode.hpp"

namespace bigraph {

// Checks every embedding condition literally, one report per broken clause:
// LGE-1..LGE-7 for the link part, PGE-1..PGE-8 for the place part, BGE-1 for
// their interplay. With respect_activity the passive-context strategy clause
// is checked as well (tag ACTIVITY). phi must be total on the guest carriers
// of the requested kind and may only mention host elements; anything else
// throws std::invalid_argument.
std::vector<Violation> check_embedding(const Bigraph& guest, const Bigraph& host,
                                       const Embedding& phi, InstanceKind kind = InstanceKind::bge,
                                       bool respect_activity = false);

// Exhaustive ground truth: every phi with check_embedding(...) empty, found
// by enumerating candidate maps with pruning that only discards candidates
// violating a named clause. Deliberately naive; intended for desk-scale
// instances. Result is sorted.
std::vector<Embedding> brute_force_embeddings(const Bigraph& guest, const Bigraph& host,
                                              InstanceKind kind = InstanceKind::bge,
                                              bool respect_activity = false);

} // namespace bigraph
