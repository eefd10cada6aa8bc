#pragma once

#include <map>
#include <string>
#include <vector>

#include "bigraph/bigraph.hpp"
#include "bigraph/embedding.hpp"

namespace bigraph {

// Parametric reaction rule (R_L, R_R, eta). The redex and reactum share the
// outer face; eta assigns each reactum site the redex site whose parameter
// it receives.
struct ReactionRule {
    Bigraph redex;
    Bigraph reactum;
    std::map<int, int> eta;     // reactum site -> redex site
    std::string name;           // optional label for CLI output

    void check() const;         // throws std::invalid_argument on a broken invariant
};

// Result of splitting a ground agent around an embedding of a redex.
// params[i] is the ground, width-1 substructure under the image of redex
// site i; its outer names are the redex inner names routed to it by phi_i
// plus fresh pass-through names for parameter links that cross into the
// context (the identity wiring of A = C . (R x id) . D). threaded_names
// lists those pass-through names; it is empty whenever every parameter
// point is routed by phi_i or closed inside one parameter.
struct Decomposition {
    Bigraph context;
    std::vector<Bigraph> params;
    std::set<std::string> threaded_names;
};

Decomposition decompose(const Bigraph& agent, const Bigraph& redex, const Embedding& phi);

// The redex with its support renamed along phi (nodes via phi_v, edges via
// phi_e), so that recomposition reproduces the agent on the nose.
Bigraph rename_support_by(const Bigraph& guest, const Embedding& phi);

// Juxtaposition of params[eta(0)], ..., params[eta(width-1)]; duplicated
// parameters get fresh node/edge ids (deterministic, avoiding `avoid`),
// while their outer names stay shared so copies keep the original links.
Bigraph instantiate(const std::vector<Bigraph>& params, const std::map<int, int>& eta, int width,
                    const std::set<std::string>& avoid = {});

Bigraph apply_rule(const Bigraph& agent, const ReactionRule& rule, const Embedding& phi);

struct StepResult {
    int rule_index;
    Embedding embedding;
    Bigraph result;
};

// All one-step successors, in rule order then embedding order.
std::vector<StepResult> step(const Bigraph& agent, const std::vector<ReactionRule>& rules,
                             bool respect_activity = true);

} // namespace bigraph
