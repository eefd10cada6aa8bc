#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bigraph/bigraph.hpp"
#include "bigraph/embedding.hpp"

namespace bigraph {

struct CnfFormula {
    int var_count = 0;
    std::vector<std::array<int, 3>> clauses;   // signed 1-based variable indices
};

// Coloured tree instance of the rainbow-antichain problem. Exactly one root;
// the colouring is partial; the palette order is fixed (it fixes the guest
// root order downstream).
struct ColouredTree {
    std::string root;
    std::map<std::string, std::string> parent;   // every node except the root
    std::map<std::string, std::string> colour;   // partial
    std::vector<std::string> palette;

    std::vector<std::string> node_ids() const;
    bool is_ancestor(const std::string& a, const std::string& d) const;   // proper ancestor
};

// DIMACS CNF with exactly three literals per clause; rejects anything else
// with a line diagnostic.
CnfFormula parse_dimacs(const std::string& text);

// The coloured tree of the 3-SAT reduction: an uncoloured root, two literal
// children per variable sharing a per-variable colour, and one clause node
// per (clause, literal) under the literal's complement, sharing a per-clause
// colour.
ColouredTree sat_to_rainbow(const CnfFormula& f);

// (guest, host): one single-node/single-site tree per palette colour against
// the coloured tree as a ground place graph. Signature: palette colours plus
// the fresh uncoloured control "*", all arity 0, all active.
std::pair<Bigraph, Bigraph> rainbow_to_instance(const ColouredTree& t);

std::set<std::string> decode_antichain(const Embedding& phi, const ColouredTree& t);

bool verify_rainbow_antichain(const ColouredTree& t, const std::set<std::string>& r);

// Truth assignment read off an antichain: x_i is true iff the positive
// literal node is selected. Requires a verified antichain over a tree built
// by sat_to_rainbow; the result is asserted to satisfy f.
std::map<int, bool> antichain_to_assignment(const ColouredTree& t, const std::set<std::string>& r,
                                            const CnfFormula& f);

bool evaluate(const CnfFormula& f, const std::map<int, bool>& assignment);
bool truth_table_satisfiable(const CnfFormula& f);

struct SatVerdict {
    bool satisfiable = false;
    std::set<std::string> antichain;
    std::map<int, bool> assignment;
};

// The full pipeline: build the tree, embed, decode, verify, evaluate.
SatVerdict solve_sat_via_embedding(const CnfFormula& f);

} // namespace bigraph
