#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bigraph/ids.hpp"
#include "bigraph/signature.hpp"

namespace bigraph {

// Concrete bigraph over a signature: one node set carrying a place forest
// (prnt) and a link hypergraph (link). Sites and roots are dense indices,
// nodes and edges opaque string ids. Values are plain data and immutable by
// convention once built; all operations on them are pure functions.
struct Bigraph {
    Signature signature;

    int inner_width = 0;                      // n: sites 0..n-1
    int outer_width = 0;                      // m: roots 0..m-1
    std::set<std::string> inner_names;        // X
    std::set<std::string> outer_names;        // Y

    std::map<std::string, std::string> control_of;   // node id -> control (defines the node set)
    std::map<std::string, Place> parent_of_node;     // node id -> node or root
    std::vector<Place> parent_of_site;               // by site index -> node or root

    std::set<std::string> edges;                     // E
    std::map<Point, Handle> link;                    // total on ports + inner names

    bool has_node(const std::string& id) const { return control_of.count(id) != 0; }
    int node_count() const { return static_cast<int>(control_of.size()); }
    int arity_of(const std::string& node) const { return signature.arity(control_of.at(node)); }

    bool is_ground() const { return inner_width == 0 && inner_names.empty(); }

    // Canonical enumerations (the orders are normative for encoders and JSON).
    std::vector<std::string> node_ids() const;
    std::vector<Place> places() const;               // sites, nodes, roots
    std::vector<Point> points() const;               // ports (by node, index), inner names
    std::vector<Handle> handles() const;             // edges, outer names

    Place parent_of(const Place& p) const;           // p must be a node or site of this bigraph
    std::vector<Place> children_of(const Place& p) const;
};

struct Violation {
    std::string tag;      // broken invariant, e.g. "forest", "link-totality"
    std::string detail;   // offending element
};

// Empty iff every Def-level invariant holds. Violations are data, not failures.
std::vector<Violation> validate(const Bigraph& b);

// c, prnt(c), prnt^2(c), ... up to and including the root (c itself included).
std::vector<Place> prnt_star(const Bigraph& b, const Place& c);

// All points linked to h.
std::set<Point> link_preimage(const Bigraph& b, const Handle& h);

// Standard composition: sites of `outer` are filled by the regions of
// `inner`, inner names of `outer` are identified with the equally named
// outer names of `inner`. Interfaces must agree and supports be disjoint.
Bigraph compose(const Bigraph& outer, const Bigraph& inner);

// Parallel-product style juxtaposition of ground, inner-closed bigraphs:
// regions are concatenated in argument order and equally named outer names
// are shared. Node/edge ids must be pairwise disjoint.
Bigraph juxtapose(const std::vector<Bigraph>& parts);

// b extended with identity wiring on `names` (added to both faces).
Bigraph extend_with_names(const Bigraph& b, const std::set<std::string>& names);

// Support equivalence: control-preserving bijections on nodes and edges
// commuting with prnt and link, fixing interfaces pointwise.
bool is_isomorphic(const Bigraph& a, const Bigraph& b);

} // namespace bigraph
