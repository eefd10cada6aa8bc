#pragma once

#include <map>
#include <set>
#include <string>

#include "bigraph/ids.hpp"

namespace bigraph {

// The six component maps of a bigraph embedding phi : G -> H. A link-only
// embedding uses phi_v/phi_e/phi_i/phi_o, a place-only one phi_v/phi_s/phi_r;
// unused components stay empty. Comparison is component-wise map equality
// (supports are concrete).
struct Embedding {
    std::map<std::string, std::string> phi_v;        // guest node -> host node
    std::map<std::string, std::string> phi_e;        // guest edge -> host edge
    std::map<std::string, std::set<Point>> phi_i;    // guest inner name -> host points
    std::map<std::string, Handle> phi_o;             // guest outer name -> host handle
    std::map<int, std::set<Place>> phi_s;            // guest site -> host places
    std::map<int, Place> phi_r;                      // guest root -> host place

    friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

} // namespace bigraph
