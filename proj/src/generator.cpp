#include "bigraph/generator.hpp"

#include <cassert>

namespace bigraph {

Signature default_signature()
{
    Signature sig;
    sig.add("A", 2, true);
    sig.add("B", 1, true);
    return sig;
}

Bigraph random_bigraph(const Signature& sig, const GenParams& p)
{
    if (p.nodes < 0 || p.edges < 0 || p.sites < 0 || p.roots < 0 || p.inner_names < 0 ||
        p.outer_names < 0)
        throw std::invalid_argument("negative generator parameter");
    if ((p.nodes > 0 || p.sites > 0) && p.roots == 0)
        throw std::invalid_argument("nodes or sites need at least one root");
    if (p.nodes > 0 && sig.controls().empty())
        throw std::invalid_argument("nodes need a non-empty signature");

    SplitMix64 rng(p.seed);
    Bigraph b;
    b.signature = sig;
    b.inner_width = p.sites;
    b.outer_width = p.roots;
    for (int i = 0; i < p.edges; ++i) b.edges.insert("e" + std::to_string(i));
    for (int i = 0; i < p.inner_names; ++i) b.inner_names.insert("x" + std::to_string(i));
    for (int i = 0; i < p.outer_names; ++i) b.outer_names.insert("y" + std::to_string(i));

    std::vector<std::string> controls;
    for (const auto& [name, c] : sig.controls()) controls.push_back(name);

    int total_ports = 0;
    std::vector<std::string> ids;
    for (int i = 0; i < p.nodes; ++i) {
        std::string id = "v" + std::to_string(i);
        const std::string& ctrl = controls[rng.below(controls.size())];
        b.control_of[id] = ctrl;
        // a forest by construction: parents are roots or earlier nodes
        std::uint64_t pick = rng.below(static_cast<std::uint64_t>(p.roots) + i);
        b.parent_of_node[id] = pick < static_cast<std::uint64_t>(p.roots)
                                   ? Place::root(static_cast<int>(pick))
                                   : Place::node(ids[pick - p.roots]);
        ids.push_back(id);
        total_ports += sig.arity(ctrl);
    }
    b.parent_of_site.resize(p.sites);
    for (int i = 0; i < p.sites; ++i) {
        std::uint64_t pick = rng.below(static_cast<std::uint64_t>(p.roots) + p.nodes);
        b.parent_of_site[i] = pick < static_cast<std::uint64_t>(p.roots)
                                  ? Place::root(static_cast<int>(pick))
                                  : Place::node(ids[pick - p.roots]);
    }

    std::vector<Handle> handles = b.handles();
    if ((total_ports > 0 || p.inner_names > 0) && handles.empty())
        throw std::invalid_argument("points need at least one edge or outer name");
    for (const auto& id : ids)
        for (int k = 0; k < b.arity_of(id); ++k)
            b.link[Point::port(id, k)] = handles[rng.below(handles.size())];
    for (const auto& x : b.inner_names)
        b.link[Point::inner(x)] = handles[rng.below(handles.size())];

    assert(validate(b).empty());
    return b;
}

} // namespace bigraph
