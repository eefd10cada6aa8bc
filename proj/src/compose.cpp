#include "bigraph/bigraph.hpp"

#include <algorithm>

namespace bigraph {

namespace {

void require(bool cond, const std::string& msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

void require_disjoint_support(const Bigraph& a, const Bigraph& b)
{
    for (const auto& [id, ctrl] : a.control_of)
        require(!b.has_node(id), "support overlap on node " + id);
    for (const auto& e : a.edges)
        require(!b.edges.count(e), "support overlap on edge " + e);
}

} // namespace

Bigraph compose(const Bigraph& outer, const Bigraph& inner)
{
    require(outer.signature == inner.signature, "signature mismatch");
    require(outer.inner_width == inner.outer_width, "interface mismatch: width");
    require(outer.inner_names == inner.outer_names, "interface mismatch: names");
    require_disjoint_support(outer, inner);

    Bigraph r;
    r.signature = outer.signature;
    r.inner_width = inner.inner_width;
    r.inner_names = inner.inner_names;
    r.outer_width = outer.outer_width;
    r.outer_names = outer.outer_names;

    r.control_of = outer.control_of;
    r.control_of.insert(inner.control_of.begin(), inner.control_of.end());
    r.edges = outer.edges;
    r.edges.insert(inner.edges.begin(), inner.edges.end());

    // inner regions are spliced where outer's sites sat
    auto splice_place = [&](const Place& p) {
        if (p.is_root()) return outer.parent_of_site.at(p.index);
        return p;
    };
    r.parent_of_node = outer.parent_of_node;
    for (const auto& [id, p] : inner.parent_of_node) r.parent_of_node[id] = splice_place(p);
    r.parent_of_site.resize(inner.inner_width);
    for (int i = 0; i < inner.inner_width; ++i) r.parent_of_site[i] = splice_place(inner.parent_of_site[i]);

    // inner points that reached an inner-outer name continue along outer's wiring
    auto splice_handle = [&](const Handle& h) {
        if (h.is_outer()) return outer.link.at(Point::inner(h.id));
        return h;
    };
    for (const auto& [p, h] : outer.link)
        if (!p.is_inner()) r.link[p] = h;
    for (const auto& [p, h] : inner.link) r.link[p] = splice_handle(h);

    return r;
}

Bigraph juxtapose(const std::vector<Bigraph>& parts)
{
    require(!parts.empty(), "juxtapose needs at least one part");

    Bigraph r;
    r.signature = parts.front().signature;
    int root_offset = 0;
    for (const auto& part : parts) {
        require(part.signature == r.signature, "signature mismatch");
        require(part.inner_width == 0 && part.inner_names.empty(), "juxtapose expects ground parts");
        for (const auto& [id, ctrl] : part.control_of) {
            require(!r.has_node(id), "support overlap on node " + id);
            r.control_of[id] = ctrl;
        }
        for (const auto& e : part.edges) {
            require(!r.edges.count(e), "support overlap on edge " + e);
            r.edges.insert(e);
        }
        for (const auto& [id, p] : part.parent_of_node)
            r.parent_of_node[id] = p.is_root() ? Place::root(p.index + root_offset) : p;
        r.outer_names.insert(part.outer_names.begin(), part.outer_names.end());
        for (const auto& [p, h] : part.link) r.link[p] = h;
        root_offset += part.outer_width;
    }
    r.outer_width = root_offset;
    return r;
}

Bigraph extend_with_names(const Bigraph& b, const std::set<std::string>& names)
{
    Bigraph r = b;
    for (const auto& z : names) {
        require(!b.inner_names.count(z) && !b.outer_names.count(z),
                "identity name already on an interface: " + z);
        r.inner_names.insert(z);
        r.outer_names.insert(z);
        r.link[Point::inner(z)] = Handle::outer(z);
    }
    return r;
}

} // namespace bigraph
