#include "bigraph/bigraph.hpp"

#include <algorithm>
#include <cctype>

namespace bigraph {

std::vector<std::string> Bigraph::node_ids() const
{
    std::vector<std::string> out;
    out.reserve(control_of.size());
    for (const auto& [id, ctrl] : control_of) out.push_back(id);
    return out;
}

std::vector<Place> Bigraph::places() const
{
    std::vector<Place> out;
    for (int i = 0; i < inner_width; ++i) out.push_back(Place::site(i));
    for (const auto& [id, ctrl] : control_of) out.push_back(Place::node(id));
    for (int i = 0; i < outer_width; ++i) out.push_back(Place::root(i));
    return out;
}

std::vector<Point> Bigraph::points() const
{
    std::vector<Point> out;
    for (const auto& [id, ctrl] : control_of)
        for (int i = 0; i < signature.arity(ctrl); ++i)
            out.push_back(Point::port(id, i));
    for (const auto& x : inner_names) out.push_back(Point::inner(x));
    return out;
}

std::vector<Handle> Bigraph::handles() const
{
    std::vector<Handle> out;
    for (const auto& e : edges) out.push_back(Handle::edge(e));
    for (const auto& y : outer_names) out.push_back(Handle::outer(y));
    return out;
}

Place Bigraph::parent_of(const Place& p) const
{
    if (p.is_node()) {
        auto it = parent_of_node.find(p.node_id);
        if (it == parent_of_node.end()) throw std::invalid_argument("unknown node: " + p.node_id);
        return it->second;
    }
    if (p.is_site()) {
        if (p.index < 0 || p.index >= inner_width) throw std::invalid_argument("unknown site: " + p.str());
        return parent_of_site[p.index];
    }
    throw std::invalid_argument("roots have no parent: " + p.str());
}

std::vector<Place> Bigraph::children_of(const Place& p) const
{
    std::vector<Place> out;
    for (int i = 0; i < inner_width; ++i)
        if (parent_of_site[i] == p) out.push_back(Place::site(i));
    for (const auto& [id, ctrl] : control_of)
        if (parent_of_node.at(id) == p) out.push_back(Place::node(id));
    return out;
}

namespace {

bool ident_ok(const std::string& s)
{
    if (s.empty()) return false;
    return s.find(':') == std::string::npos;
}

// "r<i>"/"s<i>" are the JSON renderings of roots and sites; node, edge and
// name ids must not collide with them.
bool looks_like_index_id(const std::string& s)
{
    if (s.size() < 2 || (s[0] != 'r' && s[0] != 's')) return false;
    return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

std::vector<Violation> validate(const Bigraph& b)
{
    std::vector<Violation> out;

    if (b.inner_width < 0) out.push_back({"width", "inner width is negative"});
    if (b.outer_width < 0) out.push_back({"width", "outer width is negative"});
    if (static_cast<int>(b.parent_of_site.size()) != std::max(0, b.inner_width))
        out.push_back({"width", "site parent table does not match inner width"});

    for (const auto& [name, ctrl] : b.signature.controls())
        if (ctrl.arity < 0) out.push_back({"arity", "control " + name});

    // identifier spaces: ids well-formed and pairwise disjoint
    for (const auto& [id, ctrl] : b.control_of)
        if (!ident_ok(id) || looks_like_index_id(id))
            out.push_back({"bad-id", "node " + id});
    for (const auto& e : b.edges)
        if (!ident_ok(e) || looks_like_index_id(e)) out.push_back({"bad-id", "edge " + e});
    for (const auto& x : b.inner_names)
        if (!ident_ok(x) || looks_like_index_id(x)) out.push_back({"bad-id", "inner name " + x});
    for (const auto& y : b.outer_names)
        if (!ident_ok(y) || looks_like_index_id(y)) out.push_back({"bad-id", "outer name " + y});
    // edge ids and outer names share the link-target space
    for (const auto& e : b.edges)
        if (b.outer_names.count(e)) out.push_back({"id-overlap", "edge/outer name " + e});

    // controls exist in the signature
    for (const auto& [id, ctrl] : b.control_of)
        if (!b.signature.has(ctrl)) out.push_back({"unknown-control", "node " + id + " ctrl " + ctrl});

    // parent map totality and codomain
    auto parent_ok = [&](const Place& p) {
        if (p.is_site()) return false;  // sites are leaves
        if (p.is_node()) return b.has_node(p.node_id);
        return p.index >= 0 && p.index < b.outer_width;
    };
    for (const auto& [id, ctrl] : b.control_of) {
        auto it = b.parent_of_node.find(id);
        if (it == b.parent_of_node.end()) out.push_back({"dangling-parent", "node " + id + " has no parent"});
        else if (!parent_ok(it->second)) out.push_back({"dangling-parent", "node " + id + " -> " + it->second.str()});
    }
    for (const auto& [id, p] : b.parent_of_node)
        if (!b.has_node(id)) out.push_back({"dangling-parent", "parent entry for unknown node " + id});
    for (int i = 0; i < b.inner_width && i < static_cast<int>(b.parent_of_site.size()); ++i)
        if (!parent_ok(b.parent_of_site[i])) out.push_back({"dangling-parent", "site s" + std::to_string(i)});

    // forest: iterating prnt from any node reaches a root within |nodes|+1 steps
    for (const auto& [id, ctrl] : b.control_of) {
        Place cur = Place::node(id);
        bool ok = false;
        for (int steps = 0; steps <= b.node_count(); ++steps) {
            auto it = cur.is_node() ? b.parent_of_node.find(cur.node_id) : b.parent_of_node.end();
            if (cur.is_root()) { ok = true; break; }
            if (!cur.is_node() || it == b.parent_of_node.end()) break;
            cur = it->second;
            if (cur.is_root()) { ok = true; break; }
        }
        if (!ok) out.push_back({"forest", "prnt chain from node " + id + " does not reach a root"});
    }

    // link totality: defined exactly on ports of declared arity plus inner names
    std::set<Point> expected;
    for (const auto& [id, ctrl] : b.control_of) {
        if (!b.signature.has(ctrl)) continue;
        for (int i = 0; i < b.signature.arity(ctrl); ++i) expected.insert(Point::port(id, i));
    }
    for (const auto& x : b.inner_names) expected.insert(Point::inner(x));
    for (const auto& p : expected)
        if (!b.link.count(p)) out.push_back({"link-totality", "point " + p.str() + " not linked"});
    for (const auto& [p, h] : b.link) {
        if (!expected.count(p)) out.push_back({"link-totality", "spurious link domain point " + p.str()});
        bool ok = h.is_edge() ? b.edges.count(h.id) != 0 : b.outer_names.count(h.id) != 0;
        if (!ok) out.push_back({"link-target", "point " + p.str() + " -> unknown handle " + h.str()});
    }

    return out;
}

std::vector<Place> prnt_star(const Bigraph& b, const Place& c)
{
    if (c.is_node() && !b.has_node(c.node_id)) throw std::invalid_argument("unknown place: " + c.str());
    if (c.is_site() && (c.index < 0 || c.index >= b.inner_width))
        throw std::invalid_argument("unknown place: " + c.str());
    if (c.is_root() && (c.index < 0 || c.index >= b.outer_width))
        throw std::invalid_argument("unknown place: " + c.str());

    std::vector<Place> out{c};
    Place cur = c;
    while (!cur.is_root()) {
        cur = b.parent_of(cur);
        out.push_back(cur);
        if (static_cast<int>(out.size()) > b.node_count() + 2)
            throw std::logic_error("prnt chain does not terminate (invalid bigraph)");
    }
    return out;
}

std::set<Point> link_preimage(const Bigraph& b, const Handle& h)
{
    bool known = h.is_edge() ? b.edges.count(h.id) != 0 : b.outer_names.count(h.id) != 0;
    if (!known) throw std::invalid_argument("unknown handle: " + h.str());
    std::set<Point> out;
    for (const auto& [p, target] : b.link)
        if (target == h) out.insert(p);
    return out;
}

} // namespace bigraph
