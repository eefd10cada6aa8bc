#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace bigraph {

// Places are the carriers of the parent forest: sites and roots are dense
// integer indices, nodes carry opaque string ids. The ordering (sites,
// then nodes, then roots) is fixed; it is the tie-break used everywhere a
// deterministic enumeration over places is required.
enum class PlaceKind { site = 0, node = 1, root = 2 };

struct Place {
    PlaceKind kind = PlaceKind::root;
    int index = -1;        // site/root index
    std::string node_id;   // node id

    static Place site(int i) { return Place{PlaceKind::site, i, {}}; }
    static Place node(std::string id) { return Place{PlaceKind::node, -1, std::move(id)}; }
    static Place root(int i) { return Place{PlaceKind::root, i, {}}; }

    bool is_site() const { return kind == PlaceKind::site; }
    bool is_node() const { return kind == PlaceKind::node; }
    bool is_root() const { return kind == PlaceKind::root; }

    // "s<i>", node id, "r<i>" — the JSON rendering.
    std::string str() const
    {
        switch (kind) {
        case PlaceKind::site: return "s" + std::to_string(index);
        case PlaceKind::node: return node_id;
        case PlaceKind::root: return "r" + std::to_string(index);
        }
        throw std::logic_error("bad place kind");
    }

    friend auto operator<=>(const Place&, const Place&) = default;
};

// A point is a port (node id, port index) or an inner name.
enum class PointKind { port = 0, inner = 1 };

struct Point {
    PointKind kind = PointKind::inner;
    std::string node_id;   // port
    int index = -1;        // port
    std::string name;      // inner name

    static Point port(std::string node, int i) { return Point{PointKind::port, std::move(node), i, {}}; }
    static Point inner(std::string n) { return Point{PointKind::inner, {}, -1, std::move(n)}; }

    bool is_port() const { return kind == PointKind::port; }
    bool is_inner() const { return kind == PointKind::inner; }

    // "node:index" for ports, the bare name for inner names.
    std::string str() const
    {
        if (is_port()) return node_id + ":" + std::to_string(index);
        return name;
    }

    friend auto operator<=>(const Point&, const Point&) = default;
};

// A handle is an edge or an outer name.
enum class HandleKind { edge = 0, outer = 1 };

struct Handle {
    HandleKind kind = HandleKind::edge;
    std::string id;

    static Handle edge(std::string e) { return Handle{HandleKind::edge, std::move(e)}; }
    static Handle outer(std::string y) { return Handle{HandleKind::outer, std::move(y)}; }

    bool is_edge() const { return kind == HandleKind::edge; }
    bool is_outer() const { return kind == HandleKind::outer; }

    std::string str() const { return id; }

    friend auto operator<=>(const Handle&, const Handle&) = default;
};

} // namespace bigraph
