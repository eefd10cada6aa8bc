#include "bigraph/bigraph.hpp"

#include <algorithm>
#include <optional>

namespace bigraph {

namespace {

struct IsoSearch {
    const Bigraph& a;
    const Bigraph& b;
    std::vector<std::string> a_nodes;
    std::map<std::string, std::string> node_map;     // a -> b
    std::set<std::string> used_b;

    IsoSearch(const Bigraph& a_, const Bigraph& b_) : a(a_), b(b_), a_nodes(a_.node_ids()) {}

    Place map_place(const Place& p) const
    {
        if (p.is_node()) return Place::node(node_map.at(p.node_id));
        return p;
    }

    bool parents_compatible(const std::string& va, const std::string& vb) const
    {
        Place pa = a.parent_of(Place::node(va));
        Place pb = b.parent_of(Place::node(vb));
        if (pa.is_root() || pb.is_root()) return pa == pb;
        auto it = node_map.find(pa.node_id);
        if (it != node_map.end()) return pb.is_node() && pb.node_id == it->second;
        return pb.is_node() && !used_b.count(pb.node_id);
    }

    // With the node bijection fixed, the edge bijection is forced by linked
    // points; idle edges pair up freely by count.
    bool links_match() const
    {
        std::map<std::string, std::string> edge_map;   // a edge -> b edge
        std::set<std::string> edge_used;
        auto bind = [&](const Handle& ha, const Handle& hb) {
            if (ha.is_outer() || hb.is_outer()) return ha == hb;
            auto it = edge_map.find(ha.id);
            if (it != edge_map.end()) return it->second == hb.id;
            if (edge_used.count(hb.id)) return false;
            edge_map[ha.id] = hb.id;
            edge_used.insert(hb.id);
            return true;
        };
        for (const auto& [p, ha] : a.link) {
            Point q = p.is_port() ? Point::port(node_map.at(p.node_id), p.index) : p;
            auto it = b.link.find(q);
            if (it == b.link.end() || !bind(ha, it->second)) return false;
        }
        // remaining edges on both sides must be idle and equally many
        std::size_t idle_a = a.edges.size() - edge_map.size();
        std::size_t idle_b = b.edges.size() - edge_used.size();
        if (idle_a != idle_b) return false;
        for (const auto& e : b.edges)
            if (!edge_used.count(e))
                for (const auto& [p, h] : b.link)
                    if (h.is_edge() && h.id == e) return false;
        return true;
    }

    bool places_match() const
    {
        for (const auto& [va, vb] : node_map)
            if (b.parent_of(Place::node(vb)) != map_place(a.parent_of(Place::node(va)))) return false;
        for (int i = 0; i < a.inner_width; ++i)
            if (b.parent_of_site[i] != map_place(a.parent_of_site[i])) return false;
        return true;
    }

    bool extend(std::size_t k)
    {
        if (k == a_nodes.size())
            return places_match() && links_match();
        const std::string& va = a_nodes[k];
        const std::string& ctrl = a.control_of.at(va);
        for (const auto& [vb, ctrl_b] : b.control_of) {
            if (used_b.count(vb) || ctrl_b != ctrl) continue;
            node_map[va] = vb;
            used_b.insert(vb);
            if (parents_compatible(va, vb) && extend(k + 1)) return true;
            node_map.erase(va);
            used_b.erase(vb);
        }
        return false;
    }
};

} // namespace

bool is_isomorphic(const Bigraph& a, const Bigraph& b)
{
    if (a.signature != b.signature) return false;
    if (a.inner_width != b.inner_width || a.outer_width != b.outer_width) return false;
    if (a.inner_names != b.inner_names || a.outer_names != b.outer_names) return false;
    if (a.control_of.size() != b.control_of.size() || a.edges.size() != b.edges.size()) return false;

    std::map<std::string, int> ctrl_count;
    for (const auto& [id, c] : a.control_of) ++ctrl_count[c];
    for (const auto& [id, c] : b.control_of) --ctrl_count[c];
    for (const auto& [c, n] : ctrl_count)
        if (n != 0) return false;

    IsoSearch search(a, b);
    return search.extend(0);
}

} // namespace bigraph
