#include "bigraph/oracle.hpp"

#include <algorithm>
#include <functional>

namespace bigraph {

namespace {

[[noreturn]] void bad_phi(const std::string& what)
{
    throw std::invalid_argument("embedding: " + what);
}

bool link_kind(InstanceKind k) { return k != InstanceKind::pge; }
bool place_kind(InstanceKind k) { return k != InstanceKind::lge; }

// phi_p: points to sets of host points
std::set<Point> point_image(const Embedding& phi, const Point& q)
{
    if (q.is_port()) return {Point::port(phi.phi_v.at(q.node_id), q.index)};
    return phi.phi_i.at(q.name);
}

// phi_h: guest handles to host handles
Handle handle_image(const Embedding& phi, const Handle& h)
{
    if (h.is_edge()) return Handle::edge(phi.phi_e.at(h.id));
    return phi.phi_o.at(h.id);
}

// phi_f / phi_c on places
Place place_image_f(const Embedding& phi, const Place& p)
{
    if (p.is_node()) return Place::node(phi.phi_v.at(p.node_id));
    return phi.phi_r.at(p.index);
}

std::set<Place> place_image_c(const Embedding& phi, const Place& p)
{
    if (p.is_node()) return {Place::node(phi.phi_v.at(p.node_id))};
    return phi.phi_s.at(p.index);
}

void require_totality(const Bigraph& G, const Bigraph& H, const Embedding& phi, InstanceKind kind)
{
    auto known_host_point = [&](const Point& p) {
        if (p.is_inner()) return H.inner_names.count(p.name) != 0;
        return H.has_node(p.node_id) && p.index >= 0 && p.index < H.arity_of(p.node_id);
    };
    auto known_host_place = [&](const Place& p) {
        if (p.is_node()) return H.has_node(p.node_id);
        if (p.is_site()) return p.index >= 0 && p.index < H.inner_width;
        return p.index >= 0 && p.index < H.outer_width;
    };

    for (const auto& [v, ctrl] : G.control_of)
        if (!phi.phi_v.count(v)) bad_phi("phi_v misses node " + v);
    for (const auto& [v, w] : phi.phi_v)
        if (!G.has_node(v) || !H.has_node(w)) bad_phi("phi_v references unknown node");

    if (link_kind(kind)) {
        for (const auto& e : G.edges)
            if (!phi.phi_e.count(e)) bad_phi("phi_e misses edge " + e);
        for (const auto& [e, f] : phi.phi_e)
            if (!G.edges.count(e) || !H.edges.count(f)) bad_phi("phi_e references unknown edge");
        for (const auto& y : G.outer_names)
            if (!phi.phi_o.count(y)) bad_phi("phi_o misses name " + y);
        for (const auto& [y, h] : phi.phi_o) {
            if (!G.outer_names.count(y)) bad_phi("phi_o references unknown name");
            bool ok = h.is_edge() ? H.edges.count(h.id) != 0 : H.outer_names.count(h.id) != 0;
            if (!ok) bad_phi("phi_o target " + h.str() + " is not a host handle");
        }
        for (const auto& x : G.inner_names)
            if (!phi.phi_i.count(x)) bad_phi("phi_i misses name " + x);
        for (const auto& [x, pts] : phi.phi_i) {
            if (!G.inner_names.count(x)) bad_phi("phi_i references unknown name");
            for (const auto& p : pts)
                if (!known_host_point(p)) bad_phi("phi_i target " + p.str() + " is not a host point");
        }
    }

    if (place_kind(kind)) {
        for (int i = 0; i < G.inner_width; ++i)
            if (!phi.phi_s.count(i)) bad_phi("phi_s misses site " + std::to_string(i));
        for (const auto& [i, places] : phi.phi_s) {
            if (i < 0 || i >= G.inner_width) bad_phi("phi_s references unknown site");
            for (const auto& p : places)
                if (!known_host_place(p)) bad_phi("phi_s target " + p.str() + " is not a host place");
        }
        for (int r = 0; r < G.outer_width; ++r)
            if (!phi.phi_r.count(r)) bad_phi("phi_r misses root " + std::to_string(r));
        for (const auto& [r, p] : phi.phi_r) {
            if (r < 0 || r >= G.outer_width) bad_phi("phi_r references unknown root");
            if (!known_host_place(p)) bad_phi("phi_r target " + p.str() + " is not a host place");
        }
    }
}

} // namespace

std::vector<Violation> check_embedding(const Bigraph& G, const Bigraph& H, const Embedding& phi,
                                       InstanceKind kind, bool respect_activity)
{
    require_totality(G, H, phi, kind);
    std::vector<Violation> out;
    auto report = [&](const std::string& tag, const std::string& detail) {
        out.push_back({tag, detail});
    };

    // injectivity of phi_v is LGE-1 and PGE-1 alike
    {
        std::map<std::string, std::string> seen;
        for (const auto& [v, w] : phi.phi_v) {
            auto [it, fresh] = seen.emplace(w, v);
            if (!fresh)
                report(link_kind(kind) ? "LGE-1" : "PGE-1",
                       "phi_v identifies " + it->second + " and " + v + " at " + w);
        }
    }
    // control preservation is LGE-6 and PGE-7 alike
    for (const auto& [v, w] : phi.phi_v)
        if (G.control_of.at(v) != H.control_of.at(w)) {
            if (link_kind(kind)) report("LGE-6", "node " + v + " -> " + w);
            if (place_kind(kind)) report("PGE-7", "node " + v + " -> " + w);
        }

    if (link_kind(kind)) {
        {
            std::map<std::string, std::string> seen;
            for (const auto& [e, f] : phi.phi_e) {
                auto [it, fresh] = seen.emplace(f, e);
                if (!fresh) report("LGE-1", "phi_e identifies " + it->second + " and " + e + " at " + f);
            }
        }
        for (auto it1 = phi.phi_i.begin(); it1 != phi.phi_i.end(); ++it1)
            for (auto it2 = std::next(it1); it2 != phi.phi_i.end(); ++it2) {
                std::vector<Point> common;
                std::set_intersection(it1->second.begin(), it1->second.end(), it2->second.begin(),
                                      it2->second.end(), std::back_inserter(common));
                if (!common.empty())
                    report("LGE-2", "phi_i images of " + it1->first + " and " + it2->first + " overlap");
            }

        std::set<std::string> edge_img;
        for (const auto& [e, f] : phi.phi_e) edge_img.insert(f);
        for (const auto& [y, h] : phi.phi_o)
            if (h.is_edge() && edge_img.count(h.id))
                report("LGE-4", "edge and outer name images share " + h.id);
        std::set<Point> port_img, name_img;
        for (const auto& [v, ctrl] : G.control_of)
            for (int i = 0; i < G.arity_of(v); ++i)
                port_img.insert(Point::port(phi.phi_v.at(v), i));
        for (const auto& [x, pts] : phi.phi_i)
            for (const auto& p : pts)
                if (port_img.count(p)) report("LGE-4", "port image and phi_i image share " + p.str());

        for (const auto& e : G.edges) {
            std::set<Point> guest_side;
            for (const auto& q : link_preimage(G, Handle::edge(e)))
                for (const auto& p : point_image(phi, q)) guest_side.insert(p);
            if (guest_side != link_preimage(H, Handle::edge(phi.phi_e.at(e))))
                report("LGE-5", "edge " + e + " does not cover the preimage of " + phi.phi_e.at(e));
        }

        for (const auto& [q, h] : G.link) {
            Handle want = handle_image(phi, h);
            for (const auto& p : point_image(phi, q))
                if (H.link.at(p) != want)
                    report("LGE-7", "point " + q.str() + " image " + p.str() + " sits on " +
                                        H.link.at(p).str() + " not " + want.str());
        }
    }

    if (place_kind(kind)) {
        for (auto it1 = phi.phi_s.begin(); it1 != phi.phi_s.end(); ++it1) {
            for (const auto& p : it1->second)
                if (p.is_root())
                    report("PGE-2", "site image contains root " + p.str());
            for (auto it2 = std::next(it1); it2 != phi.phi_s.end(); ++it2) {
                std::vector<Place> common;
                std::set_intersection(it1->second.begin(), it1->second.end(), it2->second.begin(),
                                      it2->second.end(), std::back_inserter(common));
                if (!common.empty())
                    report("PGE-2", "phi_s images of s" + std::to_string(it1->first) + " and s" +
                                        std::to_string(it2->first) + " overlap");
            }
        }
        for (const auto& [r, p] : phi.phi_r)
            if (p.is_site()) report("PGE-3", "root image is site " + p.str());

        std::set<Place> node_img;
        for (const auto& [v, w] : phi.phi_v) node_img.insert(Place::node(w));
        for (const auto& [r, p] : phi.phi_r)
            if (node_img.count(p)) report("PGE-4", "node and root images share " + p.str());
        for (const auto& [s, places] : phi.phi_s)
            for (const auto& p : places)
                if (node_img.count(p)) report("PGE-4", "node and site images share " + p.str());

        for (const auto& [r, p] : phi.phi_r) {
            if (p.is_site()) continue;
            auto chain = prnt_star(H, p);
            for (const auto& [s, places] : phi.phi_s)
                for (const auto& anc : chain)
                    if (places.count(anc))
                        report("PGE-5", "root r" + std::to_string(r) + " image descends from site image " +
                                            anc.str());
        }

        for (const auto& [v, ctrl] : G.control_of) {
            std::set<Place> guest_side;
            for (const auto& gc : G.children_of(Place::node(v)))
                for (const auto& p : place_image_c(phi, gc)) guest_side.insert(p);
            auto host_children = H.children_of(Place::node(phi.phi_v.at(v)));
            std::set<Place> host_side(host_children.begin(), host_children.end());
            if (guest_side != host_side)
                report("PGE-6", "children of " + v + " do not correspond to children of " +
                                    phi.phi_v.at(v));
        }

        for (const auto& c : G.places()) {
            if (c.is_root()) continue;
            Place want = place_image_f(phi, G.parent_of(c));
            for (const auto& p : place_image_c(phi, c))
                if (H.parent_of(p) != want)
                    report("PGE-8", "image " + p.str() + " of " + c.str() + " has parent " +
                                        H.parent_of(p).str() + " not " + want.str());
        }
    }

    if (kind == InstanceKind::bge) {
        std::set<Place> param;   // host places lying in some site image's subtree
        for (const auto& [s, places] : phi.phi_s)
            for (const auto& p : places) param.insert(p);
        for (const auto& [x, pts] : phi.phi_i)
            for (const auto& p : pts) {
                if (p.is_inner()) continue;
                bool inside = false;
                for (const auto& anc : prnt_star(H, Place::node(p.node_id)))
                    if (param.count(anc)) {
                        inside = true;
                        break;
                    }
                if (!inside)
                    report("BGE-1", "phi_i point " + p.str() + " does not reside in the parameter");
            }
    }

    if (respect_activity && place_kind(kind)) {
        for (const auto& [r, p] : phi.phi_r) {
            if (p.is_site()) continue;
            for (const auto& anc : prnt_star(H, p))
                if (anc.is_node() && !H.signature.active(H.control_of.at(anc.node_id)))
                    report("ACTIVITY", "root r" + std::to_string(r) + " image sits under passive node " +
                                           anc.node_id);
        }
    }

    return out;
}

namespace {

// Candidate enumeration with pruning. Every pruned candidate provably fails
// a named clause (controls: LGE-6/PGE-7; parent shape: PGE-8; handle shape:
// LGE-7; coverage: LGE-5), so filtering by check_embedding keeps exactly the
// embedding set.
struct BruteForce {
    const Bigraph& G;
    const Bigraph& H;
    InstanceKind kind;
    bool respect_activity;
    std::vector<Embedding> found;

    std::vector<std::string> guest_nodes;
    Embedding phi;
    std::set<std::string> used_hosts;

    BruteForce(const Bigraph& g, const Bigraph& h, InstanceKind k, bool act)
        : G(g), H(h), kind(k), respect_activity(act), guest_nodes(g.node_ids())
    {
    }

    void run()
    {
        enum_phi_v(0);
        std::sort(found.begin(), found.end());
    }

    void finish()
    {
        if (check_embedding(G, H, phi, kind, respect_activity).empty()) found.push_back(phi);
    }

    void enum_phi_v(std::size_t k)
    {
        if (k == guest_nodes.size()) {
            if (place_kind(kind)) enum_phi_r();
            else enum_phi_e();
            return;
        }
        const auto& v = guest_nodes[k];
        const auto& ctrl = G.control_of.at(v);
        for (const auto& [w, host_ctrl] : H.control_of) {
            if (host_ctrl != ctrl || used_hosts.count(w)) continue;
            phi.phi_v[v] = w;
            used_hosts.insert(w);
            enum_phi_v(k + 1);
            phi.phi_v.erase(v);
            used_hosts.erase(w);
        }
    }

    void enum_phi_r()
    {
        // root images forced by any node child (PGE-8), free otherwise
        std::vector<std::vector<Place>> cand(G.outer_width);
        for (int r = 0; r < G.outer_width; ++r) {
            Place forced{};
            bool have_forced = false, conflict = false;
            for (const auto& [v, p] : G.parent_of_node)
                if (p == Place::root(r)) {
                    Place img = H.parent_of(Place::node(phi.phi_v.at(v)));
                    if (have_forced && !(img == forced)) conflict = true;
                    forced = img;
                    have_forced = true;
                }
            if (conflict) return;
            if (have_forced) {
                cand[r] = {forced};
            } else {
                for (const auto& [w, c] : H.control_of) cand[r].push_back(Place::node(w));
                for (int i = 0; i < H.outer_width; ++i) cand[r].push_back(Place::root(i));
            }
        }
        std::function<void(int)> rec = [&](int r) {
            if (r == G.outer_width) {
                enum_phi_s();
                return;
            }
            for (const auto& p : cand[r]) {
                phi.phi_r[r] = p;
                rec(r + 1);
                phi.phi_r.erase(r);
            }
        };
        rec(0);
    }

    void enum_phi_s()
    {
        // each site image is a subset of the children of its parent's image
        // (PGE-8) avoiding node images (PGE-4); images of distinct sites are
        // disjoint (PGE-2), so assign candidates element-wise
        std::set<std::string> node_img;
        for (const auto& [v, w] : phi.phi_v) node_img.insert(w);
        std::vector<std::vector<int>> takers;   // per pool element, which sites may take it
        std::vector<Place> pool;
        std::map<Place, int> pool_idx;
        for (int s = 0; s < G.inner_width; ++s) {
            Place anchor = G.parent_of(Place::site(s));
            Place img = anchor.is_node() ? Place::node(phi.phi_v.at(anchor.node_id)) : phi.phi_r.at(anchor.index);
            for (const auto& c : H.children_of(img)) {
                if (c.is_node() && node_img.count(c.node_id)) continue;
                auto [it, fresh] = pool_idx.emplace(c, static_cast<int>(pool.size()));
                if (fresh) {
                    pool.push_back(c);
                    takers.emplace_back();
                }
                takers[it->second].push_back(s);
            }
            phi.phi_s[s];   // total, possibly empty
        }
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == pool.size()) {
                enum_phi_e();
                return;
            }
            rec(i + 1);   // element stays outside every site image
            for (int s : takers[i]) {
                phi.phi_s[s].insert(pool[i]);
                rec(i + 1);
                phi.phi_s[s].erase(pool[i]);
            }
        };
        rec(0);
        for (int s = 0; s < G.inner_width; ++s) phi.phi_s.erase(s);
    }

    void enum_phi_e()
    {
        if (!link_kind(kind)) {
            finish();
            return;
        }
        std::vector<std::string> guest_edges(G.edges.begin(), G.edges.end());
        std::set<std::string> used_edges;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == guest_edges.size()) {
                enum_phi_o();
                return;
            }
            const auto& e = guest_edges[k];
            // an edge with a port is pinned to the host handle of the port's
            // image (LGE-7); anything else would be filtered anyway
            const Handle* forced = nullptr;
            Handle forced_val;
            for (const auto& q : link_preimage(G, Handle::edge(e)))
                if (q.is_port()) {
                    forced_val = H.link.at(Point::port(phi.phi_v.at(q.node_id), q.index));
                    forced = &forced_val;
                    break;
                }
            auto try_edge = [&](const std::string& f) {
                if (used_edges.count(f)) return;
                phi.phi_e[e] = f;
                used_edges.insert(f);
                rec(k + 1);
                phi.phi_e.erase(e);
                used_edges.erase(f);
            };
            if (forced) {
                if (forced->is_edge()) try_edge(forced->id);
                return;
            }
            for (const auto& f : H.edges) try_edge(f);
        };
        rec(0);
    }

    void enum_phi_o()
    {
        std::vector<std::string> guest_outers(G.outer_names.begin(), G.outer_names.end());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == guest_outers.size()) {
                enum_phi_i();
                return;
            }
            const auto& y = guest_outers[k];
            const Handle* forced = nullptr;
            Handle forced_val;
            for (const auto& q : link_preimage(G, Handle::outer(y)))
                if (q.is_port()) {
                    forced_val = H.link.at(Point::port(phi.phi_v.at(q.node_id), q.index));
                    forced = &forced_val;
                    break;
                }
            auto try_handle = [&](const Handle& h) {
                phi.phi_o[y] = h;
                rec(k + 1);
                phi.phi_o.erase(y);
            };
            if (forced) {
                try_handle(*forced);
                return;
            }
            for (const auto& h : H.handles()) try_handle(h);
        };
        rec(0);
    }

    void enum_phi_i()
    {
        // candidates for phi_i(x) live on the preimage of the image of x's
        // handle (LGE-7) and outside the port image (LGE-4)
        std::set<Point> port_img;
        for (const auto& [v, w] : phi.phi_v)
            for (int i = 0; i < G.arity_of(v); ++i) port_img.insert(Point::port(w, i));

        std::vector<std::string> names(G.inner_names.begin(), G.inner_names.end());
        std::vector<Point> pool;
        std::map<Point, int> pool_idx;
        std::vector<std::vector<int>> takers;
        for (std::size_t xi = 0; xi < names.size(); ++xi) {
            Handle img = handle_image(phi, G.link.at(Point::inner(names[xi])));
            for (const auto& p : link_preimage(H, img)) {
                if (port_img.count(p)) continue;
                auto [it, fresh] = pool_idx.emplace(p, static_cast<int>(pool.size()));
                if (fresh) {
                    pool.push_back(p);
                    takers.emplace_back();
                }
                takers[it->second].push_back(static_cast<int>(xi));
            }
            phi.phi_i[names[xi]];   // total, possibly empty
        }
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == pool.size()) {
                finish();
                return;
            }
            rec(i + 1);
            for (int xi : takers[i]) {
                phi.phi_i[names[xi]].insert(pool[i]);
                rec(i + 1);
                phi.phi_i[names[xi]].erase(pool[i]);
            }
        };
        rec(0);
        for (const auto& x : names) phi.phi_i.erase(x);
    }
};

} // namespace

std::vector<Embedding> brute_force_embeddings(const Bigraph& G, const Bigraph& H, InstanceKind kind,
                                              bool respect_activity)
{
    if (G.signature != H.signature) throw std::invalid_argument("signature mismatch");
    BruteForce bf(G, H, kind, respect_activity);
    bf.run();
    return std::move(bf.found);
}

} // namespace bigraph
