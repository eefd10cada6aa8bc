#include "bigraph/encode.hpp"

#include <algorithm>
#include <cassert>

namespace bigraph {

namespace {

using csp::Rel;
using i64 = std::int64_t;
using Terms = std::vector<std::pair<int, i64>>;

struct LinkSide {
    std::vector<Handle> handles;
    std::vector<Point> points;
    std::map<Handle, std::vector<Point>> pre;
    std::vector<std::string> edges;   // sorted edge ids
    std::vector<std::string> outers;  // sorted outer names

    explicit LinkSide(const Bigraph& b)
        : handles(b.handles()), points(b.points()),
          edges(b.edges.begin(), b.edges.end()),
          outers(b.outer_names.begin(), b.outer_names.end())
    {
        for (const auto& h : handles) pre[h];   // idle handles get empty entries
        for (const auto& [p, h] : b.link) pre[h].push_back(p);
        for (auto& [h, pts] : pre) std::sort(pts.begin(), pts.end());
    }

    const std::vector<Point>& preimage(const Handle& h) const { return pre.at(h); }
    bool idle(const Handle& h) const { return pre.at(h).empty(); }
};

} // namespace

void VarRegistry::build(const Bigraph& guest, const Bigraph& host, InstanceKind kind, csp::Model& model)
{
    kind_ = kind;
    guest_handles_ = guest.handles();
    host_handles_ = host.handles();
    guest_points_ = guest.points();
    host_points_ = host.points();
    guest_places_ = guest.places();
    host_places_ = host.places();
    for (std::size_t i = 0; i < guest_handles_.size(); ++i) gh_idx_[guest_handles_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < host_handles_.size(); ++i) hh_idx_[host_handles_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < guest_points_.size(); ++i) gp_idx_[guest_points_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < host_points_.size(); ++i) hp_idx_[host_points_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < guest_places_.size(); ++i) gpl_idx_[guest_places_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < host_places_.size(); ++i) hpl_idx_[host_places_[i]] = static_cast<int>(i);

    if (has_link_vars()) {
        LinkSide hs(host);
        nhh_base_ = model.var_count();
        for (const auto& g : guest_handles_)
            for (const auto& h : host_handles_)
                model.add_var(0, static_cast<i64>(hs.preimage(h).size()));
        nph_base_ = model.var_count();
        for (std::size_t i = 0; i < host_points_.size(); ++i) model.add_var(0, 1);
        npp_base_ = model.var_count();
        for (std::size_t p = 0; p < host_points_.size(); ++p)
            for (std::size_t q = 0; q < guest_points_.size(); ++q) model.add_var(0, 1);
        ff_base_ = model.var_count();
        for (const auto& g : guest_handles_)
            for (const auto& h : host_handles_)
                model.add_var(0, 1);
    }
    if (has_place_vars()) {
        mm_base_ = model.var_count();
        for (std::size_t h = 0; h < host_places_.size(); ++h)
            for (std::size_t g = 0; g < guest_places_.size(); ++g) model.add_var(0, 1);
    }
}

int VarRegistry::nhh(const Handle& g, const Handle& h) const
{
    return nhh_base_ + gh_idx_.at(g) * static_cast<int>(host_handles_.size()) + hh_idx_.at(h);
}

int VarRegistry::nph(const Point& host_point) const
{
    return nph_base_ + hp_idx_.at(host_point);
}

int VarRegistry::npp(const Point& host_point, const Point& guest_point) const
{
    return npp_base_ + hp_idx_.at(host_point) * static_cast<int>(guest_points_.size()) +
           gp_idx_.at(guest_point);
}

int VarRegistry::ff(const Handle& g, const Handle& h) const
{
    return ff_base_ + gh_idx_.at(g) * static_cast<int>(host_handles_.size()) + hh_idx_.at(h);
}

int VarRegistry::mm(const Place& host_place, const Place& guest_place) const
{
    return mm_base_ + hpl_idx_.at(host_place) * static_cast<int>(guest_places_.size()) +
           gpl_idx_.at(guest_place);
}

namespace {

struct Builder {
    EncodedInstance inst;

    // Coalesces terms; a constraint that reduces to a ground fact is dropped
    // when true and recorded as a contradiction when false.
    void emit(const Terms& terms, Rel rel, i64 rhs, const std::string& family)
    {
        std::map<int, i64> co;
        for (const auto& [v, a] : terms) co[v] += a;
        Terms kept;
        for (const auto& [v, a] : co)
            if (a != 0) kept.emplace_back(v, a);
        if (kept.empty()) {
            bool holds = rel == Rel::le ? 0 <= rhs : rel == Rel::ge ? 0 >= rhs : 0 == rhs;
            if (!holds) inst.model.add_falsum();
            return;
        }
        inst.model.add_linear(std::move(kept), rel, rhs);
        ++inst.family_cons[family];
    }

    void count_vars()
    {
        const auto& reg = inst.registry;
        if (reg.has_link_vars()) {
            auto hh = static_cast<long long>(reg.host_handles().size());
            auto gh = static_cast<long long>(reg.guest_handles().size());
            inst.family_vars["N_hh"] = gh * hh;
            inst.family_vars["N_ph"] = static_cast<long long>(reg.host_points().size());
            inst.family_vars["N_pp"] = static_cast<long long>(reg.host_points().size()) *
                                       static_cast<long long>(reg.guest_points().size());
            inst.family_vars["F"] = gh * hh;
        }
        if (reg.has_place_vars())
            inst.family_vars["M"] = static_cast<long long>(reg.host_places().size()) *
                                    static_cast<long long>(reg.guest_places().size());
    }
};

void add_lge_constraints(Builder& bld)
{
    const Bigraph& G = bld.inst.guest;
    const Bigraph& H = bld.inst.host;
    const VarRegistry& reg = bld.inst.registry;
    LinkSide gs(G), hs(H);

    // each host point emits one flux unit, towards its own handle or a guest point
    for (const auto& p : hs.points) {
        Terms t{{reg.nph(p), 1}};
        for (const auto& q : gs.points) t.emplace_back(reg.npp(p, q), 1);
        bld.emit(t, Rel::eq, 1, "lge-cs1");
    }

    // each host handle absorbs one unit per linked point
    for (const auto& h : hs.handles) {
        Terms t;
        for (const auto& p : hs.preimage(h)) t.emplace_back(reg.nph(p), 1);
        for (const auto& g : gs.handles) t.emplace_back(reg.nhh(g, h), 1);
        bld.emit(t, Rel::eq, static_cast<i64>(hs.preimage(h).size()), "lge-cs2");
    }

    // flux is preserved through the guest
    for (const auto& g : gs.handles) {
        Terms t;
        for (const auto& h : hs.handles) t.emplace_back(reg.nhh(g, h), 1);
        for (const auto& q : gs.preimage(g))
            for (const auto& p : hs.points) t.emplace_back(reg.npp(p, q), -1);
        bld.emit(t, Rel::eq, 0, "lge-cs3");
    }

    // each guest port receives exactly one unit; inner names take whole
    // (possibly empty) point sets, kept disjoint by the unit host outflow
    for (const auto& q : gs.points) {
        if (!q.is_port()) continue;
        Terms t;
        for (const auto& p : hs.points) t.emplace_back(reg.npp(p, q), 1);
        bld.emit(t, Rel::eq, 1, "lge-cs4");
    }

    // guest ports cannot draw from host inner names
    for (const auto& q : gs.points)
        if (q.is_port())
            for (const auto& p : hs.points)
                if (p.is_inner()) bld.emit({{reg.npp(p, q), 1}}, Rel::eq, 0, "lge-cs5");

    // channeling between network and flux variables; the F <= N direction
    // holds for edges only, a name needs no flux to be mapped
    for (const auto& g : gs.handles)
        for (const auto& h : hs.handles) {
            if (gs.idle(g) || hs.idle(h)) continue;
            i64 cap = static_cast<i64>(hs.preimage(h).size());
            bld.emit({{reg.nhh(g, h), 1}, {reg.ff(g, h), -cap}}, Rel::le, 0, "lge-cs6");
            if (g.is_edge())
                bld.emit({{reg.ff(g, h), 1}, {reg.nhh(g, h), -1}}, Rel::le, 0, "lge-cs6");
        }

    for (const auto& g : gs.handles)
        for (const auto& h : hs.handles)
            for (const auto& q : gs.preimage(g))
                for (const auto& p : hs.preimage(h))
                    bld.emit({{reg.npp(p, q), 1}, {reg.ff(g, h), -1}}, Rel::le, 0, "lge-cs7");

    // flux between handles needs flux between their points. Valid only for
    // guest edges that carry a port (ports always emit); an edge whose
    // points are all inner names may deliver no flux at all and is steered
    // by the inflow balance instead, like names and idle edges
    for (const auto& g : gs.handles) {
        if (!g.is_edge()) continue;
        bool has_port = false;
        for (const auto& q : gs.preimage(g)) has_port |= q.is_port();
        if (!has_port) continue;
        for (const auto& h : hs.handles) {
            Terms t{{reg.ff(g, h), 1}};
            for (const auto& q : gs.preimage(g))
                for (const auto& p : hs.preimage(h)) t.emplace_back(reg.npp(p, q), -1);
            bld.emit(t, Rel::le, 0, "lge-cs8");
        }
    }

    // every guest handle maps to exactly one destination
    for (const auto& g : gs.handles) {
        Terms t;
        for (const auto& h : hs.handles) t.emplace_back(reg.ff(g, h), 1);
        bld.emit(t, Rel::eq, 1, "lge-cs9");
    }

    // host points cannot bypass the guest once their handle hosts a guest edge
    for (const auto& e : gs.edges)
        for (const auto& h : hs.handles)
            for (const auto& p : hs.preimage(h))
                bld.emit({{reg.nph(p), 1}, {reg.ff(Handle::edge(e), h), 1}}, Rel::le, 1, "lge-cs10");

    // host outer names cannot receive an edge and an outer name at once
    for (const auto& e : gs.edges)
        for (const auto& yh : hs.outers)
            for (const auto& y : gs.outers)
                bld.emit({{reg.ff(Handle::edge(e), Handle::outer(yh)), 1},
                          {reg.ff(Handle::outer(y), Handle::outer(yh)), 1}},
                         Rel::le, 1, "lge-cs11");

    // guest edges never map to host outer names
    for (const auto& e : gs.edges)
        for (const auto& yh : hs.outers)
            bld.emit({{reg.ff(Handle::edge(e), Handle::outer(yh)), 1}}, Rel::eq, 0, "lge-cs12");

    // edges are injectively mapped to edges only: per host edge, at most one
    // guest edge, and no guest name alongside a guest edge
    for (const auto& eh : hs.edges) {
        if (gs.edges.empty()) continue;
        Terms t;
        for (const auto& e : gs.edges) t.emplace_back(reg.ff(Handle::edge(e), Handle::edge(eh)), 1);
        bld.emit(t, Rel::le, 1, "lge-cs13a");
        if (!gs.outers.empty()) {
            Terms t2;
            i64 w = static_cast<i64>(gs.outers.size());
            for (const auto& e : gs.edges) t2.emplace_back(reg.ff(Handle::edge(e), Handle::edge(eh)), w);
            for (const auto& y : gs.outers) t2.emplace_back(reg.ff(Handle::outer(y), Handle::edge(eh)), 1);
            bld.emit(t2, Rel::le, w, "lge-cs13b");
        }
    }

    // port compatibility between nodes
    for (const auto& [v, cg] : G.control_of)
        for (const auto& [w, ch] : H.control_of) {
            int cv = G.signature.arity(cg);
            int cw = H.signature.arity(ch);
            if (cg == ch) {
                for (int i = 0; i < cv; ++i)
                    for (int i2 = 0; i2 < cv; ++i2)
                        if (i != i2)
                            bld.emit({{reg.npp(Point::port(w, i2), Point::port(v, i)), 1}},
                                     Rel::eq, 0, "lge-cs14");
                // ports of one node act compactly
                for (int i = 0; i < cv; ++i) {
                    Terms t;
                    for (int j = 0; j < cv; ++j)
                        t.emplace_back(reg.npp(Point::port(w, j), Point::port(v, j)), 1);
                    t.emplace_back(reg.npp(Point::port(w, i), Point::port(v, i)), -cv);
                    bld.emit(t, Rel::eq, 0, "lge-cs16");
                }
            } else {
                for (int i = 0; i < cv; ++i)
                    for (int i2 = 0; i2 < cw; ++i2)
                        bld.emit({{reg.npp(Point::port(w, i2), Point::port(v, i)), 1}},
                                 Rel::eq, 0, "lge-cs15");
            }
        }
}

void add_pge_constraints(Builder& bld)
{
    const Bigraph& G = bld.inst.guest;
    const Bigraph& H = bld.inst.host;
    const VarRegistry& reg = bld.inst.registry;

    auto guest_places = G.places();
    auto host_places = H.places();

    // host roots never match guest sites or nodes
    for (const auto& h : host_places)
        if (h.is_root())
            for (const auto& g : guest_places)
                if (!g.is_root()) bld.emit({{reg.mm(h, g), 1}}, Rel::eq, 0, "pge-cs1");

    // host sites never match guest nodes or roots
    for (const auto& h : host_places)
        if (h.is_site())
            for (const auto& g : guest_places)
                if (!g.is_site()) bld.emit({{reg.mm(h, g), 1}}, Rel::eq, 0, "pge-cs2");

    // controls must agree
    for (const auto& [v, cg] : G.control_of)
        for (const auto& [w, ch] : H.control_of)
            if (cg != ch)
                bld.emit({{reg.mm(Place::node(w), Place::node(v)), 1}}, Rel::eq, 0, "pge-cs3");

    // no guest root lands on or under a passive host node
    if (bld.inst.options.respect_activity && G.outer_width > 0) {
        for (const auto& h : host_places) {
            if (h.is_root()) continue;
            bool passive_ctx = false;
            for (const auto& anc : prnt_star(H, h))
                if (anc.is_node() && !H.signature.active(H.control_of.at(anc.node_id))) {
                    passive_ctx = true;
                    break;
                }
            if (!passive_ctx) continue;
            for (int r = 0; r < G.outer_width; ++r)
                bld.emit({{reg.mm(h, Place::root(r)), 1}}, Rel::eq, 0, "pge-cs4");
        }
    }

    // matches propagate along the parent maps
    for (const auto& g : guest_places) {
        if (g.is_root()) continue;
        Place pg = G.parent_of(g);
        for (const auto& h : host_places) {
            if (h.is_root()) continue;
            Place ph = H.parent_of(h);
            bld.emit({{reg.mm(h, g), 1}, {reg.mm(ph, pg), -1}}, Rel::le, 0, "pge-cs5");
        }
    }

    // guest roots and nodes match exactly once
    for (int r = 0; r < G.outer_width; ++r) {
        Terms t;
        for (const auto& h : host_places)
            if (!h.is_site()) t.emplace_back(reg.mm(h, Place::root(r)), 1);
        bld.emit(t, Rel::eq, 1, "pge-cs6");
    }
    for (const auto& [v, cg] : G.control_of) {
        Terms t;
        for (const auto& h : host_places)
            if (!h.is_root()) t.emplace_back(reg.mm(h, Place::node(v)), 1);
        bld.emit(t, Rel::eq, 1, "pge-cs7");
    }

    // a host node matched to a node/site is matched to nothing else
    bool has_inner_guest = G.inner_width + G.node_count() > 0;
    for (const auto& [w, ch] : H.control_of) {
        Place h = Place::node(w);
        if (has_inner_guest && G.outer_width > 0) {
            Terms t;
            for (const auto& g : guest_places)
                if (!g.is_root()) t.emplace_back(reg.mm(h, g), static_cast<i64>(G.outer_width));
            for (int r = 0; r < G.outer_width; ++r) t.emplace_back(reg.mm(h, Place::root(r)), 1);
            bld.emit(t, Rel::le, G.outer_width, "pge-cs8a");
        }
        if (has_inner_guest) {
            Terms t;
            for (const auto& g : guest_places)
                if (!g.is_root()) t.emplace_back(reg.mm(h, g), 1);
            bld.emit(t, Rel::le, 1, "pge-cs8b");
        }
    }

    // children of matched nodes are covered by the guest node's children
    for (const auto& [v, cg] : G.control_of)
        for (const auto& [w, ch] : H.control_of) {
            auto host_children = H.children_of(Place::node(w));
            if (host_children.empty()) continue;
            Terms t{{reg.mm(Place::node(w), Place::node(v)), static_cast<i64>(host_children.size())}};
            for (const auto& hc : host_children)
                for (const auto& gc : G.children_of(Place::node(v))) t.emplace_back(reg.mm(hc, gc), -1);
            bld.emit(t, Rel::le, 0, "pge-cs9");
        }

    // a guest root matched to a host node covers its child nodes there
    for (int r = 0; r < G.outer_width; ++r) {
        std::vector<Place> guest_child_nodes;
        for (const auto& gc : G.children_of(Place::root(r)))
            if (gc.is_node()) guest_child_nodes.push_back(gc);
        if (guest_child_nodes.empty()) continue;
        for (const auto& [w, ch] : H.control_of) {
            Terms t{{reg.mm(Place::node(w), Place::root(r)), static_cast<i64>(guest_child_nodes.size())}};
            for (const auto& hc : H.children_of(Place::node(w)))
                if (hc.is_node())
                    for (const auto& gc : guest_child_nodes) t.emplace_back(reg.mm(hc, gc), -1);
            bld.emit(t, Rel::le, 0, "pge-cs10");
        }
    }

    // nothing is matched inside a parameter
    if (G.inner_width > 0)
        for (const auto& g : guest_places) {
            if (g.is_site()) continue;
            for (const auto& [w, ch] : H.control_of) {
                Place h = Place::node(w);
                Terms t{{reg.mm(h, g), 1}};
                for (const auto& anc : prnt_star(H, h))
                    for (int s = 0; s < G.inner_width; ++s)
                        t.emplace_back(reg.mm(anc, Place::site(s)), 1);
                bld.emit(t, Rel::le, 1, "pge-cs11");
            }
        }
}

void add_bge_constraints(Builder& bld)
{
    const Bigraph& G = bld.inst.guest;
    const Bigraph& H = bld.inst.host;
    const VarRegistry& reg = bld.inst.registry;

    // link and place solutions agree on nodes
    for (const auto& [v, cg] : G.control_of)
        for (const auto& [w, ch] : H.control_of) {
            if (cg != ch) continue;
            int c = G.signature.arity(cg);
            for (int k = 0; k < c; ++k)
                bld.emit({{reg.mm(Place::node(w), Place::node(v)), 1},
                          {reg.npp(Point::port(w, k), Point::port(v, k)), -1}},
                         Rel::eq, 0, "bge-cs1");
        }

    // host ports feed guest inner names only from inside the parameter
    if (!G.inner_names.empty())
        for (const auto& [w, ch] : H.control_of)
            for (int k = 0; k < H.signature.arity(ch); ++k) {
                Terms t;
                for (const auto& x : G.inner_names)
                    t.emplace_back(reg.npp(Point::port(w, k), Point::inner(x)), 1);
                for (const auto& anc : prnt_star(H, Place::node(w)))
                    for (int s = 0; s < G.inner_width; ++s)
                        t.emplace_back(reg.mm(anc, Place::site(s)), -1);
                bld.emit(t, Rel::le, 0, "bge-cs2");
            }
}

EncodedInstance encode_impl(const Bigraph& guest, const Bigraph& host, InstanceKind kind,
                            EncodeOptions opts)
{
    if (guest.signature != host.signature) throw std::invalid_argument("signature mismatch");
    Builder bld;
    bld.inst.kind = kind;
    bld.inst.options = opts;
    bld.inst.guest = guest;
    bld.inst.host = host;
    bld.inst.registry.build(guest, host, kind, bld.inst.model);
    bld.count_vars();
    if (kind != InstanceKind::pge) add_lge_constraints(bld);
    if (kind != InstanceKind::lge) add_pge_constraints(bld);
    if (kind == InstanceKind::bge) add_bge_constraints(bld);
    return std::move(bld.inst);
}

} // namespace

EncodedInstance encode_lge(const Bigraph& guest, const Bigraph& host)
{
    return encode_impl(guest, host, InstanceKind::lge, {});
}

EncodedInstance encode_pge(const Bigraph& guest, const Bigraph& host, EncodeOptions opts)
{
    return encode_impl(guest, host, InstanceKind::pge, opts);
}

EncodedInstance encode_bge(const Bigraph& guest, const Bigraph& host, EncodeOptions opts)
{
    return encode_impl(guest, host, InstanceKind::bge, opts);
}

namespace {

[[noreturn]] void malformed(const std::string& what)
{
    throw std::logic_error("malformed solution: " + what);
}

} // namespace

Embedding decode(const EncodedInstance& inst, const csp::Solution& s)
{
    const VarRegistry& reg = inst.registry;
    const Bigraph& G = inst.guest;
    const Bigraph& H = inst.host;
    Embedding phi;

    if (reg.has_link_vars()) {
        for (const auto& g : reg.guest_handles()) {
            const Handle* image = nullptr;
            for (const auto& h : reg.host_handles())
                if (s[reg.ff(g, h)] == 1) {
                    if (image) malformed("guest handle " + g.str() + " has two F destinations");
                    image = &h;
                }
            if (!image) malformed("guest handle " + g.str() + " has no F destination");
            if (g.is_edge()) {
                if (!image->is_edge()) malformed("guest edge mapped to an outer name");
                phi.phi_e[g.id] = image->id;
            } else {
                phi.phi_o[g.id] = *image;
            }
        }
        for (const auto& x : G.inner_names) {
            auto& pts = phi.phi_i[x];
            for (const auto& p : reg.host_points())
                if (s[reg.npp(p, Point::inner(x))] == 1) pts.insert(p);
        }
        if (!reg.has_place_vars()) {
            // link-only: node images are read off the port flux
            for (const auto& [v, c] : G.control_of) {
                int arity = G.signature.arity(c);
                const std::string* image = nullptr;
                for (const auto& [w, cw] : H.control_of)
                    for (int i = 0; i < arity && H.signature.arity(cw) > i; ++i)
                        if (s[reg.npp(Point::port(w, i), Point::port(v, i))] == 1) {
                            if (image && *image != w) malformed("node " + v + " has two images");
                            image = &w;
                        }
                if (image) phi.phi_v[v] = *image;
                else if (arity > 0) malformed("node " + v + " has no image");
                // arity-0 nodes are invisible to the pure link encoding
            }
        }
    }

    if (reg.has_place_vars()) {
        for (const auto& [v, c] : G.control_of) {
            const std::string* image = nullptr;
            for (const auto& h : reg.host_places()) {
                if (s[reg.mm(h, Place::node(v))] != 1) continue;
                if (!h.is_node()) malformed("node " + v + " matched to a non-node");
                if (image) malformed("node " + v + " has two images");
                image = &h.node_id;
            }
            if (!image) malformed("node " + v + " has no image");
            phi.phi_v[v] = *image;
        }
        for (int i = 0; i < G.inner_width; ++i) {
            auto& places = phi.phi_s[i];
            for (const auto& h : reg.host_places())
                if (s[reg.mm(h, Place::site(i))] == 1) {
                    if (h.is_root()) malformed("site image contains a root");
                    places.insert(h);
                }
        }
        for (int r = 0; r < G.outer_width; ++r) {
            const Place* image = nullptr;
            for (const auto& h : reg.host_places())
                if (s[reg.mm(h, Place::root(r))] == 1) {
                    if (h.is_site()) malformed("root image is a site");
                    if (image) malformed("root " + std::to_string(r) + " has two images");
                    image = &h;
                }
            if (!image) malformed("root " + std::to_string(r) + " has no image");
            phi.phi_r[r] = *image;
        }
    }

    return phi;
}

csp::Solution embedding_to_solution(const EncodedInstance& inst, const Embedding& phi)
{
    const VarRegistry& reg = inst.registry;
    const Bigraph& G = inst.guest;
    csp::Solution s(inst.model.var_count(), 0);

    if (reg.has_link_vars()) {
        LinkSide gs(G);
        std::set<Point> covered;
        for (const auto& q : reg.guest_points()) {
            if (q.is_port()) {
                auto it = phi.phi_v.find(q.node_id);
                if (it == phi.phi_v.end()) throw std::invalid_argument("phi_v misses node " + q.node_id);
                Point image = Point::port(it->second, q.index);
                s[reg.npp(image, q)] = 1;
                covered.insert(image);
            } else {
                auto it = phi.phi_i.find(q.name);
                if (it == phi.phi_i.end()) throw std::invalid_argument("phi_i misses name " + q.name);
                for (const auto& p : it->second) {
                    s[reg.npp(p, q)] = 1;
                    covered.insert(p);
                }
            }
        }
        for (const auto& p : reg.host_points())
            if (!covered.count(p)) s[reg.nph(p)] = 1;
        for (const auto& g : reg.guest_handles()) {
            Handle image;
            if (g.is_edge()) {
                auto it = phi.phi_e.find(g.id);
                if (it == phi.phi_e.end()) throw std::invalid_argument("phi_e misses edge " + g.id);
                image = Handle::edge(it->second);
            } else {
                auto it = phi.phi_o.find(g.id);
                if (it == phi.phi_o.end()) throw std::invalid_argument("phi_o misses name " + g.id);
                image = it->second;
            }
            s[reg.ff(g, image)] = 1;
            i64 flux = 0;
            for (const auto& q : gs.preimage(g))
                flux += q.is_port() ? 1 : static_cast<i64>(phi.phi_i.at(q.name).size());
            s[reg.nhh(g, image)] = flux;
        }
    }

    if (reg.has_place_vars()) {
        for (const auto& [v, w] : phi.phi_v) s[reg.mm(Place::node(w), Place::node(v))] = 1;
        for (const auto& [site, places] : phi.phi_s)
            for (const auto& h : places) s[reg.mm(h, Place::site(site))] = 1;
        for (const auto& [root, h] : phi.phi_r) s[reg.mm(h, Place::root(root))] = 1;
    }

    if (!csp::satisfies(inst.model, s))
        throw std::invalid_argument("embedding does not satisfy the encoded constraints");
    return s;
}

EmbeddingStream::EmbeddingStream(const Bigraph& guest, const Bigraph& host, EncodeOptions opts)
    : inst_(encode_bge(guest, host, opts)), stream_(inst_.model)
{
}

bool EmbeddingStream::next(Embedding& out)
{
    csp::Solution s;
    if (!stream_.next(s)) return false;
    out = decode(inst_, s);
    return true;
}

std::vector<Embedding> enumerate_embeddings(const Bigraph& guest, const Bigraph& host,
                                            EncodeOptions opts)
{
    EmbeddingStream stream(guest, host, opts);
    std::vector<Embedding> out;
    Embedding phi;
    while (stream.next(phi)) out.push_back(phi);
    return out;
}

std::optional<Embedding> first_embedding(const Bigraph& guest, const Bigraph& host, EncodeOptions opts)
{
    EmbeddingStream stream(guest, host, opts);
    Embedding phi;
    if (stream.next(phi)) return phi;
    return std::nullopt;
}

long long count_embeddings(const Bigraph& guest, const Bigraph& host, EncodeOptions opts)
{
    EmbeddingStream stream(guest, host, opts);
    long long n = 0;
    Embedding phi;
    while (stream.next(phi)) ++n;
    return n;
}

long long SizeReport::var_total() const
{
    long long t = 0;
    for (const auto& [k, v] : vars) t += v;
    return t;
}

long long SizeReport::con_total() const
{
    long long t = 0;
    for (const auto& [k, v] : cons) t += v;
    return t;
}

SizeReport size_formulas(const Bigraph& G, const Bigraph& H, InstanceKind kind, EncodeOptions opts)
{
    SizeReport r;
    auto count_points = [](const Bigraph& b) {
        long long n = 0;
        for (const auto& [id, c] : b.control_of) n += b.signature.arity(c);
        return n + static_cast<long long>(b.inner_names.size());
    };
    long long gh = static_cast<long long>(G.edges.size() + G.outer_names.size());
    long long hh = static_cast<long long>(H.edges.size() + H.outer_names.size());
    long long gp = count_points(G);
    long long hp = count_points(H);
    long long g_ports = gp - static_cast<long long>(G.inner_names.size());
    long long vg = G.node_count(), vh = H.node_count();
    long long ng = G.inner_width, mg = G.outer_width;
    long long nh = H.inner_width, mh = H.outer_width;

    if (kind != InstanceKind::pge) {
        LinkSide gs(G), hs(H);
        long long nonidle_h = 0, nonidle_eg = 0, nonidle_yg = 0, ported_eg = 0;
        for (const auto& h : gs.handles) {
            if (!gs.idle(h)) (h.is_edge() ? nonidle_eg : nonidle_yg)++;
            if (h.is_edge()) {
                bool has_port = false;
                for (const auto& q : gs.preimage(h)) has_port |= q.is_port();
                if (has_port) ++ported_eg;
            }
        }
        for (const auto& h : hs.handles)
            if (!hs.idle(h)) ++nonidle_h;

        r.vars["N_hh"] = gh * hh;
        r.vars["N_ph"] = hp;
        r.vars["N_pp"] = hp * gp;
        r.vars["F"] = gh * hh;

        r.cons["lge-cs1"] = hp;
        r.cons["lge-cs2"] = gh >= 1 ? hh : nonidle_h;
        r.cons["lge-cs3"] = hh >= 1 ? gh : 0;
        r.cons["lge-cs4"] = hp >= 1 ? g_ports : 0;
        r.cons["lge-cs5"] = static_cast<long long>(H.inner_names.size()) * g_ports;
        r.cons["lge-cs6"] = 2 * nonidle_eg * nonidle_h + nonidle_yg * nonidle_h;
        r.cons["lge-cs7"] = gp * hp;
        r.cons["lge-cs8"] = ported_eg * hh;
        r.cons["lge-cs9"] = hh >= 1 ? gh : 0;
        r.cons["lge-cs10"] = static_cast<long long>(G.edges.size()) * hp;
        r.cons["lge-cs11"] = static_cast<long long>(G.edges.size() * H.outer_names.size() *
                                                    G.outer_names.size());
        r.cons["lge-cs12"] = static_cast<long long>(G.edges.size() * H.outer_names.size());
        r.cons["lge-cs13a"] = G.edges.empty() ? 0 : static_cast<long long>(H.edges.size());
        r.cons["lge-cs13b"] =
            (G.edges.empty() || G.outer_names.empty()) ? 0 : static_cast<long long>(H.edges.size());

        long long cs14 = 0, cs15 = 0, cs16 = 0;
        for (const auto& [v, cg] : G.control_of)
            for (const auto& [w, ch] : H.control_of) {
                long long cv = G.signature.arity(cg);
                long long cw = H.signature.arity(ch);
                if (cg == ch) {
                    cs14 += cv * (cv - 1);
                    if (cv >= 2) cs16 += cv;
                } else {
                    cs15 += cv * cw;
                }
            }
        r.cons["lge-cs14"] = cs14;
        r.cons["lge-cs15"] = cs15;
        r.cons["lge-cs16"] = cs16;
    }

    if (kind != InstanceKind::lge) {
        r.vars["M"] = (ng + vg + mg) * (nh + vh + mh);

        long long mismatch_pairs = 0, host_children_nonempty = 0, passive_hosts = 0;
        for (const auto& [v, cg] : G.control_of)
            for (const auto& [w, ch] : H.control_of)
                if (cg != ch) ++mismatch_pairs;
        for (const auto& [w, ch] : H.control_of)
            if (!H.children_of(Place::node(w)).empty()) ++host_children_nonempty;
        for (const auto& h : H.places()) {
            if (h.is_root()) continue;
            for (const auto& anc : prnt_star(H, h))
                if (anc.is_node() && !H.signature.active(H.control_of.at(anc.node_id))) {
                    ++passive_hosts;
                    break;
                }
        }
        long long roots_with_child_nodes = 0;
        for (int root = 0; root < G.outer_width; ++root) {
            for (const auto& gc : G.children_of(Place::root(root)))
                if (gc.is_node()) {
                    ++roots_with_child_nodes;
                    break;
                }
        }

        r.cons["pge-cs1"] = mh * (ng + vg);
        r.cons["pge-cs2"] = nh * (vg + mg);
        r.cons["pge-cs3"] = mismatch_pairs;
        r.cons["pge-cs4"] = opts.respect_activity && mg > 0 ? passive_hosts * mg : 0;
        r.cons["pge-cs5"] = (ng + vg) * (nh + vh);
        r.cons["pge-cs6"] = (vh + mh) >= 1 ? mg : 0;
        r.cons["pge-cs7"] = (nh + vh) >= 1 ? vg : 0;
        r.cons["pge-cs8a"] = (mg >= 1 && ng + vg >= 1) ? vh : 0;
        r.cons["pge-cs8b"] = ng + vg >= 1 ? vh : 0;
        r.cons["pge-cs9"] = vg * host_children_nonempty;
        r.cons["pge-cs10"] = roots_with_child_nodes * vh;
        r.cons["pge-cs11"] = ng >= 1 ? (vg + mg) * vh : 0;
    }

    if (kind == InstanceKind::bge) {
        long long bg1 = 0;
        for (const auto& [v, cg] : G.control_of)
            for (const auto& [w, ch] : H.control_of)
                if (cg == ch) bg1 += G.signature.arity(cg);
        r.cons["bge-cs1"] = bg1;
        r.cons["bge-cs2"] = G.inner_names.empty() ? 0 : hp - static_cast<long long>(H.inner_names.size());
    }

    return r;
}

} // namespace bigraph
