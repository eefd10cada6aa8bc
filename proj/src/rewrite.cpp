#include "bigraph/rewrite.hpp"

#include <algorithm>
#include <functional>

#include "bigraph/oracle.hpp"

namespace bigraph {

namespace {

void require(bool cond, const std::string& msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

std::set<std::string> all_ids(const Bigraph& b)
{
    std::set<std::string> ids;
    for (const auto& [id, c] : b.control_of) ids.insert(id);
    ids.insert(b.edges.begin(), b.edges.end());
    return ids;
}

// deterministic fresh-id source: prefix + counter, skipping taken ids
struct FreshIds {
    std::string prefix;
    std::set<std::string>& taken;
    int counter = 0;

    std::string next()
    {
        while (true) {
            std::string id = prefix + std::to_string(counter++);
            if (taken.insert(id).second) return id;
        }
    }
};

Bigraph rename_support(const Bigraph& b, const std::map<std::string, std::string>& node_map,
                       const std::map<std::string, std::string>& edge_map)
{
    Bigraph r;
    r.signature = b.signature;
    r.inner_width = b.inner_width;
    r.outer_width = b.outer_width;
    r.inner_names = b.inner_names;
    r.outer_names = b.outer_names;
    auto nn = [&](const std::string& id) {
        auto it = node_map.find(id);
        return it == node_map.end() ? id : it->second;
    };
    for (const auto& [id, c] : b.control_of) r.control_of[nn(id)] = c;
    auto pp = [&](const Place& p) { return p.is_node() ? Place::node(nn(p.node_id)) : p; };
    for (const auto& [id, p] : b.parent_of_node) r.parent_of_node[nn(id)] = pp(p);
    r.parent_of_site.reserve(b.parent_of_site.size());
    for (const auto& p : b.parent_of_site) r.parent_of_site.push_back(pp(p));
    for (const auto& e : b.edges) {
        auto it = edge_map.find(e);
        r.edges.insert(it == edge_map.end() ? e : it->second);
    }
    for (const auto& [q, h] : b.link) {
        Point q2 = q.is_port() ? Point::port(nn(q.node_id), q.index) : q;
        Handle h2 = h;
        if (h.is_edge()) {
            auto it = edge_map.find(h.id);
            if (it != edge_map.end()) h2 = Handle::edge(it->second);
        }
        r.link[q2] = h2;
    }
    return r;
}

} // namespace

void ReactionRule::check() const
{
    require(redex.signature == reactum.signature, "redex and reactum signatures differ");
    require(redex.outer_width == reactum.outer_width && redex.outer_names == reactum.outer_names,
            "redex and reactum must share the outer face");
    require(static_cast<int>(eta.size()) == reactum.inner_width, "eta must be total on reactum sites");
    for (const auto& [to, from] : eta) {
        require(to >= 0 && to < reactum.inner_width, "eta key out of range");
        require(from >= 0 && from < redex.inner_width, "eta value out of range");
    }
}

Bigraph rename_support_by(const Bigraph& guest, const Embedding& phi)
{
    std::map<std::string, std::string> edge_map(phi.phi_e.begin(), phi.phi_e.end());
    return rename_support(guest, phi.phi_v, edge_map);
}

Decomposition decompose(const Bigraph& agent, const Bigraph& redex, const Embedding& phi)
{
    require(agent.is_ground(), "agent must be ground");
    {
        auto violations = check_embedding(redex, agent, phi, InstanceKind::bge);
        if (!violations.empty())
            throw std::invalid_argument("invalid embedding: " + violations.front().tag + " " +
                                        violations.front().detail);
    }
    const Bigraph& G = redex;

    // slot_of: host nodes inside the parameter, per redex site
    std::map<std::string, int> slot_of;
    {
        std::function<void(const std::string&, int)> claim = [&](const std::string& w, int slot) {
            slot_of[w] = slot;
            for (const auto& c : agent.children_of(Place::node(w)))
                claim(c.node_id, slot);   // agent is ground: children are nodes
        };
        for (const auto& [s, places] : phi.phi_s)
            for (const auto& p : places) claim(p.node_id, s);
    }
    std::set<std::string> redex_nodes;
    for (const auto& [v, w] : phi.phi_v) redex_nodes.insert(w);

    auto in_context = [&](const std::string& w) {
        return !redex_nodes.count(w) && !slot_of.count(w);
    };

    // classify agent edges: redex images, parameter-internal, context
    std::set<std::string> image_edges;
    for (const auto& [e, f] : phi.phi_e) image_edges.insert(f);
    std::set<std::string> name_target_edges;
    for (const auto& [y, h] : phi.phi_o)
        if (h.is_edge()) name_target_edges.insert(h.id);
    std::set<Point> routed;   // parameter points already routed by phi_i
    for (const auto& [x, pts] : phi.phi_i) routed.insert(pts.begin(), pts.end());

    std::map<std::string, int> internal_edge_slot;
    for (const auto& e : agent.edges) {
        if (image_edges.count(e) || name_target_edges.count(e)) continue;
        auto pre = link_preimage(agent, Handle::edge(e));
        if (pre.empty()) continue;   // idle context edge
        int slot = -2;
        bool internal = true;
        for (const auto& p : pre) {
            auto it = slot_of.find(p.node_id);
            if (it == slot_of.end() || routed.count(p)) {
                internal = false;
                break;
            }
            if (slot == -2) slot = it->second;
            else if (slot != it->second) internal = false;
            if (!internal) break;
        }
        if (internal && slot >= 0) internal_edge_slot[e] = slot;
    }

    // pass-through names: one per agent handle that receives unrouted
    // parameter points which the guest cannot carry
    std::set<std::string> avoid = G.inner_names;
    avoid.insert(G.outer_names.begin(), G.outer_names.end());
    avoid.insert(agent.edges.begin(), agent.edges.end());
    avoid.insert(agent.outer_names.begin(), agent.outer_names.end());
    FreshIds fresh{"z", avoid};
    std::map<Handle, std::string> thread_name;
    std::set<std::string> threaded;
    for (const auto& [p, h] : agent.link) {
        if (!slot_of.count(p.node_id) || routed.count(p)) continue;
        if (h.is_edge() && internal_edge_slot.count(h.id)) continue;
        if (!thread_name.count(h)) {
            std::string z = fresh.next();
            thread_name[h] = z;
            threaded.insert(z);
        }
    }

    // parameters
    std::vector<Bigraph> params(G.inner_width);
    for (int s = 0; s < G.inner_width; ++s) {
        Bigraph& d = params[s];
        d.signature = agent.signature;
        d.outer_width = 1;
    }
    for (const auto& [w, s] : slot_of) {
        Bigraph& d = params[s];
        d.control_of[w] = agent.control_of.at(w);
        Place parent = agent.parent_of(Place::node(w));
        bool at_top = !parent.is_node() || !slot_of.count(parent.node_id);
        d.parent_of_node[w] = at_top ? Place::root(0) : parent;
    }
    for (const auto& [e, s] : internal_edge_slot) params[s].edges.insert(e);
    std::map<Point, std::string> routed_name;   // parameter point -> guest inner name
    for (const auto& [x, pts] : phi.phi_i)
        for (const auto& p : pts) routed_name[p] = x;
    for (const auto& [p, h] : agent.link) {
        auto it = slot_of.find(p.node_id);
        if (it == slot_of.end()) continue;
        Bigraph& d = params[it->second];
        if (auto rn = routed_name.find(p); rn != routed_name.end()) {
            d.outer_names.insert(rn->second);
            d.link[p] = Handle::outer(rn->second);
        } else if (h.is_edge() && internal_edge_slot.count(h.id)) {
            d.link[p] = h;
        } else {
            const std::string& z = thread_name.at(h);
            d.outer_names.insert(z);
            d.link[p] = Handle::outer(z);
        }
    }

    // context
    Bigraph ctx;
    ctx.signature = agent.signature;
    ctx.outer_width = agent.outer_width;
    ctx.outer_names = agent.outer_names;
    ctx.inner_width = G.outer_width;
    ctx.inner_names = G.outer_names;
    ctx.inner_names.insert(threaded.begin(), threaded.end());
    for (const auto& [w, c] : agent.control_of)
        if (in_context(w)) {
            ctx.control_of[w] = c;
            ctx.parent_of_node[w] = agent.parent_of(Place::node(w));
        }
    ctx.parent_of_site.resize(G.outer_width);
    for (int r = 0; r < G.outer_width; ++r) ctx.parent_of_site[r] = phi.phi_r.at(r);
    for (const auto& e : agent.edges)
        if (!image_edges.count(e) && !internal_edge_slot.count(e)) ctx.edges.insert(e);
    for (const auto& [p, h] : agent.link)
        if (in_context(p.node_id)) ctx.link[p] = h;
    for (const auto& [y, h] : phi.phi_o) ctx.link[Point::inner(y)] = h;
    for (const auto& [h, z] : thread_name) ctx.link[Point::inner(z)] = h;

    return Decomposition{std::move(ctx), std::move(params), std::move(threaded)};
}

Bigraph instantiate(const std::vector<Bigraph>& params, const std::map<int, int>& eta, int width,
                    const std::set<std::string>& avoid)
{
    std::set<std::string> taken = avoid;
    for (const auto& d : params) {
        auto ids = all_ids(d);
        taken.insert(ids.begin(), ids.end());
    }
    FreshIds fresh{"c", taken};

    std::vector<Bigraph> picked;
    std::set<int> used;
    for (int i = 0; i < width; ++i) {
        auto it = eta.find(i);
        require(it != eta.end(), "eta misses reactum site " + std::to_string(i));
        require(it->second >= 0 && it->second < static_cast<int>(params.size()),
                "eta index out of range");
        const Bigraph& d = params[it->second];
        if (used.insert(it->second).second) {
            picked.push_back(d);
        } else {
            // duplicated parameter: fresh node/edge ids, shared outer names
            std::map<std::string, std::string> node_map, edge_map;
            for (const auto& [id, c] : d.control_of) node_map[id] = fresh.next();
            for (const auto& e : d.edges) edge_map[e] = fresh.next();
            picked.push_back(rename_support(d, node_map, edge_map));
        }
    }
    if (picked.empty()) {
        Bigraph empty;
        if (!params.empty()) empty.signature = params.front().signature;
        return empty;
    }
    return juxtapose(picked);
}

Bigraph apply_rule(const Bigraph& agent, const ReactionRule& rule, const Embedding& phi)
{
    rule.check();
    require(agent.signature == rule.redex.signature, "signature mismatch");

    Decomposition dec = decompose(agent, rule.redex, phi);

    std::set<std::string> taken = all_ids(dec.context);
    for (const auto& d : dec.params) {
        auto ids = all_ids(d);
        taken.insert(ids.begin(), ids.end());
    }
    FreshIds fresh{"x", taken};
    std::map<std::string, std::string> node_map, edge_map;
    for (const auto& [id, c] : rule.reactum.control_of) node_map[id] = fresh.next();
    for (const auto& e : rule.reactum.edges) edge_map[e] = fresh.next();
    Bigraph reactum = rename_support(rule.reactum, node_map, edge_map);

    Bigraph d = instantiate(dec.params, rule.eta, rule.reactum.inner_width, taken);
    d.signature = agent.signature;
    // pad the instantiated parameter up to the reactum's inner face: names
    // dropped with their sites become idle
    for (const auto& x : reactum.inner_names) d.outer_names.insert(x);
    for (const auto& z : dec.threaded_names) d.outer_names.insert(z);
    for (const auto& y : d.outer_names)
        require(reactum.inner_names.count(y) || dec.threaded_names.count(y),
                "parameter exports name " + y + " which the reactum cannot accept");

    Bigraph mid = compose(extend_with_names(reactum, dec.threaded_names), d);
    return compose(dec.context, mid);
}

std::vector<StepResult> step(const Bigraph& agent, const std::vector<ReactionRule>& rules,
                             bool respect_activity)
{
    std::vector<StepResult> out;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        EncodeOptions opts;
        opts.respect_activity = respect_activity;
        for (const auto& phi : enumerate_embeddings(rules[i].redex, agent, opts))
            out.push_back({static_cast<int>(i), phi, apply_rule(agent, rules[i], phi)});
    }
    return out;
}

} // namespace bigraph
