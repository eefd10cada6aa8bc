#include <doctest.h>

#include <functional>

#include "bigraph/oracle.hpp"
#include "support/corpus.hpp"

using namespace bigraph;
using corpus::Build;

namespace {

bool has_tag(const std::vector<Violation>& vs, const std::string& tag)
{
    for (const auto& v : vs)
        if (v.tag == tag) return true;
    return false;
}

// the full candidate space, filtered only by check_embedding; exponential,
// for cross-checking the pruned enumeration on tiny instances
std::vector<Embedding> reference_embeddings(const Bigraph& G, const Bigraph& H, InstanceKind kind)
{
    std::vector<Embedding> out;
    std::vector<std::string> gn = G.node_ids(), hn = H.node_ids();
    std::vector<std::string> ge(G.edges.begin(), G.edges.end());
    std::vector<std::string> he(H.edges.begin(), H.edges.end());
    auto host_handles = H.handles();
    auto host_points = H.points();
    std::vector<Place> host_inner_places;
    for (const auto& p : H.places())
        if (!p.is_root()) host_inner_places.push_back(p);
    std::vector<Place> host_fill_places;
    for (const auto& p : H.places())
        if (!p.is_site()) host_fill_places.push_back(p);

    Embedding phi;
    std::function<void(std::size_t)> pick_v, pick_e, pick_o, pick_r, pick_s, pick_i;
    auto finish = [&] {
        if (check_embedding(G, H, phi, kind).empty()) out.push_back(phi);
    };

    std::function<void(std::size_t, std::vector<std::string>&, std::size_t)> subset_places;

    pick_i = [&](std::size_t k) {
        if (kind == InstanceKind::pge || k == G.inner_names.size()) {
            finish();
            return;
        }
        auto it = G.inner_names.begin();
        std::advance(it, k);
        std::function<void(std::size_t)> subsets = [&](std::size_t i) {
            if (i == host_points.size()) {
                pick_i(k + 1);
                return;
            }
            subsets(i + 1);
            phi.phi_i[*it].insert(host_points[i]);
            subsets(i + 1);
            phi.phi_i[*it].erase(host_points[i]);
        };
        phi.phi_i[*it];
        subsets(0);
        phi.phi_i.erase(*it);
    };

    pick_s = [&](std::size_t k) {
        if (kind == InstanceKind::lge || static_cast<int>(k) == G.inner_width) {
            pick_i(0);
            return;
        }
        std::function<void(std::size_t)> subsets = [&](std::size_t i) {
            if (i == host_inner_places.size()) {
                pick_s(k + 1);
                return;
            }
            subsets(i + 1);
            phi.phi_s[static_cast<int>(k)].insert(host_inner_places[i]);
            subsets(i + 1);
            phi.phi_s[static_cast<int>(k)].erase(host_inner_places[i]);
        };
        phi.phi_s[static_cast<int>(k)];
        subsets(0);
        phi.phi_s.erase(static_cast<int>(k));
    };

    pick_r = [&](std::size_t k) {
        if (kind == InstanceKind::lge || static_cast<int>(k) == G.outer_width) {
            pick_s(0);
            return;
        }
        for (const auto& p : host_fill_places) {
            phi.phi_r[static_cast<int>(k)] = p;
            pick_r(k + 1);
            phi.phi_r.erase(static_cast<int>(k));
        }
    };

    pick_o = [&](std::size_t k) {
        if (kind == InstanceKind::pge || k == G.outer_names.size()) {
            pick_r(0);
            return;
        }
        auto it = G.outer_names.begin();
        std::advance(it, k);
        for (const auto& h : host_handles) {
            phi.phi_o[*it] = h;
            pick_o(k + 1);
            phi.phi_o.erase(*it);
        }
    };

    pick_e = [&](std::size_t k) {
        if (kind == InstanceKind::pge || k == ge.size()) {
            pick_o(0);
            return;
        }
        for (const auto& f : he) {
            bool used = false;
            for (const auto& [e2, f2] : phi.phi_e) used |= f2 == f;
            if (used) continue;
            phi.phi_e[ge[k]] = f;
            pick_e(k + 1);
            phi.phi_e.erase(ge[k]);
        }
    };

    pick_v = [&](std::size_t k) {
        if (k == gn.size()) {
            pick_e(0);
            return;
        }
        for (const auto& w : hn) {
            bool used = false;
            for (const auto& [v2, w2] : phi.phi_v) used |= w2 == w;
            if (used) continue;
            phi.phi_v[gn[k]] = w;
            pick_v(k + 1);
            phi.phi_v.erase(gn[k]);
        }
    };

    pick_v(0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("the identity embedding satisfies every clause")
{
    auto g = Build(corpus::two_control_signature())
                 .widths(1, 2)
                 .edge("e")
                 .inner("x")
                 .outer("y")
                 .node("a", "A", "r0")
                 .node("b", "B", "a")
                 .site(0, "a")
                 .wire("a:0", "e")
                 .wire("a:1", "y")
                 .wire("b:0", "e")
                 .wire("x", "e")
                 .done();
    CHECK(check_embedding(g, g, corpus::identity_embedding(g)).empty());
}

TEST_CASE("control mismatch is reported on both structures")
{
    auto g = Build(corpus::place_signature()).widths(0, 1).node("v", "K", "r0").done();
    auto h = Build(corpus::place_signature()).widths(0, 1).node("w", "L", "r0").done();
    Embedding phi;
    phi.phi_v["v"] = "w";
    phi.phi_r[0] = Place::root(0);
    auto violations = check_embedding(g, h, phi);
    CHECK(has_tag(violations, "LGE-6"));
    CHECK(has_tag(violations, "PGE-7"));
}

TEST_CASE("an uncovered host point under an edge image violates LGE-5")
{
    Signature sig = corpus::two_control_signature();
    auto g = Build(sig)
                 .widths(0, 1)
                 .edge("e")
                 .node("a", "B", "r0")
                 .node("b", "B", "r0")
                 .wire("a:0", "e")
                 .wire("b:0", "e")
                 .done();
    auto h = Build(sig)
                 .widths(0, 1)
                 .edge("f")
                 .node("n1", "B", "r0")
                 .node("n2", "B", "r0")
                 .node("n3", "B", "r0")
                 .wire("n1:0", "f")
                 .wire("n2:0", "f")
                 .wire("n3:0", "f")
                 .done();
    Embedding phi;
    phi.phi_v["a"] = "n1";
    phi.phi_v["b"] = "n2";
    phi.phi_e["e"] = "f";
    phi.phi_r[0] = Place::root(0);
    auto violations = check_embedding(g, h, phi);
    CHECK(has_tag(violations, "LGE-5"));
    // and no embedding exists at all: two ports cannot cover three
    CHECK(brute_force_embeddings(g, h).empty());
}

TEST_CASE("phi referencing unknown host elements is an error, not a violation")
{
    auto g = Build(corpus::place_signature()).widths(0, 1).node("v", "K", "r0").done();
    auto h = Build(corpus::place_signature()).widths(0, 1).node("w", "K", "r0").done();
    Embedding phi;
    phi.phi_v["v"] = "nope";
    phi.phi_r[0] = Place::root(0);
    CHECK_THROWS_AS(check_embedding(g, h, phi), std::invalid_argument);
    Embedding partial;   // misses phi_r
    partial.phi_v["v"] = "w";
    CHECK_THROWS_AS(check_embedding(g, h, partial), std::invalid_argument);
}

TEST_CASE("brute force on control-disjoint bigraphs is empty")
{
    auto g = Build(corpus::place_signature()).widths(0, 1).node("v", "K", "r0").done();
    auto h = Build(corpus::place_signature()).widths(0, 1).node("w", "L", "r0").done();
    CHECK(brute_force_embeddings(g, h).empty());
}

TEST_CASE("one guest node with a site against three leaves")
{
    auto g = Build(corpus::place_signature()).widths(1, 1).node("v", "K", "r0").site(0, "v").done();
    auto h = Build(corpus::place_signature())
                 .widths(0, 1)
                 .node("l1", "K", "r0")
                 .node("l2", "K", "r0")
                 .node("l3", "K", "r0")
                 .done();
    auto found = brute_force_embeddings(g, h);
    CHECK(found.size() == 3);
    for (const auto& phi : found) {
        CHECK(phi.phi_s.at(0).empty());   // leaves have no children to absorb
        CHECK(phi.phi_r.at(0) == Place::root(0));
    }
}

TEST_CASE("a single node embeds into itself exactly once when siteless")
{
    auto g = Build(corpus::place_signature()).widths(0, 1).node("v", "K", "r0").done();
    auto found = brute_force_embeddings(g, g);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == corpus::identity_embedding(g));
}

TEST_CASE("pruned enumeration equals the unpruned candidate space")
{
    SUBCASE("place structure")
    {
        auto g = Build(corpus::place_signature()).widths(1, 1).node("v", "K", "r0").site(0, "v").done();
        auto h = Build(corpus::place_signature())
                     .widths(0, 1)
                     .node("a", "K", "r0")
                     .node("b", "K", "a")
                     .node("c", "L", "a")
                     .done();
        for (auto kind : {InstanceKind::pge, InstanceKind::bge})
            CHECK(brute_force_embeddings(g, h, kind) == reference_embeddings(g, h, kind));
    }
    SUBCASE("link structure with an inner name")
    {
        Signature sig = corpus::two_control_signature();
        auto g = Build(sig)
                     .widths(1, 1)
                     .inner("x")
                     .outer("y")
                     .node("u", "B", "r0")
                     .site(0, "u")
                     .wire("u:0", "y")
                     .wire("x", "y")
                     .done();
        auto h = Build(sig)
                     .widths(0, 1)
                     .outer("y")
                     .node("n", "B", "r0")
                     .node("m", "B", "n")
                     .wire("n:0", "y")
                     .wire("m:0", "y")
                     .done();
        for (auto kind : {InstanceKind::lge, InstanceKind::bge})
            CHECK(brute_force_embeddings(g, h, kind) == reference_embeddings(g, h, kind));
    }
}

TEST_CASE("every embedding found passes the checker; identity holds corpus-wide")
{
    corpus::Bounds bounds;
    bounds.max_nodes = 2;
    bounds.max_roots = 2;
    bounds.max_sites = 1;
    auto all = corpus::enumerate_bigraphs(corpus::two_control_signature(), bounds);
    int checked = 0;
    for (const auto& b : all) {
        CHECK(check_embedding(b, b, corpus::identity_embedding(b)).empty());
        ++checked;
    }
    CHECK(checked > 100);
}
