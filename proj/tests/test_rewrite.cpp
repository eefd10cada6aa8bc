#include <doctest.h>

#include "bigraph/oracle.hpp"
#include "bigraph/rewrite.hpp"
#include "support/corpus.hpp"

using namespace bigraph;
using corpus::Build;

namespace {

// the spec'd recomposition: context . (renamed redex x id_Z) . merged params
Bigraph recompose(const Bigraph& redex, const Embedding& phi, const Decomposition& dec)
{
    Bigraph mid = extend_with_names(rename_support_by(redex, phi), dec.threaded_names);
    Bigraph merged;
    if (dec.params.empty()) {
        merged.signature = redex.signature;
    } else {
        merged = juxtapose(dec.params);
    }
    for (const auto& x : redex.inner_names) merged.outer_names.insert(x);   // idle if unrouted
    return compose(dec.context, compose(mid, merged));
}

} // namespace

TEST_CASE("decomposing along the identity embedding leaves an identity context")
{
    auto agent = Build(corpus::place_signature()).widths(0, 1).node("k", "K", "r0").done();
    auto dec = decompose(agent, agent, corpus::identity_embedding(agent));
    CHECK(dec.context.control_of.empty());
    CHECK(dec.params.empty());
    CHECK(dec.threaded_names.empty());
    CHECK(is_isomorphic(recompose(agent, corpus::identity_embedding(agent), dec), agent));
}

TEST_CASE("decomposing K[site] out of K(L) puts L into the parameter")
{
    auto redex = Build(corpus::place_signature()).widths(1, 1).node("k", "K", "r0").site(0, "k").done();
    auto agent = Build(corpus::place_signature()).widths(0, 1).node("k", "K", "r0").node("l", "L", "k").done();
    auto found = brute_force_embeddings(redex, agent);
    REQUIRE(found.size() == 1);
    auto dec = decompose(agent, redex, found[0]);
    CHECK(dec.context.control_of.empty());
    REQUIRE(dec.params.size() == 1);
    CHECK(dec.params[0].control_of.count("l"));
    CHECK(is_isomorphic(recompose(redex, found[0], dec), agent));
}

TEST_CASE("decompose rejects non-ground agents and invalid embeddings")
{
    auto redex = Build(corpus::place_signature()).widths(0, 1).node("k", "K", "r0").done();
    auto open_host = Build(corpus::place_signature()).widths(1, 1).node("k", "K", "r0").site(0, "k").done();
    CHECK_THROWS_AS(decompose(open_host, redex, corpus::identity_embedding(redex)),
                    std::invalid_argument);

    auto agent = Build(corpus::place_signature()).widths(0, 1).node("a", "K", "r0").node("b", "L", "a").done();
    Embedding bogus;
    bogus.phi_v["k"] = "b";   // control mismatch
    bogus.phi_r[0] = Place::root(0);
    CHECK_THROWS_AS(decompose(agent, redex, bogus), std::invalid_argument);
}

TEST_CASE("cross-boundary links thread through the context")
{
    // redex u[site] with the port on an outer name; in the agent that handle
    // is an edge shared with a parameter node
    Signature sig = corpus::two_control_signature();
    auto redex = Build(sig).widths(1, 1).outer("y").node("u", "B", "r0").site(0, "u").wire("u:0", "y").done();
    auto agent = Build(sig)
                     .widths(0, 1)
                     .edge("f")
                     .node("n", "B", "r0")
                     .node("m", "B", "n")
                     .wire("n:0", "f")
                     .wire("m:0", "f")
                     .done();
    auto found = brute_force_embeddings(redex, agent);
    REQUIRE(found.size() == 2);   // u -> n absorbing m, or u -> m with an empty site
    bool threaded_case = false;
    for (const auto& phi : found) {
        auto dec = decompose(agent, redex, phi);
        CHECK(is_isomorphic(recompose(redex, phi, dec), agent));
        if (phi.phi_v.at("u") == "n") {
            // m's port shares the edge f with the context; it must thread
            CHECK(dec.threaded_names.size() == 1);
            threaded_case = true;
        }
    }
    CHECK(threaded_case);
}

TEST_CASE("instantiate copies, keeps, and drops parameters")
{
    Signature sig = corpus::place_signature();
    auto p0 = Build(sig).widths(0, 1).node("l", "L", "r0").done();
    std::vector<Bigraph> params{p0};

    SUBCASE("identity eta keeps the parameter")
    {
        auto d = instantiate(params, {{0, 0}}, 1);
        CHECK(is_isomorphic(d, p0));
    }
    SUBCASE("a duplicating eta makes disjoint copies")
    {
        auto d = instantiate(params, {{0, 0}, {1, 0}}, 2);
        CHECK(d.outer_width == 2);
        CHECK(d.control_of.size() == 2);
        auto expected = Build(sig).widths(0, 2).node("a", "L", "r0").node("b", "L", "r1").done();
        CHECK(is_isomorphic(d, expected));
    }
    SUBCASE("an empty eta discards everything")
    {
        auto d = instantiate(params, {}, 0);
        CHECK(d.outer_width == 0);
        CHECK(d.control_of.empty());
    }
    SUBCASE("out-of-range eta values are rejected")
    {
        CHECK_THROWS_AS(instantiate(params, {{0, 3}}, 1), std::invalid_argument);
    }
}

TEST_CASE("the ambient open rule fires once and dissolves the boundary")
{
    auto fx = corpus::ambient_open_fixture();
    auto successors = step(fx.agent, {fx.rule});
    REQUIRE(successors.size() == 1);
    CHECK(validate(successors[0].result).empty());
    CHECK(is_isomorphic(successors[0].result, fx.expected));
}

TEST_CASE("a redex-equals-reactum rule is a no-op up to isomorphism")
{
    Signature sig = corpus::place_signature();
    auto shape = Build(sig).widths(1, 1).node("k", "K", "r0").site(0, "k").done();
    ReactionRule rule;
    rule.redex = shape;
    rule.reactum = Build(sig).widths(1, 1).node("k2", "K", "r0").site(0, "k2").done();
    rule.eta = {{0, 0}};

    auto agent = Build(sig)
                     .widths(0, 1)
                     .node("a", "K", "r0")
                     .node("b", "L", "a")
                     .node("c", "K", "b")
                     .done();
    auto successors = step(agent, {rule});
    REQUIRE(successors.size() == 2);   // matches at a and at c
    for (const auto& s : successors) {
        CHECK(validate(s.result).empty());
        CHECK(is_isomorphic(s.result, agent));
    }
}

TEST_CASE("a node-deleting rule removes exactly the leaf")
{
    Signature sig = corpus::place_signature();
    ReactionRule rule;
    rule.redex = Build(sig).widths(0, 1).node("k", "K", "r0").done();
    rule.reactum = Build(sig).widths(0, 1).done();
    rule.eta = {};

    auto agent = Build(sig).widths(0, 1).node("a", "L", "r0").node("b", "K", "a").done();
    auto successors = step(agent, {rule});
    REQUIRE(successors.size() == 1);
    auto expected = Build(sig).widths(0, 1).node("a", "L", "r0").done();
    CHECK(is_isomorphic(successors[0].result, expected));
}

TEST_CASE("no matching rule means no successors")
{
    Signature sig = corpus::place_signature();
    ReactionRule rule;
    rule.redex = Build(sig).widths(0, 1).node("k", "K", "r0").done();
    rule.reactum = Build(sig).widths(0, 1).done();
    rule.eta = {};
    auto agent = Build(sig).widths(0, 1).node("a", "L", "r0").done();
    CHECK(step(agent, {rule}).empty());
}

TEST_CASE("rule invariants are enforced")
{
    Signature sig = corpus::place_signature();
    ReactionRule rule;
    rule.redex = Build(sig).widths(0, 1).done();
    rule.reactum = Build(sig).widths(0, 2).done();   // outer width differs
    rule.eta = {};
    CHECK_THROWS_AS(rule.check(), std::invalid_argument);
}

TEST_CASE("decompose-recompose round trips across an enumerated corpus")
{
    corpus::Bounds guest_bounds;
    guest_bounds.max_nodes = 1;
    guest_bounds.max_roots = 1;
    guest_bounds.max_sites = 1;
    corpus::Bounds host_bounds;
    host_bounds.max_nodes = 2;
    host_bounds.max_roots = 1;
    host_bounds.max_sites = 0;
    host_bounds.allow_inner = false;   // agents must be ground
    Signature sig = corpus::two_control_signature();

    long long round_trips = 0;
    for (const auto& g : corpus::enumerate_bigraphs(sig, guest_bounds))
        for (const auto& h : corpus::enumerate_bigraphs(sig, host_bounds)) {
            if (!h.is_ground()) continue;
            for (const auto& phi : brute_force_embeddings(g, h)) {
                auto dec = decompose(h, g, phi);
                auto back = recompose(g, phi, dec);
                REQUIRE_MESSAGE(validate(back).empty(), "recomposition invalid");
                REQUIRE_MESSAGE(is_isomorphic(back, h), "recomposition differs from agent");
                ++round_trips;
            }
        }
    CHECK(round_trips > 300);
}
