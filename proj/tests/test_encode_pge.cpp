#include <doctest.h>

#include "bigraph/oracle.hpp"
#include "support/corpus.hpp"

using namespace bigraph;
using corpus::Build;

namespace {

std::vector<Embedding> solve_pge(const Bigraph& g, const Bigraph& h, EncodeOptions opts = {})
{
    auto inst = encode_pge(g, h, opts);
    std::vector<Embedding> out;
    for (const auto& s : csp::solve_all(inst.model)) out.push_back(decode(inst, s));
    std::sort(out.begin(), out.end());
    return out;
}

Bigraph chain_host()
{
    return Build(corpus::place_signature())
        .widths(0, 1)
        .node("a1", "K", "r0")
        .node("a2", "K", "a1")
        .done();
}

} // namespace

TEST_CASE("a siteless node only matches leaves")
{
    auto g = Build(corpus::place_signature()).widths(0, 1).node("v", "K", "r0").done();
    auto got = solve_pge(g, chain_host());
    auto expected = brute_force_embeddings(g, chain_host(), InstanceKind::pge);
    CHECK(got == expected);
    REQUIRE(got.size() == 1);
    CHECK(got[0].phi_v.at("v") == "a2");
}

TEST_CASE("a node with a site absorbs the subtree or leaves it to the context")
{
    auto g = Build(corpus::place_signature()).widths(1, 1).node("v", "K", "r0").site(0, "v").done();
    auto got = solve_pge(g, chain_host());
    auto expected = brute_force_embeddings(g, chain_host(), InstanceKind::pge);
    CHECK(got == expected);
    CHECK(got.size() == 2);
}

TEST_CASE("a bare root-with-site counts placements and parameter splits")
{
    auto g = Build(corpus::place_signature()).widths(1, 1).site(0, "r0").done();
    auto h = Build(corpus::place_signature()).widths(0, 1).node("u", "K", "r0").done();
    auto got = solve_pge(g, h);
    auto expected = brute_force_embeddings(g, h, InstanceKind::pge);
    CHECK(got == expected);
    // root on r0 with the site empty or absorbing u, or root on u with an
    // empty site
    CHECK(got.size() == 3);
}

TEST_CASE("activity pruning removes matches under passive ancestors")
{
    Signature sig;
    sig.add("K", 0, true);
    sig.add("P", 0, false);   // passive
    auto g = Build(sig).widths(0, 1).node("v", "K", "r0").done();
    auto h = Build(sig).widths(0, 1).node("p", "P", "r0").node("k", "K", "p").done();

    EncodeOptions strict;
    strict.respect_activity = true;
    EncodeOptions lax;
    lax.respect_activity = false;

    CHECK(solve_pge(g, h, strict).empty());
    CHECK(solve_pge(g, h, lax).size() == 1);
    CHECK(brute_force_embeddings(g, h, InstanceKind::pge, true).empty());
    CHECK(brute_force_embeddings(g, h, InstanceKind::pge, false).size() == 1);
}

TEST_CASE("pge adequacy and round trips over an exhaustive corpus slice")
{
    corpus::Bounds guest_bounds;
    guest_bounds.max_nodes = 2;
    guest_bounds.max_roots = 2;
    guest_bounds.max_sites = 1;
    guest_bounds.allow_edge = guest_bounds.allow_inner = guest_bounds.allow_outer = false;
    corpus::Bounds host_bounds;
    host_bounds.max_nodes = 2;
    host_bounds.max_roots = 1;
    host_bounds.max_sites = 1;
    host_bounds.allow_edge = host_bounds.allow_inner = host_bounds.allow_outer = false;
    Signature sig = corpus::place_signature();
    auto guests = corpus::enumerate_bigraphs(sig, guest_bounds);
    auto hosts = corpus::enumerate_bigraphs(sig, host_bounds);

    long long pairs = 0, embeddings = 0;
    for (const auto& g : guests)
        for (const auto& h : hosts) {
            auto inst = encode_pge(g, h);
            std::vector<Embedding> got;
            for (const auto& s : csp::solve_all(inst.model)) {
                got.push_back(decode(inst, s));
                CHECK(embedding_to_solution(inst, got.back()) == s);
            }
            std::sort(got.begin(), got.end());
            auto expected = brute_force_embeddings(g, h, InstanceKind::pge);
            REQUIRE_MESSAGE(got == expected, "pge adequacy failed");
            for (const auto& phi : expected)
                CHECK(decode(inst, embedding_to_solution(inst, phi)) == phi);
            ++pairs;
            embeddings += static_cast<long long>(expected.size());
        }
    CHECK(pairs > 1000);
    CHECK(embeddings > 500);
}
