#include <doctest.h>

#include "bigraph/json_io.hpp"
#include "support/corpus.hpp"

using namespace bigraph;

namespace {

const char* sample = R"({
  "signature": [{"ctrl": "K", "arity": 2, "active": true}, {"ctrl": "L", "arity": 0}],
  "inner": {"width": 1, "names": ["x"]},
  "outer": {"width": 1, "names": ["y"]},
  "nodes": [{"id": "v0", "ctrl": "K", "parent": "r0"}, {"id": "v1", "ctrl": "L", "parent": "v0"}],
  "sites": [{"index": 0, "parent": "v0"}],
  "edges": ["e0"],
  "links": {"v0:0": "e0", "v0:1": "y", "x": "e0"}
})";

} // namespace

TEST_CASE("bigraph json round trip")
{
    Bigraph b = bigraph_from_string(sample);
    CHECK(b.node_count() == 2);
    CHECK(b.arity_of("v0") == 2);
    CHECK(b.link.at(Point::port("v0", 1)) == Handle::outer("y"));
    CHECK(b.parent_of_site[0] == Place::node("v0"));
    CHECK(b.signature.active("L"));   // omitted flag defaults to active

    auto dumped = bigraph_to_json(b);
    Bigraph again = bigraph_from_json(dumped);
    CHECK(is_isomorphic(b, again));
    CHECK(bigraph_to_json(again) == dumped);
    CHECK(dump_canonical(dumped) == dump_canonical(bigraph_to_json(again)));
}

TEST_CASE("parsing rejects structural violations with a diagnostic")
{
    SUBCASE("parent cycle")
    {
        const char* cyclic = R"({
          "signature": [{"ctrl": "K", "arity": 0}],
          "inner": {"width": 0, "names": []},
          "outer": {"width": 1, "names": []},
          "nodes": [{"id": "a", "ctrl": "K", "parent": "b"}, {"id": "b", "ctrl": "K", "parent": "a"}],
          "sites": [], "edges": [], "links": {}
        })";
        CHECK_THROWS_WITH_AS(bigraph_from_string(cyclic), doctest::Contains("forest"), ParseError);
    }
    SUBCASE("unknown control")
    {
        const char* bad = R"({
          "signature": [{"ctrl": "K", "arity": 0}],
          "inner": {"width": 0, "names": []},
          "outer": {"width": 1, "names": []},
          "nodes": [{"id": "a", "ctrl": "Z", "parent": "r0"}],
          "sites": [], "edges": [], "links": {}
        })";
        CHECK_THROWS_WITH_AS(bigraph_from_string(bad), doctest::Contains("unknown-control"), ParseError);
    }
    SUBCASE("missing port wiring")
    {
        const char* bad = R"({
          "signature": [{"ctrl": "K", "arity": 1}],
          "inner": {"width": 0, "names": []},
          "outer": {"width": 1, "names": ["y"]},
          "nodes": [{"id": "a", "ctrl": "K", "parent": "r0"}],
          "sites": [], "edges": [], "links": {}
        })";
        CHECK_THROWS_WITH_AS(bigraph_from_string(bad), doctest::Contains("link-totality"), ParseError);
    }
    SUBCASE("malformed json syntax")
    {
        CHECK_THROWS_AS(bigraph_from_string("{ not json"), ParseError);
    }
    SUBCASE("root reference out of range")
    {
        const char* bad = R"({
          "signature": [{"ctrl": "K", "arity": 0}],
          "inner": {"width": 0, "names": []},
          "outer": {"width": 1, "names": []},
          "nodes": [{"id": "a", "ctrl": "K", "parent": "r7"}],
          "sites": [], "edges": [], "links": {}
        })";
        CHECK_THROWS_WITH_AS(bigraph_from_string(bad), doctest::Contains("dangling-parent"), ParseError);
    }
    SUBCASE("validation errors carry the whole violation list")
    {
        const char* bad = R"({
          "signature": [{"ctrl": "K", "arity": 1}],
          "inner": {"width": 0, "names": []},
          "outer": {"width": 1, "names": []},
          "nodes": [{"id": "a", "ctrl": "K", "parent": "r7"}],
          "sites": [], "edges": [], "links": {}
        })";
        try {
            bigraph_from_string(bad);
            FAIL("expected a ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.violations.size() >= 2);   // dangling parent and unlinked port
        }
    }
}

TEST_CASE("embedding json round trip")
{
    Bigraph host = bigraph_from_string(sample);
    Embedding phi = corpus::identity_embedding(host);
    auto j = embedding_to_json(phi);
    CHECK(embedding_from_json(j, host) == phi);
    CHECK(j["phi_v"]["v0"] == "v0");
    CHECK(j["phi_i"]["x"][0] == "x");
    CHECK(j["phi_s"]["0"][0] == "s0");
}

TEST_CASE("rule json carries redex, reactum, and eta")
{
    auto fx = corpus::ambient_open_fixture();
    auto j = rule_to_json(fx.rule);
    auto back = rule_from_json(j);
    CHECK(is_isomorphic(back.redex, fx.rule.redex));
    CHECK(is_isomorphic(back.reactum, fx.rule.reactum));
    CHECK(back.eta == fx.rule.eta);
    CHECK(back.name == "open");

    j["eta"] = {{"0", 5}, {"1", 1}};   // out of range
    CHECK_THROWS_AS(rule_from_json(j), ParseError);
}
