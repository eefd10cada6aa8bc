#include <doctest.h>

#include "bigraph/bigraph.hpp"
#include "support/corpus.hpp"

using namespace bigraph;
using corpus::Build;

namespace {

Signature place_sig()
{
    Signature sig;
    sig.add("K", 0);
    sig.add("L", 0);
    return sig;
}

} // namespace

TEST_CASE("the empty bigraph validates")
{
    Bigraph b;
    b.signature = place_sig();
    CHECK(validate(b).empty());
}

TEST_CASE("a parent cycle is a forest violation")
{
    Bigraph b;
    b.signature = place_sig();
    b.outer_width = 1;
    b.control_of["a"] = "K";
    b.control_of["b"] = "K";
    b.parent_of_node["a"] = Place::node("b");
    b.parent_of_node["b"] = Place::node("a");
    auto violations = validate(b);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations) found |= v.tag == "forest";
    CHECK(found);
}

TEST_CASE("a missing port is a link-totality violation")
{
    Bigraph b;
    b.signature = corpus::two_control_signature();
    b.outer_width = 1;
    b.outer_names.insert("y");
    b.control_of["v"] = "A";   // arity 2
    b.parent_of_node["v"] = Place::root(0);
    b.link[Point::port("v", 0)] = Handle::outer("y");
    auto violations = validate(b);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].tag == "link-totality");
    CHECK(violations[0].detail.find("v:1") != std::string::npos);
}

TEST_CASE("prnt_star walks to the root, first element included")
{
    auto b = Build(place_sig())
                 .widths(1, 1)
                 .node("v0", "K", "r0")
                 .node("v1", "L", "v0")
                 .site(0, "v1")
                 .done();
    CHECK(prnt_star(b, Place::root(0)) == std::vector<Place>{Place::root(0)});
    CHECK(prnt_star(b, Place::site(0)) ==
          std::vector<Place>{Place::site(0), Place::node("v1"), Place::node("v0"), Place::root(0)});
    CHECK(prnt_star(b, Place::node("v0")) == std::vector<Place>{Place::node("v0"), Place::root(0)});
    CHECK_THROWS_AS(prnt_star(b, Place::node("zz")), std::invalid_argument);
}

TEST_CASE("link_preimage inverts the link map")
{
    auto b = Build(corpus::two_control_signature())
                 .widths(0, 1)
                 .outer("y")
                 .edge("e")
                 .edge("idle")
                 .inner("x")
                 .node("v", "B", "r0")
                 .node("w", "B", "r0")
                 .wire("v:0", "e")
                 .wire("w:0", "e")
                 .wire("x", "y")
                 .done();
    CHECK(link_preimage(b, Handle::edge("idle")).empty());
    CHECK(link_preimage(b, Handle::edge("e")) ==
          std::set<Point>{Point::port("v", 0), Point::port("w", 0)});
    CHECK(link_preimage(b, Handle::outer("y")) == std::set<Point>{Point::inner("x")});
    CHECK_THROWS_AS(link_preimage(b, Handle::edge("nope")), std::invalid_argument);
}

TEST_CASE("composing with an identity gives an isomorphic bigraph")
{
    auto agent = Build(corpus::two_control_signature())
                     .widths(0, 1)
                     .outer("y")
                     .node("v", "B", "r0")
                     .wire("v:0", "y")
                     .done();
    auto identity = Build(corpus::two_control_signature())
                        .widths(1, 1)
                        .site(0, "r0")
                        .inner("y")
                        .outer("y")
                        .wire("y", "y")
                        .done();
    auto composed = compose(identity, agent);
    CHECK(validate(composed).empty());
    CHECK(is_isomorphic(composed, agent));
}

TEST_CASE("composition nests the inner bigraph under the outer sites")
{
    auto outer = Build(place_sig()).widths(1, 1).node("k", "K", "r0").site(0, "k").done();
    auto inner = Build(place_sig()).widths(0, 1).node("l", "L", "r0").done();
    auto composed = compose(outer, inner);
    auto expected = Build(place_sig()).widths(0, 1).node("k", "K", "r0").node("l", "L", "k").done();
    CHECK(validate(composed).empty());
    CHECK(is_isomorphic(composed, expected));
    CHECK(composed.parent_of_node.at("l") == Place::node("k"));
}

TEST_CASE("compose rejects interface mismatches and support overlap")
{
    auto one_site = Build(place_sig()).widths(1, 1).site(0, "r0").done();
    auto two_roots = Build(place_sig()).widths(0, 2).done();
    CHECK_THROWS_AS(compose(one_site, two_roots), std::invalid_argument);

    auto k1 = Build(place_sig()).widths(1, 1).node("k", "K", "r0").site(0, "k").done();
    auto k2 = Build(place_sig()).widths(0, 1).node("k", "K", "r0").done();
    CHECK_THROWS_AS(compose(k1, k2), std::invalid_argument);
}

TEST_CASE("is_isomorphic is reflexive and control-sensitive")
{
    auto k = Build(place_sig()).widths(0, 1).node("v", "K", "r0").done();
    auto l = Build(place_sig()).widths(0, 1).node("v", "L", "r0").done();
    CHECK(is_isomorphic(k, k));
    CHECK(!is_isomorphic(k, l));
}

TEST_CASE("is_isomorphic quotients node labels")
{
    auto a = Build(place_sig())
                 .widths(0, 1)
                 .node("a", "K", "r0")
                 .node("b", "L", "a")
                 .node("c", "K", "a")
                 .done();
    auto b = Build(place_sig())
                 .widths(0, 1)
                 .node("x", "K", "r0")
                 .node("y", "K", "x")
                 .node("z", "L", "x")
                 .done();
    CHECK(is_isomorphic(a, b));

    auto c = Build(place_sig())
                 .widths(0, 1)
                 .node("x", "K", "r0")
                 .node("y", "K", "x")
                 .node("z", "L", "y")   // different shape
                 .done();
    CHECK(!is_isomorphic(a, c));
}

TEST_CASE("is_isomorphic tracks link structure")
{
    auto wire_to = [&](const std::string& target) {
        return Build(corpus::two_control_signature())
            .widths(0, 1)
            .outer("y")
            .edge("e")
            .node("v", "B", "r0")
            .node("w", "B", "r0")
            .wire("v:0", "e")
            .wire("w:0", target)
            .done();
    };
    CHECK(is_isomorphic(wire_to("e"), wire_to("e")));
    CHECK(!is_isomorphic(wire_to("e"), wire_to("y")));
}

TEST_CASE("compose is associative up to isomorphism")
{
    auto top = Build(place_sig()).widths(1, 1).node("t", "K", "r0").site(0, "t").done();
    auto mid = Build(place_sig()).widths(2, 1).node("m", "L", "r0").site(0, "m").site(1, "r0").done();
    auto bot = Build(place_sig())
                   .widths(0, 2)
                   .node("p", "K", "r0")
                   .node("q", "L", "r1")
                   .done();
    auto left = compose(compose(top, mid), bot);
    auto right = compose(top, compose(mid, bot));
    CHECK(validate(left).empty());
    CHECK(is_isomorphic(left, right));
}

TEST_CASE("prnt_star and link_preimage invariants over an enumerated corpus")
{
    corpus::Bounds bounds;
    bounds.max_nodes = 2;
    bounds.max_roots = 2;
    bounds.max_sites = 1;
    auto all = corpus::enumerate_bigraphs(corpus::two_control_signature(), bounds);
    REQUIRE(all.size() > 100);
    for (const auto& b : all) {
        for (const auto& p : b.places()) {
            auto chain = prnt_star(b, p);
            CHECK(chain.back().is_root());
            CHECK(static_cast<int>(chain.size()) <= b.node_count() + 2);
        }
        // preimages partition the point set
        std::set<Point> seen;
        std::size_t total = 0;
        for (const auto& h : b.handles()) {
            auto pre = link_preimage(b, h);
            total += pre.size();
            seen.insert(pre.begin(), pre.end());
        }
        CHECK(total == seen.size());
        CHECK(total == b.points().size());
    }
}
