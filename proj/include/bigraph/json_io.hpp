#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bigraph/bigraph.hpp"
#include "bigraph/embedding.hpp"
#include "bigraph/rewrite.hpp"

namespace bigraph {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structurally readable bigraph that breaks a Def-level invariant. Derived
// from ParseError so strict callers can treat both alike; the CLI separates
// them (exit 1 vs exit 2).
struct ValidationError : ParseError {
    std::vector<Violation> violations;
    explicit ValidationError(std::vector<Violation> v)
        : ParseError(v.empty() ? "invalid bigraph"
                               : v.front().tag + ": " + v.front().detail),
          violations(std::move(v))
    {
    }
};

// Canonical bigraph JSON:
// { "signature":[{"ctrl":"K","arity":2,"active":true},...],
//   "inner":{"width":1,"names":["x"]}, "outer":{"width":1,"names":["y"]},
//   "nodes":[{"id":"v0","ctrl":"K","parent":"r0"},...],
//   "sites":[{"index":0,"parent":"v0"},...],
//   "edges":["e0",...],
//   "links":{"v0:0":"e0","v0:1":"y","x":"e0"} }
// Parsing rejects anything validate() would flag.
Bigraph bigraph_from_json(const nlohmann::json& j);
nlohmann::json bigraph_to_json(const Bigraph& b);

Bigraph bigraph_from_string(const std::string& text);
Bigraph bigraph_from_file(const std::string& path);

nlohmann::json embedding_to_json(const Embedding& phi);
Embedding embedding_from_json(const nlohmann::json& j, const Bigraph& host);

// Rule JSON: {"redex": <bigraph>, "reactum": <bigraph>, "eta": {"0":0,...}}
// with an optional "name". A rules file holds one rule object or an array.
ReactionRule rule_from_json(const nlohmann::json& j);
nlohmann::json rule_to_json(const ReactionRule& r);
std::vector<ReactionRule> rules_from_file(const std::string& path);

std::string dump_canonical(const nlohmann::json& j);   // stable key order, 2-space indent

} // namespace bigraph
