#include "bigraph/json_io.hpp"

#include <fstream>
#include <sstream>

namespace bigraph {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const json& field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

std::string str_of(const json& j, const std::string& what)
{
    if (!j.is_string()) fail(what + ": expected a string");
    return j.get<std::string>();
}

int int_of(const json& j, const std::string& what)
{
    if (!j.is_number_integer()) fail(what + ": expected an integer");
    return j.get<int>();
}

bool is_index_ref(const std::string& s, char prefix)
{
    if (s.size() < 2 || s[0] != prefix) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// lenient: out-of-range roots and unknown node ids become representable
// places that validate() then reports as dangling parents
Place parse_parent(const std::string& s)
{
    if (is_index_ref(s, 'r')) return Place::root(std::stoi(s.substr(1)));
    return Place::node(s);
}

Point parse_point(const std::string& s, const std::string& what)
{
    auto colon = s.find(':');
    if (colon == std::string::npos) return Point::inner(s);
    std::string node = s.substr(0, colon);
    std::string idx = s.substr(colon + 1);
    if (node.empty() || idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
        fail(what + ": malformed point \"" + s + "\"");
    return Point::port(node, std::stoi(idx));
}

Handle parse_handle(const std::string& s, const Bigraph& b, const std::string& what)
{
    if (b.edges.count(s)) return Handle::edge(s);
    if (b.outer_names.count(s)) return Handle::outer(s);
    fail(what + ": unknown handle \"" + s + "\"");
}

// lenient variant for the link map; an unknown target parses as an edge and
// validate() reports the dangling link
Handle parse_handle_lenient(const std::string& s, const Bigraph& b)
{
    if (b.edges.count(s)) return Handle::edge(s);
    if (b.outer_names.count(s)) return Handle::outer(s);
    return Handle::edge(s);
}

Place parse_place(const std::string& s, const Bigraph& b, const std::string& what)
{
    if (is_index_ref(s, 'r')) return Place::root(std::stoi(s.substr(1)));
    if (is_index_ref(s, 's')) return Place::site(std::stoi(s.substr(1)));
    if (b.has_node(s)) return Place::node(s);
    fail(what + ": unknown place \"" + s + "\"");
}

} // namespace

Bigraph bigraph_from_json(const json& j)
{
    if (!j.is_object()) fail("bigraph: expected an object");
    Bigraph b;

    for (const auto& c : field(j, "signature")) {
        std::string name = str_of(field(c, "ctrl"), "signature ctrl");
        int arity = int_of(field(c, "arity"), "signature arity of " + name);
        bool active = true;
        if (c.contains("active")) {
            if (!c["active"].is_boolean()) fail("signature: active of " + name + " must be boolean");
            active = c["active"].get<bool>();
        }
        if (arity < 0) fail("signature: negative arity for " + name);
        if (b.signature.has(name)) fail("signature: duplicate control " + name);
        b.signature.add(name, arity, active);
    }

    const json& inner = field(j, "inner");
    const json& outer = field(j, "outer");
    b.inner_width = int_of(field(inner, "width"), "inner width");
    b.outer_width = int_of(field(outer, "width"), "outer width");
    if (b.inner_width < 0 || b.outer_width < 0) fail("interface widths must be >= 0");
    for (const auto& n : field(inner, "names")) b.inner_names.insert(str_of(n, "inner name"));
    for (const auto& n : field(outer, "names")) b.outer_names.insert(str_of(n, "outer name"));

    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            std::string id = str_of(e, "edge id");
            if (b.edges.count(id)) fail("duplicate edge " + id);
            b.edges.insert(id);
        }

    if (j.contains("nodes"))
        for (const auto& n : j["nodes"]) {
            std::string id = str_of(field(n, "id"), "node id");
            std::string ctrl = str_of(field(n, "ctrl"), "node " + id + " ctrl");
            if (b.has_node(id)) fail("duplicate node " + id);
            b.control_of[id] = ctrl;
            b.parent_of_node[id] = parse_parent(str_of(field(n, "parent"), "node " + id + " parent"));
        }

    b.parent_of_site.assign(std::max(0, b.inner_width), Place::root(0));
    std::vector<bool> seen(b.parent_of_site.size(), false);
    if (j.contains("sites"))
        for (const auto& s : j["sites"]) {
            int idx = int_of(field(s, "index"), "site index");
            if (idx < 0 || idx >= b.inner_width) fail("site index " + std::to_string(idx) + " out of range");
            if (seen[idx]) fail("duplicate site " + std::to_string(idx));
            seen[idx] = true;
            b.parent_of_site[idx] = parse_parent(str_of(field(s, "parent"), "site parent"));
        }
    for (int i = 0; i < b.inner_width; ++i)
        if (!seen[i]) fail("site s" + std::to_string(i) + " missing from \"sites\"");

    if (j.contains("links")) {
        if (!j["links"].is_object()) fail("links: expected an object");
        for (const auto& [key, value] : j["links"].items()) {
            Point p = parse_point(key, "links");
            if (b.link.count(p)) fail("links: duplicate entry for \"" + key + "\"");
            b.link[p] = parse_handle_lenient(str_of(value, "links value for " + key), b);
        }
    }

    auto violations = validate(b);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return b;
}

json bigraph_to_json(const Bigraph& b)
{
    json j;
    j["signature"] = json::array();
    for (const auto& [name, c] : b.signature.controls())
        j["signature"].push_back({{"ctrl", name}, {"arity", c.arity}, {"active", c.active}});
    j["inner"] = {{"width", b.inner_width}, {"names", b.inner_names}};
    j["outer"] = {{"width", b.outer_width}, {"names", b.outer_names}};
    j["nodes"] = json::array();
    for (const auto& id : b.node_ids())
        j["nodes"].push_back({{"id", id},
                              {"ctrl", b.control_of.at(id)},
                              {"parent", b.parent_of_node.at(id).str()}});
    j["sites"] = json::array();
    for (int i = 0; i < b.inner_width; ++i)
        j["sites"].push_back({{"index", i}, {"parent", b.parent_of_site[i].str()}});
    j["edges"] = b.edges;
    j["links"] = json::object();
    for (const auto& [p, h] : b.link) j["links"][p.str()] = h.str();
    return j;
}

Bigraph bigraph_from_string(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("json: ") + e.what());
    }
    return bigraph_from_json(j);
}

Bigraph bigraph_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return bigraph_from_string(buf.str());
}

json embedding_to_json(const Embedding& phi)
{
    json j;
    j["phi_v"] = json::object();
    for (const auto& [g, h] : phi.phi_v) j["phi_v"][g] = h;
    j["phi_e"] = json::object();
    for (const auto& [g, h] : phi.phi_e) j["phi_e"][g] = h;
    j["phi_i"] = json::object();
    for (const auto& [x, pts] : phi.phi_i) {
        auto arr = json::array();
        for (const auto& p : pts) arr.push_back(p.str());
        j["phi_i"][x] = arr;
    }
    j["phi_o"] = json::object();
    for (const auto& [y, h] : phi.phi_o) j["phi_o"][y] = h.str();
    j["phi_s"] = json::object();
    for (const auto& [s, places] : phi.phi_s) {
        auto arr = json::array();
        for (const auto& p : places) arr.push_back(p.str());
        j["phi_s"][std::to_string(s)] = arr;
    }
    j["phi_r"] = json::object();
    for (const auto& [r, p] : phi.phi_r) j["phi_r"][std::to_string(r)] = p.str();
    return j;
}

Embedding embedding_from_json(const json& j, const Bigraph& host)
{
    Embedding phi;
    for (const auto& [g, h] : field(j, "phi_v").items()) phi.phi_v[g] = str_of(h, "phi_v");
    for (const auto& [g, h] : field(j, "phi_e").items()) phi.phi_e[g] = str_of(h, "phi_e");
    for (const auto& [x, arr] : field(j, "phi_i").items()) {
        auto& pts = phi.phi_i[x];
        for (const auto& p : arr) pts.insert(parse_point(str_of(p, "phi_i"), "phi_i"));
    }
    for (const auto& [y, h] : field(j, "phi_o").items())
        phi.phi_o[y] = parse_handle(str_of(h, "phi_o"), host, "phi_o");
    for (const auto& [s, arr] : field(j, "phi_s").items()) {
        auto& places = phi.phi_s[std::stoi(s)];
        for (const auto& p : arr) places.insert(parse_place(str_of(p, "phi_s"), host, "phi_s"));
    }
    for (const auto& [r, p] : field(j, "phi_r").items())
        phi.phi_r[std::stoi(r)] = parse_place(str_of(p, "phi_r"), host, "phi_r");
    return phi;
}

ReactionRule rule_from_json(const json& j)
{
    ReactionRule r;
    r.redex = bigraph_from_json(field(j, "redex"));
    r.reactum = bigraph_from_json(field(j, "reactum"));
    for (const auto& [k, v] : field(j, "eta").items()) {
        if (k.find_first_not_of("0123456789") != std::string::npos) fail("eta: bad site index " + k);
        r.eta[std::stoi(k)] = int_of(v, "eta value for " + k);
    }
    if (j.contains("name")) r.name = str_of(j["name"], "rule name");
    try {
        r.check();
    } catch (const std::invalid_argument& e) {
        fail(std::string("rule: ") + e.what());
    }
    return r;
}

json rule_to_json(const ReactionRule& r)
{
    json j;
    j["redex"] = bigraph_to_json(r.redex);
    j["reactum"] = bigraph_to_json(r.reactum);
    j["eta"] = json::object();
    for (const auto& [to, from] : r.eta) j["eta"][std::to_string(to)] = from;
    if (!r.name.empty()) j["name"] = r.name;
    return j;
}

std::vector<ReactionRule> rules_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("json: ") + e.what());
    }
    std::vector<ReactionRule> rules;
    if (j.is_array())
        for (const auto& item : j) rules.push_back(rule_from_json(item));
    else
        rules.push_back(rule_from_json(j));
    return rules;
}

std::string dump_canonical(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace bigraph
