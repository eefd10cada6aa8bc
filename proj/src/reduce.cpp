#include "bigraph/reduce.hpp"

#include <algorithm>
#include <sstream>

#include "bigraph/encode.hpp"

namespace bigraph {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg)
{
    throw std::invalid_argument("dimacs line " + std::to_string(line) + ": " + msg);
}

std::string lit_node(int lit)
{
    return lit > 0 ? "x" + std::to_string(lit) : "nx" + std::to_string(-lit);
}

} // namespace

std::vector<std::string> ColouredTree::node_ids() const
{
    std::vector<std::string> out{root};
    for (const auto& [n, p] : parent) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

bool ColouredTree::is_ancestor(const std::string& a, const std::string& d) const
{
    std::string cur = d;
    while (true) {
        auto it = parent.find(cur);
        if (it == parent.end()) return false;
        cur = it->second;
        if (cur == a) return true;
    }
}

CnfFormula parse_dimacs(const std::string& text)
{
    CnfFormula f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int declared_clauses = -1;
    bool seen_header = false;
    std::vector<int> pending;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            if (seen_header) parse_fail(lineno, "duplicate header");
            std::string fmt;
            if (!(ls >> fmt) || fmt != "cnf") parse_fail(lineno, "expected \"p cnf\"");
            if (!(ls >> f.var_count >> declared_clauses)) parse_fail(lineno, "bad header counts");
            if (f.var_count < 0 || declared_clauses < 0) parse_fail(lineno, "negative header counts");
            seen_header = true;
            continue;
        }
        if (!seen_header) parse_fail(lineno, "clause before header");
        ls.clear();
        ls.str(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    parse_fail(lineno, "clause with " + std::to_string(pending.size()) +
                                           " literals (need exactly 3)");
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
            } else {
                int v = lit > 0 ? lit : -lit;
                if (v > f.var_count) parse_fail(lineno, "variable index out of range");
                pending.push_back(lit);
            }
        }
        if (ls.fail() && !ls.eof()) parse_fail(lineno, "not a literal");
    }
    if (!seen_header) parse_fail(lineno, "missing header");
    if (!pending.empty()) parse_fail(lineno, "unterminated clause");
    if (declared_clauses != static_cast<int>(f.clauses.size()))
        parse_fail(lineno, "clause count does not match header");
    return f;
}

ColouredTree sat_to_rainbow(const CnfFormula& f)
{
    ColouredTree t;
    t.root = "r";
    for (int i = 1; i <= f.var_count; ++i) {
        std::string colour = "cx" + std::to_string(i);
        t.palette.push_back(colour);
        for (int side : {i, -i}) {
            t.parent[lit_node(side)] = t.root;
            t.colour[lit_node(side)] = colour;
        }
    }
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        std::string colour = "cc" + std::to_string(j + 1);
        t.palette.push_back(colour);
        for (int k = 0; k < 3; ++k) {
            int lit = f.clauses[j][k];
            std::string id = "c" + std::to_string(j + 1) + "_" + std::to_string(k + 1);
            t.parent[id] = lit_node(-lit);   // under the complement of the literal
            t.colour[id] = colour;
        }
    }
    return t;
}

std::pair<Bigraph, Bigraph> rainbow_to_instance(const ColouredTree& t)
{
    Signature sig;
    for (const auto& c : t.palette) sig.add(c, 0, true);
    sig.add("*", 0, true);

    Bigraph host;
    host.signature = sig;
    host.outer_width = 1;
    auto colour_of = [&](const std::string& n) {
        auto it = t.colour.find(n);
        return it == t.colour.end() ? std::string("*") : it->second;
    };
    host.control_of[t.root] = colour_of(t.root);
    host.parent_of_node[t.root] = Place::root(0);
    for (const auto& [n, p] : t.parent) {
        host.control_of[n] = colour_of(n);
        host.parent_of_node[n] = Place::node(p);
    }

    Bigraph guest;
    guest.signature = sig;
    guest.outer_width = static_cast<int>(t.palette.size());
    guest.inner_width = static_cast<int>(t.palette.size());
    guest.parent_of_site.resize(guest.inner_width);
    for (std::size_t i = 0; i < t.palette.size(); ++i) {
        std::string id = "g" + std::to_string(i);
        guest.control_of[id] = t.palette[i];
        guest.parent_of_node[id] = Place::root(static_cast<int>(i));
        guest.parent_of_site[i] = Place::node(id);
    }
    return {std::move(guest), std::move(host)};
}

std::set<std::string> decode_antichain(const Embedding& phi, const ColouredTree& t)
{
    std::set<std::string> r;
    auto nodes = t.node_ids();
    std::set<std::string> known(nodes.begin(), nodes.end());
    for (const auto& [g, h] : phi.phi_v) {
        if (!known.count(h)) throw std::invalid_argument("embedding is not over this tree");
        r.insert(h);
    }
    return r;
}

bool verify_rainbow_antichain(const ColouredTree& t, const std::set<std::string>& r)
{
    std::map<std::string, int> rep_count;
    for (const auto& n : r) {
        auto it = t.colour.find(n);
        if (it == t.colour.end()) return false;   // uncoloured representative
        ++rep_count[it->second];
    }
    for (const auto& c : t.palette)
        if (rep_count[c] != 1) return false;
    if (rep_count.size() != t.palette.size()) return false;
    for (const auto& a : r)
        for (const auto& d : r)
            if (a != d && t.is_ancestor(a, d)) return false;
    return true;
}

std::map<int, bool> antichain_to_assignment(const ColouredTree& t, const std::set<std::string>& r,
                                            const CnfFormula& f)
{
    if (!verify_rainbow_antichain(t, r))
        throw std::invalid_argument("not a rainbow antichain for this tree");
    std::map<int, bool> assignment;
    for (int i = 1; i <= f.var_count; ++i) assignment[i] = r.count(lit_node(i)) != 0;
    if (!evaluate(f, assignment))
        throw std::logic_error("antichain-derived assignment does not satisfy the formula");
    return assignment;
}

bool evaluate(const CnfFormula& f, const std::map<int, bool>& assignment)
{
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            bool value = assignment.at(lit > 0 ? lit : -lit);
            if (lit > 0 ? value : !value) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

bool truth_table_satisfiable(const CnfFormula& f)
{
    for (std::uint64_t bits = 0; bits < (1ull << f.var_count); ++bits) {
        std::map<int, bool> assignment;
        for (int i = 1; i <= f.var_count; ++i) assignment[i] = (bits >> (i - 1)) & 1;
        if (evaluate(f, assignment)) return true;
    }
    return false;
}

SatVerdict solve_sat_via_embedding(const CnfFormula& f)
{
    SatVerdict verdict;
    ColouredTree t = sat_to_rainbow(f);
    auto [guest, host] = rainbow_to_instance(t);
    auto phi = first_embedding(guest, host);
    if (!phi) return verdict;
    verdict.satisfiable = true;
    verdict.antichain = decode_antichain(*phi, t);
    verdict.assignment = antichain_to_assignment(t, verdict.antichain, f);
    return verdict;
}

} // namespace bigraph
