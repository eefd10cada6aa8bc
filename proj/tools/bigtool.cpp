#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bigraph/encode.hpp"
#include "bigraph/generator.hpp"
#include "bigraph/json_io.hpp"
#include "bigraph/reduce.hpp"
#include "bigraph/rewrite.hpp"

using nlohmann::json;

namespace {

// exit codes: 0 success (including "no embedding"), 1 validation failure,
// 2 parse or I/O error, 3 semantic mismatch between inputs
constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_parse = 2;
constexpr int exit_mismatch = 3;

void write_output(const json& j, const std::string& out_path)
{
    std::string text = bigraph::dump_canonical(j);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw bigraph::ParseError("cannot open " + out_path + " for writing");
    out << text;
}

int cmd_validate(const std::string& path)
{
    try {
        bigraph::bigraph_from_file(path);
    } catch (const bigraph::ValidationError& e) {
        for (const auto& v : e.violations)
            std::cerr << json{{"violation", v.tag}, {"element", v.detail}}.dump() << "\n";
        return exit_invalid;
    }
    return exit_ok;
}

int cmd_embed(const std::string& guest_path, const std::string& host_path, const std::string& mode,
              bool ignore_activity, const std::string& out_path)
{
    bigraph::Bigraph guest = bigraph::bigraph_from_file(guest_path);
    bigraph::Bigraph host = bigraph::bigraph_from_file(host_path);
    if (guest.signature != host.signature) {
        std::cerr << json{{"error", "signature mismatch between guest and host"}}.dump() << "\n";
        return exit_mismatch;
    }
    bigraph::EncodeOptions opts;
    opts.respect_activity = !ignore_activity;

    json out;
    if (mode == "count") {
        out["count"] = bigraph::count_embeddings(guest, host, opts);
    } else if (mode == "first") {
        auto phi = bigraph::first_embedding(guest, host, opts);
        out["count"] = phi ? 1 : 0;
        out["embeddings"] = json::array();
        if (phi) out["embeddings"].push_back(bigraph::embedding_to_json(*phi));
    } else {
        auto found = bigraph::enumerate_embeddings(guest, host, opts);
        out["count"] = found.size();
        out["embeddings"] = json::array();
        for (const auto& phi : found) out["embeddings"].push_back(bigraph::embedding_to_json(phi));
    }
    write_output(out, out_path);
    return exit_ok;
}

int cmd_rewrite(const std::string& agent_path, const std::string& rules_path, int max_steps,
                const std::string& out_path)
{
    bigraph::Bigraph agent = bigraph::bigraph_from_file(agent_path);
    auto rules = bigraph::rules_from_file(rules_path);
    for (const auto& rule : rules)
        if (rule.redex.signature != agent.signature) {
            std::cerr << json{{"error", "signature mismatch between agent and rules"}}.dump() << "\n";
            return exit_mismatch;
        }

    json out;
    if (max_steps <= 1) {
        out["successors"] = json::array();
        for (const auto& s : bigraph::step(agent, rules)) {
            json entry;
            entry["rule"] = s.rule_index;
            if (!rules[s.rule_index].name.empty()) entry["name"] = rules[s.rule_index].name;
            entry["embedding"] = bigraph::embedding_to_json(s.embedding);
            entry["result"] = bigraph::bigraph_to_json(s.result);
            out["successors"].push_back(std::move(entry));
        }
    } else {
        // breadth-first exploration with isomorphism deduplication
        std::vector<bigraph::Bigraph> states{agent};
        json transitions = json::array();
        std::vector<std::size_t> frontier{0};
        for (int depth = 0; depth < max_steps && !frontier.empty(); ++depth) {
            std::vector<std::size_t> next;
            for (std::size_t si : frontier)
                for (const auto& s : bigraph::step(states[si], rules)) {
                    std::size_t target = states.size();
                    for (std::size_t k = 0; k < states.size(); ++k)
                        if (bigraph::is_isomorphic(states[k], s.result)) {
                            target = k;
                            break;
                        }
                    if (target == states.size()) {
                        states.push_back(s.result);
                        next.push_back(target);
                    }
                    transitions.push_back({{"from", si},
                                           {"rule", s.rule_index},
                                           {"embedding", bigraph::embedding_to_json(s.embedding)},
                                           {"to", target}});
                }
            frontier = std::move(next);
        }
        out["states"] = json::array();
        for (const auto& b : states) out["states"].push_back(bigraph::bigraph_to_json(b));
        out["transitions"] = std::move(transitions);
    }
    write_output(out, out_path);
    return exit_ok;
}

int cmd_sat(const std::string& dimacs_path, const std::string& out_path)
{
    std::ifstream in(dimacs_path);
    if (!in) throw bigraph::ParseError("cannot open " + dimacs_path);
    std::ostringstream buf;
    buf << in.rdbuf();

    bigraph::CnfFormula f;
    try {
        f = bigraph::parse_dimacs(buf.str());
    } catch (const std::invalid_argument& e) {
        throw bigraph::ParseError(e.what());
    }
    auto verdict = bigraph::solve_sat_via_embedding(f);
    json out;
    out["satisfiable"] = verdict.satisfiable;
    if (verdict.satisfiable) {
        out["antichain"] = verdict.antichain;
        out["assignment"] = json::object();
        for (const auto& [var, value] : verdict.assignment)
            out["assignment"][std::to_string(var)] = value;
        // cross-check by evaluation
        if (!bigraph::evaluate(f, verdict.assignment))
            throw std::logic_error("decoded assignment fails evaluation");
    }
    write_output(out, out_path);
    return exit_ok;
}

int cmd_gen(const bigraph::GenParams& params, const std::string& out_path)
{
    bigraph::Bigraph b = bigraph::random_bigraph(bigraph::default_signature(), params);
    write_output(bigraph::bigraph_to_json(b), out_path);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bigraph embedding and rewriting tool"};
    app.require_subcommand(1);

    std::string file, guest, host, agent, rules, out_path;
    bool ignore_activity = false;
    int max_steps = 1;
    bigraph::GenParams gen_params;
    std::string embed_mode = "all";

    auto* validate_cmd = app.add_subcommand("validate", "check a bigraph file");
    validate_cmd->add_option("file", file, "bigraph JSON file")->required();

    auto* embed_cmd = app.add_subcommand("embed", "enumerate embeddings of a guest into a host");
    embed_cmd->add_option("--guest", guest, "guest bigraph JSON")->required();
    embed_cmd->add_option("--host", host, "host bigraph JSON")->required();
    embed_cmd->add_flag_callback("--all", [&] { embed_mode = "all"; }, "emit every embedding (default)");
    embed_cmd->add_flag_callback("--first", [&] { embed_mode = "first"; }, "stop after one embedding");
    embed_cmd->add_flag_callback("--count", [&] { embed_mode = "count"; }, "emit the count only");
    embed_cmd->add_flag("--ignore-activity", ignore_activity, "drop the passive-context exclusion");
    embed_cmd->add_option("--out", out_path, "write the JSON result to a file");

    auto* rewrite_cmd = app.add_subcommand("rewrite", "apply reaction rules to an agent");
    rewrite_cmd->add_option("--agent", agent, "ground agent JSON")->required();
    rewrite_cmd->add_option("--rules", rules, "rule file (object or array)")->required();
    rewrite_cmd->add_option("--max-steps", max_steps, "breadth-first depth with iso deduplication");
    rewrite_cmd->add_option("--out", out_path, "write the JSON result to a file");

    auto* sat_cmd = app.add_subcommand("sat", "decide a 3-CNF via the embedding reduction");
    sat_cmd->add_option("dimacs", file, "DIMACS CNF file")->required();
    sat_cmd->add_option("--out", out_path, "write the JSON result to a file");

    auto* gen_cmd = app.add_subcommand("gen", "generate a seeded random bigraph");
    gen_cmd->add_option("--nodes", gen_params.nodes, "node count");
    gen_cmd->add_option("--edges", gen_params.edges, "edge count");
    gen_cmd->add_option("--sites", gen_params.sites, "site count");
    gen_cmd->add_option("--roots", gen_params.roots, "root count");
    gen_cmd->add_option("--inner-names", gen_params.inner_names, "inner name count");
    gen_cmd->add_option("--outer-names", gen_params.outer_names, "outer name count");
    gen_cmd->add_option("--seed", gen_params.seed, "PRNG seed");
    gen_cmd->add_option("--out", out_path, "write the JSON result to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(file);
        if (embed_cmd->parsed()) return cmd_embed(guest, host, embed_mode, ignore_activity, out_path);
        if (rewrite_cmd->parsed()) return cmd_rewrite(agent, rules, max_steps, out_path);
        if (sat_cmd->parsed()) return cmd_sat(file, out_path);
        if (gen_cmd->parsed()) return cmd_gen(gen_params, out_path);
    } catch (const bigraph::ValidationError& e) {
        for (const auto& v : e.violations)
            std::cerr << json{{"violation", v.tag}, {"element", v.detail}}.dump() << "\n";
        return exit_invalid;
    } catch (const bigraph::ParseError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return exit_parse;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return exit_mismatch;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return exit_parse;
    }
    return exit_ok;
}
