// netvuln: simulate preferential-attachment networks under targeted attack
// and percolation, and compute the matching critical thresholds.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netvuln/errors.hpp"
#include "netvuln/experiment.hpp"
#include "netvuln/pa_graph.hpp"
#include "netvuln/result.hpp"
#include "netvuln/rules.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "jsonl";
    bool timing = false;
    std::uint32_t replicas = 1;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw netvuln::Error("cannot open output file '" + path + "'");
    out << text;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw netvuln::ConfigError("cannot open JSON file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw netvuln::ConfigError(std::string{"invalid JSON in '"} + path + "': " + e.what());
    }
    return j;
}

int run_and_emit(const json& config_json) {
    const auto config = netvuln::cli::parse_config(config_json);
    const auto records = netvuln::cli::run(config);
    std::string text;
    if (config.op == "degrees" && config.format == netvuln::OutputFormat::Csv)
        text = netvuln::cli::degrees_csv(records);
    else if (config.format == netvuln::OutputFormat::Csv)
        text = netvuln::to_csv(records, config.with_timing);
    else
        text = netvuln::to_json_lines(records, config.with_timing);
    write_text(config.out, text);
    for (const auto& r : records)
        if (!r.error.empty()) {
            std::cerr << "cell failed: " << r.error << '\n';
            if (r.error.find("converge") != std::string::npos ||
                r.error.find("tolerance") != std::string::npos)
                return 3;
        }
    return 0;
}

netvuln::AttachmentRule rule_from(const std::string& rule_file, double gamma, double beta) {
    if (!rule_file.empty())
        return netvuln::AttachmentRule::from_json(load_json_file(rule_file));
    return netvuln::AttachmentRule::affine(gamma, beta);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"preferential attachment vulnerability toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags remain valid after the subcommand

    GlobalOpts global;
    app.add_option("--seed", global.seed, "master seed")->capture_default_str();
    app.add_option("--out", global.out, "output path (default stdout)");
    app.add_option("--format", global.format, "jsonl or csv")->capture_default_str();
    app.add_flag("--timing", global.timing, "include wall time in emitted records");
    app.add_option("--replicas", global.replicas, "Monte Carlo replicas")
        ->capture_default_str();

    double gamma = 0.5, beta = 1.0, eps = 0.1, p = 1.0, delta = 0.2, tau_g = 0.01;
    std::uint64_t n = 1000, pairs = 1000, grid = 2048, k_max = 200;
    std::uint64_t gen_cap = 200, pop_cap = 1000;
    std::string rule_file, method = "spectral", kernel = "cl", in_file, config_file;
    std::string degree_law_file;
    bool simple_operator = false;
    std::vector<std::uint64_t> n_schedule;

    // file-producing commands
    auto* generate = app.add_subcommand("generate", "generate a PA graph edge list");
    generate->add_option("--gamma", gamma);
    generate->add_option("--beta", beta);
    generate->add_option("--rule", rule_file, "JSON file with a non-linear rule");
    generate->add_option("--n", n)->required();

    auto* damage_cmd = app.add_subcommand("damage", "mask killing the oldest eps*n vertices");
    damage_cmd->add_option("--eps", eps)->required();
    damage_cmd->add_option("--n", n);
    damage_cmd->add_option("--in", in_file, "edge list (source of n)");

    auto* percolate_cmd = app.add_subcommand("percolate", "vertex percolation mask");
    percolate_cmd->add_option("--p", p)->required();
    percolate_cmd->add_option("--n", n);
    percolate_cmd->add_option("--in", in_file, "existing mask to refine");

    // record-producing commands
    auto* giant = app.add_subcommand("giant", "largest-component fraction estimate");
    giant->add_option("--gamma", gamma)->required();
    giant->add_option("--beta", beta)->required();
    giant->add_option("--eps", eps)->required();
    giant->add_option("--p", p)->required();
    giant->add_option("--n", n)->required();

    auto* pc = app.add_subcommand("pc", "critical retention probability");
    pc->add_option("--method", method, "spectral|mc|ibp")->capture_default_str();
    pc->add_option("--gamma", gamma)->required();
    pc->add_option("--beta", beta)->required();
    pc->add_option("--eps", eps)->required();
    pc->add_option("--tau-g", tau_g);
    pc->add_option("--n-schedule", n_schedule, "graph sizes for the mc method");

    auto* spectral = app.add_subcommand("spectral", "spectral radius of the mean-offspring operator");
    spectral->add_option("--eps", eps)->required();
    spectral->add_option("--gamma", gamma)->required();
    spectral->add_option("--beta", beta)->required();
    spectral->add_option("--grid", grid);
    spectral->add_flag("--simple-operator", simple_operator,
                       "companion operator with the closed-form eigenpair");

    auto* degrees = app.add_subcommand("degrees", "theoretical vs empirical indegree law");
    degrees->add_option("--gamma", gamma)->required();
    degrees->add_option("--beta", beta)->required();
    degrees->add_option("--eps", eps)->required();
    degrees->add_option("--n", n)->required();
    degrees->add_option("--k-max", k_max);

    auto* distances = app.add_subcommand("distances", "sampled BFS distances and bound check");
    distances->add_option("--gamma", gamma)->required();
    distances->add_option("--beta", beta)->required();
    distances->add_option("--eps", eps)->required();
    distances->add_option("--p", p);
    distances->add_option("--n", n)->required();
    distances->add_option("--pairs", pairs);
    distances->add_option("--delta", delta);

    auto* ibp = app.add_subcommand("ibp", "branching-process survival probability");
    ibp->add_option("--gamma", gamma)->required();
    ibp->add_option("--beta", beta)->required();
    ibp->add_option("--eps", eps)->required();
    ibp->add_option("--p", p);
    ibp->add_option("--gen-cap", gen_cap);
    ibp->add_option("--pop-cap", pop_cap);

    auto* cm = app.add_subcommand("cm", "configuration model threshold");
    cm->add_option("--degree-law", degree_law_file, "JSON degree law")->required();
    cm->add_option("--eps", eps)->required();
    cm->add_option("--n", n, "simulate a graph of this size as well");
    cm->add_option("--p", p);

    auto* irg = app.add_subcommand("irg", "inhomogeneous random graph threshold");
    irg->add_option("--kernel", kernel, "cl|pa")->required();
    irg->add_option("--gamma", gamma)->required();
    irg->add_option("--eps", eps)->required();
    irg->add_option("--grid", grid);

    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a config file");
    sweep->add_option("--config", config_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto with_globals = [&](json j) {
            j["seed"] = global.seed;
            j["replicas"] = global.replicas;
            if (!global.out.empty()) j["out"] = global.out;
            j["format"] = global.format;
            j["timing"] = global.timing;
            return j;
        };

        if (generate->parsed()) {
            const auto rule = rule_from(rule_file, gamma, beta);
            const auto graph = netvuln::generate(rule, static_cast<netvuln::Vertex>(n),
                                                 global.seed);
            std::ostringstream text;
            netvuln::write_edges(text, graph);
            write_text(global.out, text.str());
            return 0;
        }
        if (damage_cmd->parsed()) {
            if (!in_file.empty()) {
                std::ifstream in(in_file);
                if (!in) throw netvuln::ConfigError("cannot open '" + in_file + "'");
                n = netvuln::read_edges(in).n;
            }
            const auto mask = netvuln::damage_labels(static_cast<netvuln::Vertex>(n), eps);
            std::ostringstream text;
            netvuln::write_mask(text, mask);
            write_text(global.out, text.str());
            return 0;
        }
        if (percolate_cmd->parsed()) {
            netvuln::VertexMask base;
            if (!in_file.empty()) {
                std::ifstream in(in_file);
                if (!in) throw netvuln::ConfigError("cannot open '" + in_file + "'");
                base = netvuln::read_mask(in);
            } else {
                base = netvuln::VertexMask::all_alive(static_cast<netvuln::Vertex>(n));
            }
            const auto mask = netvuln::percolate(base, p, global.seed);
            std::ostringstream text;
            netvuln::write_mask(text, mask);
            write_text(global.out, text.str());
            return 0;
        }
        if (sweep->parsed()) {
            json j = load_json_file(config_file);
            if (!global.out.empty()) j["out"] = global.out;
            if (!j.contains("seed")) j["seed"] = global.seed;
            return run_and_emit(j);
        }

        json params;
        std::string op;
        if (giant->parsed()) {
            op = "giant";
            params = {{"gamma", gamma}, {"beta", beta}, {"eps", eps}, {"p", p}, {"n", n}};
        } else if (pc->parsed()) {
            op = "pc";
            params = {{"method", method}, {"gamma", gamma}, {"beta", beta}, {"eps", eps},
                      {"tau_g", tau_g}};
            if (!n_schedule.empty()) params["n_schedule"] = n_schedule;
        } else if (spectral->parsed()) {
            op = "spectral";
            params = {{"eps", eps}, {"gamma", gamma}, {"beta", beta}, {"grid", grid},
                      {"simple", simple_operator}};
        } else if (degrees->parsed()) {
            op = "degrees";
            params = {{"gamma", gamma}, {"beta", beta}, {"eps", eps}, {"n", n},
                      {"k_max", k_max}};
        } else if (distances->parsed()) {
            op = "distances";
            params = {{"gamma", gamma}, {"beta", beta}, {"eps", eps}, {"p", p},
                      {"n", n},         {"pairs", pairs}, {"delta", delta}};
        } else if (ibp->parsed()) {
            op = "ibp";
            params = {{"gamma", gamma}, {"beta", beta}, {"eps", eps}, {"p", p},
                      {"gen_cap", gen_cap}, {"pop_cap", pop_cap}};
        } else if (cm->parsed()) {
            op = "cm";
            params = {{"degree_law", load_json_file(degree_law_file)}, {"eps", eps}};
            if (cm->count("--n")) {
                params["n"] = n;
                params["p"] = p;
            }
        } else if (irg->parsed()) {
            op = "irg";
            params = {{"kernel", kernel}, {"gamma", gamma}, {"eps", eps}, {"grid", grid}};
        }
        json config = with_globals({{"op", op}, {"params", params}});
        return run_and_emit(config);
    } catch (const netvuln::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const netvuln::NoConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const netvuln::QuadratureTolError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
