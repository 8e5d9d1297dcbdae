#include "netvuln/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "netvuln/alt_models.hpp"
#include "netvuln/components.hpp"
#include "netvuln/degrees.hpp"
#include "netvuln/errors.hpp"
#include "netvuln/ibp.hpp"
#include "netvuln/rng.hpp"
#include "netvuln/rules.hpp"
#include "netvuln/spectral.hpp"

namespace netvuln::cli {
namespace {

const std::set<std::string> kOps = {"spectral", "pc",  "giant", "degrees",
                                    "distances", "ibp", "cm",    "irg"};

// list-typed fields that are one value, not a sweep dimension
const std::set<std::string> kNoSweep = {"n_schedule", "rule", "degree_law"};

void validate_field(const std::string& key, const nlohmann::json& v) {
    const auto fail = [&](const std::string& constraint) {
        throw ConfigError(key + " must " + constraint + ", got " + v.dump());
    };
    const auto num = [&]() -> double {
        if (!v.is_number()) fail("be a number");
        return v.get<double>();
    };
    if (key == "eps" || key == "pc_eps") {
        const double x = num();
        if (!(x > 0.0 && x < 1.0)) fail("lie in (0,1)");
    } else if (key == "gamma") {
        const double x = num();
        if (!(x >= 0.0 && x < 1.0)) fail("lie in [0,1)");
    } else if (key == "beta") {
        if (!(num() > 0.0)) fail("be positive");
    } else if (key == "p") {
        const double x = num();
        if (!(x >= 0.0 && x <= 1.0)) fail("lie in [0,1]");
    } else if (key == "delta") {
        const double x = num();
        if (!(x > 0.0 && x < 1.0)) fail("lie in (0,1)");
    } else if (key == "tau_g") {
        const double x = num();
        if (!(x > 0.0 && x < 0.5)) fail("lie in (0,0.5)");
    } else if (key == "n" || key == "pairs" || key == "k_max" || key == "gen_cap" ||
               key == "pop_cap") {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) fail("be an integer >= 1");
    } else if (key == "grid") {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 16)
            fail("be an integer >= 16");
    } else if (key == "method") {
        const auto s = v.get<std::string>();
        if (s != "spectral" && s != "mc" && s != "ibp") fail("be one of spectral|mc|ibp");
    } else if (key == "kernel") {
        const auto s = v.get<std::string>();
        if (s != "cl" && s != "pa") fail("be one of cl|pa");
    } else if (key == "n_schedule") {
        if (!v.is_array() || v.empty()) fail("be a non-empty list of sizes");
        for (const auto& e : v)
            if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
                fail("contain integers >= 1");
    }
}

struct Getter {
    const nlohmann::json& params;
    const std::string& op;

    const nlohmann::json& require(const std::string& key) const {
        if (!params.contains(key))
            throw ConfigError("missing required field '" + key + "' for op '" + op + "'");
        return params.at(key);
    }
    double number(const std::string& key) const { return require(key).get<double>(); }
    double number_or(const std::string& key, double fallback) const {
        return params.contains(key) ? params.at(key).get<double>() : fallback;
    }
    std::uint64_t integer(const std::string& key) const {
        return require(key).get<std::uint64_t>();
    }
    std::uint64_t integer_or(const std::string& key, std::uint64_t fallback) const {
        return params.contains(key) ? params.at(key).get<std::uint64_t>() : fallback;
    }
    std::string text_or(const std::string& key, const std::string& fallback) const {
        return params.contains(key) ? params.at(key).get<std::string>() : fallback;
    }

    AttachmentRule rule() const {
        if (params.contains("rule")) return AttachmentRule::from_json(params.at("rule"));
        return AttachmentRule::affine(number("gamma"), number("beta"));
    }
};

using Records = std::vector<ResultRecord>;

ResultRecord base_record(const std::string& op, const nlohmann::json& params,
                         std::uint64_t seed) {
    ResultRecord r;
    r.op = op;
    r.params = params;
    r.seed = seed;
    return r;
}

Records run_spectral(const Getter& g, const nlohmann::json& params, std::uint64_t seed) {
    const bool simple = g.params.contains("simple") && g.params.at("simple").get<bool>();
    const auto grid = static_cast<std::uint32_t>(g.integer_or("grid", 2048));
    const double eps = g.number("eps");
    const auto result =
        simple ? spectral::spectral_radius_refined(eps, 0.5, 1.0, grid, true)
               : spectral::spectral_radius_refined(eps, g.number("gamma"),
                                                   g.number("beta"), grid);
    ResultRecord r = base_record("spectral", params, seed);
    r.values["rho"] = result.rho;
    r.values["residual"] = result.residual;
    r.values["n_used"] = result.n_used;
    r.values["extrapolated"] = result.extrapolated ? 1.0 : 0.0;
    r.values["pc"] = std::min(1.0 / result.rho, 1.0);
    return {r};
}

Records run_pc(const Getter& g, const nlohmann::json& params, std::uint64_t seed,
               std::uint32_t replicas) {
    const std::string method = g.text_or("method", "spectral");
    const double eps = g.number("eps");
    ResultRecord r = base_record("pc", params, seed);
    if (method == "spectral") {
        const double pc = spectral::pc_spectral(eps, g.number("gamma"), g.number("beta"),
                                                g.number_or("tol", 1e-4));
        r.values["pc"] = pc;
        r.values["p_lo"] = pc;
        r.values["p_hi"] = pc;
        return {r};
    }
    if (method == "mc") {
        std::vector<Vertex> schedule;
        if (g.params.contains("n_schedule"))
            for (const auto& e : g.params.at("n_schedule"))
                schedule.push_back(e.get<Vertex>());
        else
            schedule = {10000, 100000};
        const auto est = pc_bisect(g.rule(), schedule, eps, replicas,
                                   g.number_or("tau_g", 0.01), seed);
        r.values["p_lo"] = est.p_lo;
        r.values["p_hi"] = est.p_hi;
        r.values["pc"] = 0.5 * (est.p_lo + est.p_hi);
        r.values["no_giant_at_p1"] = est.no_giant_at_p1 ? 1.0 : 0.0;
        return {r};
    }
    // ibp bisection: survival probability as the giant criterion
    const auto rule = g.rule();
    const auto gen_cap = static_cast<std::uint32_t>(g.integer_or("gen_cap", 200));
    const auto pop_cap = static_cast<std::uint32_t>(g.integer_or("pop_cap", 1000));
    const double tau = g.number_or("tau_g", 0.01);
    const auto survives = [&](double p) {
        return ibp::survival_probability(eps, rule, p, replicas, gen_cap, pop_cap, seed)
                   .zeta_lower > tau;
    };
    if (!survives(1.0)) {
        r.values["p_lo"] = 1.0;
        r.values["p_hi"] = 1.0;
        r.values["pc"] = 1.0;
        r.values["no_giant_at_p1"] = 1.0;
        return {r};
    }
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 0x1p-10) {
        const double mid = 0.5 * (lo + hi);
        (survives(mid) ? hi : lo) = mid;
    }
    r.values["p_lo"] = lo;
    r.values["p_hi"] = hi;
    r.values["pc"] = 0.5 * (lo + hi);
    r.values["no_giant_at_p1"] = 0.0;
    return {r};
}

Records run_giant(const Getter& g, const nlohmann::json& params, std::uint64_t seed,
                  std::uint32_t replicas) {
    const auto est = giant_fraction(g.rule(), static_cast<Vertex>(g.integer("n")),
                                    g.number_or("eps", 0.0), g.number("p"), replicas, seed);
    ResultRecord r = base_record("giant", params, seed);
    r.values["mean"] = est.mean;
    r.se = est.se;
    r.has_se = true;
    r.values["replicas"] = est.replicas;
    return {r};
}

Records run_degrees(const Getter& g, const nlohmann::json& params, std::uint64_t seed) {
    const double eps = g.number("eps");
    const double gamma = g.number("gamma");
    const double beta = g.number("beta");
    const auto n = static_cast<Vertex>(g.integer("n"));
    const auto k_max = static_cast<std::uint32_t>(g.integer_or("k_max", 200));

    const auto mu = mu_damaged(eps, gamma, beta, k_max);
    const PaGraph graph = generate(AttachmentRule::affine(gamma, beta), n, seed);
    const auto hist = empirical_indegree(graph, damage(graph, eps));

    Records out;
    for (std::uint32_t k = 0; k <= k_max; ++k) {
        nlohmann::json cell = params;
        cell["k"] = k;
        ResultRecord r = base_record("degrees", cell, seed);
        const double theory = mu.pmf(k);
        const double emp = k < hist.size() ? hist[k] : 0.0;
        r.values["mu_theory"] = theory;
        r.values["x_empirical"] = emp;
        r.values["abs_diff"] = std::abs(theory - emp);
        out.push_back(std::move(r));
    }
    return out;
}

Records run_distances(const Getter& g, const nlohmann::json& params, std::uint64_t seed) {
    const double eps = g.number("eps");
    const double gamma = g.number("gamma");
    const double beta = g.number("beta");
    const double p = g.number_or("p", 1.0);
    const auto n = static_cast<Vertex>(g.integer("n"));
    const auto pairs = static_cast<std::uint32_t>(g.integer_or("pairs", 1000));
    const double delta = g.number_or("delta", 0.2);

    const PaGraph graph = generate(AttachmentRule::affine(gamma, beta), n, seed);
    VertexMask mask = damage(graph, eps);
    if (p < 1.0) mask = percolate(mask, p, derive_seed(seed, 2));
    const auto samples = sample_distances(graph, mask, pairs, derive_seed(seed, 3));
    const double pc_eps = g.params.contains("pc_eps")
                              ? g.number("pc_eps")
                              : spectral::pc_spectral(eps, gamma, beta);

    std::uint64_t reachable = 0;
    double total = 0.0;
    for (const auto& s : samples)
        if (s.distance && s.u != s.v) {
            ++reachable;
            total += *s.distance;
        }
    ResultRecord r = base_record("distances", params, seed);
    r.values["violation_fraction"] = distance_bound_violation(samples, n, pc_eps, delta);
    r.values["pc_eps"] = pc_eps;
    r.values["reachable_pairs"] = static_cast<double>(reachable);
    r.values["mean_distance"] = reachable ? total / static_cast<double>(reachable) : 0.0;
    return {r};
}

Records run_ibp(const Getter& g, const nlohmann::json& params, std::uint64_t seed,
                std::uint32_t replicas) {
    const auto est = ibp::survival_probability(
        g.number("eps"), g.rule(), g.number_or("p", 1.0), replicas,
        static_cast<std::uint32_t>(g.integer_or("gen_cap", 200)),
        static_cast<std::uint32_t>(g.integer_or("pop_cap", 1000)), seed);
    ResultRecord r = base_record("ibp", params, seed);
    r.values["zeta_lower"] = est.zeta_lower;
    r.values["zeta_upper"] = est.zeta_upper;
    r.values["censored_fraction"] = est.censored_fraction;
    r.se = est.se;
    r.has_se = true;
    return {r};
}

Records run_cm(const Getter& g, const nlohmann::json& params, std::uint64_t seed,
               std::uint32_t replicas) {
    const double eps = g.number("eps");
    alt::DegreeLaw law;
    if (g.params.contains("degree_law"))
        law = alt::DegreeLaw::from_json(g.params.at("degree_law"));
    else
        law = alt::DegreeLaw::power(g.number("gamma"),
                                    g.integer_or("k_max", 100000));
    ResultRecord r = base_record("cm", params, seed);
    r.values["pc"] = alt::cm_pc(law, eps);
    if (g.params.contains("n")) {
        // Monte Carlo giant fraction on the attacked multigraph
        const auto n = static_cast<Vertex>(g.integer("n"));
        const double p = g.number_or("p", 1.0);
        double total = 0.0;
        for (std::uint32_t rep = 0; rep < replicas; ++rep) {
            const std::uint64_t sub = derive_seed(seed, 11, rep);
            Rng rng(sub);
            std::vector<std::uint32_t> degrees(n);
            for (auto& d : degrees)
                d = static_cast<std::uint32_t>(law.sample(rng.uniform()));
            const auto graph = alt::cm_generate(degrees, sub);
            VertexMask mask = alt::cm_attack(graph, eps);
            if (p < 1.0) mask = percolate(mask, p, derive_seed(sub, 12));
            const auto summary = largest_component(graph.n, graph.edges, mask);
            total += static_cast<double>(summary.largest) /
                     std::max(1.0, p * static_cast<double>(summary.alive_count));
        }
        r.values["giant_fraction"] = total / replicas;
    }
    return {r};
}

Records run_irg(const Getter& g, const nlohmann::json& params, std::uint64_t seed) {
    const std::string kernel_name = g.text_or("kernel", "cl");
    const alt::Kernel kernel{kernel_name == "cl" ? alt::KernelKind::ChungLu
                                                 : alt::KernelKind::PrefAttach,
                             g.number("gamma")};
    const double eps = g.number("eps");
    const auto grid = static_cast<std::uint32_t>(g.integer_or("grid", 1024));
    ResultRecord r = base_record("irg", params, seed);
    r.values["pc"] = alt::irg_pc(kernel, eps, grid);
    if (kernel.kind == alt::KernelKind::ChungLu)
        r.values["pc_closed"] = alt::cl_pc_closed(eps, kernel.gamma);
    return {r};
}

Records dispatch(const std::string& op, const nlohmann::json& params, std::uint64_t seed,
                 std::uint32_t replicas) {
    const Getter g{params, op};
    if (op == "spectral") return run_spectral(g, params, seed);
    if (op == "pc") return run_pc(g, params, seed, replicas);
    if (op == "giant") return run_giant(g, params, seed, replicas);
    if (op == "degrees") return run_degrees(g, params, seed);
    if (op == "distances") return run_distances(g, params, seed);
    if (op == "ibp") return run_ibp(g, params, seed, replicas);
    if (op == "cm") return run_cm(g, params, seed, replicas);
    if (op == "irg") return run_irg(g, params, seed);
    throw ConfigError("unknown op '" + op + "'");
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (!j.contains("op")) throw ConfigError("missing required field 'op'");
    cfg.op = j.at("op").get<std::string>();
    if (!kOps.count(cfg.op)) throw ConfigError("unknown op '" + cfg.op + "'");

    cfg.params = j.value("params", nlohmann::json::object());
    // flat configs are accepted too: any non-reserved key is a parameter
    for (const auto& [key, value] : j.items()) {
        if (key == "op" || key == "params" || key == "seed" || key == "replicas" ||
            key == "out" || key == "format" || key == "timing")
            continue;
        cfg.params[key] = value;
    }
    for (const auto& [key, value] : cfg.params.items()) {
        if (value.is_array() && !kNoSweep.count(key))
            for (const auto& e : value) validate_field(key, e);
        else
            validate_field(key, value);
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.replicas = j.value("replicas", std::uint32_t{1});
    if (cfg.replicas < 1) throw ConfigError("replicas must be >= 1");
    cfg.out = j.value("out", std::string{});
    cfg.format = parse_format(j.value("format", std::string{"jsonl"}));
    cfg.with_timing = j.value("timing", false);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

std::vector<ResultRecord> run(const ExperimentConfig& config) {
    // sweep dimensions: list-valued params in key order
    std::vector<std::string> keys;
    std::vector<const nlohmann::json*> lists;
    for (const auto& [key, value] : config.params.items()) {
        if (value.is_array() && !kNoSweep.count(key)) {
            keys.push_back(key);
            lists.push_back(&value);
        }
    }
    std::size_t cells = 1;
    for (const auto* l : lists) cells *= l->size();

    std::vector<ResultRecord> records;
    std::vector<std::size_t> odo(keys.size(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        nlohmann::json params = config.params;
        for (std::size_t d = 0; d < keys.size(); ++d)
            params[keys[d]] = (*lists[d])[odo[d]];
        const std::uint64_t cell_seed = derive_seed(config.seed, cell);

        const auto started = std::chrono::steady_clock::now();
        Records cell_records;
        try {
            cell_records = dispatch(config.op, params, cell_seed, config.replicas);
        } catch (const std::exception& e) {
            ResultRecord r = base_record(config.op, params, cell_seed);
            r.error = e.what();
            cell_records = {r};
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
        for (auto& r : cell_records) {
            r.wall_ms = ms;
            records.push_back(std::move(r));
        }

        for (std::size_t d = keys.size(); d-- > 0;) {
            if (++odo[d] < lists[d]->size()) break;
            odo[d] = 0;
        }
    }
    return records;
}

std::string degrees_csv(const std::vector<ResultRecord>& records) {
    std::ostringstream out;
    out << "k,mu_theory,x_empirical,abs_diff\n";
    out.precision(17);
    for (const auto& r : records) {
        if (r.op != "degrees" || !r.params.contains("k")) continue;
        out << r.params.at("k").get<std::uint64_t>() << ','
            << r.values.at("mu_theory") << ',' << r.values.at("x_empirical") << ','
            << r.values.at("abs_diff") << '\n';
    }
    return out.str();
}

}  // namespace netvuln::cli
