// rainbow: construct, verify, count and bound colourings of [N] that cover
// every k-subset of [n] with a rainbow arithmetic k-progression.
//
// Exit codes: 0 success, 1 negative-but-valid result, 2 input or parameter
// error, 3 budget or rounds exhausted.

#include "rainbow/bounds.hpp"
#include "rainbow/construct.hpp"
#include "rainbow/coverage.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

namespace {

using rainbow::Json;

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kExhausted = 3 };

struct Common {
    bool text = false;
    std::optional<std::uint64_t> seed;
    std::string rng{rainbow::kDefaultRng};
    int threads = 1;
    std::uint64_t budget = rainbow::kDefaultNodeBudget;
};

int default_threads() {
    if (const char* env = std::getenv("RAINBOW_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring RAINBOW_THREADS=" << env << "\n";
        }
    }
    return 1;
}

// Randomised subcommands never run unseeded: a fresh seed is drawn and reported.
std::uint64_t resolve_seed(const Common& common) {
    if (common.seed) return *common.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Json common_json(const Common& c, std::optional<std::uint64_t> seed) {
    Json out{{"rng", c.rng}, {"threads", c.threads}, {"budget", c.budget}};
    out["seed"] = seed ? Json(*seed) : Json(nullptr);
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << body;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string input;
    int n = 0;
    int k = 0;
    bool witnesses = false;
};

int run_verify(const VerifyArgs& a, const Common& common) {
    rainbow::Coloring coloring;
    try {
        coloring = rainbow::read_coloring_file(a.input, a.n);
    } catch (const rainbow::ColoringParseError& e) {
        std::cerr << "error: " << a.input << ": " << e.what() << "\n";
        return kInputError;
    }
    const auto result =
        rainbow::verify_cover(coloring, a.n, a.k, rainbow::CoverageOptions{a.witnesses, common.threads});
    if (common.text) {
        std::cout << "n=" << a.n << " k=" << a.k << " N=" << coloring.length() << "\n"
                  << "covered " << result.report.covered_count << " of " << result.report.total << "\n"
                  << (result.complete ? "complete" : "incomplete") << "\n";
        for (const auto& s : result.uncovered) {
            std::cout << "uncovered:";
            for (int c : s.colors()) std::cout << ' ' << c;
            std::cout << "\n";
        }
        if (result.report.witnesses) {
            for (const auto& [rank, prog] : *result.report.witnesses) {
                std::cout << "witness:";
                for (int c : rainbow::ColorSet::from_rank(rank, a.n, a.k).colors()) std::cout << ' ' << c;
                std::cout << " at " << rainbow::to_string(prog) << "\n";
            }
        }
    } else {
        Json out{{"command", "verify"},
                 {"params", {{"input", a.input}, {"n", a.n}, {"k", a.k}, {"witnesses", a.witnesses},
                             {"common", common_json(common, std::nullopt)}}}};
        out.update(rainbow::verify_json(result));
        emit(out);
    }
    return result.complete ? kOk : kNegative;
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
    int n = 0;
    int k = 0;
    double alpha = 2.0;
    int samples = 16;
    int max_rounds = 0;
    std::string log_base = "e";
    bool force = false;
    std::string output;
    std::string trace;
};

int run_construct(const ConstructArgs& a, const Common& common) {
    rainbow::ConstructParams params;
    params.alpha = a.alpha;
    params.samples_per_round = a.samples;
    params.max_rounds = a.max_rounds;
    params.seed = resolve_seed(common);
    params.rng_name = common.rng;
    params.log_base = rainbow::parse_log_base(a.log_base);
    params.allow_low_alpha = a.force;
    params.threads = common.threads;

    if (a.force && a.alpha <= rainbow::alpha_threshold(params.log_base))
        std::cerr << "warning: alpha=" << a.alpha << " is not above 1/log(2); proceeding because of --force\n";

    auto write_trace = [&](const rainbow::ConstructTrace& t) {
        if (a.trace.empty()) return;
        std::string lines;
        for (const auto& r : t.rounds) lines += rainbow::round_json(r).dump() + "\n";
        write_file(a.trace, lines);
    };

    try {
        const auto result = rainbow::construct_cover(a.n, a.k, params);
        write_trace(result.trace);
        const std::vector<std::string> header{
            "rainbow construct",
            "n: " + std::to_string(a.n),
            "k: " + std::to_string(a.k),
            "alpha: " + Json(a.alpha).dump(),
            "seed: " + std::to_string(params.seed),
            "rng: " + params.rng_name,
            "rounds_used: " + std::to_string(result.trace.rounds_used),
            "block_length: " + std::to_string(result.trace.block_length),
            "length: " + std::to_string(result.coloring.length())};
        const std::string text = rainbow::format_coloring(result.coloring, header);
        if (!a.output.empty()) write_file(a.output, text);
        if (common.text) {
            std::cout << text;
        } else {
            Json out{{"command", "construct"}};
            out.update(rainbow::construct_json(result.trace, &result.coloring, nullptr));
            emit(out);
        }
        return kOk;
    } catch (const rainbow::RoundsExhausted& e) {
        write_trace(e.trace());
        std::cerr << "error: " << e.what() << "\n";
        if (common.text) {
            std::cout << "rounds exhausted; " << e.residual().size() << " subsets uncovered\n";
        } else {
            Json out{{"command", "construct"}};
            out.update(rainbow::construct_json(e.trace(), nullptr, &e.residual()));
            emit(out);
        }
        return kExhausted;
    }
}

// ---- count -----------------------------------------------------------------

struct CountArgs {
    std::int64_t N = 0;
    int k = 0;
    bool pairs = false;
    std::uint64_t pair_limit = rainbow::kDefaultPairLimit;
};

int run_count(const CountArgs& a, const Common& common) {
    const auto h = rainbow::count_progressions(a.N, a.k);
    Json out{{"command", "count"},
             {"params", {{"N", a.N}, {"k", a.k}, {"pairs", a.pairs}, {"pair_limit", a.pair_limit},
                         {"common", common_json(common, std::nullopt)}}},
             {"N", a.N},
             {"k", a.k},
             {"h", h.get_str()}};
    const auto bounds = rainbow::hi_upper_bounds(a.N, a.k);
    if (a.pairs) out["pairs"] = rainbow::pair_counts_json(rainbow::count_intersecting_pairs(a.N, a.k, a.pair_limit), bounds);
    if (common.text) {
        std::cout << "h(" << a.N << "," << a.k << ") = " << h.get_str() << "\n";
        if (a.pairs) {
            const auto& p = out["pairs"];
            for (std::size_t i = 0; i < p["counts"].size(); ++i)
                std::cout << "h_" << i << " = " << p["counts"][i].get<std::string>() << "  (bound "
                          << p["bounds"][i].get<std::string>() << ")\n";
        }
    } else {
        emit(out);
    }
    return kOk;
}

// ---- bounds / estimate -----------------------------------------------------

struct BoundsArgs {
    int n = 0;
    int k = 0;
    std::optional<std::int64_t> N;
    double alpha = 2.0;
    std::string log_base = "e";
    bool force = false;
    std::string pairs = "exact";
    std::uint64_t pair_limit = rainbow::kDefaultPairLimit;
    std::uint64_t trials = 0;
};

int run_bounds(const BoundsArgs& a, const Common& common) {
    rainbow::BoundsRequest req;
    req.n = a.n;
    req.k = a.k;
    req.N = a.N;
    req.alpha = a.alpha;
    req.log_base = rainbow::parse_log_base(a.log_base);
    req.allow_low_alpha = a.force;
    req.pair_mode = rainbow::parse_pair_mode(a.pairs);
    req.pair_limit = a.pair_limit;
    req.trials = a.trials;
    std::optional<std::uint64_t> seed;
    if (a.trials > 0) seed = resolve_seed(common);
    req.seed = seed.value_or(0);
    req.rng_name = common.rng;
    req.threads = common.threads;
    const auto report = rainbow::make_bounds_report(req);
    if (common.text) {
        std::cout << "n=" << report.n << " k=" << report.k << " N=" << report.N << "\n"
                  << "h = " << report.h.get_str() << "\n"
                  << "L (" << rainbow::to_string(report.pair_mode) << " pairs) = " << report.L.get_str() << " = "
                  << rainbow::decimal_string(report.L) << "\n"
                  << "N_lower = " << report.N_lower << "\n"
                  << "block_length = " << report.block_length << ", rounds = " << report.rounds
                  << ", construction_length = " << report.construction_length << "\n";
        if (report.estimate)
            std::cout << "p_hat = " << report.estimate->p_hat << " +- " << report.estimate->std_err << " ("
                      << report.estimate->trials << " trials, seed " << report.estimate->seed << ")\n";
    } else {
        Json out{{"command", "bounds"},
                 {"params", {{"n", a.n}, {"k", a.k}, {"N", a.N ? Json(*a.N) : Json(nullptr)}, {"alpha", a.alpha},
                             {"log_base", a.log_base}, {"force", a.force}, {"pairs", a.pairs},
                             {"pair_limit", a.pair_limit}, {"trials", a.trials},
                             {"common", common_json(common, seed)}}}};
        out.update(rainbow::bounds_json(report));
        emit(out);
    }
    return kOk;
}

struct EstimateArgs {
    int n = 0;
    int k = 0;
    std::optional<std::int64_t> N;
    std::uint64_t trials = 10000;
};

int run_estimate(const EstimateArgs& a, const Common& common) {
    const std::uint64_t seed = resolve_seed(common);
    const std::int64_t N = a.N.value_or(static_cast<std::int64_t>(rainbow::block_length(a.n, a.k)));
    const auto est = rainbow::estimate_cover_probability(a.n, a.k, N, a.trials, seed, common.rng, common.threads);
    if (common.text) {
        std::cout << "p_hat = " << est.p_hat << " +- " << est.std_err << " (" << est.hits << "/" << est.trials
                  << ", seed " << seed << ")\n";
    } else {
        Json out{{"command", "estimate"},
                 {"params", {{"n", a.n}, {"k", a.k}, {"N", N}, {"trials", a.trials},
                             {"common", common_json(common, seed)}}},
                 {"n", a.n},
                 {"k", a.k},
                 {"N", N}};
        out.update(rainbow::estimate_json(est));
        emit(out);
    }
    return kOk;
}

// ---- exact -----------------------------------------------------------------

struct ExactArgs {
    int n = 0;
    int k = 0;
    std::optional<std::int64_t> N;
    std::optional<std::int64_t> max_N;
    bool oracle = false;
    bool no_symmetry = false;
    std::string output;
};

int run_exact(const ExactArgs& a, const Common& common) {
    rainbow::SearchConfig config;
    config.max_N = a.max_N;
    config.node_budget = common.budget;
    config.symmetry_breaking = !a.no_symmetry;
    config.oracle_mode = a.oracle;
    config.threads = a.oracle ? 1 : common.threads;

    const Json params{{"n", a.n},
                      {"k", a.k},
                      {"N", a.N ? Json(*a.N) : Json(nullptr)},
                      {"max_N", a.max_N ? Json(*a.max_N) : Json(nullptr)},
                      {"oracle", a.oracle},
                      {"symmetry_breaking", config.symmetry_breaking},
                      {"common", common_json(common, std::nullopt)}};

    auto write_witness = [&](const rainbow::Coloring& w, std::int64_t N) {
        if (a.output.empty()) return;
        write_file(a.output, rainbow::format_coloring(w, {"rainbow exact", "n: " + std::to_string(a.n),
                                                          "k: " + std::to_string(a.k), "N: " + std::to_string(N)}));
    };

    if (a.N) {
        const auto outcome = rainbow::exists_cover(a.n, a.k, *a.N, config);
        if (outcome.coloring) write_witness(*outcome.coloring, *a.N);
        if (common.text) {
            std::cout << "exists_cover(" << a.n << "," << a.k << "," << *a.N << "): " << to_string(outcome.status)
                      << " after " << outcome.nodes << " nodes\n";
            if (outcome.coloring) std::cout << rainbow::format_coloring(*outcome.coloring);
        } else {
            Json out{{"command", "exact"}, {"params", params}};
            out.update(rainbow::exists_json(a.n, a.k, *a.N, outcome));
            emit(out);
        }
        switch (outcome.status) {
            case rainbow::SearchStatus::Found: return kOk;
            case rainbow::SearchStatus::Absent: return kNegative;
            case rainbow::SearchStatus::BudgetExceeded: return kExhausted;
        }
    }

    const auto result = rainbow::ac_exact(a.n, a.k, config);
    if (result.witness) write_witness(*result.witness, *result.value);
    if (common.text) {
        if (result.value) {
            std::cout << "ac(" << a.n << "," << a.k << ") = " << *result.value << " (computed, " << result.nodes_explored
                      << " nodes)\n"
                      << rainbow::format_coloring(*result.witness);
        } else {
            std::cout << "budget exceeded after " << result.nodes_explored << " nodes; no cover for N <= "
                      << result.refuted_up_to << "\n";
        }
    } else {
        Json out{{"command", "exact"}, {"params", params}};
        out.update(rainbow::ac_json(a.n, a.k, result));
        emit(out);
    }
    return result.status == rainbow::SearchStatus::Found ? kOk : kExhausted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rainbow arithmetic progression covering colourings"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    common.threads = default_threads();
    bool json_flag = false;
    auto* json_opt = app.add_flag("--json", json_flag, "JSON output (default)");
    app.add_flag("--text", common.text, "human-readable output")->excludes(json_opt);
    app.add_option("--seed", common.seed, "RNG seed; drawn and reported when omitted");
    app.add_option("--rng", common.rng, "generator: splitmix64 or mt19937_64")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads (env RAINBOW_THREADS)")->capture_default_str();
    app.add_option("--budget", common.budget, "node budget for the exact solver")->capture_default_str();

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check that a colouring covers every k-subset");
    verify->add_option("--input", va.input, "colouring file")->required();
    verify->add_option("--n", va.n, "number of colours")->required();
    verify->add_option("--k", va.k, "progression length")->required();
    verify->add_flag("--witnesses", va.witnesses, "report one progression per covered subset");

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "randomised block construction of a covering colouring");
    construct->add_option("--n", ca.n)->required();
    construct->add_option("--k", ca.k)->required();
    construct->add_option("--alpha", ca.alpha, "round multiplier")->capture_default_str();
    construct->add_option("--samples", ca.samples, "candidates per round")->capture_default_str();
    construct->add_option("--max-rounds", ca.max_rounds, "0 means 4 * rounds(n,k,alpha)")->capture_default_str();
    construct->add_option("--log-base", ca.log_base, "e, 2 or 10")->capture_default_str();
    construct->add_flag("--force", ca.force, "allow alpha at or below 1/log(2)");
    construct->add_option("--output", ca.output, "write the colouring in text format");
    construct->add_option("--trace", ca.trace, "write per-round JSON lines");

    CountArgs cn;
    auto* count = app.add_subcommand("count", "count k-progressions in [N] and pairs by intersection size");
    count->add_option("--N", cn.N)->required();
    count->add_option("--k", cn.k)->required();
    count->add_flag("--pairs", cn.pairs, "exact pair scan for h_i");
    count->add_option("--pair-limit", cn.pair_limit)->capture_default_str();

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Bonferroni bound, lower bound on N and construction length");
    bounds->add_option("--n", ba.n)->required();
    bounds->add_option("--k", ba.k)->required();
    bounds->add_option("--N", ba.N, "interval length (default block_length(n,k))");
    bounds->add_option("--alpha", ba.alpha)->capture_default_str();
    bounds->add_option("--log-base", ba.log_base)->capture_default_str();
    bounds->add_flag("--force", ba.force);
    bounds->add_option("--pairs", ba.pairs, "exact or bounded")->capture_default_str();
    bounds->add_option("--pair-limit", ba.pair_limit)->capture_default_str();
    bounds->add_option("--trials", ba.trials, "Monte Carlo trials (0 = none)")->capture_default_str();

    EstimateArgs ea;
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo probability that {1..k} is covered");
    estimate->add_option("--n", ea.n)->required();
    estimate->add_option("--k", ea.k)->required();
    estimate->add_option("--N", ea.N, "interval length (default block_length(n,k))");
    estimate->add_option("--trials", ea.trials)->capture_default_str();

    ExactArgs xa;
    auto* exact = app.add_subcommand("exact", "exact ac(n,k), or existence at a given N");
    exact->add_option("--n", xa.n)->required();
    exact->add_option("--k", xa.k)->required();
    exact->add_option("--N", xa.N, "decide existence at this N only");
    exact->add_option("--max-N", xa.max_N, "give up beyond this N");
    exact->add_flag("--oracle", xa.oracle, "exhaustive enumeration without pruning");
    exact->add_flag("--no-symmetry", xa.no_symmetry, "disable colour symmetry breaking");
    exact->add_option("--output", xa.output, "write the witness in text format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }
    common.threads = std::max(1, common.threads);

    try {
        if (*verify) return run_verify(va, common);
        if (*construct) return run_construct(ca, common);
        if (*count) return run_count(cn, common);
        if (*bounds) return run_bounds(ba, common);
        if (*estimate) return run_estimate(ea, common);
        if (*exact) return run_exact(xa, common);
    } catch (const rainbow::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const rainbow::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
