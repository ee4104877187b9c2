#include "rainbow/construct.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace rainbow {

namespace {

void check_block_params(int n, int k) {
    if (k < 2) throw ParameterError("subset size k must be at least 2, got " + std::to_string(k));
    if (k > n)
        throw ParameterError("subset size k=" + std::to_string(k) + " exceeds number of colours n=" +
                             std::to_string(n));
}

}  // namespace

std::string to_string(LogBase base) {
    switch (base) {
        case LogBase::E: return "e";
        case LogBase::Two: return "2";
        case LogBase::Ten: return "10";
    }
    return "e";
}

LogBase parse_log_base(std::string_view text) {
    if (text == "e") return LogBase::E;
    if (text == "2") return LogBase::Two;
    if (text == "10") return LogBase::Ten;
    throw ParameterError("log base must be one of e, 2, 10; got '" + std::string(text) + "'");
}

double log_in_base(double x, LogBase base) {
    switch (base) {
        case LogBase::E: return std::log(x);
        case LogBase::Two: return std::log2(x);
        case LogBase::Ten: return std::log10(x);
    }
    return std::log(x);
}

double alpha_threshold(LogBase base) { return 1.0 / log_in_base(2.0, base); }

std::uint64_t block_length_exact(int n, int k) {
    check_block_params(n, k);
    BigInt num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    num *= 2 * (k - 1);
    const BigInt den = factorial(static_cast<std::uint64_t>(k));
    // m^2 >= num / den  <=>  m^2 >= ceil(num / den) for integer m.
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt m;
    if (q <= 0) {
        m = 0;
    } else {
        const BigInt below = q - 1;
        mpz_sqrt(m.get_mpz_t(), below.get_mpz_t());
        m += 1;
    }
    if (!m.fits_ulong_p()) throw BudgetError("block length exceeds 64 bits");
    return m.get_ui();
}

std::uint64_t block_length(int n, int k) {
    check_block_params(n, k);
    const long double exponent = std::numbers::ln2_v<long double> / 2 +
                                 (std::log(static_cast<long double>(k - 1)) - std::lgamma(static_cast<long double>(k + 1))) / 2 +
                                 static_cast<long double>(k) / 2 * std::log(static_cast<long double>(n));
    const long double value = std::exp(exponent);
    // Near an integer, or beyond exact double range, the ceiling is decided exactly.
    if (!std::isfinite(value) || value > 0x1p52L) return block_length_exact(n, k);
    const long double nearest = std::round(value);
    if (std::fabs(value - nearest) < 1e-6L * std::max(1.0L, value)) return block_length_exact(n, k);
    return static_cast<std::uint64_t>(std::ceil(value));
}

std::uint64_t rounds(int n, int k, double alpha, LogBase base, bool allow_low_alpha) {
    if (n < 2) throw ParameterError("number of colours n must be at least 2, got " + std::to_string(n));
    if (k < 1) throw ParameterError("subset size k must be positive, got " + std::to_string(k));
    if (!std::isfinite(alpha) || alpha <= 0) throw ParameterError("alpha must be a positive finite number");
    const double threshold = alpha_threshold(base);
    if (alpha <= threshold && !allow_low_alpha)
        throw ParameterError("alpha=" + std::to_string(alpha) + " must exceed 1/log_" + to_string(base) +
                             "(2) = " + std::to_string(threshold));
    const double r = std::ceil(alpha * k * log_in_base(static_cast<double>(n), base));
    return static_cast<std::uint64_t>(std::max(1.0, r));
}

Coloring random_coloring(std::int64_t N, int n, Rng& rng) {
    if (N < 1) throw ParameterError("interval length N must be at least 1");
    if (n < 1 || n > kMaxColors) throw ParameterError("number of colours n must lie in [1, 64]");
    std::vector<int> colors(static_cast<std::size_t>(N));
    for (auto& c : colors) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
    return Coloring(colors, n);
}

RoundsExhausted::RoundsExhausted(ConstructTrace trace, std::vector<ColorSet> residual)
    : std::runtime_error("rounds exhausted after " + std::to_string(trace.rounds_used) + " blocks with " +
                         std::to_string(residual.size()) + " subsets uncovered"),
      trace_(std::move(trace)),
      residual_(std::move(residual)) {}

namespace {

struct Candidate {
    Coloring coloring;
    SubsetBits covered;
    std::uint64_t score = 0;
};

Candidate score_candidate(int n, int k, std::uint64_t N, const ConstructParams& params, std::uint64_t stream,
                          const SubsetBits& family) {
    Rng rng(params.rng_name, params.seed, stream);
    Candidate c;
    c.coloring = random_coloring(static_cast<std::int64_t>(N), n, rng);
    c.covered = covered_family(c.coloring, k).covered;
    c.covered &= family;
    c.score = c.covered.count();
    return c;
}

}  // namespace

ConstructResult construct_cover(int n, int k, const ConstructParams& params) {
    const std::uint64_t total = family_size(n, k);
    if (params.samples_per_round < 1) throw ParameterError("samples per round must be at least 1");
    if (params.max_rounds < 0) throw ParameterError("max rounds must be non-negative");
    Rng probe(params.rng_name, params.seed);

    ConstructTrace trace;
    trace.n = n;
    trace.k = k;
    trace.params = params;
    trace.block_length = block_length(n, k);
    trace.planned_rounds = rounds(n, k, params.alpha, params.log_base, params.allow_low_alpha);
    trace.max_rounds = params.max_rounds > 0 ? params.max_rounds : static_cast<int>(4 * trace.planned_rounds);

    // family holds the still-uncovered subsets.
    SubsetBits family(total);
    family.set();
    std::uint64_t remaining = total;
    Coloring output;

    const int samples = params.samples_per_round;
    const int threads = std::clamp(params.threads, 1, samples);
    for (int round = 0; round < trace.max_rounds && remaining > 0; ++round) {
        std::vector<Candidate> candidates(static_cast<std::size_t>(samples));
        const auto stream_base = static_cast<std::uint64_t>(round) * static_cast<std::uint64_t>(samples);
        if (threads == 1) {
            for (int s = 0; s < samples; ++s)
                candidates[s] = score_candidate(n, k, trace.block_length, params, stream_base + s, family);
        } else {
            std::atomic<int> next{0};
            std::vector<std::jthread> workers;
            for (int t = 0; t < threads; ++t) {
                workers.emplace_back([&] {
                    for (int s = next++; s < samples; s = next++)
                        candidates[s] = score_candidate(n, k, trace.block_length, params, stream_base + s, family);
                });
            }
        }
        // Ties go to the lowest sample index.
        int best = 0;
        for (int s = 1; s < samples; ++s)
            if (candidates[s].score > candidates[best].score) best = s;

        RoundRecord rec;
        rec.round = round;
        rec.family_before = remaining;
        family -= candidates[best].covered;
        remaining -= candidates[best].score;
        rec.family_after = remaining;
        rec.block_coverage = static_cast<double>(candidates[best].score) / static_cast<double>(rec.family_before);
        rec.samples = samples;
        rec.chosen_sample = best;
        trace.rounds.push_back(rec);
        output.append(candidates[best].coloring);
    }

    trace.rounds_used = static_cast<int>(trace.rounds.size());
    trace.final_length = output.length();
    if (remaining > 0) {
        std::vector<ColorSet> residual;
        for (auto r = family.find_first(); r != SubsetBits::npos; r = family.find_next(r))
            residual.push_back(ColorSet::from_rank(r, n, k));
        throw RoundsExhausted(std::move(trace), std::move(residual));
    }
    if (!verify_cover(output, n, k, CoverageOptions{false, params.threads}).complete)
        throw std::logic_error("constructed colouring failed its coverage certificate");
    return ConstructResult{std::move(output), std::move(trace)};
}

}  // namespace rainbow
