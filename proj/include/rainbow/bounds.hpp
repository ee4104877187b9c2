#pragma once

// Quantitative side of the covering argument: the second-order Bonferroni
// lower bound on the probability that a uniform colouring covers a fixed
// k-subset, a Monte Carlo estimate of that probability, and the lower and
// upper bounds on the shortest covering interval.

#include "rainbow/combinatorics.hpp"
#include "rainbow/construct.hpp"

#include <optional>
#include <string>

namespace rainbow {

enum class PairMode { Exact, Bounded };

std::string to_string(PairMode mode);
/// Accepts "exact" or "bounded".
PairMode parse_pair_mode(std::string_view text);

/// h(N,k) k!/n^k - sum_i h_i(N,k) k!(k-i)!/n^(2k-i), with h_i exact (pair scan)
/// or replaced by hi_upper_bounds. Exact rational arithmetic throughout.
Rational bonferroni_lower_bound(int n, int k, std::int64_t N, PairMode mode,
                                std::uint64_t pair_limit = kDefaultPairLimit);

struct CoverEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    std::uint64_t seed = 0;
    std::string rng_name;
};

/// Fraction of `trials` uniform n-colourings of [N] covering R = {1, ..., k}.
/// Trial t draws from stream t, so the result does not depend on `threads`.
CoverEstimate estimate_cover_probability(int n, int k, std::int64_t N, std::uint64_t trials, std::uint64_t seed,
                                         std::string_view rng_name = kDefaultRng, int threads = 1);

/// Least N with h(N, k) >= C(n, k).
std::uint64_t lower_bound_N(int n, int k);

/// rounds(n, k, alpha) * block_length(n, k).
std::uint64_t upper_bound_length(int n, int k, double alpha, LogBase base = LogBase::E,
                                 bool allow_low_alpha = false);

struct BoundsReport {
    int n = 0;
    int k = 0;
    std::int64_t N = 0;
    BigInt h;
    PairMode pair_mode = PairMode::Exact;
    /// Exact h_i under PairMode::Exact, else the upper bounds.
    std::vector<Rational> h_i;
    Rational L;
    std::uint64_t N_lower = 0;
    double alpha = 2.0;
    LogBase log_base = LogBase::E;
    std::uint64_t block_length = 0;
    std::uint64_t rounds = 0;
    std::uint64_t construction_length = 0;
    std::optional<CoverEstimate> estimate;
};

struct BoundsRequest {
    int n = 0;
    int k = 0;
    /// Defaults to block_length(n, k).
    std::optional<std::int64_t> N;
    double alpha = 2.0;
    LogBase log_base = LogBase::E;
    bool allow_low_alpha = false;
    PairMode pair_mode = PairMode::Exact;
    std::uint64_t pair_limit = kDefaultPairLimit;
    /// Monte Carlo estimate only when trials > 0.
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng_name{kDefaultRng};
    int threads = 1;
};

BoundsReport make_bounds_report(const BoundsRequest& request);

/// Decimal expansion rounded half away from zero to `digits` fractional digits.
std::string decimal_string(const Rational& q, int digits = 30);

}  // namespace rainbow
