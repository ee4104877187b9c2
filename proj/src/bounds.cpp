#include "rainbow/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace rainbow {

namespace {

void check_nk(int n, int k) {
    if (k < 2) throw ParameterError("subset size k must be at least 2, got " + std::to_string(k));
    if (k > n)
        throw ParameterError("subset size k=" + std::to_string(k) + " exceeds number of colours n=" +
                             std::to_string(n));
}

BigInt power(int base, int exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

}  // namespace

std::string to_string(PairMode mode) { return mode == PairMode::Exact ? "exact" : "bounded"; }

PairMode parse_pair_mode(std::string_view text) {
    if (text == "exact") return PairMode::Exact;
    if (text == "bounded") return PairMode::Bounded;
    throw ParameterError("pair mode must be 'exact' or 'bounded', got '" + std::string(text) + "'");
}

namespace {

Rational bonferroni_from(int n, int k, const BigInt& h, const std::vector<Rational>& pairs) {
    const BigInt kf = factorial(static_cast<std::uint64_t>(k));
    Rational L(h * kf, power(n, k));
    L.canonicalize();
    for (int i = 0; i < k; ++i) {
        // P(A and B both R-coloured) for |A & B| = i is k!(k-i)!/n^(2k-i).
        Rational joint(kf * factorial(static_cast<std::uint64_t>(k - i)), power(n, 2 * k - i));
        joint.canonicalize();
        L -= pairs[i] * joint;
    }
    return L;
}

std::vector<Rational> pair_terms(std::int64_t N, int k, PairMode mode, std::uint64_t pair_limit) {
    if (mode == PairMode::Bounded) return hi_upper_bounds(N, k);
    const auto exact = count_intersecting_pairs(N, k, pair_limit);
    std::vector<Rational> out;
    out.reserve(exact.counts.size());
    for (const auto& c : exact.counts) out.emplace_back(c);
    return out;
}

}  // namespace

Rational bonferroni_lower_bound(int n, int k, std::int64_t N, PairMode mode, std::uint64_t pair_limit) {
    check_nk(n, k);
    if (N < 1) throw ParameterError("interval length N must be at least 1");
    return bonferroni_from(n, k, count_progressions(N, k), pair_terms(N, k, mode, pair_limit));
}

CoverEstimate estimate_cover_probability(int n, int k, std::int64_t N, std::uint64_t trials, std::uint64_t seed,
                                         std::string_view rng_name, int threads) {
    check_nk(n, k);
    if (n > kMaxColors) throw ParameterError("at most 64 colours are supported");
    if (N < 1) throw ParameterError("interval length N must be at least 1");
    if (trials < 1) throw ParameterError("trials must be at least 1");
    Rng validate(rng_name, seed);

    CoverEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.rng_name = std::string(rng_name);

    // Flattened 0-based term positions of every k-progression in [N].
    std::vector<std::uint32_t> terms;
    for_each_progression(N, k, [&](const Progression& p) {
        for (int j = 0; j < k; ++j) terms.push_back(static_cast<std::uint32_t>(p.term(j) - 1));
    });
    const std::size_t width = static_cast<std::size_t>(k);
    const std::size_t progs = terms.size() / width;
    const std::uint64_t full = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;

    auto run_trial = [&](std::uint64_t t, std::vector<std::uint8_t>& cells) {
        Rng rng(rng_name, seed, t);
        for (auto& c : cells) c = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(n)));
        for (std::size_t p = 0; p < progs; ++p) {
            const std::uint32_t* pos = terms.data() + p * width;
            std::uint64_t mask = 0;
            std::size_t j = 0;
            for (; j < width; ++j) {
                const std::uint8_t c = cells[pos[j]];
                if (c >= k) break;
                mask |= std::uint64_t{1} << c;
            }
            if (j == width && mask == full) return true;
        }
        return false;
    };

    std::atomic<std::uint64_t> hits{0};
    const auto workers_count = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::max(threads, 1)), 1, trials));
    if (progs > 0) {
        auto work = [&](std::uint64_t w) {
            std::vector<std::uint8_t> cells(static_cast<std::size_t>(N));
            std::uint64_t local = 0;
            for (std::uint64_t t = w; t < trials; t += workers_count) local += run_trial(t, cells) ? 1 : 0;
            hits += local;
        };
        if (workers_count == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::uint64_t w = 0; w < workers_count; ++w) pool.emplace_back(work, w);
        }
    }
    est.hits = hits.load();
    est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
    return est;
}

std::uint64_t lower_bound_N(int n, int k) {
    check_nk(n, k);
    const BigInt target = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::int64_t hi = k;
    while (count_progressions(hi, k) < target) {
        if (hi > (std::int64_t{1} << 61)) throw BudgetError("lower bound on N exceeds 2^62");
        hi *= 2;
    }
    // Invariant: h(lo) < target <= h(hi), with h(k - 1) = 0.
    std::int64_t lo = k - 1;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (count_progressions(mid, k) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return static_cast<std::uint64_t>(hi);
}

std::uint64_t upper_bound_length(int n, int k, double alpha, LogBase base, bool allow_low_alpha) {
    check_nk(n, k);
    const BigInt len = BigInt(static_cast<unsigned long>(rounds(n, k, alpha, base, allow_low_alpha))) *
                       BigInt(static_cast<unsigned long>(block_length(n, k)));
    if (!len.fits_ulong_p()) throw BudgetError("construction length exceeds 64 bits");
    return len.get_ui();
}

BoundsReport make_bounds_report(const BoundsRequest& request) {
    check_nk(request.n, request.k);
    BoundsReport r;
    r.n = request.n;
    r.k = request.k;
    r.alpha = request.alpha;
    r.log_base = request.log_base;
    r.block_length = block_length(request.n, request.k);
    r.N = request.N.value_or(static_cast<std::int64_t>(r.block_length));
    if (r.N < 1) throw ParameterError("interval length N must be at least 1");
    r.h = count_progressions(r.N, r.k);
    r.pair_mode = request.pair_mode;
    r.h_i = pair_terms(r.N, r.k, request.pair_mode, request.pair_limit);
    r.L = bonferroni_from(r.n, r.k, r.h, r.h_i);
    r.N_lower = lower_bound_N(r.n, r.k);
    r.rounds = rounds(r.n, r.k, request.alpha, request.log_base, request.allow_low_alpha);
    r.construction_length = upper_bound_length(r.n, r.k, request.alpha, request.log_base, request.allow_low_alpha);
    if (request.trials > 0)
        r.estimate = estimate_cover_probability(r.n, r.k, r.N, request.trials, request.seed, request.rng_name,
                                                request.threads);
    return r;
}

std::string decimal_string(const Rational& q, int digits) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const bool negative = q < 0;
    const Rational magnitude = negative ? Rational(-q) : q;
    // floor(|q| * 10^digits + 1/2)
    const Rational shifted = magnitude * Rational(scale) + Rational(1, 2);
    BigInt scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    const BigInt whole = scaled / scale;
    const BigInt frac = scaled % scale;
    std::string frac_str = frac.get_str();
    if (static_cast<int>(frac_str.size()) < digits)
        frac_str.insert(0, static_cast<std::size_t>(digits) - frac_str.size(), '0');
    std::string out = (negative && scaled != 0) ? "-" : "";
    out += whole.get_str();
    if (digits > 0) out += "." + frac_str;
    return out;
}

}  // namespace rainbow
