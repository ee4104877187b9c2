#include "rainbow/combinatorics.hpp"

#include <algorithm>
#include <limits>

namespace rainbow {

namespace {

void check_length(int k) {
    if (k < 2) throw ParameterError("progression length k must be at least 2, got " + std::to_string(k));
}

void check_interval(std::int64_t N) {
    if (N < 1) throw ParameterError("interval length N must be at least 1, got " + std::to_string(N));
}

void check_palette(int n, int k) {
    if (n < 1 || n > kMaxColors)
        throw ParameterError("number of colours n must lie in [1, 64], got " + std::to_string(n));
    if (k < 0 || k > n)
        throw ParameterError("subset size k must lie in [0, n], got k=" + std::to_string(k) +
                             " n=" + std::to_string(n));
}

}  // namespace

std::vector<std::int64_t> Progression::terms() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(length));
    for (int j = 0; j < length; ++j) out[j] = term(j);
    return out;
}

std::string to_string(const Progression& p) {
    std::string s = "{";
    for (int j = 0; j < p.length; ++j) {
        if (j) s += ',';
        s += std::to_string(p.term(j));
    }
    return s + "}";
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt binomial(const BigInt& n, std::uint64_t k) {
    if (n < 0) return 0;
    BigInt r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

BigInt factorial(std::uint64_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::uint64_t subset_rank(std::uint64_t mask, int n, int k) {
    check_palette(n, k);
    if (n < kMaxColors && (mask >> n) != 0)
        throw ParameterError("colour mask has bits above colour n=" + std::to_string(n));
    if (std::popcount(mask) != k)
        throw ParameterError("colour mask has " + std::to_string(std::popcount(mask)) +
                             " colours, expected k=" + std::to_string(k));
    return subset_rank_unchecked(mask);
}

std::uint64_t subset_unrank(std::uint64_t rank, int n, int k) {
    check_palette(n, k);
    if (rank >= binomial_u64(n, k))
        throw ParameterError("rank " + std::to_string(rank) + " out of range for C(" + std::to_string(n) +
                             "," + std::to_string(k) + ")");
    // Greedy from the largest element down: c_j - 1 is the largest m with C(m, j) <= rank.
    std::uint64_t mask = 0;
    int upper = n;
    for (int j = k; j >= 1; --j) {
        int m = upper - 1;
        while (binomial_u64(m, j) > rank) --m;
        mask |= std::uint64_t{1} << m;
        rank -= binomial_u64(m, j);
        upper = m;
    }
    return mask;
}

ColorSet ColorSet::from_mask(std::uint64_t mask, int n, int k) {
    return ColorSet{mask, subset_rank(mask, n, k)};
}

ColorSet ColorSet::from_rank(std::uint64_t rank, int n, int k) {
    return ColorSet{subset_unrank(rank, n, k), rank};
}

ColorSet ColorSet::from_colors(const std::vector<int>& colors, int n) {
    std::uint64_t mask = 0;
    for (int c : colors) {
        if (c < 1 || c > n) throw ParameterError("colour " + std::to_string(c) + " outside [1, n]");
        const std::uint64_t bit = std::uint64_t{1} << (c - 1);
        if (mask & bit) throw ParameterError("colour " + std::to_string(c) + " repeated in colour set");
        mask |= bit;
    }
    return from_mask(mask, n, static_cast<int>(colors.size()));
}

std::vector<int> ColorSet::colors() const {
    std::vector<int> out;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
}

std::vector<Progression> enumerate_progressions(std::int64_t N, int k) {
    check_length(k);
    check_interval(N);
    std::vector<Progression> out;
    out.reserve(count_progressions_u64(N, k));
    for_each_progression(N, k, [&](const Progression& p) { out.push_back(p); });
    return out;
}

BigInt count_progressions(std::int64_t N, int k) {
    check_length(k);
    check_interval(N);
    // Sum over d = 1..D of (N - (k - 1) d), D = floor((N - 1) / (k - 1)).
    const BigInt n = N;
    const BigInt D = (N - 1) / (k - 1);
    return D * n - BigInt(k - 1) * D * (D + 1) / 2;
}

std::uint64_t count_progressions_u64(std::int64_t N, int k) {
    const BigInt h = count_progressions(N, k);
    if (!h.fits_ulong_p()) throw BudgetError("progression count exceeds 64 bits");
    return h.get_ui();
}

PairIntersectionCounts count_intersecting_pairs(std::int64_t N, int k, std::uint64_t pair_limit) {
    check_length(k);
    check_interval(N);
    const BigInt h = count_progressions(N, k);
    if (h * h > BigInt(static_cast<unsigned long>(pair_limit)))
        throw BudgetError("pair scan over h(N,k)=" + h.get_str() + " progressions exceeds pair limit " +
                          std::to_string(pair_limit));

    const auto count = static_cast<std::size_t>(h.get_ui());
    const auto width = static_cast<std::size_t>(k);
    std::vector<std::int64_t> terms;
    terms.reserve(count * width);
    for_each_progression(N, k, [&](const Progression& p) {
        for (int j = 0; j < k; ++j) terms.push_back(p.term(j));
    });

    std::vector<std::uint64_t> tally(width, 0);
    for (std::size_t a = 0; a < count; ++a) {
        const std::int64_t* lhs = terms.data() + a * width;
        for (std::size_t b = a + 1; b < count; ++b) {
            const std::int64_t* rhs = terms.data() + b * width;
            // Disjoint spans share nothing.
            if (rhs[0] > lhs[width - 1] || lhs[0] > rhs[width - 1]) {
                ++tally[0];
                continue;
            }
            std::size_t i = 0, j = 0, shared = 0;
            while (i < width && j < width) {
                if (lhs[i] < rhs[j]) {
                    ++i;
                } else if (rhs[j] < lhs[i]) {
                    ++j;
                } else {
                    ++shared;
                    ++i;
                    ++j;
                }
            }
            ++tally[shared];
        }
    }

    PairIntersectionCounts out;
    out.total = h;
    out.counts.reserve(width);
    for (std::uint64_t t : tally) out.counts.emplace_back(static_cast<unsigned long>(t));
    return out;
}

std::vector<Rational> hi_upper_bounds(std::int64_t N, int k) {
    check_length(k);
    check_interval(N);
    const BigInt h = count_progressions(N, k);
    const BigInt kk = k;
    std::vector<Rational> out(static_cast<std::size_t>(k));
    out[0] = Rational(binomial(h, 2));
    if (k > 1) out[1] = Rational(h * kk * kk * BigInt(N));
    const BigInt pair_bound =
        binomial(BigInt(N), 2) * binomial(binomial(static_cast<std::uint64_t>(k), 2), 2);
    for (int j = 2; j < k; ++j) out[j] = Rational(pair_bound);
    return out;
}

}  // namespace rainbow
