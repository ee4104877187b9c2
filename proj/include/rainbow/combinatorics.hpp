#pragma once

// Arithmetic progressions in [N] = {1, ..., N}, their exact counts and
// pairwise intersection statistics, plus k-subset ranking in colex order.

#include <gmpxx.h>

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised for any out-of-domain argument (k < 2, k > n, bad mask, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed a caller-supplied work limit.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest palette supported by the bitmask representation of colour sets.
inline constexpr int kMaxColors = 64;

/// The set {start, start + diff, ..., start + (length - 1) * diff}.
struct Progression {
    std::int64_t start = 1;
    std::int64_t diff = 1;
    int length = 2;

    [[nodiscard]] std::int64_t term(int j) const { return start + j * diff; }
    [[nodiscard]] std::int64_t last() const { return term(length - 1); }
    [[nodiscard]] bool lies_within(std::int64_t N) const {
        return start >= 1 && diff >= 1 && length >= 2 && last() <= N;
    }
    [[nodiscard]] bool contains(std::int64_t x) const {
        return x >= start && x <= last() && (x - start) % diff == 0;
    }
    [[nodiscard]] std::vector<std::int64_t> terms() const;

    friend bool operator==(const Progression&, const Progression&) = default;
};

std::string to_string(const Progression& p);

namespace detail {

struct BinomialTable {
    std::array<std::array<std::uint64_t, kMaxColors + 1>, kMaxColors + 1> c{};
    constexpr BinomialTable() {
        for (int n = 0; n <= kMaxColors; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
        }
    }
};

inline constexpr BinomialTable kBinomials{};

}  // namespace detail

/// C(n, k) for 0 <= n <= 64; zero when k < 0 or k > n.
constexpr std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return detail::kBinomials.c[n][k];
}

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt binomial(const BigInt& n, std::uint64_t k);
BigInt factorial(std::uint64_t n);

/// Colex rank of a k-subset S = {c_1 < ... < c_k} of [n]:
/// sum over j of C(c_j - 1, j). Bit (c - 1) of the mask stands for colour c.
std::uint64_t subset_rank(std::uint64_t mask, int n, int k);
std::uint64_t subset_unrank(std::uint64_t rank, int n, int k);

/// Unchecked colex rank, for inner loops where popcount(mask) is known.
inline std::uint64_t subset_rank_unchecked(std::uint64_t mask) {
    std::uint64_t rank = 0;
    int j = 1;
    while (mask != 0) {
        const int bit = std::countr_zero(mask);
        rank += binomial_u64(bit, j);
        ++j;
        mask &= mask - 1;
    }
    return rank;
}

/// A k-subset of colours together with its colex rank.
struct ColorSet {
    std::uint64_t mask = 0;
    std::uint64_t rank = 0;

    static ColorSet from_mask(std::uint64_t mask, int n, int k);
    static ColorSet from_rank(std::uint64_t rank, int n, int k);
    static ColorSet from_colors(const std::vector<int>& colors, int n);

    [[nodiscard]] int size() const { return std::popcount(mask); }
    [[nodiscard]] bool contains(int color) const {
        return color >= 1 && color <= kMaxColors && ((mask >> (color - 1)) & 1U) != 0;
    }
    /// Colours in ascending order, 1-based.
    [[nodiscard]] std::vector<int> colors() const;

    friend bool operator==(const ColorSet&, const ColorSet&) = default;
};

/// Every k-progression in [N], ordered by ascending diff and then ascending start.
std::vector<Progression> enumerate_progressions(std::int64_t N, int k);

/// Calls fn(progression) for each k-progression in [N], in enumeration order.
template <typename Fn>
void for_each_progression(std::int64_t N, int k, Fn&& fn) {
    if (k < 2) throw ParameterError("progression length k must be at least 2");
    if (N < 1) throw ParameterError("interval length N must be at least 1");
    for (std::int64_t d = 1; 1 + (k - 1) * d <= N; ++d) {
        for (std::int64_t a = 1; a + (k - 1) * d <= N; ++a) fn(Progression{a, d, k});
    }
}

/// h(N, k): number of k-progressions in [N], in closed form.
BigInt count_progressions(std::int64_t N, int k);

/// h(N, k) as a machine integer; throws BudgetError if it does not fit.
std::uint64_t count_progressions_u64(std::int64_t N, int k);

struct PairIntersectionCounts {
    /// counts[i] = number of unordered pairs of distinct k-progressions sharing i elements.
    std::vector<BigInt> counts;
    BigInt total;
};

inline constexpr std::uint64_t kDefaultPairLimit = 20'000'000'000ULL;

/// Exact h_i(N, k) by a full pair scan. Throws BudgetError when h(N, k)^2 > pair_limit.
PairIntersectionCounts count_intersecting_pairs(std::int64_t N, int k,
                                                std::uint64_t pair_limit = kDefaultPairLimit);

/// Upper bounds on h_i(N, k): C(h, 2) for i = 0, h k^2 N for i = 1 and
/// C(N, 2) C(C(k, 2), 2) for i >= 2.
std::vector<Rational> hi_upper_bounds(std::int64_t N, int k);

}  // namespace rainbow
