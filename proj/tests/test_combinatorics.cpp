#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rainbow/combinatorics.hpp"

#include <random>

using namespace rainbow;

namespace {

std::vector<oracle::Terms> as_terms(const std::vector<Progression>& ps) {
    std::vector<oracle::Terms> out;
    for (const auto& p : ps) {
        oracle::Terms t;
        for (auto x : p.terms()) t.push_back(static_cast<long>(x));
        out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("enumerate_progressions small cases") {
    const auto five = enumerate_progressions(5, 3);
    const std::vector<Progression> expected{{1, 1, 3}, {2, 1, 3}, {3, 1, 3}, {1, 2, 3}};
    CHECK(five == expected);
    CHECK(enumerate_progressions(3, 4).empty());
    CHECK(enumerate_progressions(12, 3).size() == 30);
}

TEST_CASE("enumeration matches brute force scan exactly, in order") {
    for (long N = 1; N <= 25; ++N) {
        for (int k = 2; k <= 5; ++k) {
            auto ours = as_terms(enumerate_progressions(N, k));
            auto ref = oracle::progressions(N, k);
            // The scan order of the oracle is also diff-major, start-minor.
            REQUIRE(ours == ref);
        }
    }
}

TEST_CASE("count_progressions closed form") {
    CHECK(count_progressions(5, 3) == 4);
    CHECK(count_progressions(12, 3) == 30);
    for (int k = 2; k <= 10; ++k) CHECK(count_progressions(k - 1, k) == 0);
    for (long N = 1; N <= 60; ++N)
        for (int k = 2; k <= 6; ++k)
            CHECK(count_progressions(N, k) == static_cast<unsigned long>(oracle::progressions(N, k).size()));
}

TEST_CASE("count_progressions stays exact at large N") {
    // k = 2: h = C(N, 2).
    const std::int64_t N = 1'000'000'000;
    CHECK(count_progressions(N, 2) == BigInt("499999999500000000"));
    // h(N,3) = D N - D (D + 1), D = floor((N - 1) / 2).
    const BigInt D = (N - 1) / 2;
    CHECK(count_progressions(N, 3) == D * N - D * (D + 1));
}

TEST_CASE("h(N,k) (2k-2) / N^2 tends to one") {
    for (std::int64_t N : {1000, 10000, 100000}) {
        const double ratio = count_progressions(N, 3).get_d() * 4.0 / (static_cast<double>(N) * N);
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(enumerate_progressions(5, 1), ParameterError);
    CHECK_THROWS_AS(enumerate_progressions(0, 3), ParameterError);
    CHECK_THROWS_AS(count_progressions(5, 1), ParameterError);
    CHECK_THROWS_AS(count_intersecting_pairs(5, 0), ParameterError);
    CHECK_THROWS_AS(hi_upper_bounds(-1, 3), ParameterError);
}

TEST_CASE("count_intersecting_pairs against set intersection oracle") {
    SUBCASE("N=5, k=3") {
        const auto pc = count_intersecting_pairs(5, 3);
        CHECK(pc.total == 4);
        REQUIRE(pc.counts.size() == 3);
        CHECK(pc.counts[0] == 0);
        CHECK(pc.counts[1] == 2);
        CHECK(pc.counts[2] == 4);
    }
    SUBCASE("N=12, k=3") {
        const auto pc = count_intersecting_pairs(12, 3);
        CHECK(pc.counts[0] == 167);
        CHECK(pc.counts[1] == 226);
        CHECK(pc.counts[2] == 42);
        CHECK(pc.counts[0] + pc.counts[1] + pc.counts[2] == 435);
    }
    SUBCASE("single progression has no pairs") {
        for (int k = 2; k <= 6; ++k) {
            const auto pc = count_intersecting_pairs(k, k);
            CHECK(pc.total == 1);
            for (const auto& c : pc.counts) CHECK(c == 0);
        }
    }
    SUBCASE("grid") {
        for (long N = 1; N <= 22; ++N) {
            for (int k = 2; k <= 5; ++k) {
                const auto pc = count_intersecting_pairs(N, k);
                const auto ref = oracle::pair_counts(N, k);
                CHECK(ref[static_cast<std::size_t>(k)] == 0);
                for (int i = 0; i < k; ++i) CHECK(pc.counts[i] == static_cast<unsigned long>(ref[i]));
            }
        }
    }
}

TEST_CASE("pair budget guard") {
    CHECK_THROWS_AS(count_intersecting_pairs(100, 3, 100), BudgetError);
    CHECK_NOTHROW(count_intersecting_pairs(5, 3, 16));
}

TEST_CASE("hi_upper_bounds displayed values and dominance") {
    const auto b = hi_upper_bounds(12, 3);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == 435);
    CHECK(b[1] == 3240);
    CHECK(b[2] == 198);
    for (long N = 1; N <= 40; ++N) {
        for (int k = 3; k <= 5; ++k) {
            const auto pc = count_intersecting_pairs(N, k);
            const auto bounds = hi_upper_bounds(N, k);
            BigInt sum = 0;
            for (int i = 0; i < k; ++i) {
                sum += pc.counts[i];
                CHECK(Rational(pc.counts[i]) <= bounds[i]);
            }
            CHECK(sum == binomial(pc.total, 2));
        }
    }
}

TEST_CASE("binomial and factorial") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
    CHECK(factorial(21) == BigInt("51090942171709440000"));
    CHECK(binomial_u64(64, 32) == 1832624140942590534ULL);
    CHECK(binomial_u64(4, 7) == 0);
}

TEST_CASE("colex rank extremes") {
    for (int n = 2; n <= 16; ++n) {
        for (int k = 1; k <= n; ++k) {
            const std::uint64_t low = (std::uint64_t{1} << k) - 1;
            const std::uint64_t high = low << (n - k);
            CHECK(subset_rank(low, n, k) == 0);
            CHECK(subset_rank(high, n, k) == binomial_u64(n, k) - 1);
        }
    }
}

TEST_CASE("rank and unrank are inverse bijections for n <= 16") {
    for (int n = 1; n <= 16; ++n) {
        for (int k = 0; k <= n; ++k) {
            const std::uint64_t total = binomial_u64(n, k);
            std::uint64_t prev_mask = 0;
            for (std::uint64_t r = 0; r < total; ++r) {
                const std::uint64_t mask = subset_unrank(r, n, k);
                REQUIRE(std::popcount(mask) == k);
                REQUIRE(subset_rank(mask, n, k) == r);
                // Colex: the largest element, then the next, decides order; as integers masks increase.
                if (r > 0) REQUIRE(mask > prev_mask);
                prev_mask = mask;
            }
        }
    }
}

TEST_CASE("rank of every 3-subset of [8] round-trips") {
    int seen = 0;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        if (std::popcount(mask) != 3) continue;
        ++seen;
        const auto s = ColorSet::from_mask(mask, 8, 3);
        CHECK(ColorSet::from_rank(s.rank, 8, 3) == s);
    }
    CHECK(seen == 56);
}

TEST_CASE("rank formula on explicit sets") {
    // {1,2,4} -> C(0,1) + C(1,2) + C(3,3) = 1
    CHECK(ColorSet::from_colors({1, 2, 4}, 6).rank == 1);
    // {2,5,6} -> C(1,1) + C(4,2) + C(5,3) = 1 + 6 + 10 = 17
    CHECK(ColorSet::from_colors({6, 2, 5}, 6).rank == 17);
    CHECK(ColorSet::from_rank(17, 6, 3).colors() == std::vector<int>{2, 5, 6});
}

TEST_CASE("random masks round trip at n = 64") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const int k = static_cast<int>(gen() % 10) + 1;
        std::uint64_t mask = 0;
        while (std::popcount(mask) < k) mask |= std::uint64_t{1} << (gen() % 64);
        CHECK(subset_unrank(subset_rank(mask, 64, k), 64, k) == mask);
    }
}

TEST_CASE("rank parameter errors") {
    CHECK_THROWS_AS(subset_rank(0b111, 5, 2), ParameterError);
    CHECK_THROWS_AS(subset_rank(0b100000, 5, 1), ParameterError);
    CHECK_THROWS_AS(subset_unrank(10, 5, 3), ParameterError);
    CHECK_THROWS_AS(ColorSet::from_colors({1, 1, 2}, 4), ParameterError);
    CHECK_THROWS_AS(ColorSet::from_colors({1, 5}, 4), ParameterError);
}
