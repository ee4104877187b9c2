// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/construct.hpp"
#include "rainbow/coverage.hpp"
#include "rainbow/exact.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace rainbow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %d. %s (%.2f s) %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
                out.detail.str().c_str());
    std::fflush(stdout);
}

std::string set_str(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

// Exact ac values established by criterion 7, reused by criterion 8.
std::map<std::pair<int, int>, std::int64_t> exact_values;

}  // namespace

int main() {
    criterion(1, "count_progressions equals brute force, N <= 60, k = 2..6", [](Outcome& out) {
        const auto t0 = Clock::now();
        int checked = 0;
        for (long N = 1; N <= 60; ++N)
            for (int k = 2; k <= 6; ++k, ++checked)
                out.require(count_progressions(N, k) == static_cast<unsigned long>(oracle::progressions(N, k).size()),
                            "N=" + std::to_string(N) + " k=" + std::to_string(k));
        const double t = seconds_since(t0);
        out.require(t < 5.0, "took longer than 5 s");
        out.detail << checked << " cases";
    });

    criterion(2, "pair counts sum to C(h,2) and respect h_i bounds, N <= 40, k = 3..5", [](Outcome& out) {
        const auto t0 = Clock::now();
        int checked = 0;
        for (long N = 1; N <= 40; ++N) {
            for (int k = 3; k <= 5; ++k, ++checked) {
                const std::string tag = "N=" + std::to_string(N) + " k=" + std::to_string(k);
                const auto pc = count_intersecting_pairs(N, k);
                const auto bounds = hi_upper_bounds(N, k);
                const auto ref = oracle::pair_counts(N, k);
                BigInt sum = 0;
                for (int i = 0; i < k; ++i) {
                    sum += pc.counts[i];
                    out.require(Rational(pc.counts[i]) <= bounds[i], tag + " bound i=" + std::to_string(i));
                    out.require(pc.counts[i] == static_cast<unsigned long>(ref[i]), tag + " oracle i=" + std::to_string(i));
                }
                out.require(sum == binomial(pc.total, 2), tag + " identity");
                out.require(pc.total == count_progressions(N, k), tag + " total");
            }
        }
        out.require(seconds_since(t0) < 60.0, "took longer than 60 s");
        out.detail << checked << " cases";
    });

    criterion(3, "12-term example colouring with n = 6, k = 3", [](Outcome& out) {
        const std::vector<int> f{4, 6, 5, 1, 3, 4, 2, 5, 6, 3, 1, 4};
        const Coloring coloring(f, 6);
        struct Highlight {
            std::vector<std::int64_t> positions;
            std::vector<int> colors;
        };
        const std::vector<Highlight> highlights{
            {{4, 7, 10}, {1, 2, 3}}, {{1, 3, 5}, {3, 4, 5}}, {{1, 5, 9}, {3, 4, 6}}, {{7, 8, 9}, {2, 5, 6}}};
        for (const auto& h : highlights) {
            const Progression p{h.positions[0], h.positions[1] - h.positions[0], 3};
            out.require(p.terms() == h.positions, "positions are not a 3-progression");
            out.require(p.lies_within(coloring.length()), "progression outside [12]");
            std::uint64_t mask = 0;
            for (auto pos : h.positions) mask |= std::uint64_t{1} << (coloring.at(pos) - 1);
            out.require(std::popcount(mask) == 3, "not rainbow at " + to_string(p));
            out.require(ColorSet::from_mask(mask, 6, 3) == ColorSet::from_colors(h.colors, 6),
                        "wrong colour set at " + to_string(p));
        }
        const auto v = verify_cover(coloring, 6, 3);
        const bool oracle_full = oracle::covers_all(f, 6, 3);
        out.require(v.complete == oracle_full, "verifier and oracle disagree on full coverage");
        out.require(v.report.covered_count == oracle::covered(f, 3).size(), "covered count disagrees with oracle");
        out.detail << "4/4 highlighted progressions confirmed; full coverage: verifier " << v.report.covered_count
                   << "/" << v.report.total << (v.complete ? " complete" : " incomplete") << ", oracle "
                   << (oracle_full ? "complete" : "incomplete") << "; length of f is " << f.size()
                   << " (stated interval is [14])";
    });

    criterion(4, "p_hat + 3 SE >= exact-pair Bonferroni bound at N = block_length, 1e4 trials", [](Outcome& out) {
        const auto t0 = Clock::now();
        int checked = 0;
        double worst_margin = 1e9;
        auto check = [&](int n, int k) {
            const auto N = static_cast<std::int64_t>(block_length(n, k));
            const double L = bonferroni_lower_bound(n, k, N, PairMode::Exact).get_d();
            const auto est = estimate_cover_probability(n, k, N, 10000, 4000 + 100 * k + n);
            const double margin = est.p_hat + 3 * est.std_err - L;
            worst_margin = std::min(worst_margin, margin);
            out.require(margin >= 0, "n=" + std::to_string(n) + " k=" + std::to_string(k));
            ++checked;
        };
        for (int n = 6; n <= 20; ++n) check(n, 2);
        for (int n = 6; n <= 14; ++n) check(n, 3);
        out.require(seconds_since(t0) < 300.0, "took longer than 5 min");
        out.detail << checked << " cases, smallest margin " << worst_margin;
    });

    criterion(5, "k = 2 estimate matches the closed form within 3 sigma at 1e5 trials", [](Outcome& out) {
        const std::uint64_t trials = 100000;
        double worst = 0;
        for (int n = 3; n <= 10; ++n) {
            for (long N : {static_cast<long>(n), 2L * n}) {
                const double p = oracle::pair_cover_probability(n, N);
                const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
                const auto est = estimate_cover_probability(n, 2, N, trials, 5000 + 100 * n + N);
                const double z = std::abs(est.p_hat - p) / sigma;
                worst = std::max(worst, z);
                out.require(z <= 3.0, "n=" + std::to_string(n) + " N=" + std::to_string(N));
            }
        }
        out.detail << "16 cases, largest |z| " << worst;
    });

    std::map<std::pair<int, int>, std::int64_t> construct_lengths;
    auto construct_length = [&](int n, int k) {
        const auto key = std::pair{n, k};
        if (!construct_lengths.count(key)) {
            ConstructParams params;
            params.seed = 42;
            construct_lengths[key] = construct_cover(n, k, params).coloring.length();
        }
        return construct_lengths[key];
    };

    criterion(6, "construct_cover certificates, seed 42, within 4 rounds(n,k,2) blocks", [&](Outcome& out) {
        for (auto [n, k] : {std::pair{8, 3}, {10, 3}, {12, 3}, {8, 4}}) {
            const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
            const auto t0 = Clock::now();
            ConstructParams params;
            params.seed = 42;
            const auto result = construct_cover(n, k, params);
            const double t = seconds_since(t0);
            out.require(verify_cover(result.coloring, n, k).complete, tag + " not a cover");
            out.require(oracle::covers_all(result.coloring.colors(), n, k), tag + " oracle rejects");
            out.require(result.trace.rounds_used <= static_cast<int>(4 * rounds(n, k, 2.0)), tag + " too many rounds");
            out.require(t < 60.0, tag + " took longer than 60 s");
            construct_lengths[{n, k}] = result.coloring.length();
            out.detail << tag << ": " << result.trace.rounds_used << "/" << 4 * rounds(n, k, 2.0) << " blocks, N="
                       << result.coloring.length() << "; ";
        }
    });

    criterion(7, "exact solver against known values and the exhaustive oracle", [](Outcome& out) {
        const auto t0 = Clock::now();
        auto record = [&](int n, int k, const AcResult& r) {
            out.require(r.status == SearchStatus::Found, "ac(" + std::to_string(n) + "," + std::to_string(k) + ") not found");
            if (r.value) {
                out.require(verify_cover(*r.witness, n, k).complete, "witness rejected");
                out.require(oracle::covers_all(r.witness->colors(), n, k), "witness rejected by oracle");
                exact_values[{n, k}] = *r.value;
            }
        };
        for (int n = 2; n <= 6; ++n) {
            const auto r = ac_exact(n, 2);
            record(n, 2, r);
            out.require(r.value == n, "ac(" + std::to_string(n) + ",2) != n");
        }
        const auto three = ac_exact(3, 3);
        record(3, 3, three);
        out.require(three.value == 3, "ac(3,3) != 3");

        const auto fast = ac_exact(4, 3);
        SearchConfig oracle_cfg;
        oracle_cfg.oracle_mode = true;
        oracle_cfg.threads = 1;
        const auto slow = ac_exact(4, 3, oracle_cfg);
        record(4, 3, fast);
        out.require(slow.status == SearchStatus::Found && fast.value == slow.value, "ac(4,3) disagrees with oracle mode");
        const auto brute_5 = oracle::brute_force_cover(4, 3, 5);
        const auto brute_6 = oracle::brute_force_cover(4, 3, 6);
        out.require(!brute_5 && brute_6, "independent enumeration does not give ac(4,3) = 6");
        out.require(fast.value == 6, "ac(4,3) != 6");

        out.require(exists_cover(4, 3, 5).status == SearchStatus::Absent, "exists_cover(4,3,5) not absent");
        out.require(exists_cover(4, 3, 5, oracle_cfg).status == SearchStatus::Absent, "oracle mode finds (4,3,5)");
        out.require(seconds_since(t0) < 600.0, "took longer than 10 min");
        out.detail << "ac(4,3) = " << fast.value.value_or(-1) << " (oracle mode " << slow.value.value_or(-1)
                   << ", witness " << (fast.witness ? set_str(fast.witness->colors()) : "none") << ")";
    });

    criterion(8, "lower_bound_N <= ac <= construct_cover length", [&](Outcome& out) {
        out.require(!exact_values.empty(), "no exact values from criterion 7");
        for (const auto& [key, ac] : exact_values) {
            const auto [n, k] = key;
            const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
            const auto lower = static_cast<std::int64_t>(lower_bound_N(n, k));
            const auto upper = construct_length(n, k);
            out.require(lower <= ac, tag + " lower bound exceeds ac");
            out.require(ac <= upper, tag + " construction shorter than ac");
            out.detail << tag << ": " << lower << " <= " << ac << " <= " << upper << "; ";
        }
    });

    criterion(9, "scaling of lower and upper bounds for k = 3, n = 10..30", [](Outcome& out) {
        double lo = 1e9, hi = 0;
        std::vector<double> xs, ys;
        for (int n = 10; n <= 30; ++n) {
            const double lower = static_cast<double>(lower_bound_N(n, 3));
            const double ratio = lower / std::sqrt(4.0 * binomial(static_cast<std::uint64_t>(n), 3).get_d());
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            out.require(ratio >= 0.8 && ratio <= 1.2, "ratio out of range at n=" + std::to_string(n));
            const double upper = static_cast<double>(upper_bound_length(n, 3, 2.0));
            xs.push_back(std::log(std::log(static_cast<double>(n))));
            ys.push_back(std::log(upper / lower));
        }
        // Least-squares slope of ln(upper/lower) against ln(ln n).
        const double m = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        out.require(slope >= 0.5 && slope <= 1.5, "fitted exponent outside [0.5, 1.5]");
        out.detail << "lower/sqrt(4 C(n,3)) in [" << lo << ", " << hi << "], fitted exponent " << slope;
    });

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
