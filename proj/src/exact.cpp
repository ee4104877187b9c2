#include "rainbow/exact.hpp"

#include "rainbow/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace rainbow {

std::string to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Found: return "found";
        case SearchStatus::Absent: return "absent";
        case SearchStatus::BudgetExceeded: return "budget_exceeded";
    }
    return "absent";
}

namespace {

void check_params(int n, int k, std::int64_t N) {
    if (k < 2) throw ParameterError("subset size k must be at least 2, got " + std::to_string(k));
    if (k > n)
        throw ParameterError("subset size k=" + std::to_string(k) + " exceeds number of colours n=" +
                             std::to_string(n));
    if (N < 1) throw ParameterError("interval length N must be at least 1");
    if (N > std::numeric_limits<std::int32_t>::max()) throw ParameterError("interval length N too large");
    family_size(n, k);
}

// Shared between the workers of one exists_cover call.
struct SearchControl {
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> over_budget{false};
    // Lowest task index that found a cover; higher-indexed tasks may stop.
    std::atomic<std::size_t> best_task{std::numeric_limits<std::size_t>::max()};
};

enum class Step { Found, Exhausted, Aborted };

class Solver {
public:
    Solver(int n, int k, std::int64_t N, bool symmetry, SearchControl& control, std::size_t task)
        : n_(n),
          k_(k),
          N_(static_cast<int>(N)),
          symmetry_(symmetry),
          control_(control),
          task_(task),
          cells_(static_cast<std::size_t>(N), 0),
          cover_count_(family_size(n, k), 0),
          uncovered_(family_size(n, k)),
          color_uses_(static_cast<std::size_t>(n), 0),
          undo_(static_cast<std::size_t>(N)) {
        remaining_after_.assign(static_cast<std::size_t>(N), 0);
        // Progressions ending at p: one per diff d with p - (k - 1) d >= 0.
        for (int p = N_ - 2; p >= 0; --p)
            remaining_after_[p] = remaining_after_[p + 1] + (p + 1) / (k_ - 1);
    }

    /// Colour position p (all earlier positions coloured). False if the branch is dead.
    bool assign(int p, std::uint8_t c) {
        cells_[p] = c;
        if (color_uses_[c]++ == 0) ++distinct_;
        auto& undo = undo_[p];
        undo.clear();
        for (int d = 1; p - (k_ - 1) * d >= 0; ++d) {
            std::uint64_t mask = 0;
            bool rainbow = true;
            for (int pos = p - (k_ - 1) * d; pos <= p; pos += d) {
                const std::uint64_t bit = std::uint64_t{1} << cells_[pos];
                if (mask & bit) {
                    rainbow = false;
                    break;
                }
                mask |= bit;
            }
            if (!rainbow) continue;
            const std::uint64_t rank = subset_rank_unchecked(mask);
            if (cover_count_[rank]++ == 0) --uncovered_;
            undo.push_back(static_cast<std::uint32_t>(rank));
        }
        // Too few progressions left to cover the missing subsets.
        if (remaining_after_[p] < uncovered_) return false;
        // Every colour must appear somewhere.
        if (n_ - distinct_ > N_ - 1 - p) return false;
        return true;
    }

    void unassign(int p) {
        for (std::uint32_t rank : undo_[p])
            if (--cover_count_[rank] == 0) ++uncovered_;
        undo_[p].clear();
        if (--color_uses_[cells_[p]] == 0) --distinct_;
    }

    Step search(int p, int max_used) {
        if (p == N_) return uncovered_ == 0 ? Step::Found : Step::Exhausted;
        const int limit = symmetry_ ? std::min(n_, max_used + 2) : n_;
        for (int c = 0; c < limit; ++c) {
            if (!tick()) return Step::Aborted;
            if (assign(p, static_cast<std::uint8_t>(c))) {
                const Step s = search(p + 1, std::max(max_used, c));
                if (s != Step::Exhausted) return s;
            }
            unassign(p);
        }
        return Step::Exhausted;
    }

    [[nodiscard]] int max_used(int upto) const {
        int m = -1;
        for (int q = 0; q < upto; ++q) m = std::max(m, static_cast<int>(cells_[q]));
        return m;
    }

    [[nodiscard]] Coloring coloring() const {
        std::vector<int> colors(cells_.size());
        std::transform(cells_.begin(), cells_.end(), colors.begin(), [](std::uint8_t c) { return c + 1; });
        return Coloring(colors, n_);
    }

    void flush() {
        control_.nodes += pending_;
        pending_ = 0;
    }

private:
    bool tick() {
        ++pending_;
        if (pending_ < 1024 && control_.nodes.load(std::memory_order_relaxed) + pending_ <= control_.budget)
            return true;
        const std::uint64_t total = control_.nodes.fetch_add(pending_) + pending_;
        pending_ = 0;
        if (total > control_.budget) {
            control_.over_budget = true;
            return false;
        }
        return !control_.over_budget && control_.best_task.load() > task_;
    }

    int n_;
    int k_;
    int N_;
    bool symmetry_;
    SearchControl& control_;
    std::size_t task_;
    std::vector<std::uint8_t> cells_;
    std::vector<std::uint32_t> cover_count_;
    std::uint64_t uncovered_;
    std::vector<int> color_uses_;
    int distinct_ = 0;
    std::vector<std::uint64_t> remaining_after_;
    std::vector<std::vector<std::uint32_t>> undo_;
    std::uint64_t pending_ = 0;
};

// Lexicographically ordered colour prefixes of equal depth, used as parallel tasks.
std::vector<std::vector<std::uint8_t>> split_prefixes(int n, std::int64_t N, bool symmetry, std::size_t want) {
    std::vector<std::vector<std::uint8_t>> level{{}};
    std::int64_t depth = 0;
    while (level.size() < want && depth < N) {
        std::vector<std::vector<std::uint8_t>> next;
        for (const auto& prefix : level) {
            int limit = n;
            if (symmetry) {
                int m = -1;
                for (auto c : prefix) m = std::max(m, static_cast<int>(c));
                limit = std::min(n, m + 2);
            }
            for (int c = 0; c < limit; ++c) {
                auto extended = prefix;
                extended.push_back(static_cast<std::uint8_t>(c));
                next.push_back(std::move(extended));
            }
        }
        level = std::move(next);
        ++depth;
    }
    return level;
}

SearchOutcome pruned_search(int n, int k, std::int64_t N, const SearchConfig& config) {
    SearchControl control;
    control.budget = config.node_budget;
    SearchOutcome out;

    const int threads = std::max(1, config.threads);
    if (threads == 1) {
        Solver solver(n, k, N, config.symmetry_breaking, control, 0);
        const Step s = solver.search(0, -1);
        solver.flush();
        out.nodes = control.nodes;
        if (s == Step::Found) {
            out.status = SearchStatus::Found;
            out.coloring = solver.coloring();
        } else {
            out.status = s == Step::Aborted ? SearchStatus::BudgetExceeded : SearchStatus::Absent;
        }
        return out;
    }

    const auto prefixes = split_prefixes(n, N, config.symmetry_breaking, static_cast<std::size_t>(threads) * 8);
    std::vector<std::optional<Coloring>> found(prefixes.size());
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < prefixes.size(); i = next++) {
                    if (control.best_task.load() < i || control.over_budget) continue;
                    Solver solver(n, k, N, config.symmetry_breaking, control, i);
                    const auto& prefix = prefixes[i];
                    bool alive = true;
                    for (std::size_t p = 0; p < prefix.size() && alive; ++p)
                        alive = solver.assign(static_cast<int>(p), prefix[p]);
                    if (!alive) continue;
                    const auto depth = static_cast<int>(prefix.size());
                    const Step s = solver.search(depth, solver.max_used(depth));
                    solver.flush();
                    if (s == Step::Found) {
                        found[i] = solver.coloring();
                        std::size_t cur = control.best_task.load();
                        while (i < cur && !control.best_task.compare_exchange_weak(cur, i)) {
                        }
                    }
                }
            });
        }
    }
    out.nodes = control.nodes;
    const std::size_t best = control.best_task.load();
    if (best < prefixes.size()) {
        out.status = SearchStatus::Found;
        out.coloring = found[best];
    } else {
        out.status = control.over_budget ? SearchStatus::BudgetExceeded : SearchStatus::Absent;
    }
    return out;
}

// Walks all n^N colourings in odometer order with a fresh coverage count for each.
SearchOutcome oracle_search(int n, int k, std::int64_t N, const SearchConfig& config) {
    const std::uint64_t total = family_size(n, k);
    std::vector<std::int32_t> terms;
    for_each_progression(N, k, [&](const Progression& p) {
        for (int j = 0; j < k; ++j) terms.push_back(static_cast<std::int32_t>(p.term(j) - 1));
    });
    const std::size_t width = static_cast<std::size_t>(k);
    const std::size_t progs = terms.size() / width;

    SearchOutcome out;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(N), 0);
    std::vector<std::uint64_t> stamp(total, 0);
    std::uint64_t epoch = 0;
    while (true) {
        if (++out.nodes > config.node_budget) {
            out.status = SearchStatus::BudgetExceeded;
            return out;
        }
        ++epoch;
        std::uint64_t covered = 0;
        for (std::size_t p = 0; p < progs; ++p) {
            const std::int32_t* pos = terms.data() + p * width;
            std::uint64_t mask = 0;
            std::size_t j = 0;
            for (; j < width; ++j) {
                const std::uint64_t bit = std::uint64_t{1} << cells[pos[j]];
                if (mask & bit) break;
                mask |= bit;
            }
            if (j != width) continue;
            const std::uint64_t rank = subset_rank_unchecked(mask);
            if (stamp[rank] != epoch) {
                stamp[rank] = epoch;
                ++covered;
            }
        }
        if (covered == total) {
            std::vector<int> colors(cells.size());
            std::transform(cells.begin(), cells.end(), colors.begin(), [](std::uint8_t c) { return c + 1; });
            out.status = SearchStatus::Found;
            out.coloring = Coloring(colors, n);
            return out;
        }
        // Odometer increment, last position fastest.
        std::int64_t p = N - 1;
        while (p >= 0 && cells[p] == n - 1) cells[p--] = 0;
        if (p < 0) break;
        ++cells[p];
    }
    out.status = SearchStatus::Absent;
    return out;
}

}  // namespace

SearchOutcome exists_cover(int n, int k, std::int64_t N, const SearchConfig& config) {
    check_params(n, k, N);
    if (config.node_budget < 1) throw ParameterError("node budget must be at least 1");
    SearchOutcome out = config.oracle_mode ? oracle_search(n, k, N, config) : pruned_search(n, k, N, config);
    if (out.coloring && !verify_cover(*out.coloring, n, k).complete)
        throw std::logic_error("exact search returned a colouring that fails verification");
    return out;
}

AcResult ac_exact(int n, int k, const SearchConfig& config) {
    family_size(n, k);
    AcResult result;
    result.lower_bound = lower_bound_N(n, k);
    result.refuted_up_to = static_cast<std::int64_t>(result.lower_bound) - 1;
    for (auto N = static_cast<std::int64_t>(result.lower_bound);; ++N) {
        if (config.max_N && N > *config.max_N) {
            result.status = SearchStatus::BudgetExceeded;
            return result;
        }
        SearchConfig step = config;
        if (result.nodes_explored >= config.node_budget) {
            result.status = SearchStatus::BudgetExceeded;
            return result;
        }
        step.node_budget = config.node_budget - result.nodes_explored;
        const SearchOutcome outcome = exists_cover(n, k, N, step);
        result.nodes_explored += outcome.nodes;
        if (outcome.status == SearchStatus::BudgetExceeded) {
            result.status = SearchStatus::BudgetExceeded;
            return result;
        }
        if (outcome.status == SearchStatus::Found) {
            result.status = SearchStatus::Found;
            result.value = N;
            result.witness = outcome.coloring;
            return result;
        }
        result.refuted_up_to = N;
    }
}

}  // namespace rainbow
