#pragma once

// Exact ac(n, k) for small parameters: the least N admitting an n-colouring of
// [N] that covers every k-subset of [n].
//
// The solver colours positions left to right. Every progression is finalised
// when its last term is coloured, so the covered family is updated
// incrementally and a branch dies once the progressions still to be finalised
// cannot cover the subsets still missing. Colour classes are interchangeable,
// so by default colour c + 1 may first appear only after colour c.
//
// Oracle mode ignores all of that and walks every one of the n^N colourings.

#include "rainbow/coverage.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace rainbow {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000ULL;

struct SearchConfig {
    /// Ceiling on the N tried by ac_exact.
    std::optional<std::int64_t> max_N;
    std::uint64_t node_budget = kDefaultNodeBudget;
    bool symmetry_breaking = true;
    bool oracle_mode = false;
    int threads = 1;
};

enum class SearchStatus { Found, Absent, BudgetExceeded };

std::string to_string(SearchStatus status);

struct SearchOutcome {
    SearchStatus status = SearchStatus::Absent;
    std::optional<Coloring> coloring;
    /// Search-tree nodes (oracle mode: colourings examined).
    std::uint64_t nodes = 0;
};

SearchOutcome exists_cover(int n, int k, std::int64_t N, const SearchConfig& config = {});

struct AcResult {
    /// Found or BudgetExceeded; the latter also when max_N is reached.
    SearchStatus status = SearchStatus::BudgetExceeded;
    std::optional<std::int64_t> value;
    std::optional<Coloring> witness;
    std::uint64_t nodes_explored = 0;
    std::uint64_t lower_bound = 0;
    /// Largest N for which no covering colouring exists (all smaller N refuted too).
    std::int64_t refuted_up_to = 0;
};

AcResult ac_exact(int n, int k, const SearchConfig& config = {});

}  // namespace rainbow
