#pragma once

// Colourings of [N] and the set of k-subsets of colours they cover.

#include "rainbow/combinatorics.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

/// An n-colouring of [N]. Colours are 1-based at the interface and stored 0-based.
class Coloring {
public:
    Coloring() = default;
    /// Throws ParameterError unless every colour lies in [1, n] and the sequence is non-empty.
    Coloring(const std::vector<int>& colors, int n);

    [[nodiscard]] int palette() const { return palette_; }
    [[nodiscard]] std::int64_t length() const { return static_cast<std::int64_t>(cells_.size()); }
    /// Colour of 1-based position p.
    [[nodiscard]] int at(std::int64_t p) const { return cells_[static_cast<std::size_t>(p - 1)] + 1; }
    [[nodiscard]] std::vector<int> colors() const;
    /// 0-based colours, one per position.
    [[nodiscard]] std::span<const std::uint8_t> cells() const { return cells_; }

    [[nodiscard]] Coloring prefix(std::int64_t len) const;
    [[nodiscard]] Coloring with_palette(int n) const;
    void append(const Coloring& block);

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<std::uint8_t> cells_;
    int palette_ = 0;
};

using SubsetBits = boost::dynamic_bitset<std::uint64_t>;

/// Upper bound on C(n, k) for which a covered bit-vector is allocated.
inline constexpr std::uint64_t kMaxFamilySize = std::uint64_t{1} << 32;

/// C(n, k) after checking 2 <= k <= n <= 64 and the family-size guard.
std::uint64_t family_size(int n, int k);

struct CoverageOptions {
    bool record_witnesses = false;
    int threads = 1;
};

struct CoverageReport {
    int n = 0;
    int k = 0;
    std::int64_t N = 0;
    /// Bit r is set iff the subset of colex rank r is covered.
    SubsetBits covered;
    std::uint64_t covered_count = 0;
    std::uint64_t total = 0;
    /// First progression in enumeration order realising each covered subset (opt-in).
    std::optional<std::map<std::uint64_t, Progression>> witnesses;

    [[nodiscard]] bool is_covered(const ColorSet& s) const { return covered.test(s.rank); }
};

struct VerifyResult {
    bool complete = false;
    /// Uncovered subsets in colex order.
    std::vector<ColorSet> uncovered;
    CoverageReport report;
};

/// The colour set of prog when its k colours are pairwise distinct.
std::optional<ColorSet> rainbow_colors(const Coloring& coloring, const Progression& prog);

CoverageReport covered_family(const Coloring& coloring, int k, const CoverageOptions& options = {});

/// Coverage under palette n; throws ParameterError if the colouring uses a colour above n.
VerifyResult verify_cover(const Coloring& coloring, int n, int k, const CoverageOptions& options = {});

std::optional<Progression> witness(const Coloring& coloring, const ColorSet& target, int k);

// Text format: whitespace-separated integers in [1, n]; '#' starts a comment running
// to the end of the line.

class ColoringParseError : public std::runtime_error {
public:
    ColoringParseError(const std::string& what, int line, int column);
    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

private:
    int line_;
    int column_;
};

Coloring parse_coloring(std::string_view text, int n);
Coloring read_coloring_file(const std::string& path, int n);

/// Header lines are written as "# <line>" ahead of the colour row.
std::string format_coloring(const Coloring& coloring, const std::vector<std::string>& header = {});

}  // namespace rainbow
