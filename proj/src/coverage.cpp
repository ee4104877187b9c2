#include "rainbow/coverage.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

namespace rainbow {

Coloring::Coloring(const std::vector<int>& colors, int n) : palette_(n) {
    if (n < 1 || n > kMaxColors)
        throw ParameterError("number of colours n must lie in [1, 64], got " + std::to_string(n));
    if (colors.empty()) throw ParameterError("colouring must have at least one position");
    cells_.reserve(colors.size());
    for (std::size_t p = 0; p < colors.size(); ++p) {
        const int c = colors[p];
        if (c < 1 || c > n)
            throw ParameterError("colour " + std::to_string(c) + " at position " + std::to_string(p + 1) +
                                 " outside [1, " + std::to_string(n) + "]");
        cells_.push_back(static_cast<std::uint8_t>(c - 1));
    }
}

std::vector<int> Coloring::colors() const {
    std::vector<int> out(cells_.size());
    std::transform(cells_.begin(), cells_.end(), out.begin(), [](std::uint8_t c) { return c + 1; });
    return out;
}

Coloring Coloring::prefix(std::int64_t len) const {
    if (len < 1 || len > length()) throw ParameterError("prefix length out of range");
    Coloring out;
    out.palette_ = palette_;
    out.cells_.assign(cells_.begin(), cells_.begin() + len);
    return out;
}

Coloring Coloring::with_palette(int n) const {
    if (n == palette_) return *this;
    return Coloring(colors(), n);
}

void Coloring::append(const Coloring& block) {
    if (cells_.empty()) {
        *this = block;
        return;
    }
    if (block.palette_ != palette_) throw ParameterError("cannot concatenate colourings with different palettes");
    cells_.insert(cells_.end(), block.cells_.begin(), block.cells_.end());
}

std::uint64_t family_size(int n, int k) {
    if (k < 2) throw ParameterError("subset size k must be at least 2, got " + std::to_string(k));
    if (k > n)
        throw ParameterError("subset size k=" + std::to_string(k) + " exceeds number of colours n=" +
                             std::to_string(n));
    if (n > kMaxColors) throw ParameterError("at most 64 colours are supported, got " + std::to_string(n));
    const std::uint64_t total = binomial_u64(n, k);
    if (total > kMaxFamilySize)
        throw ParameterError("C(" + std::to_string(n) + "," + std::to_string(k) + ") = " + std::to_string(total) +
                             " exceeds the 2^32 family-size limit");
    return total;
}

std::optional<ColorSet> rainbow_colors(const Coloring& coloring, const Progression& prog) {
    if (!prog.lies_within(coloring.length()))
        throw ParameterError("progression " + to_string(prog) + " does not lie in [1, " +
                             std::to_string(coloring.length()) + "]");
    const auto cells = coloring.cells();
    std::uint64_t mask = 0;
    for (int j = 0; j < prog.length; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << cells[static_cast<std::size_t>(prog.term(j) - 1)];
        if (mask & bit) return std::nullopt;
        mask |= bit;
    }
    return ColorSet{mask, subset_rank_unchecked(mask)};
}

namespace {

struct ScanResult {
    SubsetBits covered;
    std::map<std::uint64_t, Progression> witnesses;
};

// Scans progressions with diff in [d_lo, d_hi].
void scan_diffs(std::span<const std::uint8_t> cells, int k, std::int64_t d_lo, std::int64_t d_hi,
                bool record, ScanResult& out) {
    const auto N = static_cast<std::int64_t>(cells.size());
    const std::uint8_t* base = cells.data();
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
        const std::int64_t span = (k - 1) * d;
        for (std::int64_t a = 0; a + span < N; ++a) {
            std::uint64_t mask = 0;
            bool rainbow = true;
            for (std::int64_t pos = a; pos <= a + span; pos += d) {
                const std::uint64_t bit = std::uint64_t{1} << base[pos];
                if (mask & bit) {
                    rainbow = false;
                    break;
                }
                mask |= bit;
            }
            if (!rainbow) continue;
            const std::uint64_t rank = subset_rank_unchecked(mask);
            if (!out.covered.test_set(rank) && record) out.witnesses.emplace(rank, Progression{a + 1, d, k});
        }
    }
}

}  // namespace

CoverageReport covered_family(const Coloring& coloring, int k, const CoverageOptions& options) {
    const int n = coloring.palette();
    const std::uint64_t total = family_size(n, k);
    const std::int64_t N = coloring.length();
    if (N < 1) throw ParameterError("colouring must have at least one position");

    CoverageReport report;
    report.n = n;
    report.k = k;
    report.N = N;
    report.total = total;

    const std::int64_t max_diff = (N - 1) / (k - 1);
    const int threads = static_cast<int>(std::clamp<std::int64_t>(options.threads, 1, std::max<std::int64_t>(max_diff, 1)));

    if (threads <= 1) {
        ScanResult result{SubsetBits(total), {}};
        scan_diffs(coloring.cells(), k, 1, max_diff, options.record_witnesses, result);
        report.covered = std::move(result.covered);
        if (options.record_witnesses) report.witnesses = std::move(result.witnesses);
    } else {
        // Contiguous diff ranges holding roughly equal numbers of progressions,
        // so that merging in worker order preserves first-witness semantics.
        const std::int64_t progs = static_cast<std::int64_t>(count_progressions_u64(N, k));
        std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
        std::int64_t lo = 1, acc = 0;
        for (std::int64_t d = 1; d <= max_diff; ++d) {
            acc += N - (k - 1) * d;
            const auto w = static_cast<std::int64_t>(ranges.size());
            if (acc >= progs * (w + 1) / threads || d == max_diff) {
                ranges.emplace_back(lo, d);
                lo = d + 1;
            }
        }
        std::vector<ScanResult> results(ranges.size());
        {
            std::vector<std::jthread> workers;
            for (std::size_t w = 0; w < ranges.size(); ++w) {
                results[w].covered.resize(total);
                workers.emplace_back([&, w] {
                    scan_diffs(coloring.cells(), k, ranges[w].first, ranges[w].second, options.record_witnesses,
                               results[w]);
                });
            }
        }
        report.covered = std::move(results[0].covered);
        for (std::size_t w = 1; w < results.size(); ++w) report.covered |= results[w].covered;
        if (options.record_witnesses) {
            std::map<std::uint64_t, Progression> merged;
            for (auto& r : results) merged.merge(r.witnesses);
            report.witnesses = std::move(merged);
        }
    }
    report.covered_count = report.covered.count();
    return report;
}

VerifyResult verify_cover(const Coloring& coloring, int n, int k, const CoverageOptions& options) {
    const Coloring view = coloring.with_palette(n);
    VerifyResult result;
    result.report = covered_family(view, k, options);
    result.complete = result.report.covered_count == result.report.total;
    for (std::uint64_t r = 0; r < result.report.total; ++r) {
        if (!result.report.covered.test(r)) result.uncovered.push_back(ColorSet::from_rank(r, n, k));
    }
    return result;
}

std::optional<Progression> witness(const Coloring& coloring, const ColorSet& target, int k) {
    if (target.size() != k)
        throw ParameterError("target colour set has " + std::to_string(target.size()) + " colours, expected k=" +
                             std::to_string(k));
    family_size(coloring.palette(), k);
    const auto cells = coloring.cells();
    const std::int64_t N = coloring.length();
    for (std::int64_t d = 1; 1 + (k - 1) * d <= N; ++d) {
        for (std::int64_t a = 1; a + (k - 1) * d <= N; ++a) {
            std::uint64_t mask = 0;
            int j = 0;
            for (; j < k; ++j) {
                const std::uint64_t bit = std::uint64_t{1} << cells[static_cast<std::size_t>(a - 1 + j * d)];
                if ((mask & bit) || !(target.mask & bit)) break;
                mask |= bit;
            }
            if (j == k) return Progression{a, d, k};
        }
    }
    return std::nullopt;
}

ColoringParseError::ColoringParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Coloring parse_coloring(std::string_view text, int n) {
    if (n < 1 || n > kMaxColors)
        throw ParameterError("number of colours n must lie in [1, 64], got " + std::to_string(n));
    std::vector<int> colors;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            column = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            ++column;
            ++i;
        } else if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else {
            const std::size_t begin = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') ++i;
            const std::string_view token = text.substr(begin, i - begin);
            int value = 0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size())
                throw ColoringParseError("expected an integer colour, got '" + std::string(token) + "'", line, column);
            if (value < 1 || value > n)
                throw ColoringParseError("colour " + std::string(token) + " outside [1, " + std::to_string(n) + "]",
                                         line, column);
            colors.push_back(value);
            column += static_cast<int>(token.size());
        }
    }
    if (colors.empty()) throw ColoringParseError("no colours found", line, column);
    return Coloring(colors, n);
}

Coloring read_coloring_file(const std::string& path, int n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ColoringParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coloring(buf.str(), n);
}

std::string format_coloring(const Coloring& coloring, const std::vector<std::string>& header) {
    std::string out;
    for (const auto& h : header) out += "# " + h + "\n";
    const auto cells = coloring.cells();
    for (std::size_t p = 0; p < cells.size(); ++p) {
        if (p) out += ' ';
        out += std::to_string(cells[p] + 1);
    }
    out += '\n';
    return out;
}

}  // namespace rainbow
