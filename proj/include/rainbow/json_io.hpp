#pragma once

// JSON renderings of reports. Field names here are the published schemas in schemas/.

#include "rainbow/bounds.hpp"
#include "rainbow/construct.hpp"
#include "rainbow/coverage.hpp"
#include "rainbow/exact.hpp"

#include <json.hpp>

namespace rainbow {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);
Json coloring_json(const Coloring& coloring);
Json progression_json(const Progression& p);

/// {n, k, N, complete, covered_count, total, uncovered, witnesses?}
Json verify_json(const VerifyResult& result);

Json round_json(const RoundRecord& record);
Json construct_params_json(const ConstructParams& params);
Json construct_json(const ConstructTrace& trace, const Coloring* coloring, const std::vector<ColorSet>* residual);

Json estimate_json(const CoverEstimate& estimate);
Json bounds_json(const BoundsReport& report);

Json pair_counts_json(const PairIntersectionCounts& counts, const std::vector<Rational>& bounds);

Json ac_json(int n, int k, const AcResult& result);
Json exists_json(int n, int k, std::int64_t N, const SearchOutcome& outcome);

}  // namespace rainbow
