#include "rainbow/json_io.hpp"

namespace rainbow {

Json rational_json(const Rational& q) {
    return Json{{"numerator", q.get_num().get_str()},
                {"denominator", q.get_den().get_str()},
                {"decimal_30_digits", decimal_string(q, 30)}};
}

Json coloring_json(const Coloring& coloring) { return Json(coloring.colors()); }

Json progression_json(const Progression& p) {
    return Json{{"start", p.start}, {"diff", p.diff}, {"terms", p.terms()}};
}

Json verify_json(const VerifyResult& result) {
    const auto& r = result.report;
    Json out{{"n", r.n},
             {"k", r.k},
             {"N", r.N},
             {"complete", result.complete},
             {"covered_count", r.covered_count},
             {"total", r.total}};
    Json uncovered = Json::array();
    for (const auto& s : result.uncovered) uncovered.push_back(s.colors());
    out["uncovered"] = std::move(uncovered);
    if (r.witnesses) {
        Json w = Json::object();
        for (const auto& [rank, prog] : *r.witnesses) {
            Json entry = progression_json(prog);
            entry["colors"] = ColorSet::from_rank(rank, r.n, r.k).colors();
            w[std::to_string(rank)] = std::move(entry);
        }
        out["witnesses"] = std::move(w);
    }
    return out;
}

Json round_json(const RoundRecord& record) {
    return Json{{"round", record.round},
                {"family_before", record.family_before},
                {"family_after", record.family_after},
                {"block_coverage", record.block_coverage},
                {"samples", record.samples},
                {"chosen_sample", record.chosen_sample}};
}

Json construct_params_json(const ConstructParams& params) {
    return Json{{"alpha", params.alpha},
                {"samples_per_round", params.samples_per_round},
                {"max_rounds", params.max_rounds},
                {"seed", params.seed},
                {"rng", params.rng_name},
                {"log_base", to_string(params.log_base)},
                {"force", params.allow_low_alpha},
                {"threads", params.threads}};
}

Json construct_json(const ConstructTrace& trace, const Coloring* coloring, const std::vector<ColorSet>* residual) {
    Json rounds = Json::array();
    for (const auto& r : trace.rounds) rounds.push_back(round_json(r));
    Json out{{"n", trace.n},
             {"k", trace.k},
             {"params", construct_params_json(trace.params)},
             {"block_length", trace.block_length},
             {"planned_rounds", trace.planned_rounds},
             {"max_rounds", trace.max_rounds},
             {"rounds_used", trace.rounds_used},
             {"length", trace.final_length},
             {"certified", coloring != nullptr},
             {"trace", std::move(rounds)}};
    if (coloring) out["coloring"] = coloring_json(*coloring);
    if (residual) {
        Json res = Json::array();
        for (const auto& s : *residual) res.push_back(s.colors());
        out["residual"] = std::move(res);
    }
    return out;
}

Json estimate_json(const CoverEstimate& estimate) {
    return Json{{"p_hat", estimate.p_hat},
                {"std_err", estimate.std_err},
                {"trials", estimate.trials},
                {"hits", estimate.hits},
                {"seed", estimate.seed},
                {"rng", estimate.rng_name}};
}

Json bounds_json(const BoundsReport& report) {
    Json h_i = Json::array();
    for (const auto& v : report.h_i) h_i.push_back(rational_json(v));
    Json out{{"n", report.n},
             {"k", report.k},
             {"N", report.N},
             {"h", report.h.get_str()},
             {"pair_mode", to_string(report.pair_mode)},
             {"h_i_exact", report.pair_mode == PairMode::Exact},
             {"h_i", std::move(h_i)},
             {"L", rational_json(report.L)},
             {"L_float", report.L.get_d()},
             {"N_lower", report.N_lower},
             {"alpha", report.alpha},
             {"log_base", to_string(report.log_base)},
             {"block_length", report.block_length},
             {"rounds", report.rounds},
             {"construction_length", report.construction_length}};
    if (report.estimate) out["estimate"] = estimate_json(*report.estimate);
    return out;
}

Json pair_counts_json(const PairIntersectionCounts& counts, const std::vector<Rational>& bounds) {
    Json c = Json::array();
    for (const auto& v : counts.counts) c.push_back(v.get_str());
    Json b = Json::array();
    for (const auto& v : bounds) b.push_back(v.get_str());
    return Json{{"total", counts.total.get_str()}, {"counts", std::move(c)}, {"bounds", std::move(b)}};
}

Json ac_json(int n, int k, const AcResult& result) {
    Json out{{"n", n},
             {"k", k},
             {"status", to_string(result.status)},
             {"ac", result.value ? Json(*result.value) : Json(nullptr)},
             {"witness", result.witness ? coloring_json(*result.witness) : Json(nullptr)},
             {"nodes_explored", result.nodes_explored},
             {"lower_bound", result.lower_bound},
             {"refuted_up_to", result.refuted_up_to},
             {"source", "computed by exhaustive search"}};
    return out;
}

Json exists_json(int n, int k, std::int64_t N, const SearchOutcome& outcome) {
    return Json{{"n", n},
                {"k", k},
                {"N", N},
                {"status", to_string(outcome.status)},
                {"witness", outcome.coloring ? coloring_json(*outcome.coloring) : Json(nullptr)},
                {"nodes_explored", outcome.nodes}};
}

}  // namespace rainbow
