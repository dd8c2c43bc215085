#include "gabrank/cli/json_io.hpp"

namespace gabrank::io {

json to_json(const FieldSpec& spec) {
    return {{"p", spec.p}, {"s", spec.s}, {"n", spec.n}, {"modulus", spec.modulus}};
}

FieldSpec field_spec_from_json(const json& j) {
    try {
        FieldSpec spec;
        spec.p = j.at("p").get<std::uint32_t>();
        spec.s = j.value("s", 1u);
        spec.n = j.at("n").get<std::uint32_t>();
        spec.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
        return spec;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("field spec: ") + e.what());
    }
}

json to_json(const LinPoly& f) {
    json out = json::array();
    for (Elem c : f.coeffs()) out.push_back(c.log());
    return out;
}

LinPoly linpoly_from_json(const FieldCtx& ctx, const json& j) {
    if (!j.is_array() || j.size() != ctx.n()) throw Error(ErrorCode::ParseError, "linearized polynomial needs n exponents");
    std::vector<Elem> c;
    for (const auto& e : j) {
        const auto v = e.get<std::int64_t>();
        if (v < -1 || v >= static_cast<std::int64_t>(ctx.order())) throw Error(ErrorCode::ParseError, "exponent out of range");
        c.push_back(v < 0 ? Elem::zero() : Elem::from_log(static_cast<std::int32_t>(v)));
    }
    return LinPoly(ctx, std::move(c));
}

json to_json(const Code& code) {
    json basis = json::array();
    for (const auto& f : code.basis) basis.push_back(to_json(f));
    return {{"field", to_json(code.ctx->spec())}, {"basis", basis}};
}

Code code_from_json(const FieldCtx& ctx, const json& j) {
    if (field_spec_from_json(j.at("field")) != ctx.spec()) throw Error(ErrorCode::CtxMismatch, "code over another field");
    std::vector<LinPoly> gens;
    for (const auto& g : j.at("basis")) gens.push_back(linpoly_from_json(ctx, g));
    return make_code(ctx, gens);
}

json to_json(std::span<const RankOneLine> lines) {
    json out = json::array();
    for (RankOneLine l : lines) out.push_back({l.i, l.j});
    return out;
}

json to_json(const SearchResult& r, const SearchMeta& meta) {
    json j{{"q", meta.q},
           {"n", meta.n},
           {"k", meta.k},
           {"s", meta.s},
           {"status", to_string(r.status)},
           {"trk_low", r.trkLow},
           {"trk_high", r.trkHigh}};
    if (r.status == SearchStatus::Exact) j["trk"] = r.trkLow;
    j["basis"] = to_json(r.basis);
    j["nodes"] = r.nodes;
    j["ms"] = meta.timing ? r.ms : 0.0;
    j["refuted_levels"] = r.refutedLevels;
    j["skipped_levels"] = r.skippedLevels;
    return j;
}

json to_json(const ClaimResult& c) {
    json j{{"claim_id", c.claimId}, {"q", c.q}, {"status", to_string(c.status)}, {"detail", c.detail}};
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    return j;
}

json theorem_report(std::span<const ClaimResult> claims) {
    json arr = json::array();
    bool ok = true;
    for (const auto& c : claims) {
        arr.push_back(to_json(c));
        ok = ok && c.status != ClaimStatus::Fail;
    }
    return {{"claims", arr}, {"all_pass", ok}};
}

json to_json(const Table1Row& row) {
    json pairs = json::array();
    for (const auto& [i, j] : row.pairs) pairs.push_back({i, j});
    return {{"n", row.n},
            {"k", row.k},
            {"q", row.q},
            {"s", row.s},
            {"trk_low", row.trkLow},
            {"trk_high", row.trkHigh},
            {"mtr", row.mtr},
            {"field", to_json(row.field)},
            {"polynomial", row.polynomial},
            {"basis", pairs}};
}

json to_json(const RowReport& rep, bool timing) {
    json j = to_json(*rep.row);
    j["pass"] = rep.ok();
    j["checks"] = {{"rank_one", rep.basis.rankOne},
                   {"independent", rep.basis.independent},
                   {"contains_code", rep.basis.containsCode},
                   {"exponents_in_range", rep.exponentsInRange},
                   {"size_matches", rep.sizeMatches},
                   {"mtr_matches", rep.mtrMatches}};
    j["kruskal_bound"] = rep.basis.kruskal;
    j["failures"] = rep.failures;
    j["ms"] = timing ? rep.ms : 0.0;
    return j;
}

}  // namespace gabrank::io
