#include "gabrank/table1.hpp"

#include <chrono>

#include <json.hpp>

#include "gabrank/rankcode.hpp"

namespace gabrank {

namespace detail {
extern const char* const kTable1Json;
}

namespace {

using nlohmann::json;

Table1Row row_from_json(const json& j) {
    Table1Row r;
    r.n = j.at("n").get<std::uint32_t>();
    r.k = j.at("k").get<std::uint32_t>();
    r.q = j.at("q").get<std::uint32_t>();
    r.s = j.value("s", 1u);
    const auto& tr = j.at("tr");
    r.trkLow = tr.at(0).get<std::uint32_t>();
    r.trkHigh = tr.at(1).get<std::uint32_t>();
    r.mtr = j.at("mtr").get<std::string>();
    if (r.mtr != "yes" && r.mtr != "no" && r.mtr != "unknown") {
        throw Error(ErrorCode::ParseError, "mtr must be yes, no or unknown");
    }
    const auto& f = j.at("field");
    r.field.p = f.at("p").get<std::uint32_t>();
    r.field.s = f.at("s").get<std::uint32_t>();
    r.field.n = f.at("n").get<std::uint32_t>();
    r.field.modulus = f.at("modulus").get<std::vector<std::uint32_t>>();
    r.polynomial = j.value("polynomial", std::string{});
    for (const auto& p : j.at("basis")) r.pairs.emplace_back(p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>());
    return r;
}

}  // namespace

std::vector<Table1Row> parse_table1(std::string_view text) {
    try {
        const json doc = json::parse(text);
        std::vector<Table1Row> rows;
        for (const auto& j : doc.at("rows")) rows.push_back(row_from_json(j));
        return rows;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("table resource: ") + e.what());
    }
}

const std::vector<Table1Row>& table1_rows() {
    static const std::vector<Table1Row> rows = parse_table1(detail::kTable1Json);
    return rows;
}

int table1_version() {
    static const int v = json::parse(detail::kTable1Json).at("version").get<int>();
    return v;
}

const Table1Row* find_row(std::uint32_t n, std::uint32_t k, std::uint32_t q) {
    for (const auto& r : table1_rows()) {
        if (r.n == n && r.k == k && r.q == q) return &r;
    }
    return nullptr;
}

std::vector<RankOneLine> row_lines(const FieldCtx& ctx, const Table1Row& row) {
    std::vector<RankOneLine> out;
    out.reserve(row.pairs.size());
    for (const auto& [i, j] : row.pairs) out.push_back(canonical_line(ctx, i, j));
    return out;
}

RowReport verify_row(const Table1Row& row) {
    const auto t0 = std::chrono::steady_clock::now();
    RowReport rep;
    rep.row = &row;
    const FieldHandle f = build_field(row.field);
    const FieldCtx& ctx = *f;
    for (const auto& [i, j] : row.pairs) {
        if (i >= ctx.order() || j >= ctx.order()) rep.exponentsInRange = false;
    }
    const Code code = gabidulin(ctx, row.k, row.s);
    const auto lines = row_lines(ctx, row);
    rep.basis = verify_perfect_basis(code, lines);
    rep.failures = rep.basis.failures;
    if (!rep.exponentsInRange) rep.failures.push_back("exponent outside [0, q^n - 2]");
    rep.sizeMatches = lines.size() == row.trkHigh;
    if (!rep.sizeMatches) rep.failures.push_back("basis size differs from the listed rank");
    const bool attains = lines.size() == rep.basis.kruskal;
    if (row.mtr == "yes") {
        rep.mtrMatches = attains;
    } else if (row.mtr == "no") {
        rep.mtrMatches = !attains;
    } else {
        // an unknown flag is only consistent with a basis above the bound
        rep.mtrMatches = lines.size() > rep.basis.kruskal;
    }
    if (!rep.mtrMatches) rep.failures.push_back("MTR flag disagrees with h + d - 1 = " + std::to_string(rep.basis.kruskal));
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace gabrank
