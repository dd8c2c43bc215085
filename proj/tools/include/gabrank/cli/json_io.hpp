#pragma once

// JSON forms of the library types. Field names follow the published schemas
// in schemas/.

#include <json.hpp>

#include "gabrank/field.hpp"
#include "gabrank/linpoly.hpp"
#include "gabrank/rankcode.hpp"
#include "gabrank/replicate.hpp"
#include "gabrank/search.hpp"
#include "gabrank/table1.hpp"

namespace gabrank::io {

using nlohmann::json;

json to_json(const FieldSpec& spec);
/// Errors: ParseError.
FieldSpec field_spec_from_json(const json& j);

/// Exponent list, -1 for a zero coefficient.
json to_json(const LinPoly& f);
LinPoly linpoly_from_json(const FieldCtx& ctx, const json& j);

json to_json(const Code& code);
Code code_from_json(const FieldCtx& ctx, const json& j);

json to_json(std::span<const RankOneLine> lines);

struct SearchMeta {
    std::uint32_t q = 0, n = 0, k = 0, s = 1;
    bool timing = true;
};
json to_json(const SearchResult& r, const SearchMeta& meta);

json to_json(const ClaimResult& c);
json theorem_report(std::span<const ClaimResult> claims);

json to_json(const Table1Row& row);
json to_json(const RowReport& rep, bool timing = true);

}  // namespace gabrank::io
