#pragma once

// The reference table of tensor ranks of G_{k,1}, embedded as JSON, and the
// re-verification of each listed basis.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gabrank/field.hpp"
#include "gabrank/search.hpp"

namespace gabrank {

struct Table1Row {
    std::uint32_t n = 0, k = 0, q = 0, s = 1;
    std::uint32_t trkLow = 0, trkHigh = 0;
    /// "yes", "no" or "unknown".
    std::string mtr;
    FieldSpec field;
    std::string polynomial;
    /// Exponent pairs exactly as listed (not reduced).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

/// The embedded rows. Errors: ParseError if the resource is malformed.
const std::vector<Table1Row>& table1_rows();
/// Dataset version of the embedded resource.
int table1_version();
std::vector<Table1Row> parse_table1(std::string_view json);

struct RowReport {
    const Table1Row* row = nullptr;
    BasisReport basis;
    bool exponentsInRange = true;
    bool sizeMatches = true;
    bool mtrMatches = true;
    std::vector<std::string> failures;
    double ms = 0;
    bool ok() const noexcept { return failures.empty(); }
};

/// Builds the field from the row's modulus, G_{k,s}, and checks the basis.
RowReport verify_row(const Table1Row& row);
/// The listed pairs as canonical lines in the row's field.
std::vector<RankOneLine> row_lines(const FieldCtx& ctx, const Table1Row& row);
/// Row for (n, k, q) or nullptr.
const Table1Row* find_row(std::uint32_t n, std::uint32_t k, std::uint32_t q);

}  // namespace gabrank
