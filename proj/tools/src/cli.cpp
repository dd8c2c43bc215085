#include "gabrank/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "gabrank/cli/json_io.hpp"

namespace gabrank::cli {

namespace {

using io::json;

// Levels whose estimated enumeration work exceeds this are skipped unless
// --deep is given.
constexpr long double kDefaultLevelWork = 4294967296.0L;

struct Common {
    bool json = false;
    bool noTiming = false;
    std::string out;
};

struct CodeArgs {
    std::uint32_t q = 0, n = 0, k = 1, s = 1;
    std::string modulus;
};

void add_common(CLI::App* app, Common& c) {
    app->add_flag("--json", c.json, "Emit JSON");
    app->add_flag("--no-timing", c.noTiming, "Report 0 for all timings (byte-identical output)");
    app->add_option("--out", c.out, "Write the report to FILE instead of stdout");
}

void add_code_args(CLI::App* app, CodeArgs& a, bool needK) {
    app->add_option("--q", a.q, "Subfield size (prime power)")->required();
    app->add_option("--n", a.n, "Extension degree")->required();
    if (needK) app->add_option("--k", a.k, "Gabidulin dimension over F_{q^n}")->required();
    app->add_option("--s", a.s, "Frobenius step of G_{k,s}")->capture_default_str();
    app->add_option("--modulus", a.modulus, "Modulus over F_p, digits highest degree first (comma list for p > 10)");
}

FieldSpec resolve_spec(const CodeArgs& a, const Table1Row* row) {
    const auto [p, s] = prime_power(a.q);
    if (!a.modulus.empty()) {
        return parse_field_spec("p=" + std::to_string(p) + " s=" + std::to_string(s) + " n=" + std::to_string(a.n) +
                                " mod=" + a.modulus);
    }
    // table rows are stated in their own modulus, so use it to keep the
    // listed basis meaningful
    if (row) return row->field;
    return default_field_spec(a.q, a.n);
}

const Table1Row* table_row_for(const CodeArgs& a) {
    return a.s == 1 ? find_row(a.n, a.k, a.q) : nullptr;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw Error(ErrorCode::BadParameters, "cannot open --out file '" + c.out + "'");
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string lines_text(std::span<const RankOneLine> lines) {
    std::ostringstream s;
    for (std::size_t i = 0; i < lines.size(); ++i) s << (i ? "," : "") << "(" << lines[i].i << "," << lines[i].j << ")";
    return s.str();
}

int exit_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::BudgetExceeded:
        case ErrorCode::Timeout: return kBudget;
        case ErrorCode::ParseError:
        case ErrorCode::ReducibleModulus:
        case ErrorCode::NotPrimitiveRoot:
        case ErrorCode::BadParameters:
        case ErrorCode::NeedsBiggerField:
        case ErrorCode::ZeroParameter:
        case ErrorCode::BadLambda:
        case ErrorCode::BadZ: return kUsage;
        default: return kVerificationFailure;
    }
}

// ---- field-info

int cmd_field_info(const CodeArgs& a, const Common& c, std::ostream& out) {
    const FieldHandle f = build_field(resolve_spec(a, nullptr));
    const FieldCtx& ctx = *f;
    json fq = json::array();
    for (Elem e : ctx.fq_elements()) fq.push_back(e.log());
    const json j{{"field", io::to_json(ctx.spec())},
                 {"polynomial", modulus_polynomial(ctx.spec())},
                 {"q", ctx.q()},
                 {"size", ctx.size()},
                 {"fq_gen_exp", ctx.fq_gen_exp()},
                 {"fq_elements", fq},
                 {"trace_eta", ctx.trace(ctx.eta()).log()}};
    if (c.json) {
        emit(c, out, dump(j));
    } else {
        std::ostringstream s;
        s << "F_" << ctx.size() << " over F_" << ctx.q() << " (n = " << ctx.n() << ")\n"
          << "modulus     " << modulus_polynomial(ctx.spec()) << " [" << modulus_digits(ctx.spec()) << "]\n"
          << "F_q^* step  eta^" << ctx.fq_gen_exp() << "\n";
        emit(c, out, s.str());
    }
    return kOk;
}

// ---- trk

struct TrkArgs {
    int tMax = -1;
    std::uint64_t budget = kDefaultElementBudget;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    bool deep = false;
    double timeLimit = 0;
    std::uint64_t fallbackTrials = 2000;
};

int cmd_trk(const CodeArgs& a, const TrkArgs& t, const Common& c, std::ostream& out) {
    const Table1Row* row = table_row_for(a);
    const FieldHandle f = build_field(resolve_spec(a, row));
    const FieldCtx& ctx = *f;
    const Code code = gabidulin(ctx, a.k, a.s);

    SearchConfig cfg;
    cfg.tMax = t.tMax;
    cfg.elementBudget = t.budget;
    cfg.threads = std::max(1u, t.threads);
    cfg.seed = t.seed;
    cfg.maxLevelWork = t.deep ? 0 : kDefaultLevelWork;
    cfg.timeLimit = t.timeLimit;
    std::string upperSource = "none";
    bool tableBasisValid = false;
    if (row && row->field == ctx.spec()) {
        cfg.knownUpperBasis = row_lines(ctx, *row);
        tableBasisValid = verify_perfect_basis(code, cfg.knownUpperBasis, t.budget).ok();
    }
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult r = exact_tensor_rank(code, cfg);
    if (!r.basis.empty()) upperSource = tableBasisValid && r.basis == cfg.knownUpperBasis ? "table" : "search";

    // A skipped level leaves a gap; random completion usually closes the
    // upper end quickly.
    if (r.status != SearchStatus::Exact && !r.skippedLevels.empty()) {
        for (std::uint32_t R = r.trkHigh; R-- > r.trkLow;) {
            const SearchResult rr = random_upper_bound(code, R, t.fallbackTrials, t.seed);
            r.nodes += rr.nodes;
            if (rr.basis.empty()) break;
            r.trkHigh = rr.trkHigh;
            r.basis = rr.basis;
            upperSource = "random";
        }
        r.status = r.trkLow == r.trkHigh ? SearchStatus::Exact
                   : r.basis.empty()     ? SearchStatus::LowerBoundOnly
                                         : SearchStatus::Interval;
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::string note;
    if (a.n == 4 && a.k == 2 && a.s == 1 && a.q >= 3 && r.status != SearchStatus::Exact) {
        note = "theorem: trk(G_{2,1}) = 11 in L_{4,q} for every q >= 3; pass --deep to certify the lower bound by search";
    }
    if (c.json) {
        json j = io::to_json(r, {a.q, a.n, a.k, a.s, !c.noTiming});
        j["field"] = io::to_json(ctx.spec());
        j["code"] = io::to_json(code);
        j["upper_source"] = upperSource;
        if (!note.empty()) j["note"] = note;
        emit(c, out, dump(j));
    } else {
        std::ostringstream s;
        s << "G_{" << a.k << "," << a.s << "} in L_{" << a.n << "," << a.q << "}  modulus " << modulus_polynomial(ctx.spec())
          << "\n";
        if (r.status == SearchStatus::Exact) {
            s << "trk = " << r.trkLow << " (Exact)\n";
        } else {
            s << "trk in [" << r.trkLow << ", " << r.trkHigh << "] (" << to_string(r.status) << ")\n";
        }
        if (!r.basis.empty()) s << "basis (" << upperSource << "): " << lines_text(r.basis) << "\n";
        if (!note.empty()) s << note << "\n";
        s << "nodes " << r.nodes << ", " << std::fixed << std::setprecision(1) << (c.noTiming ? 0.0 : r.ms) << " ms\n";
        emit(c, out, s.str());
    }
    return kOk;
}

// ---- search-random

int cmd_search_random(const CodeArgs& a, int R, std::uint64_t trials, std::uint64_t seed, const std::string& strategy,
                      const Common& c, std::ostream& out) {
    const Table1Row* row = table_row_for(a);
    const FieldHandle f = build_field(resolve_spec(a, row));
    const FieldCtx& ctx = *f;
    const Code code = gabidulin(ctx, a.k, a.s);
    if (R < 0) {
        if (!row) throw Error(ErrorCode::BadParameters, "--r is required when the code has no reference row");
        R = static_cast<int>(row->trkHigh);
    }
    const RandomStrategy st = strategy == "plain" ? RandomStrategy::Plain : RandomStrategy::Completion;
    SearchResult r = random_upper_bound(code, static_cast<std::uint32_t>(R), trials, seed, st);
    const bool found = !r.basis.empty();
    if (c.json) {
        json j = io::to_json(r, {a.q, a.n, a.k, a.s, !c.noTiming});
        j["target"] = R;
        j["trials"] = trials;
        j["strategy"] = strategy;
        emit(c, out, dump(j));
    } else {
        std::ostringstream s;
        s << "target R = " << R << ": " << (found ? "found" : "not found") << " after " << r.nodes << " trials\n";
        if (found) s << "basis: " << lines_text(r.basis) << "\n";
        emit(c, out, s.str());
    }
    return found ? kOk : kVerificationFailure;
}

// ---- verify-table

int cmd_verify_table(const Common& c, std::ostream& out) {
    std::vector<RowReport> reps;
    for (const auto& row : table1_rows()) reps.push_back(verify_row(row));
    const bool ok = std::all_of(reps.begin(), reps.end(), [](const RowReport& r) { return r.ok(); });
    if (c.json) {
        json rows = json::array();
        for (const auto& r : reps) rows.push_back(io::to_json(r, !c.noTiming));
        emit(c, out, dump({{"version", table1_version()}, {"rows", rows}, {"all_pass", ok}}));
    } else {
        std::ostringstream s;
        s << std::left << std::setw(3) << "n" << std::setw(3) << "k" << std::setw(3) << "q" << std::setw(8) << "TR"
          << std::setw(9) << "MTR" << std::setw(20) << "MinPol" << "result\n";
        for (const auto& r : reps) {
            const Table1Row& row = *r.row;
            const std::string tr = row.trkLow == row.trkHigh
                                       ? std::to_string(row.trkHigh)
                                       : "{" + std::to_string(row.trkLow) + "," + std::to_string(row.trkHigh) + "}";
            s << std::setw(3) << row.n << std::setw(3) << row.k << std::setw(3) << row.q << std::setw(8) << tr << std::setw(9)
              << row.mtr << std::setw(20) << row.polynomial << (r.ok() ? "pass" : "FAIL");
            for (const auto& f : r.failures) s << "; " << f;
            s << "\n";
        }
        emit(c, out, s.str());
    }
    return ok ? kOk : kVerificationFailure;
}

// ---- verify-theorems

int cmd_verify_theorems(const std::vector<std::uint32_t>& qs, const TheoremOptions& opt, const Common& c,
                        std::ostream& out) {
    std::vector<ClaimResult> all;
    for (std::uint32_t q : qs) {
        prime_power(q);
        auto part = verify_theorems(q, opt);
        all.insert(all.end(), part.begin(), part.end());
    }
    const bool ok = std::none_of(all.begin(), all.end(), [](const ClaimResult& r) { return r.status == ClaimStatus::Fail; });
    if (c.json) {
        emit(c, out, dump(io::theorem_report(all)));
    } else {
        std::ostringstream s;
        for (const auto& r : all) {
            s << "q=" << std::setw(3) << std::left << r.q << std::setw(30) << r.claimId << std::setw(8) << to_string(r.status)
              << r.detail;
            if (r.counterexample) s << " | counterexample: " << *r.counterexample;
            s << "\n";
        }
        emit(c, out, s.str());
    }
    return ok ? kOk : kVerificationFailure;
}

// ---- bench

int cmd_bench(const Common& c, std::ostream& out) {
    using Clock = std::chrono::steady_clock;
    json results = json::array();
    auto time = [&](const std::string& name, auto&& fn) {
        const auto t0 = Clock::now();
        fn();
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        results.push_back({{"name", name}, {"ms", c.noTiming ? 0.0 : ms}});
    };
    time("build_field q=11 n=4", [] { build_field(default_field_spec(11, 4)); });
    time("trk G_{2,1} in L_{4,2}", [] {
        const FieldHandle f = build_field(default_field_spec(2, 4));
        exact_tensor_rank(gabidulin(*f, 2, 1));
    });
    time("trk G_{2,1} in L_{4,3}", [] {
        const FieldHandle f = build_field(default_field_spec(3, 4));
        exact_tensor_rank(gabidulin(*f, 2, 1));
    });
    time("sistemone q=4", [] {
        const FieldHandle f = build_field(default_field_spec(4, 4));
        check_sistemone(*f);
    });
    time("verify-table", [] {
        for (const auto& row : table1_rows()) verify_row(row);
    });
    if (c.json) {
        emit(c, out, dump({{"benchmarks", results}}));
    } else {
        std::ostringstream s;
        for (const auto& r : results) {
            s << std::left << std::setw(28) << r["name"].get<std::string>() << std::right << std::fixed << std::setprecision(1)
              << std::setw(10) << r["ms"].get<double>() << " ms\n";
        }
        emit(c, out, s.str());
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tensor rank of Gabidulin codes: search, certification and reproduction"};
    app.name("gabrank");
    app.require_subcommand(1);

    Common common;
    CodeArgs code;
    TrkArgs trk;
    TheoremOptions thm;
    std::vector<std::uint32_t> thmQ;
    int randomR = -1;
    std::uint64_t randomTrials = 1'000'000, randomSeed = 1;
    std::string strategy = "completion";

    auto* fieldInfo = app.add_subcommand("field-info", "Describe F_{q^n} and its subfield F_q");
    fieldInfo->add_option("--q", code.q, "Subfield size (prime power)")->required();
    fieldInfo->add_option("--n", code.n, "Extension degree")->required();
    fieldInfo->add_option("--modulus", code.modulus, "Modulus over F_p, highest degree first");
    add_common(fieldInfo, common);

    auto* trkCmd = app.add_subcommand("trk", "Tensor rank of G_{k,s} in L_{n,q}");
    add_code_args(trkCmd, code, true);
    trkCmd->add_option("--t-max", trk.tMax, "Largest extension size tried (default n^2 - h)");
    trkCmd->add_option("--budget", trk.budget, "Element budget per enumeration")->capture_default_str();
    trkCmd->add_option("--threads", trk.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
    trkCmd->add_option("--seed", trk.seed, "Seed for the random fallback")->capture_default_str();
    trkCmd->add_flag("--deep", trk.deep, "Run every refutation level regardless of estimated cost");
    trkCmd->add_option("--time-limit", trk.timeLimit, "Seconds before giving up (exit 3)");
    trkCmd->add_option("--fallback-trials", trk.fallbackTrials, "Random trials per bound when a level is skipped")
        ->capture_default_str();
    add_common(trkCmd, common);

    auto* randCmd = app.add_subcommand("search-random", "Random search for a spanning set of R lines");
    add_code_args(randCmd, code, true);
    randCmd->add_option("--r", randomR, "Target size (default: the reference table bound)");
    randCmd->add_option("--trials", randomTrials, "Number of random trials")->capture_default_str();
    randCmd->add_option("--seed", randomSeed, "Random seed")->capture_default_str();
    randCmd->add_option("--strategy", strategy, "plain or completion")
        ->capture_default_str()
        ->check(CLI::IsMember({"plain", "completion"}));
    add_common(randCmd, common);

    auto* tableCmd = app.add_subcommand("verify-table", "Re-verify every row of the embedded reference table");
    add_common(tableCmd, common);

    auto* thmCmd = app.add_subcommand("verify-theorems", "Numeric certification of the structural claims at given q");
    thmCmd->add_option("--q", thmQ, "Field size(s), n = 4")->required();
    thmCmd->add_option("--seed", thm.seed, "Random seed")->capture_default_str();
    thmCmd->add_option("--instances", thm.instances, "Random instances per class")->capture_default_str();
    thmCmd->add_option("--quartic-params", thm.quarticParams, "Random parameter sets for the quartic")->capture_default_str();
    thmCmd->add_option("--exhaustive-limit", thm.exhaustiveLimit, "Enumerate all (Y, Z) up to this many pairs")
        ->capture_default_str();
    thmCmd->add_option("--samples", thm.samples, "Random (Y, Z) pairs beyond the limit")->capture_default_str();
    add_common(thmCmd, common);

    auto* benchCmd = app.add_subcommand("bench", "Time representative workloads");
    add_common(benchCmd, common);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*fieldInfo) return cmd_field_info(code, common, out);
        if (*trkCmd) return cmd_trk(code, trk, common, out);
        if (*randCmd) return cmd_search_random(code, randomR, randomTrials, randomSeed, strategy, common, out);
        if (*tableCmd) return cmd_verify_table(common, out);
        if (*thmCmd) return cmd_verify_theorems(thmQ, thm, common, out);
        if (*benchCmd) return cmd_bench(common, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e.code());
    }
    return kUsage;
}

}  // namespace gabrank::cli
