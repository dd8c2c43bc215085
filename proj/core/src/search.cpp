#include "gabrank/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

namespace gabrank {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool is_nonzero(std::span<const std::uint8_t> v) {
    return std::any_of(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
}

// rank(m) == 1 for an n x n matrix: nonzero and every 2x2 minor through the
// first nonzero entry vanishes.
bool is_rank_one(const Subfield& fq, std::span<const std::uint8_t> m, std::size_t n) {
    std::size_t r0 = n, c0 = n;
    for (std::size_t k = 0; k < n * n; ++k) {
        if (m[k]) {
            r0 = k / n;
            c0 = k % n;
            break;
        }
    }
    if (r0 == n) return false;
    const std::uint8_t p = m[r0 * n + c0];
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (fq.mul(m[r * n + c], p) != fq.mul(m[r * n + c0], m[r0 * n + c])) return false;
        }
    }
    return true;
}

long double binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    long double r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    return r;
}

// Fills `out` with the lines in the span of the residuals of `gens` (plus the
// lines inside the code) and returns false when the residuals are dependent.
bool collect_lines(const LineIndex& index, std::span<const std::uint32_t> gens, std::vector<std::uint32_t>& out) {
    const Subfield& fq = index.code().space.fq();
    const std::size_t m = gens.empty() ? 0 : index.residual(gens[0]).size();
    EchelonSpace W(fq, m);
    for (std::uint32_t g : gens) {
        if (!W.insert(index.residual(g))) return false;
    }
    out.assign(index.inside().begin(), index.inside().end());
    const std::size_t t = W.dim();
    if (t == 0) return true;
    const std::uint32_t q = fq.size();
    // RREF rows with leading coefficient 1 give normalized vectors directly.
    std::vector<std::uint8_t> coef(t, 0);
    FqVector v(m);
    for (std::size_t lead = 0; lead < t; ++lead) {
        const std::size_t free = t - lead - 1;
        std::uint64_t combos = 1;
        for (std::size_t k = 0; k < free; ++k) combos *= q;
        for (std::uint64_t c = 0; c < combos; ++c) {
            std::uint64_t x = c;
            std::copy(W.rows()[lead].begin(), W.rows()[lead].end(), v.begin());
            for (std::size_t r = lead + 1; r < t; ++r) {
                const auto a = static_cast<std::uint8_t>(x % q);
                x /= q;
                if (a == 0) continue;
                const FqVector& row = W.rows()[r];
                for (std::size_t k = 0; k < m; ++k) {
                    if (row[k]) v[k] = fq.add(v[k], fq.mul(a, row[k]));
                }
            }
            const auto b = index.bucket(v);
            out.insert(out.end(), b.begin(), b.end());
        }
    }
    return true;
}

// Extracts `target` independent lines from `cands`; false when they span less.
bool span_reaches(const LineIndex& index, std::span<const std::uint32_t> cands, std::size_t target,
                  std::vector<RankOneLine>* basis) {
    if (cands.size() < target) return false;
    const Code& code = index.code();
    EchelonSpace S(code.space.fq(), code.space.length());
    std::vector<RankOneLine> picked;
    for (std::uint32_t c : cands) {
        if (S.insert(index.vec(c))) {
            picked.push_back(index.lines()[c]);
            if (S.dim() == target) break;
        }
    }
    if (S.dim() != target) return false;
    if (basis) *basis = std::move(picked);
    return true;
}

}  // namespace

RankOneLine canonical_line(const FieldCtx& ctx, std::uint64_t i, std::uint64_t j) {
    const std::uint64_t g = ctx.fq_gen_exp();
    return {static_cast<std::uint32_t>(i % g), static_cast<std::uint32_t>(j % g)};
}

LinPoly line_poly(const FieldCtx& ctx, RankOneLine line) {
    return trace_poly(ctx, ctx.exp(line.i), ctx.exp(line.j));
}

std::optional<RankOneLine> line_of(const LinPoly& f) {
    const FieldCtx& ctx = f.ctx();
    if (lp_rank(f) != 1) return std::nullopt;
    if (ctx.n() == 1) return canonical_line(ctx, static_cast<std::uint64_t>(f[0].log()), 0);
    // f_0 = alpha*beta and f_1 = alpha*beta^q, so f_1/f_0 = beta^(q-1).
    const Elem r = ctx.div(f[1], f[0]);
    const std::uint64_t j = static_cast<std::uint64_t>(r.log()) / (ctx.q() - 1);
    const Elem alpha = ctx.div(f[0], ctx.exp(static_cast<std::int64_t>(j)));
    return canonical_line(ctx, static_cast<std::uint64_t>(alpha.log()), j);
}

std::vector<RankOneLine> all_rank_one_lines(const FieldCtx& ctx) {
    const std::uint32_t g = ctx.fq_gen_exp();
    std::vector<RankOneLine> out;
    out.reserve(std::size_t{g} * g);
    for (std::uint32_t i = 0; i < g; ++i) {
        for (std::uint32_t j = 0; j < g; ++j) out.push_back({i, j});
    }
    return out;
}

std::uint32_t kruskal_bound(const Code& code, std::uint64_t budget) {
    if (code.h == 0) return 0;
    return static_cast<std::uint32_t>(code.h) + min_distance(code, budget) - 1;
}

SpanResult rank_ones_spanning(const FieldCtx& ctx, const EchelonSpace& U, std::uint64_t budget, bool earlyExit) {
    const std::size_t n = ctx.n(), nn = n * n;
    long double total = 1;
    for (std::size_t i = 0; i < U.dim(); ++i) total *= ctx.q();
    if (total > static_cast<long double>(budget)) {
        throw Error(ErrorCode::BudgetExceeded, "q^dim U = " + std::to_string(static_cast<double>(total)) + " elements");
    }
    const Subfield& fq = ctx.fq();
    // Each vector carries coefficient coordinates followed by the evaluation matrix.
    std::vector<FqVector> vectors;
    for (const auto& row : U.rows()) {
        FqVector v(row);
        const FqVector m = eval_matrix(vec_to_lp(ctx, row));
        v.insert(v.end(), m.begin(), m.end());
        vectors.push_back(std::move(v));
    }
    SpanResult res;
    EchelonSpace span(fq, nn);
    gray_enumerate(fq, vectors, [&](std::span<const std::uint8_t>, std::span<const std::uint8_t> e) {
        ++res.visited;
        if (e.empty()) return false;
        if (is_rank_one(fq, e.subspan(nn, nn), n)) {
            FqVector coeffs(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nn));
            if (span.insert(coeffs)) res.witnesses.push_back(*line_of(vec_to_lp(ctx, coeffs)));
        }
        return !(earlyExit && span.dim() == U.dim());
    });
    res.spanDim = span.dim();
    return res;
}

SpanResult rank_ones_spanning_lines(const FieldCtx& ctx, const EchelonSpace& U) {
    SpanResult res;
    EchelonSpace span(ctx.fq(), U.length());
    for (RankOneLine l : all_rank_one_lines(ctx)) {
        ++res.visited;
        FqVector v = lp_to_vec(line_poly(ctx, l));
        if (U.contains(v) && span.insert(std::move(v))) res.witnesses.push_back(l);
    }
    res.spanDim = span.dim();
    return res;
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Exact: return "Exact";
        case SearchStatus::LowerBoundOnly: return "LowerBoundOnly";
        case SearchStatus::UpperBoundOnly: return "UpperBoundOnly";
        case SearchStatus::Interval: return "Interval";
    }
    return "?";
}

LineIndex::LineIndex(const Code& code, std::uint64_t maxLines) : code_(&code) {
    const FieldCtx& ctx = *code.ctx;
    const std::uint64_t count = std::uint64_t{ctx.fq_gen_exp()} * ctx.fq_gen_exp();
    if (count > maxLines) throw Error(ErrorCode::BudgetExceeded, std::to_string(count) + " rank-one lines");
    const Subfield& fq = code.space.fq();
    const std::size_t nn = code.space.length();
    std::vector<bool> pivot(nn, false);
    for (std::size_t p : code.space.pivots()) pivot[p] = true;
    const std::size_t m = nn - code.space.dim();
    if (std::pow(static_cast<long double>(fq.size()), static_cast<long double>(m)) > 1.8e19L) {
        throw Error(ErrorCode::BudgetExceeded, "residual keys do not fit in 64 bits");
    }
    lines_ = all_rank_one_lines(ctx);
    vecs_.reserve(lines_.size());
    res_.reserve(lines_.size());
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
    for (std::size_t idx = 0; idx < lines_.size(); ++idx) {
        FqVector v = lp_to_vec(line_poly(ctx, lines_[idx]));
        FqVector full = code.space.reduce(v);
        FqVector r;
        r.reserve(m);
        for (std::size_t k = 0; k < nn; ++k) {
            if (!pivot[k]) r.push_back(full[k]);
        }
        FqVector nr = r;
        if (normalize(nr)) {
            keyed.emplace_back(key(nr), static_cast<std::uint32_t>(idx));
        } else {
            inside_.push_back(static_cast<std::uint32_t>(idx));
        }
        vecs_.push_back(std::move(v));
        res_.push_back(std::move(r));
    }
    std::sort(keyed.begin(), keyed.end());
    order_.reserve(keyed.size());
    for (std::size_t k = 0; k < keyed.size(); ++k) {
        if (k == 0 || keyed[k].first != keyed[k - 1].first) {
            keys_.push_back(keyed[k].first);
            offsets_.push_back(static_cast<std::uint32_t>(k));
        }
        order_.push_back(keyed[k].second);
    }
    offsets_.push_back(static_cast<std::uint32_t>(keyed.size()));
}

bool LineIndex::normalize(FqVector& v) const {
    const Subfield& fq = code_->space.fq();
    const auto it = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
    if (it == v.end()) return false;
    if (*it != 1) {
        const std::uint8_t inv = fq.inv(*it);
        for (auto p = it; p != v.end(); ++p) *p = fq.mul(*p, inv);
    }
    return true;
}

std::uint64_t LineIndex::key(const FqVector& v) const {
    const std::uint64_t q = code_->space.fq().size();
    std::uint64_t k = 0;
    for (std::uint8_t x : v) k = k * q + x;
    return k;
}

std::span<const std::uint32_t> LineIndex::bucket(const FqVector& v) const {
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), key(v));
    if (it == keys_.end() || *it != key(v)) return {};
    const std::size_t b = static_cast<std::size_t>(it - keys_.begin());
    return {order_.data() + offsets_[b], order_.data() + offsets_[b + 1]};
}

bool check_extension(const LineIndex& index, std::span<const std::uint32_t> gens, std::vector<RankOneLine>* basis) {
    std::vector<std::uint32_t> cands;
    if (!collect_lines(index, gens, cands)) return false;
    return span_reaches(index, cands, index.code().h + gens.size(), basis);
}

bool check_extension(const Code& code, std::span<const RankOneLine> gens, std::uint64_t budget, CheckMethod method,
                     std::vector<RankOneLine>* basis) {
    const FieldCtx& ctx = *code.ctx;
    if (method == CheckMethod::Buckets) {
        LineIndex index(code, budget);
        std::vector<std::uint32_t> idx;
        for (RankOneLine l : gens) idx.push_back(static_cast<std::uint32_t>(line_index(ctx, canonical_line(ctx, l.i, l.j))));
        return check_extension(index, idx, basis);
    }
    EchelonSpace U = code.space;
    for (RankOneLine l : gens) {
        if (!U.insert(lp_to_vec(line_poly(ctx, l)))) return false;
    }
    const SpanResult r = rank_ones_spanning(ctx, U, budget);
    if (r.spanDim != U.dim()) return false;
    if (basis) *basis = r.witnesses;
    return true;
}

bool twist_stabilizes(const Code& code) {
    const FieldCtx& ctx = *code.ctx;
    for (const auto& f : code.basis) {
        if (!contains(code.space, lp_twist(f, ctx.eta(), ctx.one()))) return false;
        if (!contains(code.space, lp_twist(f, ctx.one(), ctx.eta()))) return false;
    }
    return true;
}

std::vector<RankOneLine> canonical_first_gens(const Code& code) {
    if (twist_stabilizes(code)) return {RankOneLine{0, 0}};
    return all_rank_one_lines(*code.ctx);
}

long double level_work(const Code& code, std::uint32_t t, bool symmetric) {
    const std::uint64_t L = std::uint64_t{code.ctx->fq_gen_exp()} * code.ctx->fq_gen_exp();
    long double cand = 1;
    if (t > 0) cand = symmetric ? binomial(L - 1, t - 1) : binomial(L, t);
    return cand * std::pow(static_cast<long double>(code.ctx->q()), static_cast<long double>(code.h + t));
}

namespace {

struct LevelOutcome {
    bool found = false;
    std::vector<RankOneLine> basis;
    std::uint64_t nodes = 0;
};

struct TaskResult {
    std::uint64_t nodes = 0;
    bool found = false;
    std::vector<RankOneLine> basis;
};

class LevelRunner {
   public:
    LevelRunner(const Code& code, const LineIndex* index, const SearchConfig& cfg, Clock::time_point t0)
        : code_(code), index_(index), cfg_(cfg), t0_(t0) {}

    LevelOutcome run(std::uint32_t t, const std::vector<std::uint32_t>& firstGens) {
        const std::size_t L = std::size_t{code_.ctx->fq_gen_exp()} * code_.ctx->fq_gen_exp();
        LevelOutcome out;
        if (t == 0) {
            out.nodes = 1;
            out.found = check({}, out.basis);
            return out;
        }
        // Tasks fix a prefix of the generator tuple; the rest is enumerated inside.
        std::vector<std::array<std::uint32_t, 2>> tasks;
        std::size_t prefix = 1;
        if (t >= 2 && firstGens.size() == 1) {
            prefix = 2;
            for (std::size_t b = firstGens[0] + 1; b < L; ++b) {
                tasks.push_back({firstGens[0], static_cast<std::uint32_t>(b)});
            }
        } else {
            for (std::uint32_t a : firstGens) tasks.push_back({a, 0});
        }
        std::vector<TaskResult> results(tasks.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
        std::atomic<bool> abort{false};
        std::exception_ptr error;
        std::mutex errorMu;

        auto worker = [&] {
            try {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= tasks.size() || k > best.load() || abort.load()) return;
                    TaskResult& tr = results[k];
                    std::vector<std::uint32_t> gens(tasks[k].begin(), tasks[k].begin() + static_cast<std::ptrdiff_t>(prefix));
                    gens.resize(t);
                    if (enumerate_rest(gens, prefix, L, tr, k, best, abort)) {
                        std::size_t cur = best.load();
                        while (k < cur && !best.compare_exchange_weak(cur, k)) {
                        }
                        return;
                    }
                }
            } catch (...) {
                std::lock_guard lock(errorMu);
                if (!error) error = std::current_exception();
                abort = true;
            }
        };
        const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg_.threads, static_cast<unsigned>(tasks.size())));
        {
            std::vector<std::jthread> pool;
            for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
            worker();
        }
        if (error) std::rethrow_exception(error);
        const std::size_t winner = best.load();
        const std::size_t last = std::min(winner, tasks.size() == 0 ? 0 : tasks.size() - 1);
        for (std::size_t k = 0; k < tasks.size() && k <= last; ++k) out.nodes += results[k].nodes;
        if (winner != std::numeric_limits<std::size_t>::max()) {
            out.found = true;
            out.basis = std::move(results[winner].basis);
        }
        return out;
    }

   private:
    bool check(std::span<const std::uint32_t> gens, std::vector<RankOneLine>& basis) const {
        if (cfg_.method == CheckMethod::Buckets) return check_extension(*index_, gens, &basis);
        std::vector<RankOneLine> lines;
        for (std::uint32_t g : gens) lines.push_back(all_lines()[g]);
        return check_extension(code_, lines, cfg_.elementBudget, CheckMethod::Enumerate, &basis);
    }

    const std::vector<RankOneLine>& all_lines() const {
        if (index_) return index_->lines();
        std::call_once(linesOnce_, [this] { lines_ = all_rank_one_lines(*code_.ctx); });
        return lines_;
    }

    // Enumerates gens[prefix..t) strictly increasing above gens[prefix-1].
    bool enumerate_rest(std::vector<std::uint32_t>& gens, std::size_t prefix, std::size_t L, TaskResult& tr,
                        std::size_t task, const std::atomic<std::size_t>& best, const std::atomic<bool>& abort) const {
        const std::size_t t = gens.size();
        const std::size_t r = t - prefix;
        if (r == 0) {
            ++tr.nodes;
            tr.found = check(gens, tr.basis);
            return tr.found;
        }
        std::size_t start = gens[prefix - 1] + 1;
        if (start + r > L) return false;
        for (std::size_t k = 0; k < r; ++k) gens[prefix + k] = static_cast<std::uint32_t>(start + k);
        for (;;) {
            ++tr.nodes;
            if (check(gens, tr.basis)) {
                tr.found = true;
                return true;
            }
            if ((tr.nodes & 1023) == 0) {
                if (task > best.load() || abort.load()) return false;
                if (cfg_.timeLimit > 0 && elapsed_ms(t0_) > cfg_.timeLimit * 1000.0) {
                    throw Error(ErrorCode::Timeout, "search exceeded " + std::to_string(cfg_.timeLimit) + " s");
                }
            }
            // next combination
            std::size_t pos = r;
            while (pos > 0 && gens[prefix + pos - 1] == L - r + pos - 1) --pos;
            if (pos == 0) return false;
            ++gens[prefix + pos - 1];
            for (std::size_t k = pos; k < r; ++k) gens[prefix + k] = gens[prefix + k - 1] + 1;
        }
    }

    const Code& code_;
    const LineIndex* index_;
    const SearchConfig& cfg_;
    Clock::time_point t0_;
    mutable std::once_flag linesOnce_;
    mutable std::vector<RankOneLine> lines_;
};

}  // namespace

SearchResult exact_tensor_rank(const Code& code, const SearchConfig& cfg) {
    const auto t0 = Clock::now();
    const FieldCtx& ctx = *code.ctx;
    const std::uint32_t nn = ctx.n() * ctx.n();
    const auto h = static_cast<std::uint32_t>(code.h);
    SearchResult res;
    if (h == 0) {
        res.status = SearchStatus::Exact;
        res.ms = elapsed_ms(t0);
        return res;
    }
    const std::uint32_t d = min_distance(code, cfg.elementBudget);
    const std::uint32_t tMax = cfg.tMax < 0 ? nn - h : std::min<std::uint32_t>(static_cast<std::uint32_t>(cfg.tMax), nn - h);

    std::uint32_t upper = nn;
    std::vector<RankOneLine> upperBasis;
    if (!cfg.knownUpperBasis.empty()) {
        const BasisReport rep = verify_perfect_basis(code, cfg.knownUpperBasis, cfg.elementBudget);
        if (rep.ok() && rep.size < upper) {
            upper = static_cast<std::uint32_t>(rep.size);
            upperBasis = cfg.knownUpperBasis;
        }
    }

    std::vector<std::uint32_t> firstGens;
    const bool symmetric = cfg.useSymmetry && twist_stabilizes(code);
    if (symmetric) {
        firstGens.push_back(0);
    } else {
        firstGens.resize(std::size_t{ctx.fq_gen_exp()} * ctx.fq_gen_exp());
        std::iota(firstGens.begin(), firstGens.end(), 0u);
    }
    std::optional<LineIndex> index;
    if (cfg.method == CheckMethod::Buckets) index.emplace(code, cfg.elementBudget);
    LevelRunner runner(code, index ? &*index : nullptr, cfg, t0);

    std::uint32_t lower = h + d - 1;
    bool exact = false;
    for (std::uint32_t t = d - 1; t <= tMax; ++t) {
        if (!upperBasis.empty() && h + t >= upper) break;
        if (cfg.maxLevelWork > 0 && level_work(code, t, symmetric) > cfg.maxLevelWork) {
            res.skippedLevels.push_back(t);
            break;
        }
        LevelOutcome lv = runner.run(t, firstGens);
        res.nodes += lv.nodes;
        if (lv.found) {
            exact = true;
            res.basis = std::move(lv.basis);
            lower = upper = h + t;
            break;
        }
        res.refutedLevels.push_back(t);
        lower = h + t + 1;
    }
    if (!exact && !upperBasis.empty() && lower >= upper) {
        exact = true;
        res.basis = upperBasis;
        lower = upper;
    }
    res.trkLow = lower;
    res.trkHigh = upper;
    if (exact) {
        res.status = SearchStatus::Exact;
    } else if (!upperBasis.empty()) {
        res.status = SearchStatus::Interval;
        res.basis = upperBasis;
    } else {
        res.status = SearchStatus::LowerBoundOnly;
    }
    res.ms = elapsed_ms(t0);
    return res;
}

SearchResult random_upper_bound(const Code& code, std::uint32_t R, std::uint64_t trials, std::uint64_t seed,
                                RandomStrategy strategy) {
    const auto t0 = Clock::now();
    const FieldCtx& ctx = *code.ctx;
    const auto h = static_cast<std::uint32_t>(code.h);
    const std::uint32_t kr = kruskal_bound(code);
    if (R < kr) throw Error(ErrorCode::BadParameters, "R is below the Kruskal bound " + std::to_string(kr));
    SearchResult res;
    res.status = SearchStatus::LowerBoundOnly;
    res.trkLow = kr;
    res.trkHigh = ctx.n() * ctx.n();
    const std::uint32_t t = R - h;
    LineIndex index(code);
    const std::size_t L = index.lines().size();
    if (t > L) throw Error(ErrorCode::BadParameters, "extension larger than the number of lines");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, L - 1);
    auto draw = [&](std::size_t count) {
        std::vector<std::uint32_t> g;
        while (g.size() < count) {
            const auto c = static_cast<std::uint32_t>(pick(rng));
            if (std::find(g.begin(), g.end(), c) == g.end()) g.push_back(c);
        }
        std::sort(g.begin(), g.end());
        return g;
    };
    auto succeed = [&](std::vector<RankOneLine> basis) {
        res.status = SearchStatus::UpperBoundOnly;
        res.trkHigh = R;
        res.basis = std::move(basis);
        res.ms = elapsed_ms(t0);
        return res;
    };

    const Subfield& fq = code.space.fq();
    const std::size_t m = L ? index.residual(0).size() : 0;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
    std::vector<std::uint32_t> cands;
    FqVector v(m);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        ++res.nodes;
        if (strategy == RandomStrategy::Plain || t == 0) {
            std::vector<RankOneLine> basis;
            if (check_extension(index, draw(t), &basis)) return succeed(std::move(basis));
            continue;
        }
        const std::vector<std::uint32_t> prefix = draw(t - 1);
        EchelonSpace W(fq, m);
        bool ok = true;
        for (std::uint32_t g : prefix) ok = ok && W.insert(index.residual(g));
        if (!ok) continue;
        // Lines in C + <prefix> and, for the rest, their class modulo that space.
        std::vector<std::uint32_t> base(index.inside().begin(), index.inside().end());
        keyed.clear();
        for (std::size_t idx = 0; idx < L; ++idx) {
            const FqVector& r = index.residual(idx);
            std::copy(r.begin(), r.end(), v.begin());
            W.reduce_in_place(v);
            if (!index.normalize(v)) {
                if (is_nonzero(r)) base.push_back(static_cast<std::uint32_t>(idx));
                continue;
            }
            keyed.emplace_back(index.key(v), static_cast<std::uint32_t>(idx));
        }
        std::sort(keyed.begin(), keyed.end());
        const std::size_t need = h + t;
        for (std::size_t a = 0; a < keyed.size();) {
            std::size_t b = a;
            while (b < keyed.size() && keyed[b].first == keyed[a].first) ++b;
            if (base.size() + (b - a) >= need) {
                cands = base;
                for (std::size_t k = a; k < b; ++k) cands.push_back(keyed[k].second);
                std::vector<RankOneLine> basis;
                if (span_reaches(index, cands, need, &basis)) return succeed(std::move(basis));
            }
            a = b;
        }
    }
    res.ms = elapsed_ms(t0);
    return res;
}

BasisReport verify_perfect_basis(const Code& code, std::span<const RankOneLine> basis, std::uint64_t budget) {
    const FieldCtx& ctx = *code.ctx;
    BasisReport rep;
    rep.size = basis.size();
    EchelonSpace span(ctx.fq(), std::size_t{ctx.n()} * ctx.n());
    for (RankOneLine l : basis) {
        const LinPoly f = line_poly(ctx, l);
        if (lp_rank(f) != 1) rep.rankOne = false;
        if (!span.insert(lp_to_vec(f))) rep.independent = false;
    }
    for (const auto& f : code.basis) {
        if (!contains(span, f)) {
            rep.containsCode = false;
            break;
        }
    }
    rep.kruskal = kruskal_bound(code, budget);
    rep.mtr = rep.size == rep.kruskal;
    if (!rep.rankOne) rep.failures.push_back("element of rank other than 1");
    if (!rep.independent) rep.failures.push_back("elements are F_q-dependent");
    if (!rep.containsCode) rep.failures.push_back("span does not contain the code");
    return rep;
}

}  // namespace gabrank
