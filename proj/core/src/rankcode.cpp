#include "gabrank/rankcode.hpp"

#include <algorithm>
#include <numeric>

namespace gabrank {

EchelonSpace::EchelonSpace(const Subfield& fq, std::size_t length) : fq_(&fq), length_(length) {}

FqVector EchelonSpace::reduce(FqVector v) const {
    reduce_in_place(v);
    return v;
}

void EchelonSpace::reduce_in_place(std::span<std::uint8_t> v) const {
    const Subfield& fq = *fq_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::uint8_t c = v[pivots_[r]];
        if (c == 0) continue;
        const std::uint8_t f = fq.neg(c);
        const FqVector& row = rows_[r];
        for (std::size_t k = pivots_[r]; k < length_; ++k) {
            if (row[k]) v[k] = fq.add(v[k], fq.mul(f, row[k]));
        }
    }
}

bool EchelonSpace::contains(const FqVector& v) const {
    const FqVector r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
}

bool EchelonSpace::insert(FqVector v) {
    if (v.size() != length_) throw Error(ErrorCode::BadParameters, "vector length mismatch");
    v = reduce(std::move(v));
    const auto it = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
    if (it == v.end()) return false;
    const Subfield& fq = *fq_;
    const std::size_t piv = static_cast<std::size_t>(it - v.begin());
    const std::uint8_t inv = fq.inv(v[piv]);
    for (std::size_t k = piv; k < length_; ++k) v[k] = fq.mul(v[k], inv);
    // clear the new pivot column from the existing rows
    for (auto& row : rows_) {
        const std::uint8_t c = row[piv];
        if (c == 0) continue;
        const std::uint8_t f = fq.neg(c);
        for (std::size_t k = piv; k < length_; ++k) {
            if (v[k]) row[k] = fq.add(row[k], fq.mul(f, v[k]));
        }
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

EchelonSpace space_of(const FieldCtx& ctx, std::span<const LinPoly> gens) {
    EchelonSpace s(ctx.fq(), std::size_t{ctx.n()} * ctx.n());
    for (const auto& g : gens) {
        if (&g.ctx() != &ctx) throw Error(ErrorCode::CtxMismatch, "generator from another field");
        s.insert(lp_to_vec(g));
    }
    return s;
}

EchelonSpace space_sum(const EchelonSpace& a, const EchelonSpace& b) {
    if (&a.fq() != &b.fq() || a.length() != b.length()) {
        throw Error(ErrorCode::CtxMismatch, "spaces over different ambient spaces");
    }
    EchelonSpace out = a;
    for (const auto& row : b.rows()) out.insert(row);
    return out;
}

bool contains(const EchelonSpace& space, const LinPoly& f) {
    if (&space.fq() != &f.ctx().fq()) throw Error(ErrorCode::CtxMismatch, "polynomial from another field");
    return space.contains(lp_to_vec(f));
}

Code make_code(const FieldCtx& ctx, std::span<const LinPoly> generators) {
    Code code{&ctx, {}, EchelonSpace(ctx.fq(), std::size_t{ctx.n()} * ctx.n()), 0};
    for (const auto& g : generators) {
        if (&g.ctx() != &ctx) throw Error(ErrorCode::CtxMismatch, "generator from another field");
        if (code.space.insert(lp_to_vec(g))) code.basis.push_back(g);
    }
    code.h = code.space.dim();
    return code;
}

Code gabidulin(const FieldCtx& ctx, std::uint32_t k, std::uint32_t s) {
    const std::uint32_t n = ctx.n();
    if (k < 1 || k > n || std::gcd(s, n) != 1) {
        throw Error(ErrorCode::BadParameters, "need 1 <= k <= n and gcd(s, n) = 1");
    }
    std::vector<LinPoly> gens;
    const auto basis = ctx.fq_basis();
    for (std::uint32_t i = 0; i < k; ++i) {
        for (Elem b : basis) gens.push_back(LinPoly::monomial(ctx, (s * i) % n, b));
    }
    return make_code(ctx, gens);
}

void gray_enumerate(const Subfield& fq, std::span<const FqVector> vectors,
                    const std::function<bool(std::span<const std::uint8_t>, std::span<const std::uint8_t>)>& visit) {
    const std::size_t m = vectors.size();
    const std::size_t len = m ? vectors[0].size() : 0;
    const std::uint32_t q = fq.size();
    std::vector<std::uint8_t> digits(m, 0);
    FqVector elem(len, 0);
    if (!visit(digits, elem)) return;
    std::vector<std::uint32_t> counter(m, 0);
    for (;;) {
        // lowest position that does not wrap is the Gray digit to bump
        std::size_t k = 0;
        while (k < m && counter[k] == q - 1) {
            counter[k] = 0;
            ++k;
        }
        if (k == m) return;
        ++counter[k];
        const std::uint8_t old = digits[k];
        const std::uint8_t now = static_cast<std::uint8_t>((old + 1) % q);
        digits[k] = now;
        const std::uint8_t delta = fq.sub(now, old);
        const FqVector& v = vectors[k];
        for (std::size_t i = 0; i < len; ++i) {
            if (v[i]) elem[i] = fq.add(elem[i], fq.mul(delta, v[i]));
        }
        if (!visit(digits, elem)) return;
    }
}

std::uint32_t min_distance(const Code& code, std::uint64_t budget) {
    const FieldCtx& ctx = *code.ctx;
    const std::uint32_t n = ctx.n();
    long double total = 1;
    for (std::size_t i = 0; i < code.h; ++i) total *= ctx.q();
    if (total > static_cast<long double>(budget)) {
        throw Error(ErrorCode::BudgetExceeded, "q^h = " + std::to_string(static_cast<double>(total)) + " codewords");
    }
    if (code.h == 0) return 0;
    std::vector<FqVector> mats;
    for (const auto& b : code.basis) mats.push_back(eval_matrix(b));
    const Subfield& fq = ctx.fq();
    std::uint32_t best = n + 1;
    FqVector scratch(std::size_t{n} * n);
    bool first = true;
    gray_enumerate(fq, mats, [&](std::span<const std::uint8_t>, std::span<const std::uint8_t> m) {
        if (first) {  // zero codeword
            first = false;
            return true;
        }
        std::copy(m.begin(), m.end(), scratch.begin());
        best = std::min(best, fqla::rank_in_place(fq, scratch, n, n));
        return best > 1;
    });
    return best;
}

bool is_mrd(const Code& code, std::uint64_t budget) {
    const std::uint32_t d = min_distance(code, budget);
    const std::uint32_t n = code.ctx->n();
    return code.h == std::size_t{n} * (n - d + 1);
}

Code apply_equiv(const Code& code, const Equivalence& e) {
    const FieldCtx& ctx = *code.ctx;
    if (&e.left.ctx() != &ctx || &e.right.ctx() != &ctx) throw Error(ErrorCode::CtxMismatch, "equivalence over another field");
    if (lp_rank(e.left) != ctx.n() || lp_rank(e.right) != ctx.n()) {
        throw Error(ErrorCode::NotInvertible, "equivalence maps must be invertible");
    }
    std::vector<LinPoly> gens;
    gens.reserve(code.basis.size());
    for (const auto& f : code.basis) {
        const LinPoly g = e.adjoint ? lp_adjoint(f) : f;
        gens.push_back(lp_compose(e.left, lp_compose(g, e.right)));
    }
    return make_code(ctx, gens);
}

}  // namespace gabrank
