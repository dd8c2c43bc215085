#include "gabrank/linpoly.hpp"

#include <algorithm>
#include <utility>

namespace gabrank {

namespace {

void require_same(const LinPoly& f, const LinPoly& g) {
    if (&f.ctx() != &g.ctx()) throw Error(ErrorCode::CtxMismatch, "linearized polynomials over different fields");
}

}  // namespace

LinPoly::LinPoly(const FieldCtx& ctx) : ctx_(&ctx), coeffs_(ctx.n(), Elem::zero()) {}

LinPoly::LinPoly(const FieldCtx& ctx, std::vector<Elem> coeffs) : ctx_(&ctx), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != ctx.n()) {
        throw Error(ErrorCode::BadParameters, "expected " + std::to_string(ctx.n()) + " coefficients");
    }
}

LinPoly LinPoly::identity(const FieldCtx& ctx) { return monomial(ctx, 0, ctx.one()); }

LinPoly LinPoly::monomial(const FieldCtx& ctx, std::uint32_t i, Elem c) {
    LinPoly f(ctx);
    f.coeffs_[i % ctx.n()] = c;
    return f;
}

bool LinPoly::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Elem e) { return e.is_zero(); });
}

Elem lp_eval(const LinPoly& f, Elem x) {
    const FieldCtx& ctx = f.ctx();
    Elem acc = Elem::zero(), xi = x;
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc = ctx.add(acc, ctx.mul(f[i], xi));
        xi = ctx.frob(xi);
    }
    return acc;
}

LinPoly lp_add(const LinPoly& f, const LinPoly& g) {
    require_same(f, g);
    const FieldCtx& ctx = f.ctx();
    std::vector<Elem> c(f.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(f[i], g[i]);
    return LinPoly(ctx, std::move(c));
}

LinPoly lp_sub(const LinPoly& f, const LinPoly& g) {
    require_same(f, g);
    const FieldCtx& ctx = f.ctx();
    std::vector<Elem> c(f.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.sub(f[i], g[i]);
    return LinPoly(ctx, std::move(c));
}

LinPoly lp_scale(const LinPoly& f, Elem c) {
    const FieldCtx& ctx = f.ctx();
    std::vector<Elem> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.mul(c, f[i]);
    return LinPoly(ctx, std::move(out));
}

LinPoly lp_compose(const LinPoly& f, const LinPoly& g) {
    require_same(f, g);
    const FieldCtx& ctx = f.ctx();
    const std::size_t n = f.size();
    std::vector<Elem> h(n, Elem::zero());
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const Elem term = ctx.mul(f[i], ctx.frob(g[j], static_cast<std::uint32_t>(i)));
            h[(i + j) % n] = ctx.add(h[(i + j) % n], term);
        }
    }
    return LinPoly(ctx, std::move(h));
}

FqVector eval_matrix(const LinPoly& f) {
    const FieldCtx& ctx = f.ctx();
    const std::size_t n = ctx.n();
    const auto basis = ctx.fq_basis();
    FqVector m(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto co = ctx.coords(lp_eval(f, basis[c]));
        for (std::size_t r = 0; r < n; ++r) m[r * n + c] = co[r];
    }
    return m;
}

std::uint32_t lp_rank(const LinPoly& f) {
    const std::size_t n = f.ctx().n();
    return fqla::rank(f.ctx().fq(), eval_matrix(f), n, n);
}

LinPoly trace_poly(const FieldCtx& ctx, Elem alpha, Elem beta) {
    if (alpha.is_zero() || beta.is_zero()) throw Error(ErrorCode::ZeroParameter, "alpha and beta must be nonzero");
    std::vector<Elem> c(ctx.n());
    Elem b = beta;
    for (auto& ci : c) {
        ci = ctx.mul(alpha, b);
        b = ctx.frob(b);
    }
    return LinPoly(ctx, std::move(c));
}

LinPoly lp_twist(const LinPoly& f, Elem a, Elem b) {
    const FieldCtx& ctx = f.ctx();
    std::vector<Elem> c(f.size());
    Elem bi = b;
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = ctx.mul(a, ctx.mul(f[i], bi));
        bi = ctx.frob(bi);
    }
    return LinPoly(ctx, std::move(c));
}

LinPoly lp_adjoint(const LinPoly& f) {
    const FieldCtx& ctx = f.ctx();
    const std::uint32_t n = ctx.n();
    std::vector<Elem> c(n, Elem::zero());
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t k = (n - i) % n;
        c[k] = ctx.frob(f[i], k);
    }
    return LinPoly(ctx, std::move(c));
}

FqVector lp_to_vec(const LinPoly& f) {
    const FieldCtx& ctx = f.ctx();
    const std::size_t n = ctx.n();
    FqVector v(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto co = ctx.coords(f[i]);
        std::copy(co.begin(), co.end(), v.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    return v;
}

LinPoly vec_to_lp(const FieldCtx& ctx, std::span<const std::uint8_t> v) {
    const std::size_t n = ctx.n();
    if (v.size() != n * n) throw Error(ErrorCode::BadParameters, "vector length must be n^2");
    std::vector<Elem> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = ctx.from_coords(v.subspan(i * n, n));
    return LinPoly(ctx, std::move(c));
}

namespace fqla {

std::uint32_t rank_in_place(const Subfield& fq, std::span<std::uint8_t> m, std::size_t rows, std::size_t cols) {
    std::uint32_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            for (std::size_t k = c; k < cols; ++k) std::swap(m[piv * cols + k], m[rank * cols + k]);
        }
        const std::uint8_t inv = fq.inv(m[rank * cols + c]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const std::uint8_t v = m[r * cols + c];
            if (v == 0) continue;
            const std::uint8_t f = fq.neg(fq.mul(v, inv));
            for (std::size_t k = c; k < cols; ++k) {
                m[r * cols + k] = fq.add(m[r * cols + k], fq.mul(f, m[rank * cols + k]));
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace fqla

}  // namespace gabrank
