#include "gabrank/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace gabrank {

namespace {

using Poly = std::vector<std::uint32_t>;  // lowest degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // p is prime and small; Fermat.
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t f = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - f * m[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_rem(std::move(r), m, p);
}

Poly poly_powmod_x(std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result{1}, base = poly_rem(Poly{0, 1}, m, p);
    while (e) {
        if (e & 1) result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

Poly low_first(const FieldSpec& spec) {
    return Poly(spec.modulus.rbegin(), spec.modulus.rend());
}

// Moduli of the embedded reference dataset (data/table1.json); these fix the meaning of
// the (i, j) exponent pairs stored there.
struct KnownModulus {
    std::uint32_t p, s, n;
    const char* digits;
};
constexpr KnownModulus kKnownModuli[] = {
    {2, 1, 3, "1011"},       // x^3+x+1
    {2, 1, 4, "10011"},      // x^4+x+1
    {3, 1, 4, "12002"},      // x^4-x^3-1
    {2, 2, 4, "100011101"},  // x^8+x^4+x^3+x^2+1
    {5, 1, 4, "10442"},      // x^4+4x^2+4x+2
};

std::vector<std::uint32_t> parse_modulus(std::string_view text, std::uint32_t p) {
    std::vector<std::uint32_t> out;
    if (text.find(',') != std::string_view::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t end = std::min(text.find(',', pos), text.size());
            std::uint32_t v = 0;
            auto part = text.substr(pos, end - pos);
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc{} || ptr != part.data() + part.size()) {
                throw Error(ErrorCode::ParseError, "bad modulus coefficient '" + std::string(part) + "'");
            }
            out.push_back(v);
            pos = end + 1;
        }
    } else {
        if (p > 10) throw Error(ErrorCode::ParseError, "modulus digits need commas for p > 10");
        for (char c : text) {
            if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad modulus digit");
            out.push_back(static_cast<std::uint32_t>(c - '0'));
        }
    }
    return out;
}

}  // namespace

bool is_prime(std::uint64_t v) noexcept {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
    if (q < 2) throw Error(ErrorCode::BadParameters, "q must be >= 2");
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        std::uint32_t s = 0, v = q;
        while (v % p == 0) {
            v /= p;
            ++s;
        }
        if (v != 1) throw Error(ErrorCode::BadParameters, "q = " + std::to_string(q) + " is not a prime power");
        return {p, s};
    }
    throw Error(ErrorCode::BadParameters, "q is not a prime power");
}

namespace polyfp {

bool is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    // Trial division by every monic polynomial of degree <= deg/2.
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly g(d + 1);
            std::uint64_t t = v;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

bool is_primitive(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    if (!is_irreducible(f, p)) return false;
    const std::uint64_t order = ipow(p, static_cast<std::uint32_t>(f.size() - 1)) - 1;
    if (poly_powmod_x(order, f, p) != Poly{1}) return false;
    for (std::uint64_t r : prime_factors(order)) {
        if (poly_powmod_x(order / r, f, p) == Poly{1}) return false;
    }
    return true;
}

}  // namespace polyfp

FieldSpec parse_field_spec(std::string_view text) {
    FieldSpec spec;
    std::string mod_text;
    bool have_p = false, have_n = false;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "mod") {
            mod_text = val;
            continue;
        }
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || ptr != val.data() + val.size()) {
            throw Error(ErrorCode::ParseError, "bad number for '" + key + "'");
        }
        if (key == "p") {
            spec.p = v;
            have_p = true;
        } else if (key == "s") {
            spec.s = v;
        } else if (key == "n") {
            spec.n = v;
            have_n = true;
        } else {
            throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
        }
    }
    if (!have_p || !have_n) throw Error(ErrorCode::ParseError, "p and n are required");
    if (mod_text.empty()) {
        const std::uint32_t q = static_cast<std::uint32_t>(ipow(spec.p, spec.s));
        return default_field_spec(q, spec.n);
    }
    spec.modulus = parse_modulus(mod_text, spec.p);
    return spec;
}

std::string modulus_digits(const FieldSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.modulus.size(); ++i) {
        if (spec.p > 10 && i) out += ',';
        out += std::to_string(spec.modulus[i]);
    }
    return out;
}

std::string format_field_spec(const FieldSpec& spec) {
    return "p=" + std::to_string(spec.p) + " s=" + std::to_string(spec.s) + " n=" + std::to_string(spec.n) +
           " mod=" + modulus_digits(spec);
}

std::string modulus_polynomial(const FieldSpec& spec) {
    std::string out;
    const std::size_t deg = spec.modulus.size() - 1;
    for (std::size_t i = 0; i <= deg; ++i) {
        const std::uint32_t c = spec.modulus[i];
        if (c == 0) continue;
        const std::size_t power = deg - i;
        const bool minus = spec.p > 2 && c == spec.p - 1;
        if (!out.empty()) out += minus ? "-" : "+";
        else if (minus) out += "-";
        const std::uint32_t shown = minus ? 1 : c;
        if (shown != 1 || power == 0) out += std::to_string(shown);
        if (power >= 1) out += "x";
        if (power >= 2) out += "^" + std::to_string(power);
    }
    return out;
}

FieldSpec default_field_spec(std::uint32_t q, std::uint32_t n) {
    const auto [p, s] = prime_power(q);
    if (n == 0) throw Error(ErrorCode::BadParameters, "n must be >= 1");
    FieldSpec spec{p, s, n, {}};
    for (const auto& k : kKnownModuli) {
        if (k.p == p && k.s == s && k.n == n) {
            spec.modulus = parse_modulus(k.digits, p);
            return spec;
        }
    }
    const std::uint32_t e = s * n;
    const std::uint64_t count = ipow(p, e);
    if (count > kDefaultFieldBudget) throw Error(ErrorCode::BudgetExceeded, "field too large");
    // Enumerate monic degree-e polynomials with the high-first digit string
    // increasing; the first primitive one wins.
    for (std::uint64_t v = 0; v < count; ++v) {
        Poly low(e + 1);
        std::uint64_t t = v;
        for (std::uint32_t i = 0; i < e; ++i) {
            low[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        low[e] = 1;
        if (low[0] == 0) continue;
        if (polyfp::is_primitive(low, p)) {
            spec.modulus.assign(low.rbegin(), low.rend());
            return spec;
        }
    }
    throw Error(ErrorCode::NotPrimitiveRoot, "no primitive polynomial found");
}

FieldHandle build_field(const FieldSpec& spec, std::uint64_t budget) {
    if (!is_prime(spec.p)) throw Error(ErrorCode::BadParameters, "p = " + std::to_string(spec.p) + " is not prime");
    if (spec.s == 0 || spec.n == 0) throw Error(ErrorCode::BadParameters, "s and n must be positive");
    const std::uint32_t e = spec.degree();
    if (spec.modulus.size() != e + 1 || spec.modulus.front() != 1) {
        throw Error(ErrorCode::BadParameters, "modulus must be monic of degree s*n = " + std::to_string(e));
    }
    for (auto c : spec.modulus) {
        if (c >= spec.p) throw Error(ErrorCode::BadParameters, "modulus coefficient out of range");
    }
    // Guard the size computation before it can overflow.
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        size *= spec.p;
        if (size > budget) throw Error(ErrorCode::BudgetExceeded, "field has more than " + std::to_string(budget) + " elements");
    }
    const Poly low = low_first(spec);
    if (!polyfp::is_irreducible(low, spec.p)) throw Error(ErrorCode::ReducibleModulus, modulus_polynomial(spec));
    if (!polyfp::is_primitive(low, spec.p)) throw Error(ErrorCode::NotPrimitiveRoot, modulus_polynomial(spec));

    std::shared_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->spec_ = spec;
    ctx->size_ = static_cast<std::uint32_t>(size);
    ctx->order_ = ctx->size_ - 1;
    ctx->q_ = static_cast<std::uint32_t>(ipow(spec.p, spec.s));
    ctx->fq_gen_exp_ = ctx->order_ / (ctx->q_ - 1);
    ctx->qpow_.assign(spec.n, 1);
    for (std::uint32_t t = 1; t < spec.n; ++t) ctx->qpow_[t] = (ctx->qpow_[t - 1] * ctx->q_) % ctx->order_;

    const std::uint32_t p = spec.p;
    std::vector<std::uint32_t> place(e + 1, 1);
    for (std::uint32_t i = 1; i <= e; ++i) place[i] = place[i - 1] * p;

    ctx->antilog_.assign(ctx->order_, 0);
    ctx->log_.assign(ctx->size_, -1);
    std::vector<std::uint32_t> digits(e, 0), next(e, 0);
    digits[0] = 1;
    for (std::uint32_t k = 0; k < ctx->order_; ++k) {
        std::uint32_t packed = 0;
        for (std::uint32_t i = 0; i < e; ++i) packed += digits[i] * place[i];
        if (ctx->log_[packed] >= 0) throw Error(ErrorCode::NotPrimitiveRoot, modulus_polynomial(spec));
        ctx->antilog_[k] = packed;
        ctx->log_[packed] = static_cast<std::int32_t>(k);
        // multiply by x, reduce with x^e = -(sum m_i x^i)
        const std::uint32_t top = digits[e - 1];
        next[0] = 0;
        for (std::uint32_t i = 1; i < e; ++i) next[i] = digits[i - 1];
        if (top) {
            for (std::uint32_t i = 0; i < e; ++i) {
                next[i] = (next[i] + p - (top * low[i]) % p) % p;
            }
        }
        digits.swap(next);
    }

    ctx->zech_.assign(ctx->order_, -1);
    for (std::uint32_t k = 0; k < ctx->order_; ++k) {
        const std::uint32_t v = ctx->antilog_[k];
        const std::uint32_t d0 = v % p;
        const std::uint32_t w = v - d0 + (d0 + 1) % p;
        ctx->zech_[k] = w == 0 ? -1 : ctx->log_[w];
    }
    ctx->minus_one_ = p == 2 ? ctx->one() : Elem::from_log(static_cast<std::int32_t>(ctx->order_ / 2));
    return ctx;
}

Elem FieldCtx::exp(std::int64_t k) const noexcept {
    std::int64_t r = k % static_cast<std::int64_t>(order_);
    if (r < 0) r += order_;
    return Elem::from_log(static_cast<std::int32_t>(r));
}

Elem FieldCtx::minus_one() const noexcept { return minus_one_; }

Elem FieldCtx::inv(Elem a) const {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return Elem::from_log(a.log() == 0 ? 0 : static_cast<std::int32_t>(order_) - a.log());
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return one();
    if (a.is_zero()) return Elem::zero();
    const std::uint64_t r = (static_cast<std::uint64_t>(a.log()) * (e % order_)) % order_;
    return Elem::from_log(static_cast<std::int32_t>(r));
}

Elem FieldCtx::pow_signed(Elem a, std::int64_t e) const {
    if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
    return inv(pow(a, static_cast<std::uint64_t>(-e)));
}

Elem FieldCtx::frob(Elem x, std::uint32_t times) const noexcept {
    if (x.is_zero()) return x;
    const std::uint64_t m = qpow_[times % spec_.n];
    return Elem::from_log(static_cast<std::int32_t>((static_cast<std::uint64_t>(x.log()) * m) % order_));
}

Elem FieldCtx::trace(Elem x) const noexcept {
    Elem acc = Elem::zero(), cur = x;
    for (std::uint32_t i = 0; i < spec_.n; ++i) {
        acc = add(acc, cur);
        cur = frob(cur);
    }
    return acc;
}

std::vector<Elem> FieldCtx::fq_elements() const {
    std::vector<Elem> out{Elem::zero()};
    for (std::uint32_t m = 0; m + 1 < q_; ++m) out.push_back(Elem::from_log(static_cast<std::int32_t>(m * fq_gen_exp_)));
    return out;
}

int FieldCtx::fq_index(Elem x) const noexcept {
    if (x.is_zero()) return 0;
    if (static_cast<std::uint32_t>(x.log()) % fq_gen_exp_ != 0) return -1;
    return static_cast<int>(static_cast<std::uint32_t>(x.log()) / fq_gen_exp_) + 1;
}

void FieldCtx::build_subfield() const {
    std::call_once(subfield_once_, [this] {
        if (q_ > 256) return;
        Subfield& f = subfield_;
        f.q_ = q_;
        f.elems_ = fq_elements();
        f.add_.resize(std::size_t{q_} * q_);
        f.mul_.resize(std::size_t{q_} * q_);
        f.neg_.resize(q_);
        f.inv_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                f.add_[a * q_ + b] = static_cast<std::uint8_t>(fq_index(add(f.elems_[a], f.elems_[b])));
                f.mul_[a * q_ + b] = static_cast<std::uint8_t>(fq_index(mul(f.elems_[a], f.elems_[b])));
            }
            f.neg_[a] = static_cast<std::uint8_t>(fq_index(neg(f.elems_[a])));
            f.inv_[a] = a == 0 ? 0 : static_cast<std::uint8_t>(fq_index(inv(f.elems_[a])));
        }
    });
}

const Subfield& FieldCtx::fq() const {
    build_subfield();
    if (subfield_.q_ == 0) throw Error(ErrorCode::BudgetExceeded, "subfield tables need q <= 256");
    return subfield_;
}

void FieldCtx::build_coords() const {
    const Subfield& f = fq();
    std::call_once(coords_once_, [this, &f] {
        const std::uint32_t n = spec_.n;
        std::vector<char> spanned(size_, 0);  // index log+1
        std::vector<std::uint32_t> members{0};
        spanned[0] = 1;
        for (std::uint32_t k = 0; k < order_ && basis_.size() < n; ++k) {
            if (spanned[k + 1]) continue;
            const Elem b = Elem::from_log(static_cast<std::int32_t>(k));
            basis_.push_back(b);
            std::vector<std::uint32_t> grown;
            grown.reserve(members.size() * q_);
            for (std::uint32_t idx : members) {
                const Elem s = idx == 0 ? Elem::zero() : Elem::from_log(static_cast<std::int32_t>(idx - 1));
                for (std::uint32_t c = 0; c < q_; ++c) {
                    const Elem v = add(s, mul(f.elem(static_cast<std::uint8_t>(c)), b));
                    const std::uint32_t vi = static_cast<std::uint32_t>(v.log() + 1);
                    if (!spanned[vi]) {
                        spanned[vi] = 1;
                    }
                    grown.push_back(vi);
                }
            }
            std::sort(grown.begin(), grown.end());
            grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
            members.swap(grown);
        }
        coords_.assign(std::size_t{size_} * n, 0);
        std::vector<std::uint8_t> c(n, 0);
        for (std::uint32_t it = 0; it < size_; ++it) {
            Elem v = Elem::zero();
            for (std::uint32_t i = 0; i < n; ++i) v = add(v, mul(f.elem(c[i]), basis_[i]));
            std::copy(c.begin(), c.end(), coords_.begin() + static_cast<std::ptrdiff_t>(std::size_t(v.log() + 1) * n));
            for (std::uint32_t i = 0; i < n; ++i) {
                if (++c[i] < q_) break;
                c[i] = 0;
            }
        }
    });
}

std::span<const Elem> FieldCtx::fq_basis() const {
    build_coords();
    return basis_;
}

std::span<const std::uint8_t> FieldCtx::coords(Elem x) const {
    build_coords();
    const std::size_t n = spec_.n;
    return {coords_.data() + std::size_t(x.log() + 1) * n, n};
}

Elem FieldCtx::from_coords(std::span<const std::uint8_t> c) const {
    const Subfield& f = fq();
    const auto basis = fq_basis();
    Elem v = Elem::zero();
    for (std::size_t i = 0; i < c.size(); ++i) v = add(v, mul(f.elem(c[i]), basis[i]));
    return v;
}

}  // namespace gabrank
