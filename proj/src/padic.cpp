#include "periods/padic.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace periods {

mpz_class pow_p(long p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
}

long digit_sum_base_p(unsigned long k, long p) {
    long s = 0;
    while (k) {
        s += static_cast<long>(k % static_cast<unsigned long>(p));
        k /= static_cast<unsigned long>(p);
    }
    return s;
}

long factorial_valuation(unsigned long k, long p) {
    return (static_cast<long>(k) - digit_sum_base_p(k, p)) / (p - 1);
}

long valp_mpz(const mpz_class& z, long p, long cap) {
    if (z == 0) return cap;
    mpz_class t = z;
    long v = 0;
    while (v < cap && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

namespace {

long ilog_base_p(long k, long p) {
    long l = 0;
    while (k >= p) {
        k /= p;
        ++l;
    }
    return l;
}

long valp_ul(unsigned long k, long p) {
    long v = 0;
    while (k && k % static_cast<unsigned long>(p) == 0) {
        k /= static_cast<unsigned long>(p);
        ++v;
    }
    return v;
}

// ---- raw polynomial arithmetic in Z[X]/(Phi_{p^m}, p^W) -------------------

void reduce_coeffs(std::vector<mpz_class>& c, const mpz_class& mod) {
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
}

// Fold X^i for i >= e down using X^e = -sum_{j=0}^{p-2} X^{j q}, q = p^{m-1}.
// Top-down pass; accepts vectors of any length >= e and resizes to e.
void fold_down(std::vector<mpz_class>& v, const FieldDesc& f) {
    const int e = f.degree();
    const long q = f.submodulus_period();
    for (int i = static_cast<int>(v.size()) - 1; i >= e; --i) {
        if (v[static_cast<size_t>(i)] == 0) continue;
        mpz_class c = v[static_cast<size_t>(i)];
        v[static_cast<size_t>(i)] = 0;
        for (long j = 0; j <= f.p - 2; ++j) v[static_cast<size_t>(j * q + i - e)] -= c;
    }
    v.resize(static_cast<size_t>(e));
}

std::vector<mpz_class> raw_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                               const FieldDesc& f, const mpz_class& mod) {
    const size_t e = a.size();
    if (e == 1) {
        std::vector<mpz_class> r(1);
        r[0] = a[0] * b[0];
        mpz_mod(r[0].get_mpz_t(), r[0].get_mpz_t(), mod.get_mpz_t());
        return r;
    }
    std::vector<mpz_class> prod(2 * e - 1, mpz_class(0));
    mpz_class t;
    for (size_t i = 0; i < e; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < e; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            prod[i + j] += t;
        }
    }
    fold_down(prod, f);
    reduce_coeffs(prod, mod);
    return prod;
}

std::vector<mpz_class> raw_add(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                               const mpz_class& mod) {
    std::vector<mpz_class> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
        mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), mod.get_mpz_t());
    }
    return r;
}

void raw_scalar_mul(std::vector<mpz_class>& a, const mpz_class& k, const mpz_class& mod) {
    for (auto& x : a) {
        x *= k;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
}

bool raw_is_zero(const std::vector<mpz_class>& a) {
    return std::all_of(a.begin(), a.end(), [](const mpz_class& x) { return x == 0; });
}

bool raw_all_divisible_by_p(const std::vector<mpz_class>& a, long p) {
    return std::all_of(a.begin(), a.end(), [&](const mpz_class& x) {
        return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    });
}

void raw_divexact_p(std::vector<mpz_class>& a, long p, long v) {
    if (v == 0) return;
    mpz_class pv = pow_p(p, static_cast<unsigned long>(v));
    for (auto& x : a) {
        if (!mpz_divisible_p(x.get_mpz_t(), pv.get_mpz_t()))
            throw std::logic_error("internal: inexact division by p^v in series kernel");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
    }
}

long raw_residue(const std::vector<mpz_class>& a, long p) {
    mpz_class s = 0;
    for (const auto& x : a) s += x;
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_si();
}

// Newton inversion of a unit (residue != 0 mod p) in O_K / p^W.
std::vector<mpz_class> raw_invert_unit(const std::vector<mpz_class>& u, const FieldDesc& f,
                                       int W) {
    const mpz_class mod = pow_p(f.p, static_cast<unsigned long>(W));
    long r = raw_residue(u, f.p);
    if (r == 0) throw precondition_error("NON_UNIT", "element is not a unit");
    mpz_class inv0;
    {
        mpz_class r0(r);
        if (!mpz_invert(inv0.get_mpz_t(), r0.get_mpz_t(), mod.get_mpz_t()))
            throw std::logic_error("internal: residue not invertible");
    }
    std::vector<mpz_class> z(u.size(), mpz_class(0));
    z[0] = inv0;
    // 1 - u z has val >= 1/e and squares every round
    long need = static_cast<long>(W) * f.degree();
    int rounds = 1;
    for (long g = 1; g < need; g *= 2) ++rounds;
    for (int it = 0; it < rounds; ++it) {
        std::vector<mpz_class> uz = raw_mul(u, z, f, mod);
        for (auto& x : uz) x = -x;
        uz[0] += 2;
        reduce_coeffs(uz, mod);
        z = raw_mul(z, uz, f, mod);
    }
    return z;
}

// Divide by the rational integer k: exact p-part, unit part by modular inverse.
void raw_div_integer(std::vector<mpz_class>& a, unsigned long k, long p, const mpz_class& mod) {
    long vk = 0;
    unsigned long ku = k;
    while (ku % static_cast<unsigned long>(p) == 0) {
        ku /= static_cast<unsigned long>(p);
        ++vk;
    }
    raw_divexact_p(a, p, vk);
    if (ku != 1) {
        mpz_class kz(ku), inv;
        if (!mpz_invert(inv.get_mpz_t(), kz.get_mpz_t(), mod.get_mpz_t()))
            throw std::logic_error("internal: unit part of k not invertible");
        raw_scalar_mul(a, inv, mod);
    } else {
        reduce_coeffs(a, mod);
    }
}

// ---- norm valuation via the multiplication matrix ------------------------
//
// val(x) = val_p(Norm(x)) / e, Norm(x) = Res(Phi_{p^m}, repr) = det of the
// multiplication-by-x matrix on the power basis. The local elimination
// extracts the pivot valuation at each step; the certified modulus shrinks by
// it, and failure to certify triggers a retry at a doubled starting modulus.

std::optional<long> det_valuation_u64(std::vector<uint64_t> m, int e, long p, int w) {
    uint64_t pw = 1;
    for (int i = 0; i < w; ++i) pw *= static_cast<uint64_t>(p);
    auto invmod = [](uint64_t a, uint64_t n) -> uint64_t {
        int64_t t = 0, newt = 1;
        int64_t rr = static_cast<int64_t>(n), newr = static_cast<int64_t>(a % n);
        while (newr != 0) {
            int64_t q = rr / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = rr - q * newr;
            rr = newr;
            newr = tmp;
        }
        if (t < 0) t += static_cast<int64_t>(n);
        return static_cast<uint64_t>(t);
    };
    long detval = 0;
    int rem = w;
    uint64_t prem = pw;
    for (int r = 0; r < e; ++r) {
        int best = -1;
        int bestv = rem;
        for (int i = r; i < e; ++i) {
            uint64_t x = m[static_cast<size_t>(i) * e + r] % prem;
            if (x == 0) continue;
            int v = 0;
            while (x % static_cast<uint64_t>(p) == 0) {
                x /= static_cast<uint64_t>(p);
                ++v;
            }
            if (v < bestv) {
                bestv = v;
                best = i;
            }
            if (v == 0) break;
        }
        if (best < 0) return std::nullopt;  // column vanishes mod p^rem
        if (best != r)
            for (int c = r; c < e; ++c)
                std::swap(m[static_cast<size_t>(best) * e + c], m[static_cast<size_t>(r) * e + c]);
        detval += bestv;
        const uint64_t prem_before = prem;
        rem -= bestv;
        if (rem <= 0) return std::nullopt;
        uint64_t pv = 1;
        for (int i = 0; i < bestv; ++i) pv *= static_cast<uint64_t>(p);
        prem /= pv;
        uint64_t pivu = (m[static_cast<size_t>(r) * e + r] % prem_before) / pv % prem;
        uint64_t pivinv = invmod(pivu, prem);
        for (int i = r + 1; i < e; ++i) {
            uint64_t xi = (m[static_cast<size_t>(i) * e + r] % prem_before) / pv % prem;
            uint64_t q =
                static_cast<uint64_t>((static_cast<unsigned __int128>(xi) * pivinv) % prem);
            if (q == 0) continue;
            for (int c = r; c < e; ++c) {
                uint64_t sub = static_cast<uint64_t>(
                    (static_cast<unsigned __int128>(q) * m[static_cast<size_t>(r) * e + c]) % pw);
                uint64_t& tgt = m[static_cast<size_t>(i) * e + c];
                tgt = (tgt + pw - sub) % pw;
            }
        }
    }
    return detval;
}

std::optional<long> det_valuation_mpz(std::vector<mpz_class> m, int e, long p, int w) {
    const mpz_class pw = pow_p(p, static_cast<unsigned long>(w));
    long detval = 0;
    int rem = w;
    mpz_class prem = pw;
    mpz_class tmp;
    for (int r = 0; r < e; ++r) {
        int best = -1;
        int bestv = rem;
        for (int i = r; i < e; ++i) {
            mpz_mod(tmp.get_mpz_t(), m[static_cast<size_t>(i) * e + r].get_mpz_t(),
                    prem.get_mpz_t());
            if (tmp == 0) continue;
            int v = static_cast<int>(valp_mpz(tmp, p, rem));
            if (v < bestv) {
                bestv = v;
                best = i;
            }
            if (v == 0) break;
        }
        if (best < 0) return std::nullopt;
        if (best != r)
            for (int c = r; c < e; ++c)
                std::swap(m[static_cast<size_t>(best) * e + c], m[static_cast<size_t>(r) * e + c]);
        detval += bestv;
        const mpz_class prem_before = prem;
        rem -= bestv;
        if (rem <= 0) return std::nullopt;
        const mpz_class pv = pow_p(p, static_cast<unsigned long>(bestv));
        mpz_divexact(prem.get_mpz_t(), prem.get_mpz_t(), pv.get_mpz_t());
        mpz_class pivu;
        mpz_mod(pivu.get_mpz_t(), m[static_cast<size_t>(r) * e + r].get_mpz_t(),
                prem_before.get_mpz_t());
        mpz_divexact(pivu.get_mpz_t(), pivu.get_mpz_t(), pv.get_mpz_t());
        mpz_mod(pivu.get_mpz_t(), pivu.get_mpz_t(), prem.get_mpz_t());
        mpz_class pivinv;
        if (!mpz_invert(pivinv.get_mpz_t(), pivu.get_mpz_t(), prem.get_mpz_t()))
            return std::nullopt;
        for (int i = r + 1; i < e; ++i) {
            mpz_class xi;
            mpz_mod(xi.get_mpz_t(), m[static_cast<size_t>(i) * e + r].get_mpz_t(),
                    prem_before.get_mpz_t());
            mpz_divexact(xi.get_mpz_t(), xi.get_mpz_t(), pv.get_mpz_t());
            mpz_class q = (xi * pivinv) % prem;
            if (q == 0) continue;
            for (int c = r; c < e; ++c) {
                m[static_cast<size_t>(i) * e + c] -= q * m[static_cast<size_t>(r) * e + c];
                mpz_mod(m[static_cast<size_t>(i) * e + c].get_mpz_t(),
                        m[static_cast<size_t>(i) * e + c].get_mpz_t(), pw.get_mpz_t());
            }
        }
    }
    return detval;
}

// Valuation of an integral element given by raw coefficients known mod p^W.
Valuation raw_valuation(const std::vector<mpz_class>& c, const FieldDesc& f, int W) {
    const long p = f.p;
    if (raw_is_zero(c)) return Valuation::at_least(Rat(W));
    if (f.m == 0) return Valuation::of(Rat(valp_mpz(c[0], p, W)));
    const int e = f.degree();
    long content = W;
    for (const auto& x : c) content = std::min(content, valp_mpz(x, p, W));
    std::vector<mpz_class> u = c;
    if (content > 0) raw_divexact_p(u, p, content);
    const int Wu = W - static_cast<int>(content);
    if (Wu <= 0) return Valuation::at_least(Rat(W));
    if (raw_residue(u, p) != 0) return Valuation::of(Rat(content));
    // multiplication-by-u matrix: column i holds the coordinates of u * zeta^i
    std::vector<std::vector<mpz_class>> cols(static_cast<size_t>(e));
    cols[0] = u;
    for (int i = 1; i < e; ++i) {
        std::vector<mpz_class> nxt(static_cast<size_t>(e) + 1, mpz_class(0));
        for (int j = 0; j < e; ++j)
            nxt[static_cast<size_t>(j) + 1] = cols[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
        fold_down(nxt, f);
        cols[static_cast<size_t>(i)] = std::move(nxt);
    }
    int w = std::min(8, Wu);
    while (true) {
        mpz_class pw = pow_p(p, static_cast<unsigned long>(w));
        std::optional<long> dv;
        if (mpz_sizeinbase(pw.get_mpz_t(), 2) <= 30) {
            std::vector<uint64_t> m(static_cast<size_t>(e) * static_cast<size_t>(e));
            mpz_class t;
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j) {
                    mpz_mod(t.get_mpz_t(),
                            cols[static_cast<size_t>(j)][static_cast<size_t>(i)].get_mpz_t(),
                            pw.get_mpz_t());
                    m[static_cast<size_t>(i) * e + j] = t.get_ui();
                }
            dv = det_valuation_u64(std::move(m), e, p, w);
        } else {
            std::vector<mpz_class> m(static_cast<size_t>(e) * static_cast<size_t>(e));
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j)
                    mpz_mod(m[static_cast<size_t>(i) * e + j].get_mpz_t(),
                            cols[static_cast<size_t>(j)][static_cast<size_t>(i)].get_mpz_t(),
                            pw.get_mpz_t());
            dv = det_valuation_mpz(std::move(m), e, p, w);
        }
        if (dv) return Valuation::of(Rat(content) + Rat(*dv, e));
        if (w >= Wu) break;
        w = std::min(2 * w, Wu);
    }
    // Norm vanishes mod p^Wu: only a floor is certified.
    return Valuation::at_least(Rat(content) + Rat(Wu, e));
}

}  // namespace

// ---- PadicElement ---------------------------------------------------------

PadicElement::PadicElement(FieldDesc f, int aprec, int shift, std::vector<mpz_class> c)
    : field_(f), aprec_(aprec), shift_(shift), c_(std::move(c)) {
    normalize();
}

void PadicElement::normalize() {
    const int e = field_.degree();
    c_.resize(static_cast<size_t>(e));
    if (aprec_ + shift_ < 1)
        throw precondition_error("PRECISION_EXHAUSTED", "operation lost all tracked precision");
    mpz_class mod = pow_p(field_.p, static_cast<unsigned long>(aprec_ + shift_));
    reduce_coeffs(c_, mod);
    while (shift_ > 0 && raw_all_divisible_by_p(c_, field_.p)) {
        for (auto& x : c_)
            mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(field_.p));
        --shift_;
    }
}

PadicElement PadicElement::from_integer(const FieldDesc& f, const mpz_class& z) {
    return from_integer(f, z, f.N);
}

PadicElement PadicElement::from_integer(const FieldDesc& f, const mpz_class& z, int aprec) {
    std::vector<mpz_class> c(static_cast<size_t>(f.degree()), mpz_class(0));
    c[0] = z;
    return PadicElement(f, aprec, 0, std::move(c));
}

PadicElement PadicElement::from_coeffs(const FieldDesc& f, std::vector<mpz_class> coeffs,
                                       int aprec, int shift) {
    if (static_cast<int>(coeffs.size()) > f.degree())
        throw precondition_error("BAD_COEFFS", "coefficient vector longer than field degree");
    if (shift < 0) throw precondition_error("BAD_COEFFS", "negative shift");
    return PadicElement(f, aprec, shift, std::move(coeffs));
}

PadicElement PadicElement::zero_at(const FieldDesc& f, int aprec) {
    return PadicElement(f, aprec, 0, std::vector<mpz_class>(static_cast<size_t>(f.degree())));
}

PadicElement PadicElement::zeta_power(const FieldDesc& f, long k) {
    if (f.m < 1) throw precondition_error("FIELD_TOO_SMALL", "zeta needs cyclotomic level >= 1");
    long pm = f.submodulus_period() * f.p;  // p^m
    long kk = ((k % pm) + pm) % pm;
    std::vector<mpz_class> c(static_cast<size_t>(kk) + 1, mpz_class(0));
    c[static_cast<size_t>(kk)] = 1;
    if (kk >= f.degree()) fold_down(c, f);
    return PadicElement(f, f.N, 0, std::move(c));
}

bool PadicElement::is_precision_zero() const { return raw_is_zero(c_); }

PadicElement PadicElement::with_aprec(int a) const {
    int na = std::min(a, aprec_);
    return PadicElement(field_, na, shift_, c_);
}

PadicElement PadicElement::assume_precision(int a) const {
    if (a <= aprec_) return *this;
    return PadicElement(field_, a, shift_, c_);
}

PadicElement PadicElement::promoted(int m2) const {
    if (m2 < field_.m)
        throw precondition_error("FIELD_MISMATCH", "cannot demote cyclotomic level");
    if (m2 == field_.m) return *this;
    FieldDesc f2 = field_;
    f2.m = m2;
    std::vector<mpz_class> c(static_cast<size_t>(f2.degree()), mpz_class(0));
    if (field_.m == 0) {
        c[0] = c_[0];
    } else {
        long step = 1;
        for (int i = 0; i < m2 - field_.m; ++i) step *= field_.p;
        for (size_t i = 0; i < c_.size(); ++i) c[i * static_cast<size_t>(step)] = c_[i];
    }
    return PadicElement(f2, aprec_, shift_, std::move(c));
}

namespace {
struct Aligned {
    FieldDesc f;
    int aprec;
    int shift;
    std::vector<mpz_class> a, b;
};

Aligned align(const PadicElement& x, const PadicElement& y) {
    FieldDesc f = join_fields(x.field(), y.field());
    PadicElement xa = x.promoted(f.m), ya = y.promoted(f.m);
    Aligned r;
    r.f = f;
    r.aprec = std::min(xa.aprec(), ya.aprec());
    r.shift = std::max(xa.shift(), ya.shift());
    r.a = xa.coeffs();
    r.b = ya.coeffs();
    mpz_class fa = pow_p(f.p, static_cast<unsigned long>(r.shift - xa.shift()));
    mpz_class fb = pow_p(f.p, static_cast<unsigned long>(r.shift - ya.shift()));
    for (auto& c : r.a) c *= fa;
    for (auto& c : r.b) c *= fb;
    return r;
}
}  // namespace

PadicElement operator+(const PadicElement& x, const PadicElement& y) {
    Aligned al = align(x, y);
    std::vector<mpz_class> c(al.a.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = al.a[i] + al.b[i];
    return PadicElement::from_coeffs(al.f, std::move(c), al.aprec, al.shift);
}

PadicElement operator-(const PadicElement& x, const PadicElement& y) {
    Aligned al = align(x, y);
    std::vector<mpz_class> c(al.a.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = al.a[i] - al.b[i];
    return PadicElement::from_coeffs(al.f, std::move(c), al.aprec, al.shift);
}

PadicElement operator-(const PadicElement& x) {
    std::vector<mpz_class> c(x.coeffs());
    for (auto& v : c) v = -v;
    return PadicElement::from_coeffs(x.field(), std::move(c), x.aprec(), x.shift());
}

Rat PadicElement::val_lower_bound() const {
    if (is_precision_zero()) return Rat(aprec_);
    long mn = aprec_ + shift_;
    for (const auto& x : c_) mn = std::min(mn, valp_mpz(x, field_.p, mn));
    return Rat(mn - shift_);
}

PadicElement operator*(const PadicElement& x, const PadicElement& y) {
    FieldDesc f = join_fields(x.field(), y.field());
    PadicElement xa = x.promoted(f.m), ya = y.promoted(f.m);
    Rat va = xa.val_lower_bound(), vb = ya.val_lower_bound();
    Rat ap = std::min(std::min(va + Rat(ya.aprec()), vb + Rat(xa.aprec())),
                      Rat(xa.aprec()) + Rat(ya.aprec()));
    int aprec = static_cast<int>(rat_floor(ap));
    int shift = xa.shift() + ya.shift();
    mpz_class mod = pow_p(f.p, static_cast<unsigned long>(std::max(1, aprec + shift)));
    return PadicElement::from_coeffs(f, raw_mul(xa.coeffs(), ya.coeffs(), f, mod), aprec, shift);
}

PadicElement operator/(const PadicElement& x, const PadicElement& y) { return x * y.invert(); }

PadicElement PadicElement::mul_mpz(const mpz_class& k) const {
    if (k == 0) return zero_at(field_, aprec_);
    long vk = valp_mpz(k, field_.p, aprec_ + shift_ + 64);
    int aprec = aprec_ + static_cast<int>(vk);
    std::vector<mpz_class> c(c_);
    for (auto& v : c) v *= k;
    return PadicElement(field_, aprec, shift_, std::move(c));
}

PadicElement PadicElement::pow_ui(unsigned long k) const {
    PadicElement r = one(field_).assume_precision(std::max(field_.N, aprec_));
    PadicElement base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

PadicElement PadicElement::invert() const {
    if (is_precision_zero())
        throw precondition_error("NON_UNIT", "cannot invert a precision-zero element");
    const long p = field_.p;
    const int W = aprec_ + shift_;
    long content = W;
    for (const auto& x : c_) content = std::min(content, valp_mpz(x, p, W));
    std::vector<mpz_class> u = c_;
    if (content > 0) raw_divexact_p(u, p, content);
    if (raw_residue(u, p) == 0)
        throw precondition_error("NON_UNIT",
                                 "element has fractional positive valuation; not invertible here");
    // x = p^{content - shift} * u with u a unit; aprec drops by 2 val(x)
    const long v = content - shift_;
    const int aprec = static_cast<int>(aprec_ - 2 * v);
    const int new_shift = v > 0 ? static_cast<int>(v) : 0;
    const int W2 = aprec + new_shift;
    if (W2 < 1)
        throw precondition_error("PRECISION_EXHAUSTED", "inverse has no tracked digits left");
    std::vector<mpz_class> inv = raw_invert_unit(u, field_, W2);
    if (v < 0) {
        mpz_class fpow = pow_p(p, static_cast<unsigned long>(-v));
        for (auto& x : inv) x *= fpow;
    }
    return PadicElement(field_, aprec, new_shift, std::move(inv));
}

PadicElement PadicElement::divide_by_p_power(long v) const {
    if (v == 0) return *this;
    if (v < 0) {
        std::vector<mpz_class> c(c_);
        mpz_class fpow = pow_p(field_.p, static_cast<unsigned long>(-v));
        for (auto& x : c) x *= fpow;
        return PadicElement(field_, static_cast<int>(aprec_ - v), shift_, std::move(c));
    }
    return PadicElement(field_, static_cast<int>(aprec_ - v), static_cast<int>(shift_ + v), c_);
}

Valuation PadicElement::valuation() const {
    Valuation v = raw_valuation(c_, field_, aprec_ + shift_);
    if (v.exact) return Valuation::of(v.value - Rat(shift_));
    return Valuation::at_least(v.value - Rat(shift_));
}

long PadicElement::residue() const {
    if (shift_ != 0)
        throw precondition_error("NON_INTEGRAL", "residue of a non-integral element");
    return raw_residue(c_, field_.p);
}

bool PadicElement::identical(const PadicElement& o) const {
    return field_ == o.field_ && aprec_ == o.aprec_ && shift_ == o.shift_ && c_ == o.c_;
}

// ---- module operations ----------------------------------------------------

Valuation val(const PadicElement& x) { return x.valuation(); }

PadicElement teichmuller(const PadicElement& x) {
    if (x.field().m != 0)
        throw precondition_error("EXT_FIELD", "teichmuller lift is defined on Z_p^* only");
    if (x.is_precision_zero() || x.shift() != 0 || x.residue() == 0)
        throw precondition_error("NON_UNIT", "teichmuller lift needs a p-adic unit");
    const long p = x.field().p;
    const int A = std::max(x.aprec(), x.field().N);
    const mpz_class mod = pow_p(p, static_cast<unsigned long>(A));
    mpz_class y = x.coeffs()[0] % mod, prev;
    for (int it = 0; it <= A + 2; ++it) {
        prev = y;
        mpz_powm_ui(y.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(p), mod.get_mpz_t());
        if (y == prev) break;
    }
    return PadicElement::from_integer(x.field(), y, A);
}

PadicElement angle(const PadicElement& x) { return x * teichmuller(x).invert(); }

namespace {

// Raise 1+x to p-th powers until (1+x)^{p^j} - 1 lands in p*O_K.
// val >= 1 is exactly "all power-basis coordinates divisible by p".
struct PowerReduced {
    std::vector<mpz_class> w;  // (1+x)^{p^j} - 1, mod p^Wwork
    int j;
};

PowerReduced pth_power_reduce(const std::vector<mpz_class>& xc, const FieldDesc& f, int Wwork,
                              int jcap) {
    const mpz_class mod = pow_p(f.p, static_cast<unsigned long>(Wwork));
    std::vector<mpz_class> u = xc;
    u.resize(static_cast<size_t>(f.degree()));
    u[0] += 1;
    reduce_coeffs(u, mod);
    int j = 0;
    while (true) {
        std::vector<mpz_class> w(u);
        w[0] -= 1;
        reduce_coeffs(w, mod);
        if (raw_is_zero(w) || raw_all_divisible_by_p(w, f.p)) return {std::move(w), j};
        if (j >= jcap)
            throw std::logic_error("internal: p-power reduction failed to gain valuation");
        std::vector<mpz_class> up = u;
        for (long i = 1; i < f.p; ++i) up = raw_mul(up, u, f, mod);
        u = std::move(up);
        ++j;
    }
}

}  // namespace

PadicElement log1p(const PadicElement& x) {
    const FieldDesc& f = x.field();
    const long p = f.p;
    const int A = x.aprec();
    if (x.is_precision_zero()) return PadicElement::zero_at(f, A);
    if (x.shift() != 0 || x.residue() != 0)
        throw precondition_error("LOG_OUT_OF_DOMAIN", "log_p(1+x) needs val(x) > 0");
    const int jcap = f.m + 4;
    // after reduction val(w) >= 1; the series needs terms k < kcap with
    // k - val_p(k) < target <= A + jcap
    const int kcap = A + jcap + static_cast<int>(ilog_base_p(A + jcap + 8, p)) + 3;
    const int Wwork = A + jcap + static_cast<int>(ilog_base_p(kcap, p)) + 2;
    PowerReduced pr = pth_power_reduce(x.coeffs(), f, Wwork, jcap);
    const int target = A + pr.j;
    const mpz_class mod = pow_p(p, static_cast<unsigned long>(Wwork));
    std::vector<mpz_class> sum(static_cast<size_t>(f.degree()), mpz_class(0));
    if (!raw_is_zero(pr.w)) {
        long vw = Wwork;
        for (const auto& c : pr.w) vw = std::min(vw, valp_mpz(c, p, vw));
        std::vector<mpz_class> wpow(static_cast<size_t>(f.degree()), mpz_class(0));
        wpow[0] = 1;
        for (long k = 1; k <= kcap; ++k) {
            if (k > 1 && vw * (k - 1) - ilog_base_p(std::max<long>(kcap, 2), p) >= target) break;
            wpow = raw_mul(wpow, pr.w, f, mod);
            std::vector<mpz_class> term = wpow;
            raw_div_integer(term, static_cast<unsigned long>(k), p, mod);
            if (k % 2 == 0)
                for (auto& t : term) t = -t;
            sum = raw_add(sum, term, mod);
        }
    }
    PadicElement L = PadicElement::from_coeffs(f, std::move(sum), target, 0);
    return L.divide_by_p_power(pr.j);
}

PadicElement exp(const PadicElement& x) {
    const FieldDesc& f = x.field();
    const long p = f.p;
    const int A = x.aprec();
    if (x.is_precision_zero()) return PadicElement::one(f).with_aprec(A) + x;
    Valuation v = x.valuation();
    if (!v.exact) return PadicElement::one(f).with_aprec(A) + x;
    if (!(v.value > Rat(1, p - 1)))
        throw precondition_error("EXP_DIVERGES", "exp_p needs val(x) > 1/(p-1); series diverges");
    if (x.shift() != 0) throw std::logic_error("internal: positive valuation implies integral");
    const Rat margin = v.value - Rat(1, p - 1);
    const long kmax = rat_ceil(Rat(A) / margin) + 1;
    const long lossmax = factorial_valuation(static_cast<unsigned long>(kmax), p);
    const int Wwork = A + static_cast<int>(lossmax) + 1;
    const mpz_class mod = pow_p(p, static_cast<unsigned long>(Wwork));
    std::vector<mpz_class> term(static_cast<size_t>(f.degree()), mpz_class(0));
    term[0] = 1;
    std::vector<mpz_class> sum = term;
    std::vector<mpz_class> xi = x.coeffs();
    xi.resize(static_cast<size_t>(f.degree()));
    for (long k = 1; k <= kmax; ++k) {
        term = raw_mul(term, xi, f, mod);
        raw_div_integer(term, static_cast<unsigned long>(k), p, mod);
        Rat tfloor = Rat(k) * v.value - Rat(factorial_valuation(static_cast<unsigned long>(k), p));
        if (tfloor < Rat(A)) sum = raw_add(sum, term, mod);
    }
    return PadicElement::from_coeffs(f, std::move(sum), A, 0);
}

PadicElement binom_pow(const PadicElement& t, const PadicElement& s) {
    const FieldDesc& f = t.field();
    const long p = f.p;
    if (s.field().m != 0 || s.field().p != p)
        throw precondition_error("NON_INTEGRAL", "exponent must lie in Z_p");
    if (!s.is_precision_zero() && s.shift() != 0)
        throw precondition_error("NON_INTEGRAL", "exponent must lie in Z_p (val >= 0)");
    const int At = t.aprec(), As = s.aprec();
    if (t.is_precision_zero()) return PadicElement::one(f).with_aprec(std::min(At, As));
    if (t.shift() != 0 || t.residue() != 0)
        throw precondition_error("BINOM_OUT_OF_DOMAIN",
                                 "binomial series needs val(t) > 0 (open unit disk)");
    const int jcap = f.m + 4;
    const int A0 = std::min(At, As);
    const int kcap = A0 + jcap + 3;
    const long lossmax = factorial_valuation(static_cast<unsigned long>(kcap), p);
    const int Wwork = A0 + jcap + static_cast<int>(lossmax) + 2;
    const mpz_class mod = pow_p(p, static_cast<unsigned long>(Wwork));
    PowerReduced pr = pth_power_reduce(t.coeffs(), f, Wwork, jcap);
    const int j = pr.j;
    if (As < j + 1)
        throw precondition_error("PRECISION_EXHAUSTED", "exponent precision below the p^j split");
    const int Aout = std::min(At, As + 1 - j);
    const mpz_class pj = pow_p(p, static_cast<unsigned long>(j));

    mpz_class s0 = s.is_precision_zero() ? mpz_class(0) : s.coeffs()[0];
    mpz_class a = s0 % pj;
    mpz_class sprime = (s0 - a) / pj;

    // series sum_k C(s', k) w^k, w = (1+t)^{p^j} - 1, val(w) >= 1
    std::vector<mpz_class> sum(static_cast<size_t>(f.degree()), mpz_class(0));
    sum[0] = 1;
    std::vector<mpz_class> wpow(static_cast<size_t>(f.degree()), mpz_class(0));
    wpow[0] = 1;
    mpz_class ck = 1;
    if (!raw_is_zero(pr.w)) {
        for (long k = 1; k <= Aout + j + 1; ++k) {
            ck *= (sprime - (k - 1));
            mpz_mod(ck.get_mpz_t(), ck.get_mpz_t(), mod.get_mpz_t());
            long vk = valp_ul(static_cast<unsigned long>(k), p);
            if (vk > 0) {
                mpz_class pk = pow_p(p, static_cast<unsigned long>(vk));
                if (!mpz_divisible_p(ck.get_mpz_t(), pk.get_mpz_t()))
                    throw std::logic_error("internal: binomial recurrence division not exact");
                mpz_divexact(ck.get_mpz_t(), ck.get_mpz_t(), pk.get_mpz_t());
            }
            mpz_class kunit(static_cast<unsigned long>(k));
            mpz_divexact(kunit.get_mpz_t(), kunit.get_mpz_t(),
                         pow_p(p, static_cast<unsigned long>(vk)).get_mpz_t());
            mpz_class kinv;
            mpz_invert(kinv.get_mpz_t(), kunit.get_mpz_t(), mod.get_mpz_t());
            ck = (ck * kinv) % mod;
            wpow = raw_mul(wpow, pr.w, f, mod);
            std::vector<mpz_class> term = wpow;
            raw_scalar_mul(term, ck, mod);
            sum = raw_add(sum, term, mod);
        }
    }

    // (1+t)^a by binary powering
    std::vector<mpz_class> one_plus_t = t.coeffs();
    one_plus_t.resize(static_cast<size_t>(f.degree()));
    one_plus_t[0] += 1;
    reduce_coeffs(one_plus_t, mod);
    std::vector<mpz_class> head(static_cast<size_t>(f.degree()), mpz_class(0));
    head[0] = 1;
    mpz_class aa = a;
    std::vector<mpz_class> base = one_plus_t;
    while (aa > 0) {
        if (mpz_odd_p(aa.get_mpz_t())) head = raw_mul(head, base, f, mod);
        aa >>= 1;
        if (aa > 0) base = raw_mul(base, base, f, mod);
    }
    std::vector<mpz_class> res = raw_mul(head, sum, f, mod);
    return PadicElement::from_coeffs(f, std::move(res), Aout, 0);
}

PadicElement ext_automorphism(const PadicElement& x, long a) {
    const FieldDesc& f = x.field();
    if (a % f.p == 0)
        throw precondition_error("NOT_UNIT_EXPONENT", "automorphism exponent must be a unit");
    if (f.m == 0) return x;
    long pm = f.submodulus_period() * f.p;
    long am = ((a % pm) + pm) % pm;
    std::vector<mpz_class> out(static_cast<size_t>(pm), mpz_class(0));
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        if (x.coeffs()[i] == 0) continue;
        size_t tgt = (i * static_cast<size_t>(am)) % static_cast<size_t>(pm);
        out[tgt] += x.coeffs()[i];
    }
    fold_down(out, f);
    return PadicElement::from_coeffs(f, std::move(out), x.aprec(), x.shift());
}

bool equal_at_precision(const PadicElement& x, const PadicElement& y) {
    return (x - y).is_precision_zero();
}

int common_precision(const PadicElement& x, const PadicElement& y) {
    return std::min(x.aprec(), y.aprec());
}

}  // namespace periods
