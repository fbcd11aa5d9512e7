#include "periods/fourier.hpp"

#include <algorithm>

namespace periods {

namespace {
FieldDesc common_field(const std::vector<PadicElement>& v) {
    FieldDesc f = v.front().field();
    for (const auto& x : v) f = join_fields(f, x.field());
    return f;
}

Magnitude size_upper_bound(const PadicElement& x) {
    return Magnitude::pow_p(-x.valuation().floor());
}

// x / k! with the unit part inverted modularly and the p-part tracked as an
// explicit precision loss.
PadicElement divide_by_factorial(const PadicElement& x, unsigned long k) {
    const long p = x.field().p;
    long vk = factorial_valuation(k, p);
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), k);
    if (vk > 0)
        mpz_divexact(kf.get_mpz_t(), kf.get_mpz_t(),
                     pow_p(p, static_cast<unsigned long>(vk)).get_mpz_t());
    PadicElement y = x;
    if (kf != 1) {
        mpz_class mod = pow_p(p, static_cast<unsigned long>(
                                     std::max(1, x.aprec() + x.shift() + 2)));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), kf.get_mpz_t(), mod.get_mpz_t());
        y = y.mul_mpz(inv).with_aprec(x.aprec());
    }
    if (vk > 0) y = y.divide_by_p_power(vk);
    return y;
}

PadicElement multiply_by_factorial(const PadicElement& x, unsigned long k) {
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), k);
    return x.mul_mpz(kf);
}

PadicElement absorb_error(const PadicElement& x, const Magnitude& err) {
    if (err.is_zero()) return x;
    int floor = static_cast<int>(rat_floor(-err.exponent()));
    if (floor >= x.aprec()) return x;
    return x.with_aprec(std::max(floor, 1 - x.shift()));
}
}  // namespace

BSenElement::BSenElement(std::vector<PadicElement> coeffs, int filtration_level, Magnitude bound)
    : coeffs_(std::move(coeffs)), level_(filtration_level), bound_(bound) {
    if (level_ < 0) throw precondition_error("BAD_LEVEL", "filtration level must be >= 0");
    if (coeffs_.empty()) throw precondition_error("BAD_COEFFS", "series needs b_0");
    field_ = common_field(coeffs_);
    for (auto& x : coeffs_) x = x.promoted(field_.m);
}

Magnitude BSenElement::coeff_bound(int k) const {
    return size_upper_bound(coeffs_[static_cast<size_t>(k)]);
}

BSenElement bsen_constant(const FieldDesc& f, const PadicElement& c, int level) {
    return BSenElement({c}, level, size_upper_bound(c));
}

BSenElement fourier(const BoundedDistribution& mu) {
    std::vector<PadicElement> b;
    b.reserve(mu.moments().size());
    for (int k = 0; k <= mu.truncation(); ++k)
        b.push_back(divide_by_factorial(mu.moment(k), static_cast<unsigned long>(k)));
    // |x_k/k!| <= C p^{k(n-1/(p-1))} p^{(k-s_p(k))/(p-1)} <= C p^{kn}
    return BSenElement(std::move(b), mu.level(), mu.bound());
}

BoundedDistribution inverse_fourier(const BSenElement& P, int M) {
    const int K = std::min(P.degree(), M);
    std::vector<PadicElement> xs;
    xs.reserve(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k)
        xs.push_back(multiply_by_factorial(P.coeff(k), static_cast<unsigned long>(k)));
    // |k! b_k| p^{-k(m+1-1/(p-1))} = |b_k| p^{-km} p^{s_p(k)/(p-1) - k} <= |b_k| p^{-km}
    return from_moments(std::move(xs), P.filtration_level() + 1, P.bound());
}

int minimal_filtration_level(const BSenElement& P, const Magnitude& C) {
    if (C.is_zero())
        throw precondition_error("CERT_VIOLATION", "zero bound admits no nonzero series");
    long long n = 0;
    for (int k = 1; k <= P.degree(); ++k) {
        Magnitude bk = P.coeff_bound(k);
        if (bk.is_zero()) continue;
        Rat need = (bk.exponent() - C.exponent()) / Rat(k);
        if (Rat(n) < need) n = rat_ceil(need);
    }
    return static_cast<int>(std::max(0LL, n));
}

BSenElement multiply(const BSenElement& P, const BSenElement& Q) {
    FieldDesc fd = join_fields(P.field(), Q.field());
    const int D = std::min(P.degree(), Q.degree());
    std::vector<PadicElement> c(static_cast<size_t>(D) + 1, PadicElement::zero(fd));
    for (int i = 0; i <= std::min(P.degree(), D); ++i)
        for (int j = 0; j <= Q.degree() && i + j <= D; ++j)
            c[static_cast<size_t>(i + j)] = c[static_cast<size_t>(i + j)] + P.coeff(i) * Q.coeff(j);
    return BSenElement(std::move(c), std::max(P.filtration_level(), Q.filtration_level()),
                       P.bound() * Q.bound());
}

BSenElement colmez_action(const GaloisElement& g, const BSenElement& P) {
    const int n = P.filtration_level();
    if (g.level_floor() < std::max(n, 1))
        throw precondition_error("LEVEL_FLOOR",
                                 "need chi = 1 mod p^max(n,1) to act on B_Sen^n");
    const int m = P.field().m;
    if (m > g.field_scope())
        throw precondition_error("FIELD_SCOPE", "coefficients outside the action scope");
    PadicElement c =
        log1p(g.chi() - PadicElement::one(g.chi().field()).with_aprec(g.chi().aprec()));
    Rat vc = c.is_precision_zero() ? Rat(c.aprec()) : c.valuation().floor();
    FieldDesc fd = join_fields(P.field(), c.field());
    const int D = P.degree();
    const long a = g.chi_mod_pm(m);
    std::vector<PadicElement> sig;
    sig.reserve(P.coeffs().size());
    for (const auto& x : P.coeffs()) sig.push_back(m == 0 ? x : ext_automorphism(x, a));
    std::vector<PadicElement> cpow(static_cast<size_t>(D) + 1,
                                   PadicElement::one(fd).assume_precision(
                                       std::max(fd.N, c.aprec())));
    for (int k = 1; k <= D; ++k) cpow[static_cast<size_t>(k)] = cpow[static_cast<size_t>(k - 1)] * c;
    std::vector<PadicElement> out;
    out.reserve(static_cast<size_t>(D) + 1);
    mpz_class bin;
    for (int i = 0; i <= D; ++i) {
        PadicElement acc = PadicElement::zero(fd);
        for (int k = i; k <= D; ++k) {
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(k),
                         static_cast<unsigned long>(i));
            acc = acc + sig[static_cast<size_t>(k)].mul_mpz(bin) * cpow[static_cast<size_t>(k - i)];
        }
        // dropped k > D: |b_k| |c|^{k-i} <= B p^{kn - v(k-i)} <= B p^{in - (D+1-i)(v-n)}...
        // certified with the floor valuation of c
        Magnitude err = P.bound() *
                        Magnitude::pow_p(Rat(i) * Rat(n) - Rat(D + 1 - i) * (vc - Rat(n)));
        out.push_back(absorb_error(acc, err));
    }
    return BSenElement(std::move(out), n, P.bound());
}

BSenElement derivative(const BSenElement& P) {
    const FieldDesc& fd = P.field();
    std::vector<PadicElement> c;
    if (P.degree() == 0) {
        c.push_back(PadicElement::zero(fd));
    } else {
        c.reserve(static_cast<size_t>(P.degree()));
        for (int k = 1; k <= P.degree(); ++k)
            c.push_back(P.coeff(k).mul_mpz(mpz_class(k)));
    }
    Magnitude B = P.bound() * Magnitude::pow_p(Rat(P.filtration_level()));
    return BSenElement(std::move(c), P.filtration_level(), B);
}

bool equal_at_tracked_precision(const BSenElement& a, const BSenElement& b) {
    if (a.filtration_level() != b.filtration_level()) return false;
    const int D = std::min(a.degree(), b.degree());
    for (int k = 0; k <= D; ++k)
        if (!equal_at_precision(a.coeff(k), b.coeff(k))) return false;
    return true;
}

}  // namespace periods
