#include "periods/tate.hpp"

#include <algorithm>

namespace periods {

namespace {
FieldDesc common_field(const std::vector<PadicElement>& v) {
    FieldDesc f = v.front().field();
    for (const auto& x : v) f = join_fields(f, x.field());
    return f;
}

void promote_all(std::vector<PadicElement>& v, int m) {
    for (auto& x : v) x = x.promoted(m);
}

// |x| as a certified upper bound: p^{-val} when the valuation is exact,
// p^{-floor} otherwise.
Magnitude size_upper_bound(const PadicElement& x) {
    return Magnitude::pow_p(-x.valuation().floor());
}
}  // namespace

TateSeries::TateSeries(int level, std::vector<PadicElement> coeffs, Magnitude tail_bound)
    : level_(level), coeffs_(std::move(coeffs)), tail_(tail_bound) {
    if (level_ < 0) throw precondition_error("BAD_LEVEL", "series level must be >= 0");
    if (coeffs_.empty()) throw precondition_error("BAD_COEFFS", "series needs a_0");
    field_ = common_field(coeffs_);
    promote_all(coeffs_, field_.m);
}

TateSeries TateSeries::polynomial(int level, std::vector<PadicElement> coeffs) {
    return TateSeries(level, std::move(coeffs), Magnitude::zero());
}

TateSeries TateSeries::constant(int level, const PadicElement& c) {
    return polynomial(level, {c});
}

TateSeries TateSeries::theta_monomial(int level, const FieldDesc& f, int k) {
    std::vector<PadicElement> c(static_cast<size_t>(k) + 1, PadicElement::zero(f));
    c.back() = PadicElement::one(f);
    return polynomial(level, std::move(c));
}

Rat TateSeries::weight_exponent() const { return Rat(level_) - Rat(1, field_.p - 1); }

Magnitude TateSeries::coeff_bound(int k) const {
    return size_upper_bound(coeffs_[static_cast<size_t>(k)]);
}

Magnitude sup_norm(const TateSeries& f) {
    Magnitude best = f.tail_bound();
    const Rat w = f.weight_exponent();
    for (int k = 0; k <= f.degree(); ++k) {
        Magnitude b = f.coeff_bound(k) * Magnitude::pow_p(Rat(k) * w);
        best = Magnitude::max(best, b);
    }
    return best;
}

TateSeries mul(const TateSeries& f, const TateSeries& g) {
    if (f.level() != g.level())
        throw precondition_error("LEVEL_MISMATCH", "series live on different affinoids");
    FieldDesc fd = join_fields(f.field(), g.field());
    const int Df = f.degree(), Dg = g.degree();
    const int Dcap = std::min(Df + Dg, std::max({Df, Dg, 64}));
    std::vector<PadicElement> c(static_cast<size_t>(Dcap) + 1, PadicElement::zero(fd));
    for (int i = 0; i <= Df; ++i) {
        for (int j = 0; j <= Dg && i + j <= Dcap; ++j) {
            c[static_cast<size_t>(i + j)] = c[static_cast<size_t>(i + j)] + f.coeff(i) * g.coeff(j);
        }
    }
    // remainder: f_poly*r_g + r_f*g_poly + r_f*r_g + dropped high-degree part
    const Rat w = f.weight_exponent();
    Magnitude fpoly_sup = Magnitude::zero(), gpoly_sup = Magnitude::zero();
    for (int i = 0; i <= Df; ++i)
        fpoly_sup = Magnitude::max(fpoly_sup, f.coeff_bound(i) * Magnitude::pow_p(Rat(i) * w));
    for (int j = 0; j <= Dg; ++j)
        gpoly_sup = Magnitude::max(gpoly_sup, g.coeff_bound(j) * Magnitude::pow_p(Rat(j) * w));
    Magnitude tail = Magnitude::max(fpoly_sup * g.tail_bound(), f.tail_bound() * gpoly_sup);
    tail = Magnitude::max(tail, f.tail_bound() * g.tail_bound());
    for (int i = 0; i <= Df; ++i)
        for (int j = 0; j <= Dg; ++j)
            if (i + j > Dcap)
                tail = Magnitude::max(tail, f.coeff_bound(i) * g.coeff_bound(j) *
                                                Magnitude::pow_p(Rat(i + j) * w));
    return TateSeries(f.level(), std::move(c), tail);
}

TateSeries exp_theta_series(const PadicElement& c, int level, int D) {
    const FieldDesc& fd = c.field();
    const long p = fd.p;
    Rat vc;
    if (c.is_precision_zero()) {
        vc = Rat(c.aprec());
    } else {
        Valuation v = c.valuation();
        vc = v.floor();
    }
    if (vc < Rat(level))
        throw precondition_error("EXP_SERIES_LEVEL",
                                 "exp_p(c theta) needs val(c) >= n to be analytic on X_n");
    std::vector<PadicElement> coeffs;
    coeffs.reserve(static_cast<size_t>(D) + 1);
    coeffs.push_back(PadicElement::one(fd).assume_precision(std::max(fd.N, c.aprec())));
    for (int k = 1; k <= D; ++k) {
        PadicElement term = coeffs.back() * c;
        long vk = valp_mpz(mpz_class(k), p, 64);
        mpz_class kunit(k);
        if (vk > 0)
            mpz_divexact(kunit.get_mpz_t(), kunit.get_mpz_t(),
                         pow_p(p, static_cast<unsigned long>(vk)).get_mpz_t());
        if (kunit != 1) {
            mpz_class mod = pow_p(p, static_cast<unsigned long>(std::max(
                                         1, term.aprec() + term.shift() + static_cast<int>(vk) + 2)));
            mpz_class kinv;
            mpz_invert(kinv.get_mpz_t(), kunit.get_mpz_t(), mod.get_mpz_t());
            term = term.mul_mpz(kinv).with_aprec(term.aprec());
        }
        if (vk > 0) term = term.divide_by_p_power(vk);
        coeffs.push_back(std::move(term));
    }
    // tail: |c^k/k!| p^{kw} = p^{-k(vc-n) - s_p(k)/(p-1)} <= p^{-(D+1)(vc-n) - 1/(p-1)}
    Magnitude tail =
        Magnitude::pow_p(-Rat(D + 1) * (vc - Rat(level)) - Rat(1, p - 1));
    return TateSeries(level, std::move(coeffs), tail);
}

TateSeries translate(const TateSeries& f, const QuotientPoint& phi) {
    const PadicElement& th = phi.theta_value;
    const Rat w = f.weight_exponent();
    if (!th.is_precision_zero()) {
        Valuation v = th.valuation();
        if (v.floor() < -w)
            throw precondition_error("LEVEL_MISMATCH",
                                     "translation point lies outside the level-n ball");
    }
    FieldDesc fd = join_fields(f.field(), th.field());
    const int D = f.degree();
    std::vector<PadicElement> thpow(static_cast<size_t>(D) + 1,
                                    PadicElement::one(fd).assume_precision(
                                        std::max(fd.N, th.aprec())));
    for (int k = 1; k <= D; ++k) thpow[static_cast<size_t>(k)] = thpow[static_cast<size_t>(k - 1)] * th;
    std::vector<PadicElement> b(static_cast<size_t>(D) + 1, PadicElement::zero(fd));
    mpz_class bin;
    for (int m = 0; m <= D; ++m) {
        PadicElement acc = PadicElement::zero(fd);
        for (int k = m; k <= D; ++k) {
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(k),
                         static_cast<unsigned long>(m));
            acc = acc + f.coeff(k).mul_mpz(bin) * thpow[static_cast<size_t>(k - m)];
        }
        b[static_cast<size_t>(m)] = std::move(acc);
    }
    // T_phi is sup-norm isometric: the remainder bound carries over.
    return TateSeries(f.level(), std::move(b), f.tail_bound());
}

EvalResult evaluate(const TateSeries& f, const QuotientPoint& psi) {
    const PadicElement& th = psi.theta_value;
    const Rat w = f.weight_exponent();
    if (!th.is_precision_zero()) {
        Valuation v = th.valuation();
        if (v.floor() < -w)
            throw precondition_error("LEVEL_MISMATCH", "point lies outside the level-n ball");
    }
    FieldDesc fd = join_fields(f.field(), th.field());
    PadicElement acc = PadicElement::zero(fd);
    PadicElement pw = PadicElement::one(fd).assume_precision(std::max(fd.N, th.aprec()));
    for (int k = 0; k <= f.degree(); ++k) {
        if (k > 0) pw = pw * th;
        acc = acc + f.coeff(k) * pw;
    }
    return EvalResult{std::move(acc), f.tail_bound()};
}

// ---- t-coordinate utilities ------------------------------------------------

namespace {
// product of two truncated t-series of PadicElements
std::vector<PadicElement> ps_mul(const std::vector<PadicElement>& a,
                                 const std::vector<PadicElement>& b, int D,
                                 const FieldDesc& fd) {
    std::vector<PadicElement> r(static_cast<size_t>(D) + 1, PadicElement::zero(fd));
    for (size_t i = 0; i < a.size() && static_cast<int>(i) <= D; ++i) {
        if (a[i].is_precision_zero() && a[i].shift() == 0) continue;
        for (size_t j = 0; j < b.size() && static_cast<int>(i + j) <= D; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}
}  // namespace

std::vector<PadicElement> theta_t_series(const FieldDesc& f, const mpz_class& gamma, int D,
                                         int aprec) {
    FieldDesc qp{f.p, 0, aprec};
    PadicElement lg = log1p(PadicElement::from_integer(qp, gamma - 1, aprec));
    PadicElement lginv = lg.invert();
    std::vector<PadicElement> out;
    out.reserve(static_cast<size_t>(D) + 1);
    out.push_back(PadicElement::zero_at(qp, aprec));
    for (int k = 1; k <= D; ++k) {
        PadicElement kk = PadicElement::from_integer(qp, k, aprec + 8);
        PadicElement coef = lginv * kk.invert();
        if (k % 2 == 0) coef = -coef;
        out.push_back(std::move(coef));
    }
    return out;
}

std::vector<PadicElement> exp_theta_in_t(const PadicElement& c, const mpz_class& gamma, int D,
                                         int target_aprec) {
    const long p = c.field().p;
    if (c.field().m != 0)
        throw precondition_error("EXT_FIELD", "t-coordinate composition works over Q_p");
    // working precision covers the 1/(k log_p gamma) denominators and the k!
    // of the outer exponential
    long denom_loss = 0;
    for (int k = 1; k <= D; ++k)
        denom_loss += 1 + valp_mpz(mpz_class(k), p, 64);
    const int W = target_aprec + static_cast<int>(factorial_valuation(
                                     static_cast<unsigned long>(D), p)) +
                  static_cast<int>(denom_loss) + 4;
    FieldDesc qp{p, 0, W};
    PadicElement clift = c.assume_precision(W);
    std::vector<PadicElement> S = theta_t_series(qp, gamma, D, W);
    for (auto& x : S) x = x * clift;
    std::vector<PadicElement> sum(static_cast<size_t>(D) + 1, PadicElement::zero_at(qp, W));
    sum[0] = PadicElement::one(qp).assume_precision(W);
    std::vector<PadicElement> term = sum;
    for (int k = 1; k <= D; ++k) {
        term = ps_mul(term, S, D, qp);
        // divide the whole term by k
        long vk = valp_mpz(mpz_class(k), p, 64);
        mpz_class kunit(k);
        if (vk > 0)
            mpz_divexact(kunit.get_mpz_t(), kunit.get_mpz_t(),
                         pow_p(p, static_cast<unsigned long>(vk)).get_mpz_t());
        for (auto& x : term) {
            if (kunit != 1) {
                mpz_class mod = pow_p(
                    p, static_cast<unsigned long>(std::max(1, x.aprec() + x.shift() + 2)));
                mpz_class kinv;
                mpz_invert(kinv.get_mpz_t(), kunit.get_mpz_t(), mod.get_mpz_t());
                x = x.mul_mpz(kinv).with_aprec(x.aprec());
            }
            if (vk > 0) x = x.divide_by_p_power(vk);
        }
        for (int i = 0; i <= D; ++i) sum[static_cast<size_t>(i)] =
                                         sum[static_cast<size_t>(i)] + term[static_cast<size_t>(i)];
    }
    for (auto& x : sum) {
        if (x.aprec() < target_aprec)
            throw std::logic_error("internal: t-composition lost more precision than budgeted");
        x = x.with_aprec(target_aprec);
    }
    return sum;
}

std::vector<mpz_class> binomial_t_series(const mpz_class& s, int D) {
    std::vector<mpz_class> out(static_cast<size_t>(D) + 1);
    out[0] = 1;
    for (int k = 1; k <= D; ++k) {
        // C(s, k) = C(s, k-1) * (s - k + 1) / k, exact over Z for integer s
        out[static_cast<size_t>(k)] = out[static_cast<size_t>(k - 1)] * (s - (k - 1));
        mpz_divexact_ui(out[static_cast<size_t>(k)].get_mpz_t(),
                        out[static_cast<size_t>(k)].get_mpz_t(), static_cast<unsigned long>(k));
    }
    return out;
}

}  // namespace periods
