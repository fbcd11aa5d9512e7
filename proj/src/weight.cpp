#include "periods/weight.hpp"

namespace periods {

mpz_class default_gamma(long p) { return mpz_class(1 + p); }

namespace {
void check_generator(const mpz_class& gamma, long p) {
    mpz_class d = gamma - 1;
    if (d <= 0 || !mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)) ||
        mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p * p)))
        throw precondition_error("BAD_GENERATOR",
                                 "gamma must generate 1+pZ_p (val(gamma-1) = 1)");
}

// log_p(gamma) at the requested precision; gamma is an exact integer so any
// precision is available.
PadicElement log_gamma(long p, const mpz_class& gamma, int aprec) {
    FieldDesc qp{p, 0, aprec};
    return log1p(PadicElement::from_integer(qp, gamma - 1, aprec));
}
}  // namespace

WeightPoint::WeightPoint(int i_, PadicElement t_, mpz_class gamma_)
    : i(0), t(std::move(t_)), gamma(std::move(gamma_)) {
    long pm1 = t.field().p - 1;
    i = static_cast<int>(((i_ % pm1) + pm1) % pm1);
    check_generator(gamma, t.field().p);
}

PadicElement WeightPoint::gamma_element(int aprec) const {
    FieldDesc qp{t.field().p, 0, aprec};
    return PadicElement::from_integer(qp, gamma, aprec);
}

WeightPoint trivial_character(const FieldDesc& f) {
    return WeightPoint(0, PadicElement::zero(f), default_gamma(f.p));
}

namespace {
// least n >= 0 with vt >= 1/(p^{n-1}(p-1)); thresholds p/(p-1), 1/(p-1), ...
int level_from_valuation(Rat vt, long p) {
    int n = 0;
    Rat threshold(p, p - 1);
    long denom = p - 1;
    while (vt < threshold) {
        ++n;
        threshold = Rat(1, denom);
        denom *= p;
    }
    return n;
}
}  // namespace

Classification classify(const WeightPoint& psi) {
    const long p = psi.field().p;
    const PadicElement& t = psi.t;
    Classification cls;
    if (t.is_precision_zero()) {
        // indistinguishable from the trivial character, which is torsion
        cls.level = level_from_valuation(Rat(t.aprec()), p);
        cls.torsion = true;
        return cls;
    }
    Valuation v = t.valuation();
    if (!(v.floor() > Rat(0)))
        throw precondition_error("OUTSIDE_DISK", "weight point needs val(t) > 0");
    cls.level = level_from_valuation(v.floor(), p);
    cls.torsion = false;
    PadicElement lg = log1p(t);
    if (lg.is_precision_zero()) {
        PadicElement one = PadicElement::one(t.field());
        PadicElement pw = one + t;
        for (int s = 0; s < cls.level; ++s) pw = pw.pow_ui(static_cast<unsigned long>(p));
        cls.torsion = equal_at_precision(pw, one);
    }
    return cls;
}

PadicElement theta(const WeightPoint& psi) {
    const PadicElement& t = psi.t;
    PadicElement lt = log1p(t);  // enforces val(t) > 0
    PadicElement lg = log_gamma(t.field().p, psi.gamma, t.aprec() + 6);
    return lt * lg.invert();
}

QuotientPoint quotient_class(const WeightPoint& psi) {
    return QuotientPoint{theta(psi), classify(psi).level};
}

QuotientPoint identity_class(const FieldDesc& f) {
    return QuotientPoint{PadicElement::zero(f), 0};
}

WeightPoint mul_points(const WeightPoint& a, const WeightPoint& b) {
    if (a.gamma != b.gamma)
        throw precondition_error("GAMMA_MISMATCH",
                                 "points use different generators of 1+pZ_p");
    FieldDesc f = join_fields(a.field(), b.field());
    PadicElement ta = a.t.promoted(f.m), tb = b.t.promoted(f.m);
    PadicElement t = ta + tb + ta * tb;
    return WeightPoint(a.i + b.i, std::move(t), a.gamma);
}

PadicElement eval_char(const WeightPoint& psi, const PadicElement& x) {
    if (x.field().m != 0 || x.is_precision_zero() || x.shift() != 0 || x.residue() == 0)
        throw precondition_error("NON_UNIT", "characters evaluate on units of Z_p");
    PadicElement tau = teichmuller(x);
    PadicElement ang = angle(x);
    PadicElement lg = log_gamma(x.field().p, psi.gamma, x.aprec() + 6);
    PadicElement s = log1p(ang - PadicElement::one(x.field())) * lg.invert();
    PadicElement head = tau.pow_ui(static_cast<unsigned long>(psi.i));
    return head * binom_pow(psi.t, s);
}

WeightPoint torsion_char(const FieldDesc& f, int n, long j) {
    if (n < 1) throw precondition_error("BAD_LEVEL", "torsion characters need n >= 1");
    if (j % f.p == 0)
        throw precondition_error("BAD_TWIST", "torsion index must be coprime to p");
    if (f.m < n)
        throw precondition_error("FIELD_TOO_SMALL",
                                 "coefficient field does not contain zeta_{p^n}");
    long step = 1;
    for (int s = 0; s < f.m - n; ++s) step *= f.p;  // zeta_{p^n} = zeta_{p^m}^{p^{m-n}}
    PadicElement z = PadicElement::zeta_power(f, j * step);
    return WeightPoint(0, z - PadicElement::one(f), default_gamma(f.p));
}

WeightPoint inverse_theta(const PadicElement& x, int n) {
    return inverse_theta(x, n, default_gamma(x.field().p));
}

WeightPoint inverse_theta(const PadicElement& x, int n, const mpz_class& gamma) {
    const long p = x.field().p;
    Rat lower = Rat(1, p - 1) - Rat(n);
    if (!x.is_precision_zero()) {
        Valuation v = x.valuation();
        if (v.floor() < lower)
            throw precondition_error("INVERSE_THETA_RANGE",
                                     "val(x) < 1/(p-1) - n: not in the level-n ball");
        if (!(v.floor() > Rat(1, p - 1) - Rat(1)))
            throw precondition_error(
                "INVERSE_THETA_RANGE",
                "val(x) <= 1/(p-1) - 1: preimage needs p^n-th roots outside the cyclotomic "
                "tower; use torsion twists instead");
    }
    PadicElement lg = log_gamma(p, gamma, x.aprec() + 6).promoted(x.field().m);
    PadicElement t = exp(lg * x) - PadicElement::one(x.field());
    return WeightPoint(0, std::move(t), gamma);
}

}  // namespace periods
