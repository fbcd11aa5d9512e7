#include "periods/galois.hpp"

namespace periods {

GaloisElement::GaloisElement(PadicElement chi, int field_scope)
    : chi_(std::move(chi)), scope_m_(field_scope) {
    if (chi_.field().m != 0 || chi_.is_precision_zero() || chi_.shift() != 0 ||
        chi_.residue() == 0)
        throw precondition_error("NON_UNIT", "chi(g) must be a unit of Z_p");
    PadicElement d = chi_ - PadicElement::one(chi_.field()).with_aprec(chi_.aprec());
    if (d.is_precision_zero()) {
        level_floor_ = d.aprec();
    } else {
        Valuation v = d.valuation();
        level_floor_ = static_cast<int>(rat_floor(v.floor()));
    }
}

GaloisElement galois_identity(long p, int N, int field_scope) {
    FieldDesc qp{p, 0, N};
    return GaloisElement(PadicElement::one(qp), field_scope);
}

long GaloisElement::chi_mod_pm(int m) const {
    if (m <= 0) return 1;
    mpz_class pm = pow_p(chi_.field().p, static_cast<unsigned long>(m));
    mpz_class r = chi_.coeffs()[0] % pm;
    return r.get_si();
}

WeightPoint act_on_point(const GaloisElement& g, const WeightPoint& psi) {
    const int m = psi.field().m;
    if (m > g.field_scope())
        throw precondition_error("FIELD_SCOPE", "point coefficients outside the action scope");
    if (m == 0) return psi;
    PadicElement t = ext_automorphism(psi.t, g.chi_mod_pm(m));
    return WeightPoint(psi.i, std::move(t), psi.gamma);
}

TateSeries act_on_function(const GaloisElement& g, const TateSeries& f) {
    const int m = f.field().m;
    if (m > g.field_scope())
        throw precondition_error("FIELD_SCOPE", "coefficients outside the action scope");
    if (m == 0) return f;
    const long a = g.chi_mod_pm(m);
    std::vector<PadicElement> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(ext_automorphism(x, a));
    return TateSeries(f.level(), std::move(c), f.tail_bound());
}

namespace {
BoundedDistribution twisted_action(const GaloisElement& g, const BoundedDistribution& mu,
                                   const PadicElement& log_chi) {
    const int n = mu.level();
    TateSeries E = exp_theta_series(log_chi, n, mu.truncation());
    BoundedDistribution scaled = scale_by_function(E, mu);
    const int m = scaled.field().m;
    if (m > g.field_scope())
        throw precondition_error("FIELD_SCOPE", "moments outside the action scope");
    if (m == 0) return scaled;
    const long a = g.chi_mod_pm(m);
    std::vector<PadicElement> y;
    y.reserve(scaled.moments().size());
    for (const auto& x : scaled.moments()) y.push_back(ext_automorphism(x, a));
    return BoundedDistribution(n, std::move(y), scaled.bound());
}
}  // namespace

BoundedDistribution act_on_distribution(const GaloisElement& g, const BoundedDistribution& mu) {
    const int n = mu.level();
    if (g.level_floor() < std::max(n, 1))
        throw precondition_error("LEVEL_FLOOR",
                                 "need chi = 1 mod p^max(n,1) to act on D(X_n)");
    PadicElement log_chi =
        log1p(g.chi() - PadicElement::one(g.chi().field()).with_aprec(g.chi().aprec()));
    return twisted_action(g, mu, log_chi);
}

BoundedDistribution act_level0_full(const GaloisElement& g, const BoundedDistribution& mu) {
    if (mu.level() != 0)
        throw precondition_error("LEVEL_MISMATCH",
                                 "the extended action is defined at level 0 only");
    PadicElement ang = angle(g.chi());
    PadicElement log_chi = log1p(ang - PadicElement::one(ang.field()).with_aprec(ang.aprec()));
    return twisted_action(g, mu, log_chi);
}

}  // namespace periods
