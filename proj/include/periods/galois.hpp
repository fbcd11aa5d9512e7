#ifndef PERIODS_GALOIS_HPP
#define PERIODS_GALOIS_HPP

#include "periods/dist.hpp"

namespace periods {

// Galois element represented by its cyclotomic character value chi(g) in
// Z_p^* — exactly the data the action formulas consume. It acts on
// Q_p(zeta_{p^m}) through zeta |-> zeta^{chi mod p^m} for m <= field_scope,
// and on D(X_n) for n <= level_floor = floor val(chi - 1) (n >= 1 needs
// chi = 1 mod p^n for the twisting factor to be analytic at level n).
class GaloisElement {
public:
    GaloisElement(PadicElement chi, int field_scope);

    const PadicElement& chi() const { return chi_; }
    int level_floor() const { return level_floor_; }
    int field_scope() const { return scope_m_; }

    long chi_mod_pm(int m) const;  // chi mod p^m, as automorphism exponent

private:
    PadicElement chi_;
    int scope_m_;
    int level_floor_;
};

GaloisElement galois_identity(long p, int N, int field_scope);

// g . psi: the parameter transforms by the coefficient automorphism; the
// component index is unchanged (chi acts trivially on mu_{p-1} mod p-power).
WeightPoint act_on_point(const GaloisElement& g, const WeightPoint& psi);

// f^g(psi) = g(f(g^{-1} psi)): on the theta-expansion simply the coefficient
// action (theta is defined over Q_p). Isometric; certificates carry over.
TateSeries act_on_function(const GaloisElement& g, const TateSeries& f);

// (g.mu)(f) = g(mu(f^{g^{-1}} exp_p(theta log_p chi(g)))). On moments:
// y_k = g((E mu)(theta^k)) with E = exp_theta_series(log_p chi(g), n).
// Requires val(chi - 1) >= max(n, 1). Preserves the bound certificate;
// truncation error from the unstored moments reduces tracked precision.
BoundedDistribution act_on_distribution(const GaloisElement& g, const BoundedDistribution& mu);

// Level-0 extension to every unit chi: the logarithm is read through the
// Teichmuller split, log_p(chi tau(chi)^{-1}), killing the (p-1)-st roots of
// unity. Agrees with act_on_distribution when chi = 1 mod p.
BoundedDistribution act_level0_full(const GaloisElement& g, const BoundedDistribution& mu);

}  // namespace periods

#endif
