#ifndef PERIODS_DIST_HPP
#define PERIODS_DIST_HPP

#include <vector>

#include "periods/tate.hpp"

namespace periods {

// Bounded distribution on X_n stored by its truncated moment sequence
// x_k = mu(theta^k), k <= M, together with a certified bound constant C:
// |x_k| <= C p^{k(n-1/(p-1))} for all k (checked for stored k, declared for
// all). Moments determine the distribution; unstored moments are unknown but
// certificate-bounded, and certified truncation errors surface as reduced
// tracked precision on computed moments.
class BoundedDistribution {
public:
    BoundedDistribution(int level, std::vector<PadicElement> moments, Magnitude bound);

    int level() const { return level_; }
    int truncation() const { return static_cast<int>(moments_.size()) - 1; }
    const std::vector<PadicElement>& moments() const { return moments_; }
    const PadicElement& moment(int k) const { return moments_[static_cast<size_t>(k)]; }
    const Magnitude& bound() const { return bound_; }
    const FieldDesc& field() const { return field_; }

    Rat weight_exponent() const;  // n - 1/(p-1)

private:
    int level_;
    std::vector<PadicElement> moments_;
    Magnitude bound_;
    FieldDesc field_;
};

// Unique bounded distribution with the given moments; verifies the
// certificate |x_k| <= C p^{k(n-1/(p-1))} for every supplied moment and
// rejects sequences that violate it or whose size cannot be certified below
// the bound (CERT_VIOLATION).
BoundedDistribution from_moments(std::vector<PadicElement> moments, int level, Magnitude C);

// Dirac distribution mu_psi: moments theta(psi)^k, bound C = 1. The target
// level must contain the point (classify(psi) <= level).
BoundedDistribution dirac(const WeightPoint& psi, int level, int M);
BoundedDistribution dirac(const QuotientPoint& phi, int level, int M);
BoundedDistribution dirac_identity(const FieldDesc& f, int level, int M);  // mu_1

// mu(f) = sum_k a_k x_k over the common range, with a certified absolute
// error bound covering the dropped moments and the remainder of f.
EvalResult eval(const BoundedDistribution& mu, const TateSeries& f);

// Convolution (mu * nu)(f) = mu(phi -> nu(T_phi f)); on moments the binomial
// convolution z_k = sum_m C(k,m) x_m y_{k-m}, bound C_mu * C_nu.
BoundedDistribution convolve(const BoundedDistribution& mu, const BoundedDistribution& nu);

// f * mu : h -> mu(f h); moments sum_j a_j x_{j+k}, bound C * sup_norm(f).
// Moments beyond reach of the stored data lose tracked precision per the
// certificate.
BoundedDistribution scale_by_function(const TateSeries& f, const BoundedDistribution& mu);

// (Theta mu)(f) = mu(f theta): moment shift, bound C * p^{n-1/(p-1)}.
BoundedDistribution theta_op(const BoundedDistribution& mu);

// Reinterpret at a higher level n2 >= n (weights only loosen; injective).
BoundedDistribution include_level(const BoundedDistribution& mu, int n2);

bool equal_at_tracked_precision(const BoundedDistribution& a, const BoundedDistribution& b);

}  // namespace periods

#endif
