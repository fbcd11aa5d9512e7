#ifndef PERIODS_FOURIER_HPP
#define PERIODS_FOURIER_HPP

#include "periods/galois.hpp"

namespace periods {

// Truncated power series sum_k b_k T^k convergent on |T| < p^{-n} for the
// filtration level n: membership certificate |b_k| <= bound * p^{kn} for all
// stored k.
class BSenElement {
public:
    BSenElement(std::vector<PadicElement> coeffs, int filtration_level, Magnitude bound);

    int filtration_level() const { return level_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<PadicElement>& coeffs() const { return coeffs_; }
    const PadicElement& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }
    const Magnitude& bound() const { return bound_; }
    const FieldDesc& field() const { return field_; }

    Magnitude coeff_bound(int k) const;

private:
    std::vector<PadicElement> coeffs_;
    int level_;
    Magnitude bound_;
    FieldDesc field_;
};

BSenElement bsen_constant(const FieldDesc& f, const PadicElement& c, int level);

// F_n(mu) = mu(exp(T theta)) = sum_k mu(theta^k)/k! T^k. The division by k!
// is the dominant precision sink; each coefficient carries its own reduced
// tracked precision so round trips compare at the honest precision.
// Filtration level = mu.level, bound = C_mu.
BSenElement fourier(const BoundedDistribution& mu);

// Inverse construction: the distribution at level m+1 with moments k! b_k
// (m = filtration level of P); bound certificate carries over.
BoundedDistribution inverse_fourier(const BSenElement& P, int M);

// Least level n at which the stored coefficients satisfy |b_k| <= C p^{kn}
// (the separate minimal-level query; inverse_fourier itself targets m+1).
int minimal_filtration_level(const BSenElement& P, const Magnitude& C);

// Cauchy product; coefficients through min(D_P, D_Q) are exact.
BSenElement multiply(const BSenElement& P, const BSenElement& Q);

// g . P: coefficientwise Galois action followed by T |-> T + log_p(chi(g)).
// Requires filtration_level <= g.level_floor (and chi = 1 mod p at level 0).
BSenElement colmez_action(const GaloisElement& g, const BSenElement& P);

// d/dT. Under the Fourier transform this is the operator mu -> mu(f theta)
// on distributions (the sign convention follows that correspondence; some
// references name the negative of this operator).
BSenElement derivative(const BSenElement& P);

bool equal_at_tracked_precision(const BSenElement& a, const BSenElement& b);

}  // namespace periods

#endif
