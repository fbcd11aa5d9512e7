#ifndef PERIODS_TATE_HPP
#define PERIODS_TATE_HPP

#include <vector>

#include "periods/rational.hpp"
#include "periods/weight.hpp"

namespace periods {

// Truncated analytic function on X_n in the coordinate theta: the stored
// polynomial part sum_{k<=D} a_k theta^k plus an unstored remainder r with a
// certified sup-norm bound ||r||_sup <= tail_bound. Constructors must supply
// a proof-backed tail bound; free-form series are admitted only as
// polynomials (tail 0).
//
// Coefficient weights: |a_k| p^{k(n - 1/(p-1))}.
class TateSeries {
public:
    TateSeries(int level, std::vector<PadicElement> coeffs, Magnitude tail_bound);

    static TateSeries polynomial(int level, std::vector<PadicElement> coeffs);
    static TateSeries constant(int level, const PadicElement& c);
    static TateSeries theta_monomial(int level, const FieldDesc& f, int k);  // theta^k

    int level() const { return level_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<PadicElement>& coeffs() const { return coeffs_; }
    const PadicElement& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }
    const Magnitude& tail_bound() const { return tail_; }
    const FieldDesc& field() const { return field_; }

    // Weight exponent n - 1/(p-1) of theta at this level.
    Rat weight_exponent() const;
    // Certified upper bound p^{...} on |a_k|; exact unless a_k is
    // precision-zero, in which case the precision floor is used.
    Magnitude coeff_bound(int k) const;

private:
    int level_;
    std::vector<PadicElement> coeffs_;
    Magnitude tail_;
    FieldDesc field_;
};

// sup over k of |a_k| p^{k(n-1/(p-1))}, combined with the tail bound. An
// upper bound in general; exact whenever it is attained by a coefficient of
// exactly known size dominating the tail. (Read as the supremum over all k.)
Magnitude sup_norm(const TateSeries& f);

// Cauchy product. Result degree min(Df+Dg, max(Df, Dg, 64)); coefficients
// dropped above that fold into the remainder bound by the ultrametric rule.
TateSeries mul(const TateSeries& f, const TateSeries& g);

// exp_p(c * theta) = sum_k c^k/k! theta^k, analytic at level n for
// val(c) >= n; weighted coefficient norms are <= 1 there. val(c) < n raises
// EXP_SERIES_LEVEL.
TateSeries exp_theta_series(const PadicElement& c, int level, int D);

// Translation (T_phi f)(psi) = f(phi psi): composition with
// theta |-> theta(phi) + theta, i.e. b_m = sum_{k>=m} a_k C(k,m) theta(phi)^{k-m}.
// Sup-norm isometric, so the remainder bound carries over unchanged.
TateSeries translate(const TateSeries& f, const QuotientPoint& phi);

struct EvalResult {
    PadicElement value;
    Magnitude error;  // certified absolute error from the remainder bound
};

// Point evaluation sum a_k theta(psi)^k with a certified error bound.
EvalResult evaluate(const TateSeries& f, const QuotientPoint& psi);

// --- t-coordinate utilities (change of variables on W^0_n) ----------------
//
// The disk coordinate t (psi(gamma) = 1+t) and the quotient coordinate theta
// coexist; these helpers carry the change of variables used to check the
// quotient-structure series identity exp_p(p^n log_p(gamma) theta) = (1+t)^{p^n}.

// Coefficients in t of theta(1+t) = log_p(1+t)/log_p(gamma), degrees 0..D,
// computed at internal precision aprec (exact inputs allow raising it).
std::vector<PadicElement> theta_t_series(const FieldDesc& f, const mpz_class& gamma, int D,
                                         int aprec);

// Coefficients in t of exp_p(c * theta(1+t)) through degree D, by series
// composition. c exact integer (e.g. p^n log_p(gamma) is passed as c_int
// times log: use the element overload).
std::vector<PadicElement> exp_theta_in_t(const PadicElement& c, const mpz_class& gamma, int D,
                                         int target_aprec);

// Binomial coefficients C(s, j) of (1+t)^s for an exact integer s.
std::vector<mpz_class> binomial_t_series(const mpz_class& s, int D);

}  // namespace periods

#endif
