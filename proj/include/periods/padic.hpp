#ifndef PERIODS_PADIC_HPP
#define PERIODS_PADIC_HPP

#include <gmpxx.h>

#include <vector>

#include "periods/field.hpp"
#include "periods/rational.hpp"

namespace periods {

// Valuation of an element, normalized so val(p) = 1. Either an exact rational
// with denominator dividing the ramification index, or a certified floor for
// elements indistinguishable from zero at the tracked precision.
struct Valuation {
    bool exact;
    Rat value;  // the valuation, or a lower bound when !exact

    static Valuation of(const Rat& v) { return {true, v}; }
    static Valuation at_least(const Rat& v) { return {false, v}; }

    // Certified lower bound in both cases.
    const Rat& floor() const { return value; }
    bool operator==(const Valuation&) const = default;
};

// Element of Q_p (m = 0) or Q_p(zeta_{p^m}) at capped absolute precision.
//
// Representation: x = p^{-shift} * sum_i c_i zeta^i with integer coefficients
// c_i reduced mod p^{aprec+shift}. The element is known up to an error of
// valuation >= aprec; divisions by powers of p lower aprec accordingly and
// raise shift, so negative valuations and lost digits are both tracked
// exactly. Canonical form: shift is minimal (not all c_i divisible by p when
// shift > 0) and coefficients lie in [0, p^{aprec+shift}).
//
// Values are immutable after construction; all operations are pure.
class PadicElement {
public:
    PadicElement() : PadicElement(zero_at(FieldDesc{}, FieldDesc{}.N)) {}

    static PadicElement from_integer(const FieldDesc& f, const mpz_class& z);
    static PadicElement from_integer(const FieldDesc& f, const mpz_class& z, int aprec);
    static PadicElement from_coeffs(const FieldDesc& f, std::vector<mpz_class> coeffs, int aprec,
                                    int shift = 0);
    static PadicElement zero_at(const FieldDesc& f, int aprec);
    static PadicElement zero(const FieldDesc& f) { return zero_at(f, f.N); }
    static PadicElement one(const FieldDesc& f) { return from_integer(f, 1); }
    // zeta_{p^m}^k in the level-m field (m >= 1), any integer exponent k.
    static PadicElement zeta_power(const FieldDesc& f, long k);
    static PadicElement zeta(const FieldDesc& f) { return zeta_power(f, 1); }

    const FieldDesc& field() const { return field_; }
    int aprec() const { return aprec_; }
    int shift() const { return shift_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    // True when every stored coefficient vanishes, i.e. |x| <= p^{-aprec}.
    bool is_precision_zero() const;

    // Reduce the tracked precision (a is clamped to <= aprec).
    PadicElement with_aprec(int a) const;
    // Reinterpret the stored residue as exact to higher precision. Only for
    // values that are exact integers by construction (generators, torsion
    // data); callers own the route-independence argument.
    PadicElement assume_precision(int a) const;

    PadicElement promoted(int m2) const;  // embed into cyclotomic level m2 >= m

    friend PadicElement operator+(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator-(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator-(const PadicElement& a);
    friend PadicElement operator*(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator/(const PadicElement& a, const PadicElement& b);

    PadicElement mul_mpz(const mpz_class& k) const;
    PadicElement pow_ui(unsigned long k) const;
    // Inverse of p^j * unit elements (exact integer valuation). Fractional
    // positive valuation is not invertible here and raises NON_UNIT.
    PadicElement invert() const;
    // x / p^v (v may be negative). Lowers aprec by v and raises shift.
    PadicElement divide_by_p_power(long v) const;

    // Exact valuation via the norm (resultant with the cyclotomic modulus),
    // or a certified floor for precision-zero elements.
    Valuation valuation() const;
    // Cheap certified lower bound: min_i val_p(c_i) - shift.
    Rat val_lower_bound() const;

    // Image in the residue field F_p (evaluate at zeta = 1, reduce mod p).
    // Requires val(x) >= 0.
    long residue() const;

    bool identical(const PadicElement& o) const;  // same field/precision/bits

private:
    PadicElement(FieldDesc f, int aprec, int shift, std::vector<mpz_class> c);
    void normalize();

    FieldDesc field_;
    int aprec_;
    int shift_;
    std::vector<mpz_class> c_;
};

// --- module operations ---------------------------------------------------

Valuation val(const PadicElement& x);

// Unique (p-1)-st root of unity congruent to x mod p, by Frobenius-fixpoint
// iteration. Q_p units only.
PadicElement teichmuller(const PadicElement& x);

// <x> = x / teichmuller(x), lies in 1 + pZ_p.
PadicElement angle(const PadicElement& x);

// log_p(1+x) = sum_{k>=1} (-1)^{k+1} x^k / k, for val(x) > 0.
// Roots: log1p(zeta - 1) = 0 exactly for p-power roots of unity zeta.
PadicElement log1p(const PadicElement& x);

// exp_p(x) = sum x^k / k!, for val(x) > 1/(p-1) strictly; val(x) <= 1/(p-1)
// raises EXP_DIVERGES. On the common domain exp(log1p(t)) = 1 + t and
// log1p(exp(x) - 1) = x. (Some references print the first identity in the
// variant form exp_p(log_p(1+x)) = x; this library uses the standard form.)
PadicElement exp(const PadicElement& x);

// (1+t)^s = sum_k C(s,k) t^k for s in Z_p, val(t) > 0. C(s,k) in Z_p, so the
// k-th term has valuation >= k*val(t).
PadicElement binom_pow(const PadicElement& t, const PadicElement& s);

// Ring automorphism of Q_p(zeta_{p^m}) determined by zeta |-> zeta^a,
// gcd(a, p) = 1. Fixes Q_p; preserves valuations and tracked precision.
PadicElement ext_automorphism(const PadicElement& x, long a);

// --- comparison helpers ---------------------------------------------------

// x == y modulo p^{min(aprec_x, aprec_y)} in the joined field.
bool equal_at_precision(const PadicElement& x, const PadicElement& y);
int common_precision(const PadicElement& x, const PadicElement& y);

// --- small numeric helpers shared across modules --------------------------

mpz_class pow_p(long p, unsigned long e);
long digit_sum_base_p(unsigned long k, long p);
// val_p(k!) = (k - s_p(k)) / (p-1).
long factorial_valuation(unsigned long k, long p);
long valp_mpz(const mpz_class& z, long p, long cap);

}  // namespace periods

#endif
