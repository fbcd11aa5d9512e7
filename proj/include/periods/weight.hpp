#ifndef PERIODS_WEIGHT_HPP
#define PERIODS_WEIGHT_HPP

#include <gmpxx.h>

#include "periods/padic.hpp"

namespace periods {

// Character psi = tau^i * psi_t of Z_p^*, given by the component index i mod
// p-1 and the disk parameter t with val(t) > 0, so psi(gamma) = 1 + t. The
// topological generator gamma of 1 + pZ_p is stored per point (default 1+p)
// so that gamma-independence is a testable property rather than an assumption.
struct WeightPoint {
    int i = 0;
    PadicElement t;
    mpz_class gamma;

    WeightPoint() : t(), gamma(4) {}
    WeightPoint(int i_, PadicElement t_, mpz_class gamma_);

    const FieldDesc& field() const { return t.field(); }
    PadicElement gamma_element(int aprec) const;
};

WeightPoint trivial_character(const FieldDesc& f);
mpz_class default_gamma(long p);  // 1 + p

// Image theta(psi) on the quotient, together with the least level n whose
// ball of radius p^{n - 1/(p-1)} contains it.
struct QuotientPoint {
    PadicElement theta_value;
    int level = 0;
};

struct Classification {
    int level = 0;
    bool torsion = false;
};

// Least n >= 0 with val(t) >= 1/(p^{n-1}(p-1)), plus torsion detection:
// t is declared torsion when log1p(t) is precision-zero and (1+t)^{p^n} = 1
// at precision (guards against deep-valuation non-torsion t).
Classification classify(const WeightPoint& psi);

// theta(psi) = log_p(1+t) / log_p(gamma); additive in psi and independent of
// the choice of gamma. For psi of level n, val(theta) >= 1/(p-1) - n.
PadicElement theta(const WeightPoint& psi);

QuotientPoint quotient_class(const WeightPoint& psi);
QuotientPoint identity_class(const FieldDesc& f);

// Group law: component indices add mod p-1, parameters combine through
// (1+t)(1+t') = 1 + t''.
WeightPoint mul_points(const WeightPoint& a, const WeightPoint& b);

// psi(x) = tau(x)^i * psi_t(<x>) for a unit x of Z_p, where psi_t(<x>) =
// (1+t)^s with s = log_p<x> / log_p(gamma) in Z_p.
PadicElement eval_char(const WeightPoint& psi, const PadicElement& x);

// Torsion character with psi(gamma) = zeta_{p^n}^j; the coefficient field
// must contain zeta_{p^n} (f.m >= n).
WeightPoint torsion_char(const FieldDesc& f, int n, long j);

// Section of theta: psi with psi(gamma) = exp_p(log_p(gamma) x). Defined for
// val(x) >= 1/(p-1) - n and val(x) > 1/(p-1) - 1 (where the exponential
// converges; the full level-n preimage is reached by torsion twists).
WeightPoint inverse_theta(const PadicElement& x, int n);
WeightPoint inverse_theta(const PadicElement& x, int n, const mpz_class& gamma);

}  // namespace periods

#endif
