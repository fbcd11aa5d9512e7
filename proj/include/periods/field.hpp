#ifndef PERIODS_FIELD_HPP
#define PERIODS_FIELD_HPP

#include <stdexcept>
#include <string>

namespace periods {

// Error carrying a short machine-readable code, surfaced by the CLI as exit 2.
class precondition_error : public std::domain_error {
public:
    precondition_error(std::string code, const std::string& what)
        : std::domain_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Descriptor of Q_p (m = 0) or the cyclotomic extension Q_p(zeta_{p^m}).
// The modulus is the p^m-th cyclotomic polynomial
//   Phi_{p^m}(X) = sum_{j=0}^{p-1} X^{j * p^{m-1}},
// so the extension is totally ramified of degree e = p^{m-1}(p-1) and every
// valuation is a rational with denominator dividing e (val(p) = 1).
struct FieldDesc {
    long p = 3;  // odd prime
    int m = 0;   // cyclotomic level, 0 = Q_p
    int N = 24;  // default absolute precision target, in powers of p

    int degree() const {
        if (m == 0) return 1;
        long e = p - 1;
        for (int i = 1; i < m; ++i) e *= p;
        return static_cast<int>(e);
    }
    int ram_index() const { return degree(); }

    // p^{m-1}, the gap between exponents of the sparse modulus.
    long submodulus_period() const {
        long q = 1;
        for (int i = 1; i < m; ++i) q *= p;
        return q;
    }

    void validate() const;

    bool operator==(const FieldDesc&) const = default;
};

// Least container field of the two operands (same p, max cyclotomic level).
FieldDesc join_fields(const FieldDesc& a, const FieldDesc& b);

bool is_odd_prime(long p);

}  // namespace periods

#endif
