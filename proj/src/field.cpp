#include "periods/field.hpp"

#include <gmpxx.h>

namespace periods {

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    mpz_class z = p;
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

void FieldDesc::validate() const {
    if (!is_odd_prime(p)) throw precondition_error("BAD_PRIME", "p must be an odd prime");
    if (N < 1) throw precondition_error("BAD_PRECISION", "precision N must be >= 1");
    if (m < 0) throw precondition_error("BAD_LEVEL", "cyclotomic level m must be >= 0");
}

FieldDesc join_fields(const FieldDesc& a, const FieldDesc& b) {
    if (a.p != b.p)
        throw precondition_error("FIELD_MISMATCH", "elements live over different primes");
    FieldDesc f = a;
    f.m = std::max(a.m, b.m);
    f.N = std::max(a.N, b.N);
    return f;
}

}  // namespace periods
