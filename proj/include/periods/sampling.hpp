#ifndef PERIODS_SAMPLING_HPP
#define PERIODS_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "periods/dist.hpp"
#include "periods/galois.hpp"
#include "periods/padic.hpp"
#include "periods/weight.hpp"

namespace periods {

// Seeded generation of random elements, points and distributions for
// property tests and the CLI sampling drivers. Deterministic for fixed seed.
class Sampler {
public:
    explicit Sampler(uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    uint64_t uniform(uint64_t lo, uint64_t hi);  // inclusive bounds
    mpz_class mpz_below(const mpz_class& bound);

    // Random element of O_K at the field's default precision.
    PadicElement integral(const FieldDesc& f);
    PadicElement unit(const FieldDesc& f);
    // Random element with exact valuation v (denominator must divide e).
    PadicElement with_valuation(const FieldDesc& f, const Rat& v);
    // Z_p exponent for binom_pow tests.
    PadicElement zp_integer(const FieldDesc& qp);

    // Weight-space point psi with val(t) in the level-n window; mixes exact
    // level-n parameters (ramified when needed) with deeper ones.
    WeightPoint weight_point_in_level(long p, int n, int N, bool exact_level);
    // Nontrivial character whose classify() is exactly n when feasible.
    WeightPoint generic_point(long p, int n, int N);

    // Bounded distribution at the given level with a valid C = p^{C_exp}
    // certificate; moments sampled to saturate the certificate loosely.
    BoundedDistribution distribution(long p, int level, int M, int N, long C_exp = 0);

    // chi = 1 mod p^{vmin} (exact valuation vmin when exact, >= vmin otherwise).
    GaloisElement galois_element(long p, int vmin, int N, bool exact_margin);

private:
    std::mt19937_64 rng_;
};

}  // namespace periods

#endif
