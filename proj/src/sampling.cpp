#include "periods/sampling.hpp"

namespace periods {

uint64_t Sampler::uniform(uint64_t lo, uint64_t hi) {
    // plain modulo keeps the stream identical across standard libraries
    return lo + rng_() % (hi - lo + 1);
}

mpz_class Sampler::mpz_below(const mpz_class& bound) {
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    mpz_class r = 0;
    for (size_t got = 0; got < bits + 64; got += 64) {
        r <<= 64;
        r += mpz_class(rng_());
    }
    return r % bound;
}

PadicElement Sampler::integral(const FieldDesc& f) {
    mpz_class mod = pow_p(f.p, static_cast<unsigned long>(f.N));
    std::vector<mpz_class> c(static_cast<size_t>(f.degree()));
    for (auto& x : c) x = mpz_below(mod);
    return PadicElement::from_coeffs(f, std::move(c), f.N);
}

PadicElement Sampler::unit(const FieldDesc& f) {
    for (;;) {
        PadicElement x = integral(f);
        if (!x.is_precision_zero() && x.residue() != 0) return x;
    }
}

PadicElement Sampler::with_valuation(const FieldDesc& f, const Rat& v) {
    long e = f.ram_index();
    Rat scaled = v * Rat(e);
    if (scaled.denominator() != 1)
        throw precondition_error("BAD_VALUATION",
                                 "requested valuation has denominator not dividing e");
    long long ve = scaled.numerator();
    long long c = ve >= 0 ? ve / e : -((-ve + e - 1) / e);  // floor division
    long long b = ve - c * e;
    PadicElement x = unit(f);
    if (b > 0) {
        PadicElement pi = PadicElement::zeta(f) - PadicElement::one(f);
        x = x * pi.pow_ui(static_cast<unsigned long>(b));
    }
    return x.divide_by_p_power(-c);
}

PadicElement Sampler::zp_integer(const FieldDesc& qp) {
    mpz_class mod = pow_p(qp.p, static_cast<unsigned long>(qp.N));
    return PadicElement::from_integer(qp, mpz_below(mod));
}

WeightPoint Sampler::weight_point_in_level(long p, int n, int N, bool exact_level) {
    int pick = exact_level ? n : static_cast<int>(uniform(0, static_cast<uint64_t>(n)));
    if (pick == 0) {
        FieldDesc qp{p, 0, N};
        long vv = static_cast<long>(uniform(2, 4));
        return WeightPoint(0, with_valuation(qp, Rat(vv)), default_gamma(p));
    }
    // exact level pick: val(t) in [1/(p^{pick-1}(p-1)), 1/(p^{pick-2}(p-1)))
    FieldDesc f{p, pick, N};
    long e = f.ram_index();  // p^{pick-1}(p-1)
    long a = static_cast<long>(uniform(1, static_cast<uint64_t>(p - 1)));
    return WeightPoint(0, with_valuation(f, Rat(a, e)), default_gamma(p));
}

WeightPoint Sampler::generic_point(long p, int n, int N) {
    WeightPoint psi = weight_point_in_level(p, n, N, false);
    psi.i = static_cast<int>(uniform(0, static_cast<uint64_t>(p - 2)));
    return psi;
}

BoundedDistribution Sampler::distribution(long p, int level, int M, int N, long C_exp) {
    FieldDesc qp{p, 0, N};
    const Rat w = Rat(level) - Rat(1, p - 1);
    std::vector<PadicElement> xs;
    xs.reserve(static_cast<size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) {
        PadicElement x = integral(qp);
        // saturate the certificate loosely: val(x_k) >= -floor(C_exp + k w)
        long long fl = rat_floor(Rat(C_exp) + Rat(k) * w);
        x = x.divide_by_p_power(fl);
        xs.push_back(std::move(x));
    }
    return from_moments(std::move(xs), level, Magnitude::pow_p(Rat(C_exp)));
}

GaloisElement Sampler::galois_element(long p, int vmin, int N, bool exact_margin) {
    FieldDesc qp{p, 0, N};
    if (vmin < 1) {
        // any unit chi
        for (;;) {
            PadicElement chi = unit(qp);
            if (!exact_margin) return GaloisElement(chi, 3);
            // exact margin 0: chi not = 1 mod p
            if ((chi - PadicElement::one(qp)).residue() != 0) return GaloisElement(chi, 3);
        }
    }
    mpz_class pv = pow_p(p, static_cast<unsigned long>(vmin));
    for (;;) {
        mpz_class u = mpz_below(pow_p(p, static_cast<unsigned long>(N - vmin)));
        if (exact_margin && mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p)))
            continue;
        if (exact_margin && u == 0) continue;
        mpz_class chi = 1 + pv * u;
        return GaloisElement(PadicElement::from_integer(qp, chi), 3);
    }
}

}  // namespace periods
