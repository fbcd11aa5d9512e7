#include "periods/dist.hpp"

#include <algorithm>

namespace periods {

namespace {
FieldDesc common_field(const std::vector<PadicElement>& v) {
    FieldDesc f = v.front().field();
    for (const auto& x : v) f = join_fields(f, x.field());
    return f;
}

// Reduce the tracked precision of x so that a certified absolute error of
// size `err` is absorbed; no-op for a zero error. The working window W >= 1
// is preserved by construction of the floor.
PadicElement absorb_error(const PadicElement& x, const Magnitude& err) {
    if (err.is_zero()) return x;
    int floor = static_cast<int>(rat_floor(-err.exponent()));
    if (floor >= x.aprec()) return x;
    int lo = 1 - x.shift();
    return x.with_aprec(std::max(floor, lo));
}
}  // namespace

BoundedDistribution::BoundedDistribution(int level, std::vector<PadicElement> moments,
                                         Magnitude bound)
    : level_(level), moments_(std::move(moments)), bound_(bound) {
    if (level_ < 0) throw precondition_error("BAD_LEVEL", "distribution level must be >= 0");
    if (moments_.empty())
        throw precondition_error("BAD_MOMENTS", "a distribution needs at least x_0");
    field_ = common_field(moments_);
    for (auto& x : moments_) x = x.promoted(field_.m);
}

Rat BoundedDistribution::weight_exponent() const { return Rat(level_) - Rat(1, field_.p - 1); }

BoundedDistribution from_moments(std::vector<PadicElement> moments, int level, Magnitude C) {
    BoundedDistribution mu(level, std::move(moments), C);
    const Rat w = mu.weight_exponent();
    for (int k = 0; k <= mu.truncation(); ++k) {
        const PadicElement& x = mu.moment(k);
        if (C.is_zero()) {
            if (!x.is_precision_zero())
                throw precondition_error("CERT_VIOLATION",
                                         "zero bound requires vanishing moments");
            continue;
        }
        Rat allowed = C.exponent() + Rat(k) * w;  // need |x_k| <= p^{allowed}
        if (-x.val_lower_bound() <= allowed) continue;
        Valuation v = x.valuation();
        if (-v.floor() <= allowed) continue;
        throw precondition_error("CERT_VIOLATION",
                                 "moment " + std::to_string(k) +
                                     " violates the boundedness certificate");
    }
    return mu;
}

BoundedDistribution dirac(const QuotientPoint& phi, int level, int M) {
    if (phi.level > level)
        throw precondition_error("LEVEL_TOO_SMALL", "point lies outside the target level");
    const FieldDesc& f = phi.theta_value.field();
    std::vector<PadicElement> xs;
    xs.reserve(static_cast<size_t>(M) + 1);
    xs.push_back(PadicElement::one(f).assume_precision(
        std::max(f.N, phi.theta_value.aprec())));
    for (int k = 1; k <= M; ++k) xs.push_back(xs.back() * phi.theta_value);
    return BoundedDistribution(level, std::move(xs), Magnitude::one());
}

BoundedDistribution dirac(const WeightPoint& psi, int level, int M) {
    return dirac(quotient_class(psi), level, M);
}

BoundedDistribution dirac_identity(const FieldDesc& f, int level, int M) {
    std::vector<PadicElement> xs(static_cast<size_t>(M) + 1, PadicElement::zero(f));
    xs[0] = PadicElement::one(f);
    return BoundedDistribution(level, std::move(xs), Magnitude::one());
}

EvalResult eval(const BoundedDistribution& mu, const TateSeries& f) {
    if (mu.level() != f.level())
        throw precondition_error("LEVEL_MISMATCH", "distribution and function levels differ");
    FieldDesc fd = join_fields(mu.field(), f.field());
    const int K = std::min(mu.truncation(), f.degree());
    PadicElement acc = PadicElement::zero(fd);
    for (int k = 0; k <= K; ++k) acc = acc + f.coeff(k) * mu.moment(k);
    const Rat w = mu.weight_exponent();
    // dropped stored coefficients of f beyond the known moments
    Magnitude err = mu.bound() * f.tail_bound();
    for (int k = K + 1; k <= f.degree(); ++k)
        err = Magnitude::max(err,
                             f.coeff_bound(k) * mu.bound() * Magnitude::pow_p(Rat(k) * w));
    return EvalResult{std::move(acc), err};
}

BoundedDistribution convolve(const BoundedDistribution& mu, const BoundedDistribution& nu) {
    if (mu.level() != nu.level())
        throw precondition_error("LEVEL_MISMATCH", "convolution needs a common level");
    FieldDesc fd = join_fields(mu.field(), nu.field());
    const int M = std::min(mu.truncation(), nu.truncation());
    std::vector<PadicElement> z;
    z.reserve(static_cast<size_t>(M) + 1);
    mpz_class bin;
    for (int k = 0; k <= M; ++k) {
        PadicElement acc = PadicElement::zero(fd);
        for (int m = 0; m <= k; ++m) {
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(k),
                         static_cast<unsigned long>(m));
            acc = acc + mu.moment(m).mul_mpz(bin) * nu.moment(k - m);
        }
        z.push_back(std::move(acc));
    }
    return BoundedDistribution(mu.level(), std::move(z), mu.bound() * nu.bound());
}

BoundedDistribution scale_by_function(const TateSeries& f, const BoundedDistribution& mu) {
    if (mu.level() != f.level())
        throw precondition_error("LEVEL_MISMATCH", "function and distribution levels differ");
    FieldDesc fd = join_fields(mu.field(), f.field());
    const int M = mu.truncation();
    const int D = f.degree();
    const Rat w = mu.weight_exponent();
    std::vector<PadicElement> z;
    z.reserve(static_cast<size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) {
        PadicElement acc = PadicElement::zero(fd);
        for (int j = 0; j <= D && j + k <= M; ++j) acc = acc + f.coeff(j) * mu.moment(j + k);
        // certified truncation error: stored f-coefficients hitting unknown
        // moments, plus the remainder of f against theta^k
        Magnitude err = f.tail_bound() * mu.bound() * Magnitude::pow_p(Rat(k) * w);
        for (int j = std::max(0, M - k + 1); j <= D; ++j)
            err = Magnitude::max(err, f.coeff_bound(j) * mu.bound() *
                                          Magnitude::pow_p(Rat(j + k) * w));
        z.push_back(absorb_error(acc, err));
    }
    return BoundedDistribution(mu.level(), std::move(z), mu.bound() * sup_norm(f));
}

BoundedDistribution theta_op(const BoundedDistribution& mu) {
    if (mu.truncation() < 1)
        throw precondition_error("TRUNCATION_EXHAUSTED",
                                 "no moments left after the shift");
    std::vector<PadicElement> z(mu.moments().begin() + 1, mu.moments().end());
    Magnitude C = mu.bound() * Magnitude::pow_p(mu.weight_exponent());
    return BoundedDistribution(mu.level(), std::move(z), C);
}

BoundedDistribution include_level(const BoundedDistribution& mu, int n2) {
    if (n2 < mu.level())
        throw precondition_error("LEVEL_DECREASE", "inclusion only raises the level");
    return BoundedDistribution(n2, mu.moments(), mu.bound());
}

bool equal_at_tracked_precision(const BoundedDistribution& a, const BoundedDistribution& b) {
    if (a.level() != b.level()) return false;
    const int M = std::min(a.truncation(), b.truncation());
    for (int k = 0; k <= M; ++k)
        if (!equal_at_precision(a.moment(k), b.moment(k))) return false;
    return true;
}

}  // namespace periods
