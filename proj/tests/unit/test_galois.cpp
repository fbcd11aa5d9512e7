#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "periods/galois.hpp"
#include "periods/sampling.hpp"

using namespace periods;

namespace {
const FieldDesc Q3{3, 0, 24};
const FieldDesc F31{3, 1, 24};
const FieldDesc F32{3, 2, 24};

PadicElement zp(const FieldDesc& f, long v) { return PadicElement::from_integer(f, v); }

// test-side scalar multiple of a distribution
BoundedDistribution scale_dist(const BoundedDistribution& mu, const PadicElement& c) {
    std::vector<PadicElement> xs;
    for (const auto& x : mu.moments()) xs.push_back(c * x);
    Magnitude Cc = Magnitude::pow_p(-c.valuation().floor());
    return BoundedDistribution(mu.level(), std::move(xs), mu.bound() * Cc);
}

// the character x -> <x>^k = x^k tau(x)^{-k}: t = gamma^k - 1
WeightPoint power_character(long p, long k, int N) {
    FieldDesc qp{p, 0, N};
    PadicElement g = PadicElement::from_integer(qp, default_gamma(p), N + 4);
    PadicElement gk = k >= 0 ? g.pow_ui(static_cast<unsigned long>(k))
                             : g.invert().pow_ui(static_cast<unsigned long>(-k));
    return WeightPoint(0, gk - PadicElement::one(qp), default_gamma(p));
}
}  // namespace

TEST_CASE("act_on_point") {
    Sampler s(3);
    GaloisElement id = galois_identity(3, 24, 3);
    WeightPoint psi = s.weight_point_in_level(3, 2, 24, true);
    WeightPoint same = act_on_point(id, psi);
    CHECK(equal_at_precision(same.t, psi.t));

    // Q_p-rational points are fixed by any g
    GaloisElement g = s.galois_element(3, 1, 24, true);
    WeightPoint rational(0, zp(Q3, 3), default_gamma(3));
    CHECK(equal_at_precision(act_on_point(g, rational).t, rational.t));

    // torsion characters transform by chi on the torsion index
    WeightPoint tors = torsion_char(F32, 2, 1);
    WeightPoint moved = act_on_point(g, tors);
    long a = g.chi_mod_pm(2);
    WeightPoint expect = torsion_char(F32, 2, a);
    CHECK(equal_at_precision(moved.t, expect.t));
}

TEST_CASE("act_on_function") {
    Sampler s(7);
    GaloisElement g = s.galois_element(3, 1, 24, false);

    // Q_p coefficients are fixed
    TateSeries f = TateSeries::polynomial(1, {zp(Q3, 5), zp(Q3, 3), PadicElement::one(Q3)});
    TateSeries fg = act_on_function(g, f);
    for (int k = 0; k <= f.degree(); ++k)
        CHECK(equal_at_precision(fg.coeff(k), f.coeff(k)));

    // group law on coefficients in Q_p(zeta_9)
    std::vector<PadicElement> cs{s.integral(F32), s.integral(F32), s.integral(F32)};
    TateSeries h = TateSeries::polynomial(1, cs);
    GaloisElement g2 = s.galois_element(3, 1, 24, false);
    TateSeries lhs = act_on_function(g2, act_on_function(g, h));
    GaloisElement props(g2.chi() * g.chi(), 3);
    TateSeries rhs = act_on_function(props, h);
    for (int k = 0; k <= h.degree(); ++k)
        CHECK(equal_at_precision(lhs.coeff(k), rhs.coeff(k)));

    // isometry of the sup norm
    CHECK(sup_norm(act_on_function(g, h)) == sup_norm(h));
}

TEST_CASE("act_on_distribution: identity, scalars") {
    Sampler s(11);
    GaloisElement id = galois_identity(3, 24, 3);
    for (int n = 0; n <= 2; ++n) {
        BoundedDistribution mu = s.distribution(3, n, 10, 24);
        CHECK(equal_at_tracked_precision(act_on_distribution(id, mu), mu));
    }

    // Q_p-scalar multiples of mu_1 are fixed (margin v > n keeps it sharp)
    for (int n = 0; n <= 2; ++n) {
        GaloisElement g = s.galois_element(3, n + 2, 24, false);
        PadicElement c = s.unit(Q3);
        BoundedDistribution cmu = scale_dist(dirac_identity(Q3, n, 10), c);
        BoundedDistribution acted = act_on_distribution(g, cmu);
        CHECK(equal_at_tracked_precision(acted, cmu));
        CHECK(acted.moment(0).aprec() >= 8);  // certificates stay sharp off the boundary
    }

    // level precondition: chi = 1 mod p^n required
    GaloisElement shallow = s.galois_element(3, 1, 24, true);  // v = 1 exactly
    BoundedDistribution mu2 = s.distribution(3, 2, 8, 24);
    CHECK_THROWS_AS(act_on_distribution(shallow, mu2), precondition_error);
}

TEST_CASE("action law g(g'(mu)) = (gg')(mu)") {
    Sampler s(13);
    for (int n = 0; n <= 2; ++n) {
        for (int it = 0; it < 4; ++it) {
            GaloisElement g = s.galois_element(3, n + 1, 24, false);
            GaloisElement g2 = s.galois_element(3, n + 1, 24, false);
            BoundedDistribution mu = s.distribution(3, n, 10, 24);
            BoundedDistribution lhs = act_on_distribution(g, act_on_distribution(g2, mu));
            GaloisElement prod(g.chi() * g2.chi(), 3);
            BoundedDistribution rhs = act_on_distribution(prod, mu);
            CHECK(equal_at_tracked_precision(lhs, rhs));
            CHECK(lhs.moment(0).aprec() >= 6);
        }
    }
}

TEST_CASE("Dirac transformation law") {
    Sampler s(17);
    for (int n = 1; n <= 2; ++n) {
        for (int it = 0; it < 6; ++it) {
            // margin v >= n+1 so both routes carry sharp certificates
            GaloisElement g = s.galois_element(3, n + 1, 24, false);
            WeightPoint psi = s.weight_point_in_level(3, n, 24, it % 2 == 0);
            BoundedDistribution lhs = act_on_distribution(g, dirac(psi, n, 10));

            WeightPoint gpsi = act_on_point(g, psi);
            PadicElement th = theta(gpsi);
            PadicElement logchi =
                log1p(g.chi() - PadicElement::one(Q3).with_aprec(g.chi().aprec()));
            PadicElement factor = exp(th * logchi);
            BoundedDistribution rhs = scale_dist(dirac(gpsi, n, 10), factor);
            CHECK(equal_at_tracked_precision(lhs, rhs));
        }
    }
    // torsion point: g moves the Dirac to the twisted torsion Dirac; the
    // factor is exp(0) = 1
    GaloisElement g = s.galois_element(3, 2, 24, false);
    WeightPoint tors = torsion_char(F32, 2, 1);
    BoundedDistribution lhs = act_on_distribution(g, dirac(tors, 2, 8));
    BoundedDistribution rhs = dirac(act_on_point(g, tors), 2, 8);
    CHECK(equal_at_tracked_precision(lhs, rhs));
}

TEST_CASE("power-character eigenvalue law") {
    Sampler s(19);
    // g . mu_psi = chi^k mu_psi for psi(x) = x^k tau(x)^{-k} (v >= 1 action)
    for (long k : {0L, 1L, 2L, 5L, -1L}) {
        WeightPoint psi = power_character(3, k, 24);
        BoundedDistribution mu = dirac(psi, 1, 10);
        GaloisElement g = s.galois_element(3, 2, 24, false);
        BoundedDistribution lhs = act_on_distribution(g, mu);
        PadicElement chik = k >= 0 ? g.chi().pow_ui(static_cast<unsigned long>(k))
                                   : g.chi().invert().pow_ui(static_cast<unsigned long>(-k));
        BoundedDistribution rhs = scale_dist(mu, chik);
        CHECK(equal_at_tracked_precision(lhs, rhs));
    }
}

TEST_CASE("level-0 full action") {
    Sampler s(23);
    // chi a (p-1)-st root of unity acts trivially on Q_p-moment distributions
    PadicElement chi = teichmuller(zp(Q3, 2));  // -1
    GaloisElement g(chi, 3);
    BoundedDistribution mu = s.distribution(3, 0, 10, 24);
    CHECK(equal_at_tracked_precision(act_level0_full(g, mu), mu));
    // and the plain level-n action is not defined for it
    CHECK_THROWS_AS(act_on_distribution(g, mu), precondition_error);

    // agreement with act_on_distribution when val(chi - 1) >= 1
    for (int it = 0; it < 5; ++it) {
        GaloisElement h = s.galois_element(3, 1, 24, false);
        BoundedDistribution nu = s.distribution(3, 0, 10, 24);
        CHECK(equal_at_tracked_precision(act_level0_full(h, nu), act_on_distribution(h, nu)));
    }

    // eigenvalue law with arbitrary unit chi: g.mu_psi = chi^k tau(chi)^{-k} mu_psi.
    // At level 0 the character <x>^k needs p | k (val(gamma^k - 1) >= p/(p-1)).
    for (long k : {3L, 6L}) {
        WeightPoint psi = power_character(3, k, 24);
        REQUIRE(classify(psi).level == 0);
        BoundedDistribution d = dirac(psi, 0, 10);
        GaloisElement u(s.unit(Q3), 3);
        BoundedDistribution lhs = act_level0_full(u, d);
        PadicElement ang = angle(u.chi());
        BoundedDistribution rhs = scale_dist(d, ang.pow_ui(static_cast<unsigned long>(k)));
        CHECK(equal_at_tracked_precision(lhs, rhs));
    }

    CHECK_THROWS_AS(act_level0_full(g, s.distribution(3, 1, 6, 24)), precondition_error);
}

TEST_CASE("theta_op equivariance and inclusion compatibility") {
    Sampler s(29);
    for (int n = 0; n <= 1; ++n) {
        GaloisElement g = s.galois_element(3, n + 1, 24, false);
        BoundedDistribution mu = s.distribution(3, n, 12, 24);
        BoundedDistribution lhs = theta_op(act_on_distribution(g, mu));
        BoundedDistribution rhs = act_on_distribution(g, theta_op(mu));
        CHECK(equal_at_tracked_precision(lhs, rhs));

        // include_level compatibility for g in G_{n+1}
        BoundedDistribution inc_then = act_on_distribution(g, include_level(mu, n + 1));
        BoundedDistribution then_inc = include_level(act_on_distribution(g, mu), n + 1);
        CHECK(equal_at_tracked_precision(inc_then, then_inc));
    }
}

TEST_CASE("non-scalar distributions are moved by some g") {
    Sampler s(31);
    int moved = 0;
    for (int it = 0; it < 10; ++it) {
        int n = static_cast<int>(s.uniform(0, 1));
        // a Dirac at a point with theta != 0 is not a scalar multiple of mu_1
        WeightPoint psi = s.weight_point_in_level(3, n, 24, false);
        BoundedDistribution mu = dirac(psi, n, 10);
        GaloisElement g = s.galois_element(3, n + 1, 24, true);
        if (!equal_at_tracked_precision(act_on_distribution(g, mu), mu)) ++moved;
    }
    CHECK(moved >= 8);  // the odd fixed point can occur only by precision collapse
}
