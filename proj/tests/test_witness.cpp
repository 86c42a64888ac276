#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "mulab/facegeom.hpp"
#include "mulab/rng.hpp"
#include "mulab/witness.hpp"

using namespace mulab;

namespace {

const double kPi = kTwoPi / 2.0;

TripleFn sphere2(std::complex<double> z0, std::complex<double> z1) {
    TripleFn a(2);
    a.set(0, z0);
    a.set(1, z1);
    return a;
}

// Sphere point whose anchor coordinate has modulus rho, phase arg; some other
// coordinate carries the norm.
TripleFn anchored_point(const Bundle& bd, std::size_t t0, double rho, double arg, Rng& rng) {
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b)
        a.set(b, PolarValue{rng.uniform(), rng.uniform(0.0, kTwoPi)});
    a.set(t0, PolarValue{rho, arg});
    std::size_t top = (t0 + 1) % bd.size();
    a.set(top, PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
    return a;
}

} // namespace

TEST_SUITE("witness") {

TEST_CASE("gate tables at breakpoints and on segments") {
    PiecewiseGate th = threshold_gate(0.4);
    CHECK(th(0.0) == 0.0);
    CHECK(th(0.2) == 0.0);
    CHECK(th(0.3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(th(0.4) == 1.0);
    CHECK(th(0.7) == 1.0);
    CHECK(th(1.0) == 1.0);
    CHECK(th(1.5) == 1.0);
    CHECK(th(-0.2) == 0.0);
    CHECK(th.lipschitz() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(threshold_gate(0.99)(1.0) == 1.0);

    PiecewiseGate pl = plateau_gate(0.5, 0.2);
    CHECK(pl(0.3) == 0.3);
    CHECK(pl(0.45) == 0.5);
    CHECK(pl(0.5) == 0.5);
    CHECK(pl(0.35) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(pl(0.8) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(pl(1.0) == 1.0);
    CHECK(gate_sup_distance(pl, identity_gate()) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(pl.lipschitz() == doctest::Approx(2.0).epsilon(1e-12));

    PiecewiseGate kl = kill_gate(0.2);
    CHECK(kl(0.05) == 0.0);
    CHECK(kl(0.2) == 0.2);
    CHECK(kl(0.6) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(identity_gate().lipschitz() == 1.0);
}

TEST_CASE("gate construction rejects malformed data") {
    CHECK_THROWS_AS(PiecewiseGate({0.1, 1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseGate({0.0, 1.0}, {0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseGate({0.0, 0.5, 0.5, 1.0}, {0.0, 0.2, 0.4, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseGate({0.0, 1.0}, {0.0, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseGate({0.0, 0.5, 1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseGate({0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(threshold_gate(0.0), std::domain_error);
    CHECK_THROWS_AS(threshold_gate(1.0), std::domain_error);
    CHECK_THROWS_AS(plateau_gate(0.5, 0.6), std::domain_error);
    CHECK_THROWS_AS(plateau_gate(1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(kill_gate(-0.1), std::domain_error);
}

TEST_CASE("gates act on moduli only and fix zeros") {
    TripleFn a = sphere2(std::polar(0.5, kPi / 3.0), {1.0, 0.0});
    TripleFn fixed = apply_gate(plateau_gate(0.5, 0.2), a);
    CHECK(polar_equal(fixed.at(0), a.at(0)));
    CHECK(polar_equal(fixed.at(1), a.at(1)));

    TripleFn cut = apply_gate(threshold_gate(0.4), sphere2({0.1, 0.0}, {1.0, 0.0}));
    CHECK(polar_equal(cut.at(0), PolarValue{0.0, 0.0}));
    CHECK(cut.modulus(1) == 1.0);

    TripleFn zero = apply_gate(kill_gate(0.3), sphere2({0.0, 0.0}, {1.0, 0.0}));
    CHECK(polar_equal(zero.at(0), PolarValue{0.0, 0.0}));

    TripleFn big(2);
    big.set(0, PolarValue{1.2, 0.0});
    CHECK_THROWS_AS(apply_gate(identity_gate(), big), std::domain_error);
}

TEST_CASE("gates contract sup distance by their lipschitz bound") {
    Bundle bd = Bundle::ring(4);
    for (std::size_t i = 0; i < 500; ++i) {
        Rng rng(task_seed(21, 0xA1, i));
        TripleFn a(4), b(4);
        for (std::size_t k = 0; k < 4; ++k) {
            a.set(k, PolarValue{rng.uniform(), rng.uniform(0.0, kTwoPi)});
            b.set(k, PolarValue{rng.uniform(), rng.uniform(0.0, kTwoPi)});
        }
        PiecewiseGate g = identity_gate();
        switch (i % 4) {
            case 0: g = threshold_gate(rng.uniform(0.05, 0.95)); break;
            case 1: {
                double level = rng.uniform(0.2, 0.8);
                g = plateau_gate(level, rng.uniform(0.3, 0.9) * std::min(level, 1.0 - level));
                break;
            }
            case 2: g = kill_gate(rng.uniform(0.05, 0.95)); break;
            default: break;
        }
        double lip = g.lipschitz();
        double lhs = sup_distance(apply_gate(g, a), apply_gate(g, b));
        double rhs = lip * sup_distance(a, b);
        CHECK(lhs <= rhs + 1e-12 * (1.0 + lip));
    }
}

TEST_CASE("unit retraction keeps phases and lands on the sphere") {
    TripleFn u = unit_retraction(sphere2({0.0, 0.5}, {1.0, 0.0}), 0.4);
    CHECK(polar_equal(u.at(0), PolarValue{1.0, std::atan2(0.5, 0.0)}));
    CHECK(u.norm() == 1.0);

    TripleFn v = unit_retraction(sphere2({0.1, 0.0}, {1.0, 0.0}), 0.4);
    CHECK(polar_equal(v.at(0), PolarValue{0.0, 0.0}));
    CHECK(v.modulus(1) == 1.0);

    TripleFn small(2);
    small.set(0, PolarValue{0.3, 0.0});
    small.set(1, PolarValue{0.3, 0.0});
    CHECK_THROWS_AS(unit_retraction(small, 0.4), std::domain_error);

    Bundle bd = Bundle::ring(3);
    for (std::size_t i = 0; i < 300; ++i) {
        Rng rng(task_seed(22, 0xA2, i));
        TripleFn a = anchored_point(bd, rng.below(3), rng.uniform(0.05, 0.95),
                                    rng.uniform(0.0, kTwoPi), rng);
        double eps = rng.uniform(0.01, 0.99);
        TripleFn r = unit_retraction(a, eps);
        REQUIRE(r.norm() == 1.0);
        for (std::size_t b = 0; b < 3; ++b) {
            if (a.modulus(b) >= eps) {
                REQUIRE(r.modulus(b) == 1.0);
                REQUIRE(r.argument(b) == a.argument(b));
            } else {
                REQUIRE(r.modulus(b) <= 1.0);
            }
        }
    }
}

TEST_CASE("opposite witness on the two point worked instance") {
    Bundle bd = Bundle::two_points(1.0);
    TripleFn a = sphere2({0.5, 0.0}, {1.0, 0.0});
    WitnessCertificate cert = opposite_face_witness(bd, a, 0, 0.2, 0.5);

    CHECK(cert.pass);
    CHECK(cert.approx_error == 0.0);
    CHECK(cert.pinned_matches_anchor);
    CHECK(std::abs(cert.witness.value(0) - std::complex<double>(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(cert.witness.value(1) - std::complex<double>(0.5, 0.0)) <= 1e-12);
    CHECK(cert.distance == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(cert.bound == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(cert.anchor_residual <= 1e-12);
    CHECK(cert.witness_norm <= 1.0 + 1e-12);

    // The witness lies in the face opposed to the anchor phase.
    Face opposed = make_face(0, {-1.0, 0.0});
    CHECK(dist_to_face(cert.witness, opposed) <= 1e-12);
}

TEST_CASE("opposite witness hits the rotated target phase") {
    Bundle bd = Bundle::two_points(1.0);
    TripleFn a = sphere2({0.0, 0.5}, {1.0, 0.0});
    WitnessCertificate cert = opposite_face_witness(bd, a, 0, 0.2, 0.9);
    CHECK(cert.pass);
    CHECK(std::abs(cert.witness.value(0) - std::complex<double>(0.0, -1.0)) <= 1e-12);
    CHECK(cert.bound == doctest::Approx(2.0 - 0.9 + 0.9 * 0.5).epsilon(1e-12));
}

TEST_CASE("approach witness on the two point worked instance") {
    Bundle bd = Bundle::two_points(1.0);
    TripleFn a = sphere2({0.5, 0.0}, {1.0, 0.0});
    WitnessCertificate cert = approach_face_witness(bd, a, 0, 0.2, 0.5);

    CHECK(cert.pass);
    CHECK(std::abs(cert.witness.value(0) - std::complex<double>(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(cert.witness.value(1) - std::complex<double>(0.5, 0.0)) <= 1e-12);
    CHECK(cert.distance == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cert.bound == doctest::Approx(1.45).epsilon(1e-12));
    CHECK(dist_to_face(cert.witness, make_face(0, {1.0, 0.0})) <= 1e-12);
}

TEST_CASE("witness preconditions are enforced") {
    Bundle bd = Bundle::two_points(1.0);
    TripleFn a = sphere2({0.5, 0.0}, {1.0, 0.0});
    CHECK_THROWS_AS(opposite_face_witness(bd, a, 0, 0.2, 0.0), std::domain_error);
    CHECK_THROWS_AS(opposite_face_witness(bd, a, 0, 0.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(opposite_face_witness(bd, a, 0, 0.6, 0.5), std::domain_error);
    CHECK_THROWS_AS(opposite_face_witness(bd, a, 1, 0.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(opposite_face_witness(bd, sphere2({0.0, 0.0}, {1.0, 0.0}), 0, 0.2, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(opposite_face_witness(bd, a, 7, 0.2, 0.5), std::out_of_range);
    CHECK_THROWS_AS(approach_face_witness(bd, sphere2({0.5, 0.0}, {0.8, 0.0}), 0, 0.2, 0.5),
                    std::domain_error);
}

TEST_CASE("random certificates pass every clause") {
    Bundle bd = Bundle::ring(3);
    for (std::size_t i = 0; i < 300; ++i) {
        Rng rng(task_seed(23, 0xA3, i));
        std::size_t t0 = rng.below(3);
        double rho = rng.uniform(0.05, 0.95);
        TripleFn a = anchored_point(bd, t0, rho, rng.uniform(0.0, kTwoPi), rng);
        double eps = rng.uniform(0.1, 0.9) * std::min(rho, 1.0 - rho);
        double r = rng.uniform(0.05, 0.99);

        WitnessCertificate opp = opposite_face_witness(bd, a, t0, eps, r);
        REQUIRE(opp.pass);
        REQUIRE(opp.clause_approx);
        REQUIRE(opp.clause_anchor);
        REQUIRE(opp.clause_ball);
        REQUIRE(opp.clause_distance);

        WitnessCertificate app = approach_face_witness(bd, a, t0, eps, r);
        REQUIRE(app.pass);
        REQUIRE(app.clause_approx);
        REQUIRE(app.clause_anchor);
        REQUIRE(app.clause_ball);
        REQUIRE(app.clause_distance);
    }
}

TEST_CASE("certificate bounds follow the limit schedule") {
    Bundle bd = Bundle::two_points(1.0);
    const double rho = 0.5;
    TripleFn a = sphere2({rho, 0.0}, {1.0, 0.0});
    double prev_opp = 3.0, prev_app = 3.0;
    for (int k = 1; k <= 10; ++k) {
        double shrink = std::ldexp(1.0, -k);
        double eps = 0.1 * shrink;
        double r = 1.0 - shrink;
        WitnessCertificate opp = opposite_face_witness(bd, a, 0, eps, r);
        WitnessCertificate app = approach_face_witness(bd, a, 0, eps, r);
        REQUIRE(opp.pass);
        REQUIRE(app.pass);
        // bound_opp = (1+rho) + 2^-k (1-rho), bound_app = (1-rho) + 2^-k (1.1+rho)
        CHECK(std::abs(opp.bound - ((1.0 + rho) + shrink * (1.0 - rho))) <= 1e-12);
        CHECK(std::abs(app.bound - ((1.0 - rho) + shrink * (1.1 + rho))) <= 1e-12);
        CHECK(opp.bound < prev_opp + 1e-12);
        CHECK(app.bound < prev_app + 1e-12);
        prev_opp = opp.bound;
        prev_app = app.bound;
    }
    CHECK(prev_opp <= 1.0 + rho + 1e-3);
    CHECK(prev_app <= 1.0 - rho + 2e-3);
}

TEST_CASE("vanishing anchor splits into disjoint supports") {
    Bundle bd = Bundle::two_points(1.0);
    TripleFn a = sphere2({0.0, 0.0}, {1.0, 0.0});
    auto [gated, bump] = kill_gate_witness(bd, a, 0, 0.2);

    CHECK(polar_equal(gated.at(0), PolarValue{0.0, 0.0}));
    CHECK(gated.modulus(1) == 1.0);
    CHECK(gated.argument(1) == a.argument(1));
    CHECK(bump.modulus(0) == 1.0);
    CHECK(polar_equal(bump.at(1), PolarValue{0.0, 0.0}));

    // Disjoint supports make both signed combinations stay on the sphere.
    CHECK(norm(add(gated, bump)) == 1.0);
    CHECK(norm(subtract(gated, bump)) == 1.0);

    CHECK_THROWS_AS(kill_gate_witness(bd, sphere2({0.5, 0.0}, {1.0, 0.0}), 0, 0.2),
                    std::domain_error);
    CHECK_THROWS_AS(kill_gate_witness(bd, a, 0, 1.5), std::domain_error);
    CHECK_THROWS_AS(kill_gate_witness(bd, a, 9, 0.2), std::out_of_range);
}

} // TEST_SUITE
