#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "wxray/ccd.hpp"

using namespace wxray;
using oracle::rel_err;

namespace {
const std::pair<double, double> kCharts[] = {{0.3, 0.9}, {-0.3, 0.9}, {0.9, 1.0}, {-0.6, 1.2}, {0.0, 0.7}};
}

TEST_CASE("chart validation and constants") {
    CHECK_THROWS_AS(CCDChart(0.3, 0.0), std::domain_error);
    CHECK_THROWS_AS(CCDChart(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(CCDChart(-0.5, 1.5), std::domain_error);
    const CCDChart c(0.3, 0.9);
    const double q = 0.3 * 0.81;
    CHECK(rel_err(c.ss_constant(), (1 - q) / (1 + q)) < 1e-15);
    CHECK(rel_err(c.murel_constant(), std::sqrt((1 + q) / (1 - q))) < 1e-15);
    CHECK(rel_err(c.murel_constant() * std::sqrt(c.ss_constant()), 1.0) < 1e-15);
}

TEST_CASE("phi examples") {
    for (const auto& [k, R] : kCharts) {
        const CCDChart c(k, R);
        CHECK(std::abs(phi_map(c, 0.0)) == 0.0);
        for (double om : {0.0, 1.0, 4.0}) CHECK(std::abs(std::abs(phi_map(c, std::polar(R, om))) - 1.0) < 1e-14);
        CHECK_THROWS_AS(phi_map(c, 1.01 * R), std::domain_error);
    }
    const CCDChart flat(0.0, 0.7);
    CHECK(std::abs(phi_map(flat, Complex(0.2, -0.5)) - Complex(0.2, -0.5) / 0.7) < 1e-15);
}

TEST_CASE("phi is a bijection; closed-form inverse matches bisection and Newton") {
    for (const auto& [k, R] : kCharts) {
        const CCDChart c(k, R);
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j < 8; ++j) {
                const Complex z = std::polar(R * i / 20.0, 0.7 * j);
                CHECK(std::abs(phi_inverse(c, phi_map(c, z)) - z) <= 1e-12);
                const Complex u = std::polar(i / 20.0, 0.3 + 0.7 * j);
                CHECK(std::abs(phi_inverse(c, u) - oracle::phi_inverse(k, R, u)) <= 1e-12);
                CHECK(std::abs(phi_map(c, phi_inverse(c, u)) - u) <= 1e-12);
            }
        CHECK_THROWS(phi_inverse(c, 1.1));
    }
}

TEST_CASE("conformal factor examples") {
    const CCDChart c(0.5, 0.9);
    CHECK(w_factor(c, 0.0) == 1.0);
    CHECK(rel_err(w_factor(c, std::polar(std::sqrt(0.5), 0.4)), 5.0 / 3) < 1e-14);
    CHECK(w_factor(CCDChart(0.0, 0.8), Complex(0.3, 0.5)) == 1.0);
    for (const auto& [k, R] : kCharts)
        for (double r : {0.0, 0.4, 1.0}) CHECK(w_factor(CCDChart(k, R), std::polar(r * R, 2.0)) > 0.0);
}

TEST_CASE("boundary defining function d_R") {
    for (const auto& [k, R] : kCharts) {
        const CCDChart c(k, R);
        CHECK(std::abs(d_R(c, 0.0) - 1.0) < 1e-15);
        CHECK(std::abs(d_R(c, std::polar(R, 0.5))) < 1e-14);
        for (int i = 0; i <= 30; ++i)
            for (int j = 0; j < 6; ++j) {
                const Complex z = std::polar(R * i / 30.0, 1.1 * j);
                CHECK(std::abs(d_R(c, z) - (1.0 - std::norm(phi_map(c, z)))) <= 1e-13);
                if (i < 30) CHECK(d_R(c, z) > 0.0);
            }
    }
    const CCDChart flat(0.0, 0.6);
    CHECK(std::abs(d_R(flat, Complex(0.3, 0.1)) - (1 - 0.1 / 0.36)) < 1e-15);
}

TEST_CASE("angle map and its derivative") {
    for (const auto& [k, R] : kCharts) {
        const CCDChart c(k, R);
        CHECK(ss_map(c, FanBeam(1.0, 0.0)).alpha == 0.0);
        CHECK(ss_map(c, FanBeam(1.0, kPi / 2)).alpha == kPi / 2);
        CHECK(ss_map(c, FanBeam(1.0, -kPi / 2)).alpha == -kPi / 2);
        CHECK(rel_err(ss_jacobian(c, FanBeam(0.0, 0.0)), c.ss_constant()) < 1e-15);
        CHECK(rel_err(ss_jacobian(c, FanBeam(0.0, kPi / 2)), 1 / c.ss_constant()) < 1e-15);
        double prev = -kPi / 2;
        for (int i = 1; i < 200; ++i) {
            const double a = -kPi / 2 + kPi * i / 200;
            const FanBeam l(2.5, a);
            const FanBeam m = ss_map(c, l);
            CHECK(m.beta == l.beta);
            CHECK(m.alpha > prev);
            prev = m.alpha;
            const double h = 1e-6;
            const double fd = (ss_map(c, FanBeam(2.5, a + h)).alpha - ss_map(c, FanBeam(2.5, a - h)).alpha) / (2 * h);
            CHECK(std::abs(ss_jacobian(c, l) - fd) <= 1e-7 * std::max(1.0, fd));
        }
    }
    const CCDChart flat(0.0, 0.5);
    CHECK(ss_map(flat, FanBeam(0.3, 0.8)).alpha == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(ss_jacobian(flat, FanBeam(0.3, 0.8)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cosine relation between the two incidence angles") {
    const CCDChart c(0.3, 0.9);
    const auto [l0, r0] = murel_check(c, FanBeam(0.0, 0.0));
    CHECK(std::abs(l0 - 1.0) < 1e-15);
    CHECK(std::abs(r0 - 1.0) < 1e-14);
    // The constant as printed, sqrt((1 - kappa R^2)/(1 + kappa R^2)), leaves a factor c at alpha = 0.
    const double printed = std::sqrt(c.ss_constant()) * std::sqrt(ss_jacobian(c, FanBeam(0.0, 0.0)));
    CHECK(std::abs(printed - c.ss_constant()) < 1e-15);
    CHECK(std::abs(printed - l0) > 0.1);
    const auto [lf, rf] = murel_check(CCDChart(0.0, 1.0), FanBeam(0.2, 0.9));
    CHECK(std::abs(lf - std::cos(0.9)) < 1e-15);
    CHECK(std::abs(rf - std::cos(0.9)) < 1e-15);
    double worst = 0.0;
    for (double k : {-0.9, -0.5, -0.1, 0.0, 0.2, 0.6, 0.95})
        for (double R : {0.3, 0.7, 1.0})
            for (int i = 0; i <= 40; ++i) {
                const auto [l, r] = murel_check(CCDChart(k, R), FanBeam(0.0, -kPi / 2 + kPi * i / 40));
                worst = std::max(worst, std::abs(l - r));
            }
    CHECK(worst <= 1e-12);
}

TEST_CASE("t-function is positive inside and vanishes at tangency") {
    for (const auto& [k, R] : kCharts)
        for (double g : {-0.4, 0.0, 0.5, 2.0}) {
            const CCDChart c(k, R);
            const WeightParam G(g);
            CHECK(std::abs(t_function(c, G, FanBeam(0.0, kPi / 2))) < 1e-15);
            CHECK(std::abs(t_function(c, G, FanBeam(0.0, -kPi / 2))) < 1e-15);
            for (int i = 1; i < 50; ++i) {
                const FanBeam l(1.0, -kPi / 2 + kPi * i / 50);
                const double t = t_function(c, G, l);
                CHECK(t > 0.0);
                const double want = std::pow(std::cos(l.alpha) * std::pow(std::cos(ss_map(c, l).alpha), 2 * g), 1 / (2 * g + 1));
                CHECK(rel_err(t, want) < 1e-13);
            }
        }
    CHECK(t_function(CCDChart(0.0, 1.0), WeightParam(0.7), FanBeam(0, 0.4)) == doctest::Approx(std::cos(0.4)).epsilon(1e-14));
}

TEST_CASE("transfer of the normal operator") {
    const CCDChart flat(0.0, 1.0);
    std::mt19937_64 rng(51);
    for (double g : {0.0, 0.5, 1.0}) {
        const WeightParam G(g);
        const auto f = [](Complex z) { return 1.0 + z * z - 0.3 * std::conj(z); };
        for (int i = 0; i < 10; ++i) {
            const Complex p = oracle::random_disk_point(rng);
            const Complex a = transfer_normal_apply(flat, G, f, p, normal_orders_for(2));
            const Complex b = normal_apply([&](const DiskPoint& q) { return f(q.z()); }, G, DiskPoint(p), normal_orders_for(2));
            CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
        }
    }
    for (const auto& [k, R] : {std::pair{0.3, 0.9}, std::pair{-0.3, 0.9}})
        for (double g : {0.0, 0.5}) {
            const CCDChart c(k, R);
            const WeightParam G(g);
            const double scale = R / (1 - k * R * R);
            for (int n = 0; n <= 3; ++n)
                for (int kk = 0; kk <= n; ++kk) {
                    const ZernikeIndex idx(n, kk, G);
                    const auto f = [&](Complex z) {
                        const double w = w_factor(c, z);
                        return w * w * g_hat_eval(idx, DiskPoint(phi_map(c, z)));
                    };
                    for (int i = 0; i < 6; ++i) {
                        const Complex p = oracle::random_disk_point(rng, R);
                        const Complex got = transfer_normal_apply(c, G, f, p, normal_orders_for(n));
                        const Complex want = scale * sigma_sq(n, kk, G) * w_factor(c, p) * g_hat_eval(idx, DiskPoint(phi_map(c, p)));
                        CHECK(std::abs(got - want) <= 1e-8 * scale * sigma_sq(n, kk, G) * std::max(1.0, std::abs(want)));
                    }
                }
            const auto w2 = [&](Complex z) { return Complex(w_factor(c, z) * w_factor(c, z)); };
            for (double r : {0.0, 0.5, 0.85}) {
                const Complex p = std::polar(r, 0.4);
                CHECK(rel_err(transfer_normal_apply(c, G, w2, p, normal_orders_for(0)),
                              Complex(scale * sigma_sq(0, 0, G) * w_factor(c, p))) <= 1e-12);
            }
        }
}

TEST_CASE("flat geodesics are straight chords") {
    const CCDChart flat(0.0, 1.0);
    for (const FanBeam l : {FanBeam(0.0, 0.0), FanBeam(1.3, 0.7), FanBeam(4.0, -1.2)}) {
        const auto path = geodesic_trace(flat, l, 1e-3);
        const Complex start = std::polar(1.0, l.beta);
        const Complex dir = std::polar(1.0, l.beta + kPi + l.alpha);
        double off = 0.0;
        for (const Complex z : path.points) off = std::max(off, std::abs(((z - start) / dir).imag()));
        CHECK(off <= 1e-9);
        CHECK(std::abs(path.exit_point - (start + 2 * std::cos(l.alpha) * dir)) <= 1e-9);
        CHECK(std::abs(path.length - 2 * std::cos(l.alpha)) <= 1e-9);
    }
    CHECK_THROWS(geodesic_trace(flat, FanBeam(0.0, kPi / 2), 1e-3));
    CHECK_THROWS(geodesic_trace(flat, FanBeam(0.0, 0.2), 0.0));
}

TEST_CASE("curved geodesics keep unit speed and exit symmetrically") {
    for (const auto& [k, R] : kCharts) {
        const CCDChart c(k, R);
        for (const FanBeam l : {FanBeam(0.0, 0.0), FanBeam(0.5, 0.9), FanBeam(2.0, -1.3), FanBeam(3.0, 0.3)}) {
            const auto path = geodesic_trace(c, l, 1e-3);
            CHECK(path.max_speed_drift <= 1e-8);
            CHECK(std::abs(std::abs(path.exit_point) - R) <= 1e-9);
            const double exit_angle = std::arg(path.exit_velocity / path.exit_point);
            CHECK(std::abs(exit_angle + l.alpha) <= 1e-8);
        }
    }
    const CCDChart c(0.3, 0.9);
    const auto fan = curved_fan(c, Complex(0.2, 0.1), 16, 1e-3);
    CHECK(fan.size() == 16);
    for (const auto& l : fan) CHECK(std::abs(l.alpha) < kPi / 2);
}

TEST_CASE("curved backprojection intertwines with the Euclidean one") {
    const CCDChart flat(0.0, 1.0);
    const auto flat_fan = curved_fan(flat, Complex(0.3, -0.2), 24, 1e-3);
    for (double g : {0.0, 0.5})
        for (int n = 0; n <= 2; ++n)
            for (int k = 0; k <= n; ++k) CHECK(interIstar_verify(flat, WeightParam(g), BoundaryMode(n, k, WeightParam(g)), Complex(0.3, -0.2), flat_fan) <= 1e-10);
    for (const auto& [kap, g] : {std::pair{0.3, 0.0}, std::pair{-0.3, 0.5}}) {
        const CCDChart c(kap, 0.9);
        const WeightParam G(g);
        for (const Complex p : {Complex(0.0, 0.0), Complex(0.35, 0.2)}) {
            const auto fan = curved_fan(c, p, 48, 1e-3);
            for (int n = 0; n <= 2; ++n)
                for (int k = 0; k <= n; ++k) CHECK(interIstar_verify(c, G, BoundaryMode(n, k, G), p, fan) <= 1e-6);
        }
    }
    const CCDChart wrong(0.2, 0.9);
    const auto fan = curved_fan(CCDChart(0.3, 0.9), Complex(0.35, 0.2), 48, 1e-3);
    CHECK(interIstar_verify(wrong, WeightParam(0), BoundaryMode(2, 1, WeightParam(0)), Complex(0.35, 0.2), fan) > 1e-4);
}
