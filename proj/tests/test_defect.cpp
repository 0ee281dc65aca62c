#include "ab/defect.hpp"
#include "ab/errors.hpp"
#include "ab/specfun.hpp"
#include "oracle/bessel_oracle.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace ab;
using std::numbers::pi;

namespace {

const cd I(0.0, 1.0);
const Vec2 e0(1.0, 0.0), e1(0.0, 1.0);

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

// -psi'' - psi'/r + nu^2 psi / r^2 - z psi for one radial function.
cd ode_residual(const Radial& f, double nu, cd z, double r) {
    return -numeric_second_derivative(f, r) - numeric_derivative(f, r) / r + nu * nu / (r * r) * f(r) - z * f(r);
}

} // namespace

TEST_CASE("defect_eval: closed form, angular factor, oracle value") {
    for (double r : {1e-3, 0.4, 2.0, 9.0})
        CHECK(rel(defect_eval(0, 1.0, r, 0.0, 0.5), std::exp(-r) / (2 * std::sqrt(r))) < 1e-13);
    for (int ell : {0, -1})
        for (double th : {0.3, -2.0})
            CHECK(rel(defect_eval(ell, cd(1.3, 0.2), 0.7, th, 0.3),
                      defect_eval(ell, cd(1.3, 0.2), 0.7, 0.0, 0.3) * std::polar(1.0, ell * th)) < 1e-15);
    const cd mu = std::polar(1.0, -pi / 4);
    const cd ref = std::polar(1.0, -pi * 0.3 / 4) * oracle::bessel_k(0.3, mu) / std::sqrt(2 * pi);
    CHECK(rel(defect_eval(0, mu, 1.0, 0.0, 0.3), ref) < 1e-10);
    CHECK_THROWS_AS(defect_eval(1, 1.0, 1.0, 0.0, 0.3), DomainError);
    CHECK_THROWS_AS(defect_eval(0, 1.0, 0.0, 0.0, 0.3), DomainError);
}

TEST_CASE("defect norms: closed form, alpha symmetry, homogeneity, quadrature") {
    CHECK(defect_norm_sq(0, 1.0, 0.5) == doctest::Approx(pi / 4).epsilon(1e-15));
    for (double a : {0.2, 0.35, 0.8}) {
        CHECK(defect_norm_sq(-1, 1.0, a) == doctest::Approx(defect_norm_sq(0, 1.0, 1 - a)).epsilon(1e-14));
        const double nu = a;
        CHECK(defect_norm_sq(0, 3.0, a) ==
              doctest::Approx(std::pow(3.0, 2 * nu - 2) * defect_norm_sq(0, 1.0, a)).epsilon(1e-14));
    }
    for (double a : {0.2, 0.5, 0.8})
        for (double mu : {0.5, 1.0, 2.0})
            for (int ell : {0, -1}) {
                const double q = defect_norm_sq_quadrature(ell, mu, a).value.real();
                CHECK(std::abs(q / defect_norm_sq(ell, mu, a) - 1.0) < 1e-8);
                const double full = norm_sq(g_mu(mu, ell == 0 ? e0 : e1, a));
                CHECK(std::abs(full / defect_norm_sq(ell, mu, a) - 1.0) < 1e-8);
            }
}

TEST_CASE("defect asymptotics") {
    for (double a : {0.2, 0.5, 0.7}) {
        const DefectAsymptotics d = defect_asymptotics(0, 1.0, a);
        CHECK(d.lead == doctest::Approx(ab::gamma(a) / std::pow(2.0, 1 - a)).epsilon(1e-14));
        CHECK(d.sub / d.lead == doctest::Approx(ab::gamma(-a) / (ab::gamma(a) * std::pow(2.0, 2 * a))).epsilon(1e-13));
        // Small-r law by direct evaluation.
        const double r = 1e-7;
        const cd g = defect_radial(0, 1.0, r, a);
        CHECK(std::abs((g - d.lead * std::pow(r, -a)) / std::pow(r, a) / d.sub - 1.0) < 1e-4);
    }
    CHECK(defect_asymptotics(0, 1.0, 0.5).lead == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-14));
}

TEST_CASE("g_apply: linearity, reference point, von Neumann functions") {
    const PartialWaveFunction zero = g_apply(cd(-2.0, 1.0), Vec2::Zero(), 0.3);
    CHECK(zero.modes().empty());
    CHECK(zero(0.5, 0.1) == cd(0.0));
    const PartialWaveFunction g = g_apply(-1.0, e0, 0.3);
    for (double r : {0.1, 1.0, 4.0}) CHECK(rel(g.radial(0, r), defect_radial(0, 1.0, r, 0.3)) < 1e-15);
    // G_{-i sqrt(i)} solves (h - i) psi = 0 and is square integrable.
    const PartialWaveFunction gp = g_apply(I, e0 + 0.5 * e1, 0.3);
    CHECK(std::abs(mu_of_z(I) - std::polar(1.0, -pi / 4)) < 1e-15);
    for (int ell : {0, -1}) {
        const Radial f = [&](double r) { return gp.radial(ell, r); };
        for (double r : {0.3, 1.0, 3.0}) CHECK(std::abs(ode_residual(f, order_nu(ell, 0.3), I, r)) < 1e-6 * std::abs(f(r)) + 1e-9);
    }
    CHECK(std::isfinite(norm_sq(gp)));
    const PartialWaveFunction lin = g_apply(I, 2.0 * e0, 0.3);
    CHECK(rel(lin.radial(0, 0.8), 2.0 * gp.radial(0, 0.8)) < 1e-15);
    CHECK_THROWS_AS(g_apply(1.0, e0, 0.3), BranchError);
}

TEST_CASE("g_pm_eval: Hankel kinds, decay, boundary limit") {
    const double a = 0.3, lam = 1.7;
    const PartialWaveFunction gp = g_pm_eval(lam, Side::Plus, e0, a), gm = g_pm_eval(lam, Side::Minus, e0, a);
    const double k = std::sqrt(lam);
    for (double r : {0.5, 3.0}) {
        const cd pre = I * pi / 2.0 * std::pow(lam, a / 2);
        CHECK(rel(gp.radial(0, r), pre * hankel(1, a, k * r)) < 1e-14);
        CHECK(rel(gm.radial(0, r), -pre * hankel(2, a, k * r)) < 1e-14);
    }
    // |g| sqrt(r) settles to a constant.
    const double m1 = std::abs(gp.radial(0, 200.0)) * std::sqrt(200.0), m2 = std::abs(gp.radial(0, 800.0)) * std::sqrt(800.0);
    CHECK(std::abs(m1 / m2 - 1.0) < 1e-2);
    for (Side s : {Side::Plus, Side::Minus}) {
        const double eps = s == Side::Plus ? 1e-9 : -1e-9;
        const PartialWaveFunction lim = g_apply(cd(lam, eps), e0 + e1, a), bv = g_pm_eval(lam, s, e0 + e1, a);
        for (int ell : {0, -1})
            for (double r : {0.2, 1.0, 5.0}) CHECK(std::abs(lim.radial(ell, r) - bv.radial(ell, r)) < 1e-7);
    }
}

TEST_CASE("breve_g: Weyl-function identity, mode orthogonality, reality") {
    const double a = 0.35;
    const cd z(-1.5, 0.7), w(-0.6, -1.1);
    const Vec2 lhs = (lambda_z(z, a) - lambda_z(w, a)).diagonal();
    const Vec2 rhs0 = (w - z) * breve_g_apply(z, g_apply(w, e0, a), a);
    const Vec2 rhs1 = (w - z) * breve_g_apply(z, g_apply(w, e1, a), a);
    CHECK(std::abs(rhs0(0) - lhs(0)) < 1e-7);
    CHECK(std::abs(rhs0(1)) < 1e-12);
    CHECK(std::abs(rhs1(1) - lhs(1)) < 1e-7);

    PartialWaveFunction f3;
    f3.set_mode(3, [](double r) { return cd(std::exp(-r * r)); });
    CHECK(breve_g_apply(z, f3, a).norm() == 0.0);

    PartialWaveFunction s;
    s.set_mode(0, [](double r) { return cd(r * std::exp(-r * r)); });
    const Vec2 v = breve_g_apply(-2.0, s, a);
    CHECK(std::abs(v(0).imag()) < 1e-15 * std::abs(v(0)));
    CHECK(v(0).real() > 0.0);

    // Linearity.
    const Vec2 v2 = breve_g_apply(z, s.scaled(cd(2.0, -1.0)), a);
    CHECK((v2 - cd(2.0, -1.0) * breve_g_apply(z, s, a)).norm() < 1e-13);
}

TEST_CASE("Gram pairing ||G(z) p||^2 = -Im <p, Lambda(z) p> / Im z") {
    for (double a : {0.2, 0.5, 0.8})
        for (const Vec2& p : {Vec2(e0), Vec2(e1), Vec2(cd(0.3, 1.0), cd(-0.7, 0.2))})
            for (cd z : {I, -I, cd(-2.0, 0.5)}) {
                const double lhs = norm_sq(g_apply(z, p, a));
                CHECK(std::abs(lhs + p.dot(lambda_z(z, a) * p).imag() / z.imag()) < 1e-7 * lhs);
            }
}

TEST_CASE("defect_difference has no singular part and matches the plain difference") {
    const double a = 0.4;
    const Vec2 q(cd(0.7, 0.1), cd(-0.3, 0.4));
    const PartialWaveFunction d = defect_difference(1.0, 2.5, q, a);
    for (int ell : {0, -1}) {
        const int s = sector_index(ell);
        for (double r : {0.3, 1.0, 3.0})
            CHECK(std::abs(d.radial(ell, r) - q(s) * (defect_radial(ell, 1.0, r, a) - defect_radial(ell, 2.5, r, a))) <
                  1e-12);
        // r^{-nu} d(r) tends to the difference of the r^nu coefficients.
        const double nu = order_nu(ell, a), r = 1e-8;
        const cd w = q(s) * (defect_asymptotics(ell, 1.0, a).sub - defect_asymptotics(ell, 2.5, a).sub);
        CHECK(std::abs(d.radial(ell, r) * std::pow(r, -nu) / w - 1.0) < 1e-3);
    }
}
