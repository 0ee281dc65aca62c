#include "ab/defect.hpp"
#include "ab/errors.hpp"
#include "ab/resolvent.hpp"
#include "ab/specfun.hpp"
#include "ab/verify.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace ab;
using std::numbers::pi;

namespace {

const Vec2 e0(1.0, 0.0), e1(0.0, 1.0);

cd h_minus_z(const Radial& g, double nu, cd z, double r) {
    return -numeric_second_derivative(g, r) - numeric_derivative(g, r) / r + nu * nu / (r * r) * g(r) - z * g(r);
}

PartialWaveFunction gaussian_modes() {
    PartialWaveFunction f;
    f.set_mode(0, [](double r) { return cd(std::exp(-r * r)); });
    f.set_mode(-1, [](double r) { return cd(r * std::exp(-(r - 1) * (r - 1)), 0.3 * std::exp(-r * r)); });
    f.set_mode(2, [](double r) { return cd(r * r * std::exp(-r * r)); });
    return f;
}

ExtensionSpec mixed_spec(double a) {
    Mat2 t;
    t << 0.4, cd(0.1, 0.2), cd(0.1, -0.2), -0.3;
    return ExtensionSpec{a, PiTheta{Mat2::Identity(), t}};
}

} // namespace

TEST_CASE("Friedrichs kernel: symmetries and truncation") {
    const double a = 0.3;
    const cd z(-1.2, 0.8);
    const KernelValue k = friedrichs_kernel(z, 1.0, 0.3, 1.5, 1.1, a);
    CHECK(k.tail < 1e-10);
    const KernelValue kt = friedrichs_kernel(std::conj(z), 1.5, 1.1, 1.0, 0.3, a);
    CHECK(std::abs(k.value - std::conj(kt.value)) < 1e-12);
    const KernelValue rot = friedrichs_kernel(z, 1.0, 0.3 + 2.0, 1.5, 1.1 + 2.0, a);
    CHECK(std::abs(k.value - rot.value) < 1e-12);
    // Partial sums over |ell| <= L approach the kernel with shrinking tails.
    const cd w = mu_of_z(z);
    double prev = INFINITY;
    for (int l : {4, 8, 16, 32, 64}) {
        cd s = 0.0;
        for (int ell = -l; ell <= l; ++ell)
            s += bessel_ik_product(order_nu(ell, a), w * 1.0, w * 1.5) * std::polar(1.0, ell * (0.3 - 1.1)) / (2 * pi);
        const double d = std::abs(s - k.value);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-9);
    CHECK_THROWS_AS(friedrichs_kernel(z, 0.0, 0.0, 1.0, 0.0, a), DomainError);
    CHECK_THROWS_AS(friedrichs_kernel(1.0, 1.0, 0.0, 2.0, 0.0, a), BranchError);
}

TEST_CASE("Friedrichs kernel: radial components solve the ODE off the diagonal") {
    const double a = 0.3, rp = 1.3;
    const cd z(-0.7, 0.4), w = mu_of_z(z);
    for (int ell : {0, -1, 3}) {
        const double nu = order_nu(ell, a);
        const Radial g = [&](double r) { return bessel_ik_product(nu, w * std::min(r, rp), w * std::max(r, rp)); };
        for (double r : {0.3, 0.8, 2.0, 5.0}) CHECK(std::abs(h_minus_z(g, nu, z, r)) < 1e-6 * std::max(1.0, std::abs(g(r))));
    }
}

TEST_CASE("friedrichs_apply: ODE residual, inversion, zero input, direct quadrature") {
    const double a = 0.3;
    const cd z(-2.0, 0.5);
    const PartialWaveFunction f = gaussian_modes();
    const PartialWaveFunction g = friedrichs_apply(z, f, a);
    for (int ell : f.modes()) {
        const double nu = order_nu(ell, a);
        const Radial gr = [&](double r) { return g.radial(ell, r); };
        double worst = 0.0;
        for (double r = 0.1; r <= 10.0; r *= 1.3) worst = std::max(worst, std::abs(h_minus_z(gr, nu, z, r) - f.radial(ell, r)));
        CHECK(worst < 1e-5);
        const Radial fr = [&](double r) { return f.radial(ell, r); };
        for (double r : {1e-3, 0.7, 4.0}) {
            const RadialValue d = friedrichs_apply_point(z, ell, fr, r, a);
            CHECK(std::abs(d.value - g.radial(ell, r)) < 1e-10);
            CHECK(std::abs(d.derivative - g.radial_derivative(ell, r)) < 1e-9);
        }
    }
    // phi = r^{nu + 2} e^{-r^2} vanishes at the origin; f = (h - z) phi in closed form.
    for (int ell : {0, -1}) {
        const double nu = order_nu(ell, a), p = nu + 2;
        auto phi = [=](double r) { return std::pow(r, p) * std::exp(-r * r); };
        PartialWaveFunction src;
        src.set_mode(ell, [=](double r) {
            const double d1 = p / r - 2 * r;
            const double d2 = d1 * d1 - p / (r * r) - 2.0;
            return cd(phi(r) * (-d2 - d1 / r + nu * nu / (r * r))) - z * phi(r);
        });
        const PartialWaveFunction back = friedrichs_apply(z, src, a);
        for (double r : {0.2, 1.0, 2.5}) CHECK(std::abs(back.radial(ell, r) - phi(r)) < 1e-6);
    }
    CHECK(friedrichs_apply(z, PartialWaveFunction(), a).modes().empty());
}

TEST_CASE("defect family: resolvent difference and z-derivative") {
    const double a = 0.35;
    const cd z0 = -1.0, z(-2.0, 0.5);
    const Vec2 p(cd(1.0, 0.0), cd(0.5, -0.3));
    const PartialWaveFunction g0 = g_apply(z0, p, a), gz = g_apply(z, p, a);
    const PartialWaveFunction rg = friedrichs_apply(z, g0, a);
    for (int ell : {0, -1})
        for (double r : {0.05, 0.5, 2.0, 6.0})
            CHECK(std::abs(g0.radial(ell, r) - gz.radial(ell, r) - (z0 - z) * rg.radial(ell, r)) < 1e-7);
    // R_F(z0) G(z0) = d/dz G(z) at z0.
    const PartialWaveFunction r0 = friedrichs_apply(z0, g0, a);
    const double h = 1e-4;
    const PartialWaveFunction gp = g_apply(z0 + h, p, a), gm = g_apply(z0 - h, p, a);
    for (int ell : {0, -1})
        for (double r : {0.1, 1.0, 3.0})
            CHECK(std::abs(r0.radial(ell, r) - (gp.radial(ell, r) - gm.radial(ell, r)) / (2 * h)) < 1e-6);
}

TEST_CASE("krein_apply: Friedrichs reduction and other modes pass through") {
    const double a = 0.4;
    const cd z(-1.5, 0.3);
    const PartialWaveFunction f = gaussian_modes();
    const PartialWaveFunction rf = friedrichs_apply(z, f, a), rk = krein_apply({z, friedrichs(a)}, f);
    const PartialWaveFunction rm = krein_apply({z, mixed_spec(a)}, f);
    for (double r : {0.01, 0.5, 3.0}) {
        for (int ell : f.modes()) CHECK(rk.radial(ell, r) == rf.radial(ell, r));
        CHECK(std::abs(rm.radial(2, r) - rf.radial(2, r)) < 1e-15);
    }
}

TEST_CASE("krein_apply: pole at the bound state") {
    const double a = 0.3;
    const ExtensionSpec s{a, PiTheta{Mat2::Identity(), Mat2::Zero()}};
    PartialWaveFunction f;
    f.set_mode(0, [](double r) { return cd(std::exp(-r * r)); });
    std::vector<double> scaled;
    for (double t : {1e-2, 1e-3, 1e-4}) scaled.push_back(t * std::abs(krein_apply({cd(-1.0 + t), s}, f).radial(0, 1.0)));
    CHECK(std::abs(scaled[2] / scaled[1] - 1.0) < 1e-2);
    CHECK(std::abs(scaled[1] / scaled[0] - 1.0) < 1e-1);
    try {
        krein_apply({cd(-1.0), s}, f);
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(e.nearby() == doctest::Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("krein_apply: identities on a non-diagonal extension") {
    const ExtensionSpec s = mixed_spec(0.3);
    for (const Check& c : resolvent_checks(s, cd(-2.0, 0.5), -3.0)) {
        INFO(c.name);
        CHECK(c.residual < 1e-6);
    }
}

TEST_CASE("krein_apply: (H - z) R(z) f = f per mode and the boundary condition holds") {
    const double a = 0.3;
    const cd z(-2.0, 0.5);
    const PartialWaveFunction f = gaussian_modes();
    const ExtensionSpec s = mixed_spec(a);
    const PartialWaveFunction g = krein_apply({z, s}, f);
    for (int ell : f.modes()) {
        const double nu = order_nu(ell, a);
        const Radial gr = [&](double r) { return g.radial(ell, r); };
        double worst = 0.0;
        for (double r = 0.1; r <= 10.0; r *= 1.3) worst = std::max(worst, std::abs(h_minus_z(gr, nu, z, r) - f.radial(ell, r)));
        CHECK(worst < 1e-5);
    }
    const PartialWaveFunction rf = friedrichs_apply(z, f, a);
    const Vec2 c = krein_coefficients(z, to_pi_theta(s), a, breve_g_apply(z, f, a));
    CHECK(domain_membership_check(s, rf, c, mu_of_z(z)).member);
}

TEST_CASE("krein_apply: the correction has rank at most two") {
    const double a = 0.45;
    const cd z(-1.0, 1.0);
    const ExtensionSpec s = mixed_spec(a);
    std::vector<PartialWaveFunction> inputs(3);
    inputs[0].set_mode(0, [](double r) { return cd(std::exp(-r * r)); });
    inputs[0].set_mode(-1, [](double r) { return cd(r * std::exp(-r * r)); });
    inputs[1].set_mode(0, [](double r) { return cd(r * r * std::exp(-r)); });
    inputs[1].set_mode(-1, [](double r) { return cd(0.0, std::exp(-2 * r * r)); });
    inputs[2].set_mode(0, [](double r) { return cd(std::exp(-(r - 1) * (r - 1))); });
    inputs[2].set_mode(-1, [](double r) { return cd(std::exp(-r)); });
    const std::vector<double> rs = {0.05, 0.3, 1.0, 2.0, 4.0};
    Eigen::MatrixXcd m(2 * rs.size(), 3);
    for (int k = 0; k < 3; ++k) {
        const PartialWaveFunction d = krein_apply({z, s}, inputs[std::size_t(k)]) - friedrichs_apply(z, inputs[std::size_t(k)], a);
        for (std::size_t j = 0; j < rs.size(); ++j) {
            m(Eigen::Index(2 * j), k) = d.radial(0, rs[j]);
            m(Eigen::Index(2 * j + 1), k) = d.radial(-1, rs[j]);
        }
    }
    const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    CHECK(sv(1) > 1e-4 * sv(0));
    CHECK(sv(2) < 1e-10 * sv(0));
}
