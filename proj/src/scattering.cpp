#include "ab/scattering.hpp"
#include "ab/defect.hpp"
#include "ab/errors.hpp"
#include "ab/specfun.hpp"
#include "ab/spectral.hpp"

#include <cmath>
#include <numbers>

namespace ab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const cd kI(0.0, 1.0);

double side_sign(Side s) { return s == Side::Plus ? 1.0 : -1.0; }

// M = Pi (Theta + Pi Lambda_side Pi)^{-1} Pi, inverted on ran Pi.
Mat2 sector_response(const PiTheta& pt, double lambda, Side side, double alpha) {
    const Eigen::MatrixXcd v = range_basis(pt.pi);
    if (v.cols() == 0) return Mat2::Zero();
    const Eigen::MatrixXcd m = v.adjoint() * (pt.theta + pt.pi * lambda_pm(lambda, side, alpha) * pt.pi) * v;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto s = svd.singularValues();
    if (s(s.size() - 1) < 1e-13 * std::max(s(0), l_matrix(1.0, alpha).norm()))
        throw SingularMatrixError("Theta + Pi Lambda(lambda +- i0) Pi is singular", lambda);
    return Mat2(v * m.inverse() * v.adjoint());
}

double friedrichs_delta(int ell, double alpha) { return kPi * (std::abs(ell) - order_nu(ell, alpha)) / 2.0; }

double wrap_angle(double x) { return std::remainder(x, 2.0 * kPi); }

struct ModeSum {
    cd value, derivative;
};

} // namespace

int default_ell_max(double k, double r) { return int(std::ceil(2.0 * k * r)) + 40; }

cd plane_wave(double k, double omega, double r, double theta, int ell_max) {
    if (!(k > 0.0 && r > 0.0)) throw DomainError("plane_wave: need k, r > 0");
    const int lmax = ell_max > 0 ? ell_max : default_ell_max(k, r);
    cd s = 0.0;
    for (int ell = -lmax; ell <= lmax; ++ell)
        s += std::polar(bessel_j(std::abs(ell), k * r), ell * (theta - omega) + kPi * std::abs(ell) / 2.0);
    return s / (2.0 * kPi);
}

cd friedrichs_phase(int ell, Side side, double alpha) {
    const double a = std::abs(ell);
    return std::polar(1.0, kPi * a / 2.0 - side_sign(side) * kPi * (order_nu(ell, alpha) - a) / 2.0);
}

namespace {

ModeSum friedrichs_sum(double k, double omega, Side side, double r, double theta, double alpha, int lmax,
                       bool subtract_plane) {
    ModeSum out{0.0, 0.0};
    for (int ell = -lmax; ell <= lmax; ++ell) {
        const BesselJY b = bessel_jy(order_nu(ell, alpha), k * r);
        const cd ph = friedrichs_phase(ell, side, alpha) * std::polar(1.0, ell * (theta - omega));
        cd v = ph * b.j, d = ph * k * b.jp;
        if (subtract_plane) {
            const BesselJY p = bessel_jy(std::abs(ell), k * r);
            const cd pp = std::polar(1.0, ell * (theta - omega) + kPi * std::abs(ell) / 2.0);
            v -= pp * p.j;
            d -= pp * k * p.jp;
        }
        out.value += v;
        out.derivative += d;
    }
    out.value /= 2.0 * kPi;
    out.derivative /= 2.0 * kPi;
    return out;
}

} // namespace

cd eigenfunction_friedrichs(double k, double omega, Side side, double r, double theta, double alpha, int ell_max) {
    check_alpha(alpha);
    if (!(k > 0.0 && r > 0.0)) throw DomainError("eigenfunction_friedrichs: need k, r > 0");
    const int lmax = ell_max > 0 ? ell_max : default_ell_max(k, r);
    return friedrichs_sum(k, omega, side, r, theta, alpha, lmax, false).value;
}

PartialWaveFunction eigenfunction_friedrichs_modes(double k, double omega, Side side, double alpha, int ell_max) {
    check_alpha(alpha);
    PartialWaveFunction out;
    for (int ell = -ell_max; ell <= ell_max; ++ell) {
        const double nu = order_nu(ell, alpha);
        const cd c = friedrichs_phase(ell, side, alpha) * std::polar(1.0, -ell * omega) / kSqrt2Pi;
        out.set_mode(
            ell, [=](double r) { return c * bessel_j(nu, k * r); },
            [=](double r) { return c * k * bessel_jy(nu, k * r).jp; });
    }
    return out;
}

Vec2 tau_eigenfunction(double k, double omega, Side side, double alpha) {
    check_alpha(alpha);
    if (!(k > 0.0)) throw DomainError("tau_eigenfunction: need k > 0");
    Vec2 out;
    for (int s = 0; s < 2; ++s) {
        const int ell = kSectorEll[s];
        out(s) = friedrichs_phase(ell, side, alpha) * std::pow(k, sector_nu(s, alpha)) *
                 std::polar(1.0, -ell * omega) / kSqrt2Pi;
    }
    return out;
}

Vec2 eigen_correction(const ExtensionSpec& spec, double k, double omega, Side side) {
    const PiTheta pt = to_pi_theta(spec);
    return sector_response(pt, k * k, side, spec.alpha) * tau_eigenfunction(k, omega, side, spec.alpha);
}

PartialWaveFunction eigenfunction_general_sectors(const ExtensionSpec& spec, double k, double omega, Side side) {
    const double alpha = spec.alpha;
    PartialWaveFunction f;
    for (int ell : kSectorEll) {
        const double nu = order_nu(ell, alpha);
        const cd c = friedrichs_phase(ell, side, alpha) * std::polar(1.0, -ell * omega) / kSqrt2Pi;
        f.set_mode(
            ell, [=](double r) { return c * bessel_j(nu, k * r); },
            [=](double r) { return c * k * bessel_jy(nu, k * r).jp; });
    }
    const Vec2 c = eigen_correction(spec, k, omega, side);
    if (c.norm() == 0.0) return f;
    return f + g_pm_eval(k * k, side, c, alpha);
}

cd eigenfunction_general(const ExtensionSpec& spec, double k, double omega, Side side, double r, double theta,
                         int ell_max) {
    const cd base = eigenfunction_friedrichs(k, omega, side, r, theta, spec.alpha, ell_max);
    const Vec2 c = eigen_correction(spec, k, omega, side);
    if (c.norm() == 0.0) return base;
    return base + g_pm_eval(k * k, side, c, spec.alpha)(r, theta);
}

SommerfeldResult sommerfeld_check(const ExtensionSpec& spec, double k, Side side, const std::vector<double>& r_grid,
                                  double theta, double omega, Side condition, bool against_itself) {
    const double alpha = spec.alpha;
    const Vec2 c = against_itself ? Vec2::Zero() : eigen_correction(spec, k, omega, side);
    const PartialWaveFunction corr = g_pm_eval(k * k, side, c, alpha);
    SommerfeldResult out;
    for (double r : r_grid) {
        ModeSum d{0.0, 0.0};
        if (!against_itself) {
            d = friedrichs_sum(k, omega, side, r, theta, alpha, default_ell_max(k, r), true);
            for (int s = 0; s < 2; ++s) {
                const int ell = kSectorEll[s];
                if (!corr.has_mode(ell)) continue;
                const cd ang = std::polar(1.0, ell * theta) / kSqrt2Pi;
                d.value += corr.radial(ell, r) * ang;
                d.derivative += corr.radial_derivative(ell, r) * ang;
            }
        }
        out.r.push_back(r);
        out.residual.push_back(std::abs(std::sqrt(r) * (d.derivative - side_sign(condition) * kI * k * d.value)));
    }
    out.tail = out.residual.empty() ? 0.0 : out.residual.back();
    return out;
}

SommerfeldResult sommerfeld_check(const ExtensionSpec& spec, double k, Side side, const std::vector<double>& r_grid,
                                  double theta, double omega) {
    return sommerfeld_check(spec, k, side, r_grid, theta, omega, side, false);
}

SMatrixKernel s_matrix(const ExtensionSpec& spec, double lambda) {
    const double alpha = spec.alpha;
    check_alpha(alpha);
    if (!(lambda > 0.0)) throw DomainError("s_matrix: need lambda > 0");
    SMatrixKernel s;
    s.alpha = alpha;
    s.lambda = lambda;
    s.delta_coeff = std::cos(kPi * alpha);
    s.pv_coeff = kI * std::sin(kPi * alpha) / kPi;
    const Mat2 m = sector_response(to_pi_theta(spec), lambda, Side::Plus, alpha);
    const cd mk = -kI * std::sqrt(lambda);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double sgn = (kSectorEll[b] % 2 == 0) ? 1.0 : -1.0;
            s.smooth(a, b) = 0.5 * kI * sgn * m(a, b) * std::pow(mk, sector_nu(a, alpha) + sector_nu(b, alpha));
        }
    return s;
}

cd smooth_kernel(const SMatrixKernel& s, double omega, double omega_prime) {
    cd out = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            out += s.smooth(a, b) * std::polar(1.0, kSectorEll[a] * omega - kSectorEll[b] * omega_prime);
    return out;
}

Mat2 sector_s_matrix(const SMatrixKernel& s) {
    Mat2 d = Mat2::Zero();
    for (int a = 0; a < 2; ++a) d(a, a) = std::polar(1.0, 2.0 * friedrichs_delta(kSectorEll[a], s.alpha));
    return d + 2.0 * kPi * s.smooth;
}

cd scattering_amplitude(const SMatrixKernel& s, double omega, double omega_prime) {
    const double phi = wrap_angle(omega - omega_prime);
    if (std::abs(phi) < 1e-12) throw DomainError("scattering_amplitude: coincident angles (forward direction)");
    const cd pre = std::sqrt(2.0 * kPi / std::sqrt(s.lambda)) * std::polar(1.0, -kPi / 4);
    return pre * (s.pv_coeff / (std::polar(1.0, phi) - 1.0) + smooth_kernel(s, omega, omega_prime));
}

cd scattering_amplitude(const ExtensionSpec& spec, double lambda, double omega, double omega_prime) {
    return scattering_amplitude(s_matrix(spec, lambda), omega, omega_prime);
}

double diff_cross_section(const ExtensionSpec& spec, double lambda, double omega) {
    if (std::abs(wrap_angle(omega)) < 1e-12)
        throw DomainError("diff_cross_section: forward direction omega = 0 is singular");
    return std::norm(scattering_amplitude(spec, lambda, omega, 0.0));
}

double dcs_friedrichs_closed_form(double alpha, double lambda, double omega) {
    const double s = std::sin(kPi * alpha), h = std::sin(omega / 2.0);
    return s * s / (2.0 * kPi * std::sqrt(lambda) * h * h);
}

double dcs_krein_closed_form(double alpha, double lambda, double omega) {
    const double s = std::sin(kPi * alpha), h = std::sin(omega / 2.0);
    return (s * s / (2.0 * kPi * h * h) - 4.0 * s * s * std::cos(omega) / kPi) / std::sqrt(lambda);
}

std::map<int, cd> phase_shifts(const ExtensionSpec& spec, double lambda, int ell_max) {
    const double alpha = spec.alpha;
    if (!classify(spec).rotation_invariant)
        throw DomainError("phase_shifts: extension is not rotation invariant");
    if (!(lambda > 0.0)) throw DomainError("phase_shifts: need lambda > 0");
    const PiTheta pt = to_pi_theta(spec);
    std::map<int, cd> out;
    for (int ell = -ell_max; ell <= ell_max; ++ell) out[ell] = friedrichs_delta(ell, alpha);
    const double c = kPi / (2.0 * std::sin(kPi * alpha));
    for (int s = 0; s < 2; ++s) {
        if (std::abs(pt.pi(s, s)) < 0.5) continue;
        const double nu = sector_nu(s, alpha);
        const double kap = std::pow(lambda, nu);
        // e^{2 i (delta - delta^F)} = (X + i pi kap / 2) / (X - i pi kap / 2).
        const double x = pt.theta(s, s).real() - c + c * std::cos(kPi * nu) * kap;
        out[kSectorEll[s]] += std::atan2(kPi * kap / 2.0, x);
    }
    return out;
}

AbelResult abel_amplitude(const ExtensionSpec& spec, double lambda, double phi, const std::vector<double>& x) {
    if (std::abs(wrap_angle(phi)) < 1e-12) throw DomainError("abel_amplitude: forward direction");
    const double alpha = spec.alpha;
    // Beyond the two sectors every phase shift is the Friedrichs one.
    const std::map<int, cd> sec = phase_shifts(spec, lambda, 1);
    AbelResult out;
    out.x = x;
    for (double xv : x) {
        const int n = int(std::ceil(std::log(1e-18) / std::log(xv)));
        cd s = 0.0;
        for (int ell = -n; ell <= n; ++ell) {
            const cd d = (ell == 0 || ell == -1) ? sec.at(ell) : cd(friedrichs_delta(ell, alpha));
            s += (std::exp(2.0 * kI * d) - 1.0) * std::polar(std::pow(xv, std::abs(ell)), ell * phi);
        }
        out.partial.push_back(s / (2.0 * kPi));
    }
    // Neville extrapolation to h = 1 - x = 0.
    std::vector<cd> p = out.partial;
    const std::size_t m = x.size();
    for (std::size_t lev = 1; lev < m; ++lev)
        for (std::size_t i = 0; i + lev < m; ++i) {
            const double hi = 1.0 - x[i], hj = 1.0 - x[i + lev];
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    const cd pre = std::sqrt(2.0 * kPi / std::sqrt(lambda)) * std::polar(1.0, -kPi / 4);
    out.value = pre * p[0];
    for (cd& v : out.partial) v *= pre;
    return out;
}

namespace literal {

double dcs_krein(double alpha, double lambda, double omega) {
    const double s = std::sin(kPi * alpha), h = std::sin(omega / 2.0);
    const double p3 = kPi * kPi * kPi;
    return (s * s / (2.0 * kPi * h * h) + (2.0 * kPi - 1.0) * s * s * std::cos(omega) / p3 + s * s / p3) /
           std::sqrt(lambda);
}

cd krein_smooth_line(double alpha, double phi) {
    return -kI / (2.0 * kPi * kPi) * std::sin(kPi * alpha) * (std::polar(1.0, phi) - 1.0);
}

} // namespace literal

} // namespace ab
