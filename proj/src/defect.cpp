#include "ab/defect.hpp"
#include "ab/errors.hpp"
#include "ab/specfun.hpp"

#include <cmath>
#include <numbers>

namespace ab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// Regular remainder mu^nu K_nu(mu r) - c (r/2)^{-nu} / Gamma(1 - nu) and its
// r-derivative by the power series; used for |mu| r < 2.
struct Remainder {
    cd value, derivative;
};

Remainder remainder_series(double nu, cd mu, double r) {
    const double c = kPi / (2.0 * std::sin(kPi * nu));
    const double h = r / 2.0;
    const cd mu2 = mu * mu;
    const cd mu2nu = std::pow(mu, 2.0 * nu);
    Remainder out{0.0, 0.0};
    // First sum, k >= 1: (r/2)^{2k-nu} mu^{2k} / (k! Gamma(k - nu + 1)).
    cd pw = mu2;  // mu^{2k}
    double den = gamma(2.0 - nu);  // k! Gamma(k - nu + 1)
    for (int k = 1; k < 40; ++k) {
        if (k > 1) {
            pw *= mu2;
            den *= k * (k - nu);
        }
        const double e = 2.0 * k - nu;
        const cd t = pw * std::pow(h, e) / den;
        out.value += t;
        out.derivative += t * e / r;
        if (std::abs(t) < 1e-18 * std::abs(out.value)) break;
    }
    // Second sum, k >= 0: mu^{2k+2nu} (r/2)^{2k+nu} / (k! Gamma(k + nu + 1)).
    pw = mu2nu;
    den = gamma(nu + 1.0);  // k! Gamma(k + nu + 1)
    for (int k = 0; k < 40; ++k) {
        if (k > 0) {
            pw *= mu2;
            den *= k * (k + nu);
        }
        const double e = 2.0 * k + nu;
        const cd t = pw * std::pow(h, e) / den;
        out.value -= t;
        out.derivative -= t * e / r;
        if (std::abs(t) < 1e-18 * std::abs(out.value)) break;
    }
    out.value *= c;
    out.derivative *= c;
    return out;
}

double sector_order(int ell, double alpha) {
    sector_index(ell);
    return order_nu(ell, alpha);
}

} // namespace

int sector_index(int ell) {
    if (ell == 0) return 0;
    if (ell == -1) return 1;
    throw DomainError("defect sectors are ell = 0 and ell = -1 only");
}

cd defect_radial(int ell, cd mu, double r, double alpha) {
    check_alpha(alpha);
    const double nu = sector_order(ell, alpha);
    if (!(r > 0.0)) throw DomainError("defect_radial: need r > 0");
    return std::pow(mu, nu) * bessel_k(nu, mu * r);
}

cd defect_radial_derivative(int ell, cd mu, double r, double alpha) {
    check_alpha(alpha);
    const double nu = sector_order(ell, alpha);
    return std::pow(mu, nu) * mu * bessel_ik(nu, mu * r).kp;
}

cd defect_eval(int ell, cd mu, double r, double theta, double alpha) {
    return defect_radial(ell, mu, r, alpha) * std::polar(1.0, ell * theta) / kSqrt2Pi;
}

double defect_norm_sq(int ell, double mu, double alpha) {
    check_alpha(alpha);
    if (!(mu > 0.0)) throw DomainError("defect_norm_sq: need mu > 0");
    const double nu = sector_order(ell, alpha);
    return kPi * nu * std::pow(mu, 2.0 * nu - 2.0) / (2.0 * std::sin(kPi * alpha));
}

QuadResult defect_norm_sq_quadrature(int ell, cd mu, double alpha) {
    const double reach = 40.0 / mu.real();
    RadialQuadOptions opt;
    opt.r_max = reach;
    return integrate_radial([&](double r) { return r * std::norm(defect_radial(ell, mu, r, alpha)); }, opt);
}

DefectAsymptotics defect_asymptotics(int ell, double mu, double alpha) {
    check_alpha(alpha);
    const double nu = sector_order(ell, alpha);
    return DefectAsymptotics{gamma(nu) / std::pow(2.0, 1.0 - nu),
                             gamma(-nu) * std::pow(mu, 2.0 * nu) / std::pow(2.0, 1.0 + nu)};
}

PartialWaveFunction g_mu(cd mu, const Vec2& p, double alpha) {
    check_alpha(alpha);
    if (!(mu.real() > 0.0)) throw DomainError("g_mu: need Re mu > 0");
    PartialWaveFunction out;
    for (int k = 0; k < 2; ++k) {
        const int ell = kSectorEll[k];
        const cd pk = p(k);
        if (pk == 0.0) continue;
        out.set_mode(
            ell, [=](double r) { return pk * defect_radial(ell, mu, r, alpha); },
            [=](double r) { return pk * defect_radial_derivative(ell, mu, r, alpha); });
    }
    return out;
}

PartialWaveFunction g_apply(cd z, const Vec2& p, double alpha) { return g_mu(mu_of_z(z), p, alpha); }

PartialWaveFunction g_pm_eval(double lambda, Side side, const Vec2& p, double alpha) {
    check_alpha(alpha);
    if (!(lambda > 0.0)) throw DomainError("g_pm_eval: need lambda > 0");
    const double k = std::sqrt(lambda);
    const double sgn = side == Side::Plus ? 1.0 : -1.0;
    PartialWaveFunction out;
    for (int s = 0; s < 2; ++s) {
        const int ell = kSectorEll[s];
        const double nu = sector_nu(s, alpha);
        const cd pre = p(s) * sgn * cd(0.0, kPi / 2) * std::pow(lambda, nu / 2);
        if (p(s) == 0.0) continue;
        out.set_mode(
            ell,
            [=](double r) {
                const BesselJY b = bessel_jy(nu, k * r);
                return pre * cd(b.j, sgn * b.y);
            },
            [=](double r) {
                const BesselJY b = bessel_jy(nu, k * r);
                return pre * k * cd(b.jp, sgn * b.yp);
            });
    }
    return out;
}

PartialWaveFunction defect_difference(cd mu0, cd mu, const Vec2& q, double alpha) {
    check_alpha(alpha);
    PartialWaveFunction out;
    for (int s = 0; s < 2; ++s) {
        const int ell = kSectorEll[s];
        const double nu = sector_nu(s, alpha);
        const cd qs = q(s);
        if (qs == 0.0) continue;
        const double m = std::max(std::abs(mu0), std::abs(mu));
        auto both = [=](double r) -> Remainder {
            if (m * r < 2.0) {
                const Remainder a = remainder_series(nu, mu0, r), b = remainder_series(nu, mu, r);
                return {qs * (a.value - b.value), qs * (a.derivative - b.derivative)};
            }
            return {qs * (defect_radial(ell, mu0, r, alpha) - defect_radial(ell, mu, r, alpha)),
                    qs * (defect_radial_derivative(ell, mu0, r, alpha) -
                          defect_radial_derivative(ell, mu, r, alpha))};
        };
        out.set_mode(
            ell, [=](double r) { return both(r).value; }, [=](double r) { return both(r).derivative; });
    }
    return out;
}

Vec2 breve_g_apply(cd z, const PartialWaveFunction& f, double alpha, const RadialQuadOptions& opt) {
    const cd mu = mu_of_z(z);
    Vec2 out = Vec2::Zero();
    for (int s = 0; s < 2; ++s) {
        const int ell = kSectorEll[s];
        if (!f.has_mode(ell)) continue;
        const QuadResult q = integrate_radial(
            [&](double r) { return r * defect_radial(ell, mu, r, alpha) * f.radial(ell, r); }, opt);
        if (!(q.error <= 1e-8 * std::max(1.0, std::abs(q.value))))
            throw ConvergenceError("breve_g_apply: radial quadrature did not converge", q.error);
        out(s) = q.value;
    }
    return out;
}

cd inner(const PartialWaveFunction& a, const PartialWaveFunction& b, const RadialQuadOptions& opt) {
    cd s = 0.0;
    for (int ell : a.modes()) {
        if (!b.has_mode(ell)) continue;
        s += integrate_radial([&](double r) { return r * std::conj(a.radial(ell, r)) * b.radial(ell, r); }, opt)
                 .value;
    }
    return s;
}

double norm_sq(const PartialWaveFunction& psi, const RadialQuadOptions& opt) {
    double s = 0.0;
    for (int ell : psi.modes())
        s += integrate_radial([&](double r) { return cd(r * std::norm(psi.radial(ell, r))); }, opt).value.real();
    return s;
}

} // namespace ab
