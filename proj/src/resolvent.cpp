#include "ab/resolvent.hpp"
#include "ab/defect.hpp"
#include "ab/errors.hpp"
#include "ab/specfun.hpp"
#include "ab/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

namespace ab {

namespace {

constexpr double kPi = std::numbers::pi;

cd kernel_sum(cd w, double rlo, double rhi, double dtheta, double alpha, int lmax) {
    cd s = 0.0;
    for (int ell = -lmax; ell <= lmax; ++ell) {
        const double nu = order_nu(ell, alpha);
        s += bessel_ik_product(nu, w * rlo, w * rhi) * std::polar(1.0, ell * dtheta);
    }
    return s / (2.0 * kPi);
}

} // namespace

KernelValue friedrichs_kernel(cd z, double r, double theta, double rp, double thetap, double alpha, int ell_max) {
    check_alpha(alpha);
    if (!(r > 0.0 && rp > 0.0)) throw DomainError("friedrichs_kernel: need r, r' > 0");
    if (ell_max < 1) throw DomainError("friedrichs_kernel: ell_max >= 1");
    const cd w = mu_of_z(z);
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    int l = ell_max;
    cd s = kernel_sum(w, lo, hi, theta - thetap, alpha, l);
    double tail = std::numeric_limits<double>::infinity();
    while (l < 4096) {
        const cd s2 = kernel_sum(w, lo, hi, theta - thetap, alpha, 2 * l);
        tail = std::abs(s2 - s);
        s = s2;
        l *= 2;
        if (tail < 1e-10 * std::max(1.0, std::abs(s))) break;
    }
    return KernelValue{s, tail, l};
}

RadialValue friedrichs_apply_point(cd z, int ell, const Radial& f, double r, double alpha,
                                   const RadialQuadOptions& opt) {
    check_alpha(alpha);
    const cd w = mu_of_z(z);
    const double nu = order_nu(ell, alpha);
    const BesselIKScaled at_r = bessel_ik_scaled(nu, w * r);

    // Inner part K(w r) int_0^r I(w r') f r' dr', outer part I(w r) int_r^inf K(w r') f r' dr'.
    RadialQuadOptions inner_opt = opt;
    inner_opt.r_max = r;
    RadialValue out{0.0, 0.0};
    if (r > opt.r_min) {
        out.value += integrate_radial(
                         [&](double t) { return (at_r.k * bessel_ik_scaled(nu, w * t).i).value() * f(t) * t; },
                         inner_opt)
                         .value;
        out.derivative +=
            w * integrate_radial(
                    [&](double t) { return (at_r.kp * bessel_ik_scaled(nu, w * t).i).value() * f(t) * t; },
                    inner_opt)
                    .value;
    }
    if (r < opt.r_max) {
        out.value += integrate_log(
                         [&](double t) { return (at_r.i * bessel_ik_scaled(nu, w * t).k).value() * f(t) * t; }, r,
                         opt.r_max, opt.rel_tol)
                         .value;
        out.derivative +=
            w * integrate_log(
                    [&](double t) { return (at_r.ip * bessel_ik_scaled(nu, w * t).k).value() * f(t) * t; }, r,
                    opt.r_max, opt.rel_tol)
                    .value;
    }
    return out;
}

namespace {

// Gauss-Legendre nodes and weights on [0, 1].
struct Rule {
    std::vector<double> x, w;
};

const Rule& unit_rule() {
    static const Rule rule = [] {
        using GL = boost::math::quadrature::gauss<double, 16>;
        Rule r;
        const auto& a = GL::abscissa();
        const auto& wt = GL::weights();
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double sgns[2] = {-1.0, 1.0};
            for (double sg : sgns) {
                if (a[k] == 0.0 && sg < 0.0) continue;
                r.x.push_back(0.5 * (1.0 + sg * a[k]));
                r.w.push_back(0.5 * wt[k]);
            }
        }
        return r;
    }();
    return rule;
}

// Cumulative tables of int_0^e I(wt) f t dt / I(we) and int_e^inf K(wt) f t dt / K(we)
// on panel edges e_j. Ratios of Bessel values keep every stored number bounded.
class RadialTable {
public:
    RadialTable(cd z, int ell, Radial f, double alpha, const RadialQuadOptions& opt)
        : nu_(order_nu(ell, alpha)), w_(mu_of_z(z)), f_(std::move(f)) {
        const double e0 = 1e-10;
        for (double e = e0; e < 1.0; e *= 1.25) edges_.push_back(e);
        for (double e = 1.0; e < opt.r_max; e += 0.25) edges_.push_back(e);
        edges_.push_back(opt.r_max);
        const std::size_t n = edges_.size();
        at_.reserve(n);
        for (double e : edges_) at_.push_back(bessel_ik_scaled(nu_, w_ * e));

        a_.assign(n, 0.0);
        b_.assign(n, 0.0);
        a_[0] = power_law_head(e0, at_[0]);
        for (std::size_t j = 0; j + 1 < n; ++j)
            a_[j + 1] = a_[j] * (at_[j].i / at_[j + 1].i).value() + panel_i(edges_[j], edges_[j + 1], at_[j + 1]);
        for (std::size_t j = n - 1; j-- > 0;)
            b_[j] = b_[j + 1] * (at_[j + 1].k / at_[j].k).value() + panel_k(edges_[j], edges_[j + 1], at_[j]);
    }

    RadialValue operator()(double r) const {
        if (!(r > 0.0)) throw DomainError("friedrichs_apply: need r > 0");
        const BesselIKScaled s = bessel_ik_scaled(nu_, w_ * r);
        cd a = 0.0, b = 0.0;
        if (r <= edges_.front()) {
            a = power_law_head(r, s);
            b = b_[0] * (at_[0].k / s.k).value() + panel_k(r, edges_.front(), s);
        } else if (r >= edges_.back()) {
            a = a_.back() * (at_.back().i / s.i).value();
        } else {
            const std::size_t j =
                std::size_t(std::upper_bound(edges_.begin(), edges_.end(), r) - edges_.begin()) - 1;
            a = a_[j] * (at_[j].i / s.i).value() + panel_i(edges_[j], r, s);
            b = b_[j + 1] * (at_[j + 1].k / s.k).value() + panel_k(r, edges_[j + 1], s);
        }
        RadialValue out;
        out.value = (s.i * s.k).value() * (a + b);
        out.derivative = w_ * ((s.kp * s.i).value() * a + (s.ip * s.k).value() * b);
        return out;
    }

private:
    // int_0^r I(wt) f t dt / I(wr) from the local power law of the integrand.
    cd power_law_head(double r, const BesselIKScaled& ref) const {
        const cd h0 = integrand_i(r, ref) * r;
        const cd h1 = integrand_i(r / 4.0, ref) * (r / 4.0);
        if (std::abs(h0) == 0.0 || std::abs(h1) == 0.0) return 0.0;
        const double g = std::log(std::abs(h0) / std::abs(h1)) / std::log(4.0);
        return g > 0.0 ? h0 / g : cd(0.0);
    }

    cd integrand_i(double t, const BesselIKScaled& ref) const {
        return (bessel_ik_scaled(nu_, w_ * t).i / ref.i).value() * f_(t) * t;
    }

    cd panel_i(double lo, double hi, const BesselIKScaled& ref) const {
        const Rule& q = unit_rule();
        cd s = 0.0;
        for (std::size_t k = 0; k < q.x.size(); ++k) s += q.w[k] * integrand_i(lo + (hi - lo) * q.x[k], ref);
        return s * (hi - lo);
    }

    cd panel_k(double lo, double hi, const BesselIKScaled& ref) const {
        const Rule& q = unit_rule();
        cd s = 0.0;
        for (std::size_t k = 0; k < q.x.size(); ++k) {
            const double t = lo + (hi - lo) * q.x[k];
            s += q.w[k] * (bessel_ik_scaled(nu_, w_ * t).k / ref.k).value() * f_(t) * t;
        }
        return s * (hi - lo);
    }

    double nu_;
    cd w_;
    Radial f_;
    std::vector<double> edges_;
    std::vector<BesselIKScaled> at_;
    std::vector<cd> a_, b_;
};

} // namespace

PartialWaveFunction friedrichs_apply(cd z, const PartialWaveFunction& f, double alpha, const RadialQuadOptions& opt) {
    check_alpha(alpha);
    mu_of_z(z);
    PartialWaveFunction out;
    for (int ell : f.modes()) {
        const Radial fr = [f, ell](double r) { return f.radial(ell, r); };
        const auto table = std::make_shared<const RadialTable>(z, ell, fr, alpha, opt);
        out.set_mode(
            ell, [table](double r) { return (*table)(r).value; },
            [table](double r) { return (*table)(r).derivative; });
    }
    return out;
}

Vec2 krein_coefficients(cd z, const PiTheta& pt, double alpha, const Vec2& breve_g) {
    const Eigen::MatrixXcd v = range_basis(pt.pi);
    if (v.cols() == 0) return Vec2::Zero();
    const Eigen::MatrixXcd m = v.adjoint() * (pt.theta + pt.pi * lambda_z(z, alpha) * pt.pi) * v;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto s = svd.singularValues();
    if (s(s.size() - 1) < 1e-13 * std::max(s(0), l_matrix(1.0, alpha).norm())) {
        double nearby = 0.0, best = std::numeric_limits<double>::infinity();
        for (const BoundState& b : bound_states(pt, alpha))
            if (std::abs(z - b.energy) < best) {
                best = std::abs(z - b.energy);
                nearby = b.energy;
            }
        throw SingularMatrixError("krein_apply: Theta + Pi Lambda(z) Pi is singular (bound state near z)", nearby);
    }
    const Eigen::VectorXcd c = m.colPivHouseholderQr().solve(Eigen::VectorXcd(v.adjoint() * breve_g));
    return Vec2(v * c);
}

PartialWaveFunction krein_apply(const ResolventRequest& req, const PartialWaveFunction& f,
                                const RadialQuadOptions& opt) {
    const double alpha = req.spec.alpha;
    const PartialWaveFunction rf = friedrichs_apply(req.z, f, alpha, opt);
    const PiTheta pt = to_pi_theta(req.spec);
    if (range_basis(pt.pi).cols() == 0) return rf;
    const Vec2 c = krein_coefficients(req.z, pt, alpha, breve_g_apply(req.z, f, alpha, opt));
    return rf + g_apply(req.z, c, alpha);
}

} // namespace ab
