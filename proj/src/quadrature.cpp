#include "ab/quadrature.hpp"
#include "ab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace ab {

namespace gk = boost::math::quadrature;

QuadResult integrate(const std::function<cd(double)>& f, double a, double b, double rel_tol) {
    double err = 0.0;
    const cd v = gk::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &err);
    return QuadResult{v, err};
}

QuadResult integrate_log(const std::function<cd(double)>& f, double a, double b, double rel_tol) {
    if (!(a > 0.0 && b > a)) throw DomainError("integrate_log: need 0 < a < b");
    auto g = [&f](double s) {
        const double r = std::exp(s);
        return f(r) * r;
    };
    const double sa = std::log(a), sb = std::log(b);
    // Unit-length chunks keep each Kronrod panel well resolved.
    const int n = std::max(1, int(std::ceil(sb - sa)));
    const double hs = (sb - sa) / n;
    // A single-panel pass gives each chunk's L1 mass; tolerances are then set
    // against the total so that negligible chunks are not over-refined.
    std::vector<double> mass(n);
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        double err = 0.0, l1 = 0.0;
        gk::gauss_kronrod<double, 31>::integrate(g, sa + k * hs, sa + (k + 1) * hs, 0, rel_tol, &err, &l1);
        mass[k] = l1 + err;
        total += mass[k];
    }
    QuadResult out;
    for (int k = 0; k < n; ++k) {
        if (mass[k] == 0.0) continue;
        const double tol = std::min(0.5, std::max(rel_tol, rel_tol * total / mass[k]));
        double err = 0.0;
        out.value += gk::gauss_kronrod<double, 31>::integrate(g, sa + k * hs, sa + (k + 1) * hs, 12, tol, &err);
        out.error += err;
    }
    return out;
}

QuadResult integrate_radial(const std::function<cd(double)>& f, const RadialQuadOptions& opt) {
    QuadResult body = integrate_log(f, opt.r_min, opt.r_max, opt.rel_tol);

    // Near the origin r f(r) ~ C r^g; the missing piece is r_min f(r_min) / g.
    const double r0 = opt.r_min, r1 = 4.0 * opt.r_min;
    const cd g0 = f(r0) * r0, g1 = f(r1) * r1;
    if (std::abs(g0) == 0.0) return body;
    const double g = std::log(std::abs(g1) / std::abs(g0)) / std::log(r1 / r0);
    const double scale = std::max(std::abs(body.value), 1e-300);
    if (!(g > 0.02)) {
        if (std::abs(g0) < 1e-15 * scale) return body;
        throw ConvergenceError("integrate_radial: integrand not integrable at r -> 0 (local exponent " +
                                   std::to_string(g - 1.0) + ")",
                               std::abs(g0));
    }
    const cd tail = g0 / g;
    body.value += tail;
    body.error += 1e-3 * std::abs(tail);
    return body;
}

} // namespace ab
