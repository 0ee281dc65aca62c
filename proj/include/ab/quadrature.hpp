#ifndef AB_QUADRATURE_HPP
#define AB_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace ab {

using cd = std::complex<double>;

struct QuadResult {
    cd value{0.0, 0.0};
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (31 point) on [a, b].
QuadResult integrate(const std::function<cd(double)>& f, double a, double b, double rel_tol = 1e-13);

struct RadialQuadOptions {
    double r_min = 1e-18;  ///< below this an algebraic tail model is added
    double r_max = 80.0;   ///< integrands are assumed negligible beyond
    double rel_tol = 1e-13;
};

/// Integral of f over (0, r_max] in the variable s = log r. Integrands that
/// behave like r^(g-1) with g > 0 near the origin are handled by a power-law
/// tail fitted at r_min. Throws ConvergenceError when g <= 0.
QuadResult integrate_radial(const std::function<cd(double)>& f, const RadialQuadOptions& opt = {});

/// Same, over [a, b] with 0 < a < b, in the log variable.
QuadResult integrate_log(const std::function<cd(double)>& f, double a, double b, double rel_tol = 1e-13);

} // namespace ab

#endif
