#ifndef AB_TESTS_BESSEL_ORACLE_HPP
#define AB_TESTS_BESSEL_ORACLE_HPP

// Independent reference values at 200 decimal digits. Power series for every
// function, K and Y through the reflection formulas, integer orders through
// the average of nu +- delta. The asymptotic expansion of K is kept as a
// second route for large |w|.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>

namespace oracle {

using R = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
using C = boost::multiprecision::cpp_complex<200>;

inline R pi() { return boost::math::constants::pi<R>(); }

inline std::complex<double> to_cd(const C& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline C from_cd(std::complex<double> z) { return C(R(z.real()), R(z.imag())); }

/// sum_k s^k (w/2)^{nu + 2k} / (k! Gamma(nu + k + 1)), s = +1 for I, -1 for J.
inline C series(const R& nu, const C& w, int sign) {
    const C half = w / 2;
    const C q = half * half * R(sign);
    C term = exp(nu * log(half)) / boost::math::tgamma(nu + 1);
    C sum = term;
    const R eps = R(1e-190);
    for (int k = 1; k < 20000; ++k) {
        term *= q / (R(k) * (nu + k));
        sum += term;
        if (abs(term) < eps * abs(sum) && k > abs(q)) break;
    }
    return sum;
}

inline R series_real(const R& nu, const R& x, int sign) { return series(nu, C(x), sign).real(); }

inline bool near_integer(double nu) { return std::abs(nu - std::round(nu)) < 1e-12; }

inline C k_noninteger(const R& nu, const C& w) {
    return pi() / 2 * (series(-nu, w, 1) - series(nu, w, 1)) / sin(nu * pi());
}

inline R y_noninteger(const R& nu, const R& x) {
    return (series_real(nu, x, -1) * cos(nu * pi()) - series_real(-nu, x, -1)) / sin(nu * pi());
}

const R kDelta = R("1e-40");

inline double gamma(double x) { return static_cast<double>(boost::math::tgamma(R(x))); }

inline double bessel_j(double nu, double x) { return static_cast<double>(series_real(R(nu), R(x), -1)); }

inline double bessel_y(double nu, double x) {
    if (near_integer(nu))
        return static_cast<double>((y_noninteger(R(nu) + kDelta, R(x)) + y_noninteger(R(nu) - kDelta, R(x))) / 2);
    return static_cast<double>(y_noninteger(R(nu), R(x)));
}

inline std::complex<double> bessel_i(double nu, std::complex<double> w) { return to_cd(series(R(nu), from_cd(w), 1)); }

inline std::complex<double> bessel_k(double nu, std::complex<double> w) {
    const C z = from_cd(w);
    if (near_integer(nu)) return to_cd((k_noninteger(R(nu) + kDelta, z) + k_noninteger(R(nu) - kDelta, z)) / 2);
    return to_cd(k_noninteger(R(nu), z));
}

/// Large-|w| expansion sqrt(pi/(2w)) e^{-w} sum_k a_k(nu) / w^k, summed to its smallest term.
inline std::complex<double> bessel_k_asymptotic(double nu, std::complex<double> w) {
    const C z = from_cd(w);
    const R mu = 4 * R(nu) * R(nu);
    C term = C(1), sum = C(1);
    R last = R(1);
    for (int k = 1; k < 400; ++k) {
        const R odd = 2 * k - 1;
        term *= (mu - odd * odd) / (R(8 * k)) / z;
        const R mag = abs(term);
        if (mag > last && k > nu) break;
        sum += term;
        last = mag;
    }
    return to_cd(sqrt(pi() / (2 * z)) * exp(-z) * sum);
}

} // namespace oracle

#endif
