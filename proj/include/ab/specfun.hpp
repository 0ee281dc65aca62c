#ifndef AB_SPECFUN_HPP
#define AB_SPECFUN_HPP

#include <complex>

namespace ab {

using cd = std::complex<double>;

/// Value m * 2^e. Lets Bessel values of large order travel through products
/// without overflowing.
struct Scaled {
    cd m{0.0, 0.0};
    long e = 0;

    cd value() const;
    Scaled operator*(const Scaled& o) const;
    Scaled operator/(const Scaled& o) const;
};

Scaled normalize(cd m, long e = 0);

double gamma(double x);

enum class OrdinaryKind { J, Y };
enum class ModifiedKind { I, K };

double bessel_ordinary(OrdinaryKind kind, double nu, double x);
cd bessel_modified(ModifiedKind kind, double nu, cd w);
cd hankel(int kind, double nu, double x);

double bessel_j(double nu, double x);
double bessel_y(double nu, double x);
cd bessel_i(double nu, cd w);
cd bessel_k(double nu, cd w);

struct BesselJY {
    double j, jp, y, yp;
};

/// J, J', Y, Y' at one (nu, x), nu >= 0, x > 0.
BesselJY bessel_jy(double nu, double x);

/// I, I', K, K' as scaled values, nu >= 0, Re w > 0.
struct BesselIKScaled {
    Scaled i, ip, k, kp;
};
BesselIKScaled bessel_ik_scaled(double nu, cd w);

struct BesselIK {
    cd i, ip, k, kp;
};
BesselIK bessel_ik(double nu, cd w);

/// I_nu(a) K_nu(b) without intermediate overflow.
cd bessel_ik_product(double nu, cd a, cd b);

} // namespace ab

#endif
