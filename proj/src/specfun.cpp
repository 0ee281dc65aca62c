// Bessel functions of real order by Temme's series (|x| < 2) and Steed's
// continued fractions (|x| >= 2), with CF1 + downward recurrence for J and I
// and upward recurrence for Y and K. The modified functions run the same
// scheme in complex arithmetic for Re w > 0.

#include "ab/specfun.hpp"
#include "ab/errors.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <numbers>
#include <string>

namespace ab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
constexpr double kFpMin = 1e-30;
constexpr int kMaxIt = 200000;
constexpr long kRescaleBits = 600;
const double kBig = std::ldexp(1.0, int(kRescaleBits));
const double kBigInv = std::ldexp(1.0, -int(kRescaleBits));

// Taylor coefficients of 1/Gamma(1+x) about 0.
constexpr std::array<double, 25> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
};

struct TemmeGammas {
    double gam1, gam2, gampl, gammi;
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2,
// gampl = 1/G(1+mu), gammi = 1/G(1-mu); |mu| <= 1/2.
TemmeGammas temme_gammas(double mu) {
    double even = 0.0, odd = 0.0;
    const double mu2 = mu * mu;
    double pw = 1.0;
    for (std::size_t k = 0; k < kRecipGamma.size(); k += 2) {
        even += kRecipGamma[k] * pw;
        if (k + 1 < kRecipGamma.size()) odd += kRecipGamma[k + 1] * pw;
        pw *= mu2;
    }
    TemmeGammas g;
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = even + mu * odd;
    g.gammi = even - mu * odd;
    return g;
}

long clamp_exp(long e) { return std::clamp(e, long(INT_MIN / 2), long(INT_MAX / 2)); }

// exp(z) as a Scaled value, safe for large |Re z|.
Scaled exp_scaled(cd z) {
    const double k = std::floor(z.real() / std::numbers::ln2);
    const double rem = z.real() - k * std::numbers::ln2;
    return normalize(std::polar(std::exp(rem), z.imag()), long(k));
}

} // namespace

Scaled normalize(cd m, long e) {
    const double a = std::max(std::abs(m.real()), std::abs(m.imag()));
    if (a == 0.0 || !std::isfinite(a)) return Scaled{m, e};
    int k = 0;
    std::frexp(a, &k);
    return Scaled{cd(std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k)), e + k};
}

cd Scaled::value() const {
    const int ee = int(clamp_exp(e));
    return cd(std::ldexp(m.real(), ee), std::ldexp(m.imag(), ee));
}

Scaled Scaled::operator*(const Scaled& o) const { return normalize(m * o.m, e + o.e); }

Scaled Scaled::operator/(const Scaled& o) const { return normalize(m / o.m, e - o.e); }

double gamma(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw DomainError("gamma: pole at nonpositive integer " + std::to_string(x));
    return std::tgamma(x);
}

BesselJY bessel_jy(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_jy: x must be positive");
    if (!(nu >= 0.0)) throw DomainError("bessel_jy: order must be nonnegative");

    const int nl = (x < 2.0) ? int(nu + 0.5) : std::max(0, int(nu - x + 1.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / kPi;

    // CF1: J'_nu / J_nu.
    int isign = 1;
    double h = nu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * nu, d = 0.0, c = h;
    int it = 0;
    for (it = 1; it <= kMaxIt; ++it) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    if (it > kMaxIt) throw ConvergenceError("bessel_jy: CF1 did not converge", h);

    // Downward recurrence from nu to xmu with overflow rescaling.
    double rjl = isign;
    double rjpl = h * rjl;
    const double rjl1 = rjl, rjp1 = rjpl;
    long shift = 0;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
        if (std::abs(rjl) > kBig) {
            rjl *= kBigInv;
            rjpl *= kBigInv;
            shift += kRescaleBits;
        }
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double rjmu, rymu, rymup, ry1;
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = kPi * xmu;
        const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = xmu * dd;
        const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(xmu);
        double ff = 2.0 / kPi * fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
        e = std::exp(e);
        double p = e / (g.gampl * kPi);
        double q = 1.0 / (e * kPi * g.gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = kPi * pimu2 * fact3 * fact3;
        double cc = 1.0;
        dd = -x2 * x2;
        double sum = ff + r * q, sum1 = p;
        for (it = 1; it <= kMaxIt; ++it) {
            ff = (it * ff + p + q) / (it * double(it) - xmu2);
            cc *= dd / it;
            p /= (it - xmu);
            q /= (it + xmu);
            const double del = cc * (ff + r * q);
            sum += del;
            const double del1 = cc * p - it * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
        }
        if (it > kMaxIt) throw ConvergenceError("bessel_jy: Temme series did not converge", sum);
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + i q = (J' + i Y') / (J + i Y) at order xmu.
        double a = 0.25 - xmu2;
        cd pq(-0.5 * xi, 1.0);
        cd bb(2.0 * x, 2.0);
        cd C = bb + cd(0.0, 1.0) * a * xi / pq;
        cd D = 1.0 / bb;
        pq *= C * D;
        for (it = 2; it <= kMaxIt; ++it) {
            a += 2 * (it - 1);
            bb += cd(0.0, 2.0);
            D = a * D + bb;
            if (std::abs(D) < kFpMin) D = kFpMin;
            C = bb + a / C;
            if (std::abs(C) < kFpMin) C = kFpMin;
            D = 1.0 / D;
            const cd del = C * D;
            pq *= del;
            if (std::abs(del - 1.0) <= kEps) break;
        }
        if (it > kMaxIt) throw ConvergenceError("bessel_jy: CF2 did not converge", std::abs(pq));
        const double p = pq.real(), q = pq.imag();
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    const double fj = rjmu / rjl;
    BesselJY out{};
    out.j = std::ldexp(rjl1 * fj, int(clamp_exp(-shift)));
    out.jp = std::ldexp(rjp1 * fj, int(clamp_exp(-shift)));

    long yshift = 0;
    for (int i = 1; i <= nl; ++i) {
        const double t = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
        if (std::abs(ry1) > kBig) {
            ry1 *= kBigInv;
            rymu *= kBigInv;
            yshift += kRescaleBits;
        }
    }
    out.y = std::ldexp(rymu, int(clamp_exp(yshift)));
    out.yp = std::ldexp(nu * xi * rymu - ry1, int(clamp_exp(yshift)));
    return out;
}

BesselIKScaled bessel_ik_scaled(double nu, cd x) {
    if (!(x.real() > 0.0)) throw DomainError("bessel_ik: argument must have positive real part");
    if (!(nu >= 0.0)) throw DomainError("bessel_ik: order must be nonnegative");

    const int nl = int(nu + 0.5);
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const cd xi = 1.0 / x;
    const cd xi2 = 2.0 * xi;

    // CF1: I'_nu / I_nu.
    cd h = nu * xi;
    if (std::abs(h) < kFpMin) h = kFpMin;
    cd b = xi2 * nu, d = 0.0, c = h;
    int it = 0;
    for (it = 1; it <= kMaxIt; ++it) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (it > kMaxIt) throw ConvergenceError("bessel_ik: CF1 did not converge", std::abs(h));

    cd ril = 1.0;
    cd ripl = h * ril;
    const cd ril1 = ril, rip1 = ripl;
    long shift = 0;
    cd fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const cd t = fact * ril + ripl;
        fact -= xi;
        ripl = fact * t + ril;
        ril = t;
        if (std::abs(ril) > kBig) {
            ril *= kBigInv;
            ripl *= kBigInv;
            shift += kRescaleBits;
        }
    }
    const cd f = ripl / ril;

    cd rkmu, rk1;
    Scaled kfactor = normalize(1.0);
    if (std::abs(x) < 2.0) {
        const cd x2 = 0.5 * x;
        const double pimu = kPi * xmu;
        const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        cd dd = -std::log(x2);
        cd e = xmu * dd;
        const cd fact2 = std::abs(e) < kEps ? cd(1.0) : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(xmu);
        cd ff = fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
        cd sum = ff;
        e = std::exp(e);
        cd p = 0.5 * e / g.gampl;
        cd q = 0.5 / (e * g.gammi);
        cd cc = 1.0;
        dd = x2 * x2;
        cd sum1 = p;
        for (it = 1; it <= kMaxIt; ++it) {
            ff = (double(it) * ff + p + q) / (it * double(it) - xmu2);
            cc *= dd / double(it);
            p /= (it - xmu);
            q /= (it + xmu);
            const cd del = cc * ff;
            sum += del;
            const cd del1 = cc * (p - double(it) * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (it > kMaxIt) throw ConvergenceError("bessel_ik: Temme series did not converge", std::abs(sum));
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        // Steed's CF2 for K_mu, K_{mu+1}; the exp(-x) factor is kept apart.
        cd bb = 2.0 * (1.0 + x);
        cd dd = 1.0 / bb;
        cd hh = dd, delh = dd;
        cd q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        cd q = a1, cc = a1;
        double a = -a1;
        cd s = 1.0 + q * delh;
        for (it = 2; it <= kMaxIt; ++it) {
            a -= 2 * (it - 1);
            cc = -a * cc / double(it);
            const cd qnew = (q1 - bb * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += cc * qnew;
            bb += 2.0;
            dd = 1.0 / (bb + a * dd);
            delh = (bb * dd - 1.0) * delh;
            hh += delh;
            const cd dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        if (it > kMaxIt) throw ConvergenceError("bessel_ik: CF2 did not converge", std::abs(s));
        hh = a1 * hh;
        rkmu = std::sqrt(kPi / (2.0 * x)) / s;
        rk1 = rkmu * (xmu + x + 0.5 - hh) * xi;
        kfactor = exp_scaled(-x);
    }

    const cd rkmup = xmu * xi * rkmu - rk1;
    // Wronskian I K' - I' K = -1/x fixes the normalization of I.
    const cd rimu = xi / (f * rkmu - rkmup);

    BesselIKScaled out;
    const Scaled inv_kfactor = normalize(1.0) / kfactor;
    out.i = normalize(rimu * ril1 / ril, -shift) * inv_kfactor;
    out.ip = normalize(rimu * rip1 / ril, -shift) * inv_kfactor;

    long kshift = 0;
    for (int i = 1; i <= nl; ++i) {
        const cd t = (xmu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = t;
        if (std::abs(rk1) > kBig) {
            rk1 *= kBigInv;
            rkmu *= kBigInv;
            kshift += kRescaleBits;
        }
    }
    out.k = normalize(rkmu, kshift) * kfactor;
    out.kp = normalize(nu * xi * rkmu - rk1, kshift) * kfactor;
    return out;
}

BesselIK bessel_ik(double nu, cd w) {
    const BesselIKScaled s = bessel_ik_scaled(nu, w);
    return BesselIK{s.i.value(), s.ip.value(), s.k.value(), s.kp.value()};
}

cd bessel_ik_product(double nu, cd a, cd b) {
    Scaled ia = bessel_ik_scaled(nu, a).i;
    Scaled kb = bessel_ik_scaled(nu, b).k;
    return (ia * kb).value();
}

double bessel_j(double nu, double x) { return bessel_jy(nu, x).j; }
double bessel_y(double nu, double x) { return bessel_jy(nu, x).y; }
cd bessel_i(double nu, cd w) { return bessel_ik_scaled(nu, w).i.value(); }
cd bessel_k(double nu, cd w) { return bessel_ik_scaled(nu, w).k.value(); }

double bessel_ordinary(OrdinaryKind kind, double nu, double x) {
    const BesselJY v = bessel_jy(nu, x);
    return kind == OrdinaryKind::J ? v.j : v.y;
}

cd bessel_modified(ModifiedKind kind, double nu, cd w) {
    return kind == ModifiedKind::I ? bessel_i(nu, w) : bessel_k(nu, w);
}

cd hankel(int kind, double nu, double x) {
    if (kind != 1 && kind != 2) throw DomainError("hankel: kind must be 1 or 2");
    const BesselJY v = bessel_jy(nu, x);
    return kind == 1 ? cd(v.j, v.y) : cd(v.j, -v.y);
}

} // namespace ab
