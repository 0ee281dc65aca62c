#ifndef AB_DEFECT_HPP
#define AB_DEFECT_HPP

#include "ab/extparam.hpp"
#include "ab/partial_wave.hpp"
#include "ab/quadrature.hpp"

namespace ab {

/// ell in {0, -1}; index 0 is ell = 0.
int sector_index(int ell);

/// Radial part mu^nu K_nu(mu r) of G_mu^(ell), Re mu > 0.
cd defect_radial(int ell, cd mu, double r, double alpha);
cd defect_radial_derivative(int ell, cd mu, double r, double alpha);

/// G_mu^(ell)(r, theta) = mu^nu K_nu(mu r) e^{i ell theta} / sqrt(2 pi).
cd defect_eval(int ell, cd mu, double r, double theta, double alpha);

/// Closed form pi nu mu^{2 nu - 2} / (2 sin pi alpha), mu > 0.
double defect_norm_sq(int ell, double mu, double alpha);

/// int r |mu^nu K_nu(mu r)|^2 dr by quadrature; valid for complex mu too.
QuadResult defect_norm_sq_quadrature(int ell, cd mu, double alpha);

struct DefectAsymptotics {
    double lead;  ///< coefficient of r^{-nu}
    double sub;   ///< coefficient of r^{nu}
};
DefectAsymptotics defect_asymptotics(int ell, double mu, double alpha);

/// G(z) p = sum_ell p_ell G^(ell)_{-i sqrt z}.
PartialWaveFunction g_apply(cd z, const Vec2& p, double alpha);

/// G_mu p for a given mu with Re mu > 0.
PartialWaveFunction g_mu(cd mu, const Vec2& p, double alpha);

/// Boundary values +-(i pi / 2) lambda^{nu/2} H^{(1|2)}_nu(sqrt(lambda) r).
PartialWaveFunction g_pm_eval(double lambda, Side side, const Vec2& p, double alpha);

/// sum_ell q_ell (G_{mu0} - G_mu)^(ell): no r^{-nu} part, evaluated without
/// cancellation near the origin.
PartialWaveFunction defect_difference(cd mu0, cd mu, const Vec2& q, double alpha);

/// (breve G(z) f)_ell = int r mu^nu K_nu(mu r) f_ell(r) dr, mu = -i sqrt z.
Vec2 breve_g_apply(cd z, const PartialWaveFunction& f, double alpha, const RadialQuadOptions& opt = {});

/// sum_ell int r |psi_ell|^2 dr.
double norm_sq(const PartialWaveFunction& psi, const RadialQuadOptions& opt = {});

/// sum_ell int r conj(a_ell) b_ell dr.
cd inner(const PartialWaveFunction& a, const PartialWaveFunction& b, const RadialQuadOptions& opt = {});

} // namespace ab

#endif
