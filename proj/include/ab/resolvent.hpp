#ifndef AB_RESOLVENT_HPP
#define AB_RESOLVENT_HPP

#include "ab/extparam.hpp"
#include "ab/partial_wave.hpp"
#include "ab/quadrature.hpp"

namespace ab {

struct KernelValue {
    cd value;
    double tail;  ///< |S(2L) - S(L)| at the accepted truncation
    int ell_max;
};

/// Friedrichs resolvent kernel at x = (r, theta), x' = (rp, thetap):
/// sum_ell I_nu(w r<) K_nu(w r>) e^{i ell (theta - thetap)} / (2 pi), w = -i sqrt z.
/// The angular sum starts at |ell| <= ell_max and doubles until the tail is
/// below 1e-10 (relative, capped at |ell| <= 4096).
KernelValue friedrichs_kernel(cd z, double r, double theta, double rp, double thetap, double alpha,
                              int ell_max = 64);

/// (R_F(z) f)_ell(r) and its r-derivative, by quadrature split at r' = r.
struct RadialValue {
    cd value, derivative;
};
RadialValue friedrichs_apply_point(cd z, int ell, const Radial& f, double r, double alpha,
                                   const RadialQuadOptions& opt = {});

/// Lazy radial function r -> (R_F(z) f)_ell(r).
PartialWaveFunction friedrichs_apply(cd z, const PartialWaveFunction& f, double alpha,
                                     const RadialQuadOptions& opt = {});

struct ResolventRequest {
    cd z;
    ExtensionSpec spec;
    int ell_max = 64;
};

/// R(z) = R_F(z) + G(z) Pi (Theta + Pi Lambda(z) Pi)^{-1} Pi breve_G(z).
PartialWaveFunction krein_apply(const ResolventRequest& req, const PartialWaveFunction& f,
                                const RadialQuadOptions& opt = {});

/// The sector vector c = Pi (Theta + Pi Lambda(z) Pi)^{-1} Pi breve_G(z) f.
Vec2 krein_coefficients(cd z, const PiTheta& pt, double alpha, const Vec2& breve_g);

} // namespace ab

#endif
