#ifndef AB_SCATTERING_HPP
#define AB_SCATTERING_HPP

#include "ab/extparam.hpp"
#include "ab/partial_wave.hpp"

#include <map>
#include <vector>

namespace ab {

/// ceil(2 k r) + 40.
int default_ell_max(double k, double r);

/// (2 pi)^{-1} sum_ell e^{i ell (theta - omega) + i pi |ell| / 2} J_|ell|(k r).
/// ell_max <= 0 selects default_ell_max.
cd plane_wave(double k, double omega, double r, double theta, int ell_max = 0);

/// Phase e^{i pi |ell| / 2 -+ i pi (|ell + alpha| - |ell|) / 2} of mode ell.
cd friedrichs_phase(int ell, Side side, double alpha);

cd eigenfunction_friedrichs(double k, double omega, Side side, double r, double theta, double alpha,
                            int ell_max = 0);

/// Radial parts of f^F in the partial-wave normalization, modes |ell| <= ell_max.
PartialWaveFunction eigenfunction_friedrichs_modes(double k, double omega, Side side, double alpha, int ell_max);

/// tau f^F_{k, side}: phase_ell k^nu e^{-i ell omega} / sqrt(2 pi) on the two sectors.
Vec2 tau_eigenfunction(double k, double omega, Side side, double alpha);

/// c = Pi (Theta + Pi Lambda_side(k^2) Pi)^{-1} Pi tau f^F.
Vec2 eigen_correction(const ExtensionSpec& spec, double k, double omega, Side side);

/// f^F + G_side(k^2) c.
cd eigenfunction_general(const ExtensionSpec& spec, double k, double omega, Side side, double r, double theta,
                         int ell_max = 0);

/// Sector modes of f^(Pi, Theta) (ell in {0, -1}) as radial functions.
PartialWaveFunction eigenfunction_general_sectors(const ExtensionSpec& spec, double k, double omega, Side side);

struct SommerfeldResult {
    std::vector<double> r;
    std::vector<double> residual;  ///< |sqrt(r) (d_r -+ i k)(f - f_k)| at each r
    double tail;                   ///< residual at the largest r
};

/// Radiation-condition residual along the ray theta for incidence omega,
/// eigenfunction of side `side`, condition sign of `condition`. Off the
/// backscattering ray theta = omega + pi the incident part carries the flux
/// phase e^{i alpha sgn(phi) (pi - |phi|)} and the residual grows like sqrt(r).
/// With against_itself the plane wave is compared with itself.
SommerfeldResult sommerfeld_check(const ExtensionSpec& spec, double k, Side side, const std::vector<double>& r_grid,
                                  double theta, double omega, Side condition, bool against_itself = false);
SommerfeldResult sommerfeld_check(const ExtensionSpec& spec, double k, Side side, const std::vector<double>& r_grid,
                                  double theta, double omega = 0.0);

/// S(omega, omega') = delta_coeff delta(omega - omega') + pv_coeff P.V. 1 / (e^{i(omega - omega')} - 1)
///                  + sum_{ell, ell'} smooth(ell, ell') e^{i (ell omega - ell' omega')},
/// omega the outgoing and omega' the incoming direction; rows/cols index sectors {0, -1}.
struct SMatrixKernel {
    double alpha = 0.5;
    double lambda = 1.0;
    double delta_coeff = 0.0;
    cd pv_coeff{0.0, 0.0};
    Mat2 smooth = Mat2::Zero();
};

SMatrixKernel s_matrix(const ExtensionSpec& spec, double lambda);

/// Smooth part of the kernel at (omega, omega').
cd smooth_kernel(const SMatrixKernel& s, double omega, double omega_prime);

/// Two-sector block of the partial-wave S-matrix: diag(e^{2 i delta^F}) + 2 pi smooth.
Mat2 sector_s_matrix(const SMatrixKernel& s);

/// Regular part of the scattering amplitude sqrt(2 pi / (i k)) (S - delta) at omega != omega'.
cd scattering_amplitude(const SMatrixKernel& s, double omega, double omega_prime);
cd scattering_amplitude(const ExtensionSpec& spec, double lambda, double omega, double omega_prime);

/// |a(lambda; omega, 0)|^2, omega != 0 mod 2 pi.
double diff_cross_section(const ExtensionSpec& spec, double lambda, double omega);

/// sin^2(pi alpha) / (2 pi sqrt(lambda) sin^2(omega / 2)).
double dcs_friedrichs_closed_form(double alpha, double lambda, double omega);

/// Closed form of the Krein (B = 0) differential cross section.
double dcs_krein_closed_form(double alpha, double lambda, double omega);

/// delta_ell for |ell| <= ell_max; spec must be rotation invariant.
std::map<int, cd> phase_shifts(const ExtensionSpec& spec, double lambda, int ell_max);

struct AbelResult {
    cd value;                 ///< extrapolated to x = 1
    std::vector<double> x;    ///< damping parameters
    std::vector<cd> partial;  ///< damped sums at each x
};

/// Amplitude from the partial-wave series sum (e^{2 i delta_ell} - 1) e^{i ell phi} x^|ell|,
/// extrapolated x -> 1 by Neville interpolation in 1 - x.
AbelResult abel_amplitude(const ExtensionSpec& spec, double lambda, double phi,
                          const std::vector<double>& x = {0.9, 0.95, 0.99, 0.995, 0.999});

namespace literal {
/// Uncalibrated closed-form Krein cross section, kept for comparison.
double dcs_krein(double alpha, double lambda, double omega);
/// Uncalibrated Krein amplitude line: -(i / 2 pi^2) sin(pi alpha) (e^{i phi} - 1).
cd krein_smooth_line(double alpha, double phi);
} // namespace literal

} // namespace ab

#endif
