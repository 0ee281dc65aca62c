#ifndef AB_SPECTRAL_HPP
#define AB_SPECTRAL_HPP

#include "ab/defect.hpp"
#include "ab/extparam.hpp"
#include "ab/partial_wave.hpp"

#include <vector>

namespace ab {

struct BoundState {
    double energy;            ///< -mu
    Vec2 eigvec;              ///< unit vector in ker[Theta + Pi Lambda(energy) Pi]
    int multiplicity;         ///< 1 or 2
    std::vector<Vec2> basis;  ///< orthonormal kernel basis, size == multiplicity
};

struct BoundStateOptions {
    double mu_lo = 1e-6;
    double mu_hi = 1e6;
    int grid = 241;
    double rel_tol = 1e-15;
};

/// Roots mu > 0 of det[Theta + Pi Lambda(-mu) Pi] on ran Pi; energies -mu.
std::vector<BoundState> bound_states(const PiTheta& pt, double alpha, const BoundStateOptions& opt = {});

/// Orthonormal basis of ker[Theta + Pi Lambda(0) Pi] on ran Pi.
std::vector<Vec2> zero_resonances(const PiTheta& pt, double alpha);

/// sum_ell p_ell 2^{nu-1} Gamma(nu) r^{-nu} in the two sectors.
PartialWaveFunction resonance_profile(const Vec2& p, double alpha);

/// sum_ell int r [|psi_ell'|^2 + (ell+alpha)^2 |psi_ell|^2 / r^2] dr.
double quadratic_form_value(const PartialWaveFunction& psi, double alpha, const RadialQuadOptions& opt = {});

/// Q^(B)[psi] for psi = phi + sum q_ell G_mu^(ell):
/// Q^F[phi] + mu^2 ||phi||^2 - mu^2 ||psi||^2 + q^* [L(mu) + B] q.
double form_value_extension(const HermitianB& b, const PartialWaveFunction& phi, const Vec2& q, double mu,
                            double alpha, const RadialQuadOptions& opt = {});

/// The same psi written with spectral parameter mu1 instead of mu0.
PartialWaveFunction redecompose(const PartialWaveFunction& phi, const Vec2& q, double mu0, double mu1, double alpha);

struct BoundaryData {
    Vec2 v = Vec2::Zero();  ///< coefficient of r^{-nu}
    Vec2 w = Vec2::Zero();  ///< coefficient of r^{nu}
    Vec2 v_err = Vec2::Zero();
    Vec2 w_err = Vec2::Zero();

    Vec2 beta1() const { return v; }
    Vec2 beta2(double alpha) const;
    /// Trace of the regular part: 2^nu Gamma(nu + 1) w.
    Vec2 trace(double alpha) const;
};

struct ExtractionOptions {
    double r0 = 0.05;
    int levels = 12;  ///< samples at r0 2^{-k}, k < levels
    int terms = 9;
    /// Exponents of r^nu psi in the fit. Empty selects {0, 2, 4, ...} and {2nu, 2nu + 2, ...}.
    std::vector<double> exponents;
    double fail_tol = 1e-5;
};

/// Small-r coefficients v, w of each sector by generalized Richardson
/// extrapolation on a geometric grid.
BoundaryData extract_boundary_data(const PartialWaveFunction& psi, double alpha, const ExtractionOptions& opt = {});

struct DomainCheck {
    bool member;
    Vec2 residual;
};

/// psi = phi + sum q_ell G_mu^(ell) with mu > 0 (or any Re mu > 0). Tests
/// Pi(tau psi_reg) = (Theta - Pi L(1) Pi) q and (1 - Pi) q = 0.
DomainCheck domain_membership_check(const ExtensionSpec& spec, const PartialWaveFunction& phi, const Vec2& q,
                                    cd mu, double tol = 1e-5, const ExtractionOptions& opt = {});

/// Orthonormal basis (columns) of ran Pi.
Eigen::MatrixXcd range_basis(const Mat2& pi);

} // namespace ab

#endif
