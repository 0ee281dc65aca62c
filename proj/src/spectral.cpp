#include "ab/spectral.hpp"
#include "ab/errors.hpp"
#include "ab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ab {

namespace {

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

constexpr double kPi = std::numbers::pi;

MatX lambda_neg(double mu, double alpha) {
    // Lambda(-mu) = L(sqrt mu) - L(1), real diagonal.
    return l_matrix(std::sqrt(mu), alpha) - l_matrix(1.0, alpha);
}

double kernel_scale(const PiTheta& pt, double alpha) {
    const double t = pt.theta.norm();
    return t > 0.0 ? t : l_matrix(1.0, alpha).norm();
}

std::vector<Vec2> kernel_vectors(const MatX& a, const MatX& v, double thresh) {
    std::vector<Vec2> out;
    if (a.rows() == 0) return out;
    Eigen::JacobiSVD<MatX> svd(a, Eigen::ComputeFullV);
    const auto s = svd.singularValues();
    for (int k = 0; k < s.size(); ++k)
        if (s(k) < thresh) out.push_back(Vec2(v * svd.matrixV().col(k)));
    return out;
}

} // namespace

Eigen::MatrixXcd range_basis(const Mat2& pi) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(Mat2(0.5 * (pi + pi.adjoint())));
    int rank = 0;
    for (int k = 0; k < 2; ++k)
        if (es.eigenvalues()(k) > 0.5) ++rank;
    MatX v(2, rank);
    int c = 0;
    for (int k = 0; k < 2; ++k)
        if (es.eigenvalues()(k) > 0.5) v.col(c++) = es.eigenvectors().col(k);
    return v;
}

std::vector<BoundState> bound_states(const PiTheta& pt, double alpha, const BoundStateOptions& opt) {
    check_alpha(alpha);
    const MatX v = range_basis(pt.pi);
    const int rank = int(v.cols());
    if (rank == 0) return {};

    auto reduced = [&](double mu) { return MatX(v.adjoint() * (MatX(pt.theta) + lambda_neg(mu, alpha)) * v); };
    auto eig = [&](double mu, int j) {
        Eigen::SelfAdjointEigenSolver<MatX> es(reduced(mu), Eigen::EigenvaluesOnly);
        return es.eigenvalues()(j);
    };
    const MatX limit = v.adjoint() * (MatX(pt.theta) - MatX(l_matrix(1.0, alpha))) * v;
    Eigen::SelfAdjointEigenSolver<MatX> es0(limit, Eigen::EigenvaluesOnly);
    const double scale = kernel_scale(pt, alpha);

    std::vector<double> roots;
    for (int j = 0; j < rank; ++j) {
        // Each sorted eigenvalue increases strictly from its mu -> 0 limit to +inf.
        if (es0.eigenvalues()(j) >= -1e-14 * scale) continue;
        double lo = opt.mu_lo, hi = opt.mu_hi;
        while (eig(lo, j) > 0.0) {
            lo *= 1e-6;
            if (lo < 1e-300)
                throw ConvergenceError("bound_states: root below mu = 1e-300 not bracketed", lo);
        }
        while (eig(hi, j) < 0.0) hi *= 1e6;
        // Narrow on the log grid, then bisect in log mu.
        const int n = opt.grid;
        const double la = std::log(lo), lb = std::log(hi);
        double glo = lo, ghi = hi;
        for (int k = 1; k < n; ++k) {
            const double m = std::exp(la + (lb - la) * k / (n - 1));
            if (eig(m, j) >= 0.0) {
                ghi = m;
                break;
            }
            glo = m;
        }
        double a = std::log(glo), b = std::log(ghi);
        for (int it = 0; it < 200 && b - a > opt.rel_tol; ++it) {
            const double m = 0.5 * (a + b);
            (eig(std::exp(m), j) < 0.0 ? a : b) = m;
        }
        roots.push_back(std::exp(0.5 * (a + b)));
    }
    std::sort(roots.begin(), roots.end());

    std::vector<BoundState> out;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double mu = roots[k];
        if (!out.empty() && std::abs(-out.back().energy - mu) < 1e-9 * mu) continue;
        std::vector<Vec2> ker = kernel_vectors(reduced(mu), v, 1e-9 * scale);
        if (ker.empty()) {
            // Root located to rounding but the singular value sits just above threshold.
            Eigen::JacobiSVD<MatX> svd(reduced(mu), Eigen::ComputeFullV);
            ker.push_back(Vec2(v * svd.matrixV().col(rank - 1)));
        }
        BoundState bs;
        bs.energy = -mu;
        bs.multiplicity = int(ker.size());
        bs.basis = ker;
        bs.eigvec = ker.front().normalized();
        out.push_back(bs);
    }
    return out;
}

std::vector<Vec2> zero_resonances(const PiTheta& pt, double alpha) {
    check_alpha(alpha);
    const MatX v = range_basis(pt.pi);
    if (v.cols() == 0) return {};
    const MatX a = v.adjoint() * (MatX(pt.theta) - MatX(l_matrix(1.0, alpha))) * v;
    return kernel_vectors(a, v, 1e-9 * kernel_scale(pt, alpha));
}

PartialWaveFunction resonance_profile(const Vec2& p, double alpha) {
    check_alpha(alpha);
    if (p.norm() == 0.0) throw DomainError("resonance_profile: p must be nonzero");
    PartialWaveFunction out;
    for (int s = 0; s < 2; ++s) {
        if (p(s) == 0.0) continue;
        const double nu = sector_nu(s, alpha);
        const cd c = p(s) * std::pow(2.0, nu - 1.0) * gamma(nu);
        out.set_mode(
            kSectorEll[s], [=](double r) { return c * std::pow(r, -nu); },
            [=](double r) { return -nu * c * std::pow(r, -nu - 1.0); });
    }
    return out;
}

double quadratic_form_value(const PartialWaveFunction& psi, double alpha, const RadialQuadOptions& opt) {
    check_alpha(alpha);
    double total = 0.0;
    for (int ell : psi.modes()) {
        const double m2 = (ell + alpha) * (ell + alpha);
        const QuadResult q = integrate_radial(
            [&](double r) {
                return cd(r * std::norm(psi.radial_derivative(ell, r)) + m2 * std::norm(psi.radial(ell, r)) / r);
            },
            opt);
        total += q.value.real();
    }
    return total;
}

double form_value_extension(const HermitianB& b, const PartialWaveFunction& phi, const Vec2& q, double mu,
                            double alpha, const RadialQuadOptions& opt) {
    check_alpha(alpha);
    if (!(mu > 0.0)) throw DomainError("form_value_extension: need mu > 0");
    Mat2 bf = b.b;
    for (int s = 0; s < 2; ++s) {
        if (!b.infinite[s]) continue;
        if (std::abs(q(s)) > 0.0)
            throw ConversionError("sector_frozen", "form_value_extension: q charges a sector where B is infinite");
        bf.row(s).setZero();
        bf.col(s).setZero();
    }
    const double qf = quadratic_form_value(phi, alpha, opt);
    // ||phi||^2 - ||psi||^2 = -2 Re <phi, G_mu q> - sum |q_ell|^2 ||G_mu^(ell)||^2; G_mu is real.
    double diff = 0.0;
    for (int s = 0; s < 2; ++s) {
        const int ell = kSectorEll[s];
        if (q(s) == 0.0) continue;
        diff -= std::norm(q(s)) * defect_norm_sq(ell, mu, alpha);
        if (!phi.has_mode(ell)) continue;
        const cd c = integrate_radial(
                         [&](double r) {
                             return r * std::conj(phi.radial(ell, r)) * defect_radial(ell, mu, r, alpha);
                         },
                         opt)
                         .value;
        diff -= 2.0 * (c * q(s)).real();
    }
    const double boundary = (q.adjoint() * (l_matrix(mu, alpha) + bf) * q)(0, 0).real();
    return qf + mu * mu * diff + boundary;
}

PartialWaveFunction redecompose(const PartialWaveFunction& phi, const Vec2& q, double mu0, double mu1,
                                double alpha) {
    return phi + defect_difference(mu0, mu1, q, alpha);
}

Vec2 BoundaryData::beta2(double alpha) const {
    Vec2 out;
    for (int s = 0; s < 2; ++s) out(s) = 2.0 * sector_nu(s, alpha) * w(s);
    return out;
}

Vec2 BoundaryData::trace(double alpha) const {
    Vec2 out;
    for (int s = 0; s < 2; ++s) {
        const double nu = sector_nu(s, alpha);
        out(s) = std::pow(2.0, nu) * gamma(nu + 1.0) * w(s);
    }
    return out;
}

BoundaryData extract_boundary_data(const PartialWaveFunction& psi, double alpha, const ExtractionOptions& opt) {
    check_alpha(alpha);
    BoundaryData out;
    for (int s = 0; s < 2; ++s) {
        const int ell = kSectorEll[s];
        if (!psi.has_mode(ell)) continue;
        const double nu = sector_nu(s, alpha);

        std::vector<double> ex = opt.exponents;
        if (ex.empty()) {
            for (int k = 0; k < opt.terms; ++k) {
                ex.push_back(2.0 * k);
                ex.push_back(2.0 * nu + 2.0 * k);
            }
            std::sort(ex.begin(), ex.end());
        }
        auto index_of = [&](double e) {
            for (std::size_t k = 0; k < ex.size(); ++k)
                if (std::abs(ex[k] - e) < 1e-12) return int(k);
            throw DomainError("extract_boundary_data: fit exponents must contain 0 and 2 nu");
        };
        const int iv = index_of(0.0), iw = index_of(2.0 * nu);
        const int n = opt.levels;
        VecX y(n);
        std::vector<double> x(n);
        for (int k = 0; k < n; ++k) {
            x[k] = std::ldexp(1.0, -k);
            const double r = opt.r0 * x[k];
            y(k) = std::pow(r, nu) * psi.radial(ell, r);
        }
        auto fit = [&](int m) {
            MatX a(n, m);
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < m; ++j) a(k, j) = std::pow(x[k], ex[j]);
            return VecX(a.colPivHouseholderQr().solve(y));
        };
        const int m = std::min<int>(int(ex.size()), opt.terms);
        if (iw >= m - 1) throw DomainError("extract_boundary_data: too few fit terms");
        const VecX c1 = fit(m), c0 = fit(m - 1);
        const double rw = std::pow(opt.r0, 2.0 * nu);
        out.v(s) = c1(iv);
        out.w(s) = c1(iw) / rw;
        out.v_err(s) = std::abs(c1(iv) - c0(iv));
        out.w_err(s) = std::abs(c1(iw) - c0(iw)) / rw;
        const double scale = std::max({1.0, std::abs(out.v(s)), std::abs(out.w(s))});
        if (!(out.v_err(s).real() <= opt.fail_tol * scale && out.w_err(s).real() <= opt.fail_tol * scale))
            throw ConvergenceError("extract_boundary_data: extrapolation did not settle",
                                   std::max(out.v_err(s).real(), out.w_err(s).real()));
    }
    return out;
}

DomainCheck domain_membership_check(const ExtensionSpec& spec, const PartialWaveFunction& phi, const Vec2& q,
                                    cd mu, double tol, const ExtractionOptions& opt) {
    const double alpha = spec.alpha;
    const PiTheta pt = to_pi_theta(spec);
    const BoundaryData bd = extract_boundary_data(phi, alpha, opt);
    const Mat2 d1 = diagonal_constants(alpha).d1;
    const Mat2 l1 = l_matrix(1.0, alpha);
    const Vec2 qpsi = q + d1.inverse() * bd.v;
    const Vec2 tpsi = bd.trace(alpha) - l_matrix(mu, alpha) * q;
    DomainCheck out;
    out.residual = pt.pi * tpsi - (pt.theta - pt.pi * l1 * pt.pi) * qpsi + (Mat2::Identity() - pt.pi) * qpsi;
    out.member = out.residual.cwiseAbs().maxCoeff() <= tol * std::max(1.0, qpsi.norm());
    return out;
}

} // namespace ab
