#include "ab/extparam.hpp"
#include "ab/errors.hpp"
#include "ab/specfun.hpp"

#include <cmath>
#include <numbers>

namespace ab {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

using Mat42 = Eigen::Matrix<cd, 4, 2>;
using Mat4 = Eigen::Matrix<cd, 4, 4>;

double lcoef(double alpha) { return kPi / (2.0 * std::sin(kPi * alpha)); }

Mat2 diag2(cd a, cd b) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Mat2 l_plus(double alpha) { return l_matrix(std::polar(1.0, kPi / 4), alpha); }
Mat2 l_minus(double alpha) { return l_matrix(std::polar(1.0, -kPi / 4), alpha); }

double rcond(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m);
    const auto s = svd.singularValues();
    return s(0) == 0.0 ? 0.0 : s(1) / s(0);
}

Mat2 checked_inverse(const Mat2& m, const std::string& what) {
    if (rcond(m) < 1e-13) throw SingularMatrixError(what + ": matrix not invertible at tolerance 1e-13");
    return m.inverse();
}

void check_unitary(const Mat2& u) {
    if ((u * u.adjoint() - Mat2::Identity()).norm() > 1e-10)
        throw DomainError("U is not unitary within 1e-10");
}

void check_pi_theta(const PiTheta& pt) {
    const Mat2& p = pt.pi;
    if ((p * p - p).norm() > 1e-10 || (p - p.adjoint()).norm() > 1e-10)
        throw DomainError("Pi is not an orthogonal projector");
    if ((pt.theta - pt.theta.adjoint()).norm() > 1e-10 * std::max(1.0, pt.theta.norm()))
        throw DomainError("Theta is not Hermitian");
    if ((p * pt.theta * p - pt.theta).norm() > 1e-10 * std::max(1.0, pt.theta.norm()))
        throw DomainError("Theta does not live on ran(Pi)");
}

Mat42 stack(const Mat2& a, const Mat2& b) {
    Mat42 m;
    m.topRows<2>() = a;
    m.bottomRows<2>() = b;
    return m;
}

} // namespace

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("flux parameter alpha must lie in (0,1)");
}

double order_nu(int ell, double alpha) { return std::abs(ell + alpha); }

double sector_nu(int idx, double alpha) { return order_nu(kSectorEll[idx], alpha); }

std::string kind_name(SpecKind k) {
    switch (k) {
    case SpecKind::U: return "U";
    case SpecKind::B: return "B";
    case SpecKind::PiTheta: return "PiTheta";
    case SpecKind::Relation: return "Relation";
    }
    return "?";
}

cd mu_of_z(cd z) {
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw BranchError("z lies on the cut [0, inf)");
    const cd sqrt_upper = kI * std::sqrt(-z);  // Im > 0
    return -kI * sqrt_upper;
}

Mat2 l_matrix(cd mu, double alpha) {
    check_alpha(alpha);
    if (!(mu.real() > 0.0)) throw DomainError("l_matrix: need Re(mu) > 0");
    const double c = lcoef(alpha);
    return diag2(c * std::pow(mu, 2.0 * alpha), c * std::pow(mu, 2.0 * (1.0 - alpha)));
}

Mat2 lambda_z(cd z, double alpha) { return l_matrix(mu_of_z(z), alpha) - l_matrix(1.0, alpha); }

Mat2 lambda_pm(double lambda, Side side, double alpha) {
    check_alpha(alpha);
    if (!(lambda >= 0.0)) throw DomainError("lambda_pm: need lambda >= 0");
    const double c = lcoef(alpha);
    const double s = side == Side::Plus ? -1.0 : 1.0;
    auto entry = [&](double nu) { return c * (std::polar(std::pow(lambda, nu), s * kPi * nu) - 1.0); };
    return diag2(entry(alpha), entry(1.0 - alpha));
}

DiagonalConstants diagonal_constants(double alpha) {
    check_alpha(alpha);
    DiagonalConstants d;
    d.d1 = Mat2::Zero();
    d.d2 = Mat2::Zero();
    d.u_natural = Mat2::Zero();
    for (int k = 0; k < 2; ++k) {
        const double nu = sector_nu(k, alpha);
        d.d1(k, k) = gamma(nu) / std::pow(2.0, 1.0 - nu);
        d.d2(k, k) = gamma(1.0 - nu) * std::polar(1.0, kPi * nu / 2) / std::pow(2.0, nu);
        d.u_natural(k, k) = -std::polar(1.0, -kPi * nu);
    }
    return d;
}

Mat2 u_natural(double alpha) { return diagonal_constants(alpha).u_natural; }

Mat2 basis_weight(double alpha) {
    const Mat2 lp = l_plus(alpha);
    return diag2(std::sqrt(lp(0, 0).imag()), std::sqrt(lp(1, 1).imag()));
}

Mat2 range_projector(const Mat2& m, double tol) {
    Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU);
    const auto s = svd.singularValues();
    Mat2 p = Mat2::Zero();
    for (int k = 0; k < 2; ++k)
        if (s(k) > tol) p += svd.matrixU().col(k) * svd.matrixU().col(k).adjoint();
    return p;
}

BoundaryPlane plane_from_u(const UnitaryU& u, double alpha) {
    check_alpha(alpha);
    const Mat2 w = basis_weight(alpha);
    const Mat2 ub = w.inverse() * u.u * w;
    BoundaryPlane p;
    p.q = Mat2::Identity() + ub;
    p.t = -(l_minus(alpha) + l_plus(alpha) * ub);
    return p;
}

UnitaryU u_from_plane(const BoundaryPlane& p, double alpha) {
    check_alpha(alpha);
    const Mat2 w = basis_weight(alpha);
    const Mat2 a = checked_inverse(p.t + l_plus(alpha) * p.q, "u_from_plane");
    return UnitaryU{-w.inverse() * (p.t + l_minus(alpha) * p.q) * a * w};
}

UnitaryU u_from_b(const HermitianB& b, double alpha) {
    if ((b.b - b.b.adjoint()).norm() > 1e-12 * std::max(1.0, b.b.norm()))
        throw DomainError("B is not Hermitian");
    BoundaryPlane p;
    p.q = Mat2::Identity();
    p.t = b.b;
    for (int k = 0; k < 2; ++k) {
        if (!b.infinite[k]) continue;
        p.q(k, k) = 0.0;
        p.t.row(k).setZero();
        p.t.col(k).setZero();
        p.t(k, k) = 1.0;
    }
    return u_from_plane(p, alpha);
}

HermitianB b_from_u(const UnitaryU& u, double alpha) {
    check_unitary(u.u);
    const BoundaryPlane p = plane_from_u(u, alpha);
    Eigen::JacobiSVD<Mat2> svd(Mat2::Identity() + u.u, Eigen::ComputeFullV);
    const auto s = svd.singularValues();
    const double tol = 1e-10;
    HermitianB out;
    if (s(1) > tol) {
        out.b = p.t * p.q.inverse();
        return out;
    }
    if (s(0) <= tol) return HermitianB::all_infinite();

    // One-dimensional ker(U+1): only a coordinate direction has a B representation.
    const Vec2 ker = svd.matrixV().col(1);
    int frozen = -1;
    for (int k = 0; k < 2; ++k)
        if (std::abs(ker(k)) > 1.0 - 1e-10) frozen = k;
    if (frozen < 0)
        throw ConversionError("non_diagonal_friedrichs_mixing",
                              "b_from_u: ker(U+1) is not a sector coordinate direction; no B representation");
    const int live = 1 - frozen;
    out.infinite[frozen] = true;
    out.b(live, live) = p.t(live, live) / p.q(live, live);
    return out;
}

PiTheta pi_theta_from_u(const UnitaryU& u, double alpha) {
    check_unitary(u.u);
    const BoundaryPlane p = plane_from_u(u, alpha);
    PiTheta out;
    out.pi = range_projector(p.q, 1e-12);
    // Pseudo-inverse of q on its range.
    Eigen::JacobiSVD<Mat2> svd(p.q, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat2 qplus = Mat2::Zero();
    for (int k = 0; k < 2; ++k) {
        const double sk = svd.singularValues()(k);
        if (sk > 1e-12) qplus += svd.matrixV().col(k) * svd.matrixU().col(k).adjoint() / sk;
    }
    out.theta = out.pi * (p.t + l_matrix(1.0, alpha) * p.q) * qplus * out.pi;
    return out;
}

UnitaryU u_from_pi_theta(const PiTheta& pt, double alpha) {
    check_pi_theta(pt);
    BoundaryPlane p;
    p.q = pt.pi;
    p.t = pt.theta - pt.pi * l_matrix(1.0, alpha) * pt.pi + (Mat2::Identity() - pt.pi);
    return u_from_plane(p, alpha);
}

PiTheta theta_from_b(const HermitianB& b, const Mat2& pi, double alpha) {
    for (int k = 0; k < 2; ++k)
        if (b.infinite[k] && std::abs(pi(k, k)) > 1e-12)
            throw ConversionError("sector_frozen", "theta_from_b: ran(Pi) meets a sector where B is infinite");
    Mat2 bf = b.b;
    for (int k = 0; k < 2; ++k)
        if (b.infinite[k]) {
            bf.row(k).setZero();
            bf.col(k).setZero();
        }
    PiTheta out;
    out.pi = pi;
    out.theta = pi * (bf + l_matrix(1.0, alpha)) * pi;
    return out;
}

BoundaryRelation relation_from_u(const UnitaryU& u, double alpha) {
    check_alpha(alpha);
    const Mat2 w = basis_weight(alpha);
    const Mat2 ub = w.inverse() * u.u * w;
    Mat2 dv = Mat2::Zero(), dw = Mat2::Zero(), e = Mat2::Zero(), s2 = Mat2::Zero();
    for (int k = 0; k < 2; ++k) {
        const double nu = sector_nu(k, alpha);
        dv(k, k) = gamma(nu) / std::pow(2.0, 1.0 - nu);
        dw(k, k) = gamma(-nu) / std::pow(2.0, 1.0 + nu);
        e(k, k) = std::polar(1.0, kPi * nu / 2);
        s2(k, k) = 2.0 * nu;
    }
    BoundaryRelation r;
    r.n1 = dv * (Mat2::Identity() + ub);
    r.n2 = s2 * dw * (e.adjoint() + e * ub);
    return r;
}

UnitaryU u_from_relation(const BoundaryRelation& rel, double alpha) {
    const Mat2 sym = rel.n1.adjoint() * rel.n2;
    const double scale = std::max(1.0, rel.n1.norm() * rel.n2.norm());
    if ((sym - sym.adjoint()).norm() > 1e-10 * scale)
        throw DomainError("relation is not symmetric: N1* N2 is not Hermitian");
    Eigen::JacobiSVD<Mat42> svd(stack(rel.n1, rel.n2));
    if (svd.singularValues()(1) < 1e-12 * svd.singularValues()(0))
        throw DomainError("relation generators do not have joint rank 2");
    const Mat2 d1 = diagonal_constants(alpha).d1;
    BoundaryPlane p;
    p.q = d1.inverse() * rel.n1;
    p.t = d1 * rel.n2;
    return u_from_plane(p, alpha);
}

double relation_distance(const BoundaryRelation& a, const BoundaryRelation& b) {
    auto proj = [](const Mat42& m) {
        Eigen::HouseholderQR<Mat42> qr(m);
        const Mat42 q = qr.householderQ() * Mat42::Identity();
        return Mat4(q * q.adjoint());
    };
    return (proj(stack(a.n1, a.n2)) - proj(stack(b.n1, b.n2))).norm();
}

UnitaryU to_u(const ExtensionSpec& s) {
    switch (s.kind()) {
    case SpecKind::U: {
        const auto& u = std::get<UnitaryU>(s.data);
        check_unitary(u.u);
        return u;
    }
    case SpecKind::B: return u_from_b(std::get<HermitianB>(s.data), s.alpha);
    case SpecKind::PiTheta: return u_from_pi_theta(std::get<PiTheta>(s.data), s.alpha);
    case SpecKind::Relation: return u_from_relation(std::get<BoundaryRelation>(s.data), s.alpha);
    }
    throw DomainError("unknown extension kind");
}

PiTheta to_pi_theta(const ExtensionSpec& s) {
    if (s.kind() == SpecKind::PiTheta) {
        const auto& pt = std::get<PiTheta>(s.data);
        check_pi_theta(pt);
        return pt;
    }
    if (s.kind() == SpecKind::B) {
        const auto& b = std::get<HermitianB>(s.data);
        Mat2 pi = Mat2::Identity();
        for (int k = 0; k < 2; ++k)
            if (b.infinite[k]) pi(k, k) = 0.0;
        return theta_from_b(b, pi, s.alpha);
    }
    return pi_theta_from_u(to_u(s), s.alpha);
}

ExtensionSpec convert(const ExtensionSpec& s, SpecKind target) {
    ExtensionSpec out;
    out.alpha = s.alpha;
    check_alpha(s.alpha);
    if (s.kind() == target) return s;
    switch (target) {
    case SpecKind::U: out.data = to_u(s); break;
    case SpecKind::B: out.data = b_from_u(to_u(s), s.alpha); break;
    case SpecKind::PiTheta: out.data = to_pi_theta(s); break;
    case SpecKind::Relation: out.data = relation_from_u(to_u(s), s.alpha); break;
    }
    return out;
}

ExtensionSpec friedrichs(double alpha) {
    check_alpha(alpha);
    return ExtensionSpec{alpha, UnitaryU{-Mat2::Identity()}};
}

ExtensionSpec krein(double alpha) {
    check_alpha(alpha);
    return ExtensionSpec{alpha, HermitianB::finite(Mat2::Zero())};
}

Classification classify(const ExtensionSpec& s) {
    const Mat2 u = to_u(s).u;
    Classification c;
    c.rotation_invariant = std::abs(u(0, 1)) < 1e-10 && std::abs(u(1, 0)) < 1e-10;
    c.named = "none";
    if ((u + Mat2::Identity()).norm() < 1e-10) c.named = "F";
    else if ((u - u_natural(s.alpha)).norm() < 1e-10) c.named = "K";
    c.dilation_homogeneous = c.named != "none";
    return c;
}

namespace literal {

Mat2 u_from_b(const Mat2& b, double alpha) {
    return -(b + l_plus(alpha)).inverse() * (b + l_minus(alpha));
}

Mat2 b_from_u(const Mat2& u, double alpha) {
    return (l_plus(alpha) * u + l_minus(alpha)) * (u + Mat2::Identity()).inverse();
}

Mat2 theta_from_u(const Mat2& u, double alpha) {
    return lambda_z(kI, alpha) * (u - Mat2::Identity()) * (u + Mat2::Identity()).inverse();
}

Mat2 u_from_pi_theta(const Mat2& pi, const Mat2& theta, double alpha) {
    const Mat2 pl = pi * lambda_z(kI, alpha) * pi;
    Mat2 m = theta - pl + (Mat2::Identity() - pi);
    return -(Mat2::Identity() + 2.0 * m.inverse() * pl);
}

} // namespace literal

} // namespace ab
