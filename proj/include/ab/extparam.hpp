#ifndef AB_EXTPARAM_HPP
#define AB_EXTPARAM_HPP

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>

namespace ab {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// Sector index 0 is the s-wave ell = 0, index 1 the p-wave ell = -1.
constexpr std::array<int, 2> kSectorEll = {0, -1};

void check_alpha(double alpha);
double sector_nu(int idx, double alpha);
double order_nu(int ell, double alpha);

// ---- parametrization types -------------------------------------------------

struct UnitaryU {
    Mat2 u;
};

/// Hermitian matrix on sector coordinates. A sector flagged infinite is frozen
/// to Friedrichs behaviour; its row and column carry no finite entries.
struct HermitianB {
    Mat2 b = Mat2::Zero();
    std::array<bool, 2> infinite{false, false};

    static HermitianB finite(const Mat2& m) { return HermitianB{m, {false, false}}; }
    static HermitianB all_infinite() { return HermitianB{Mat2::Zero(), {true, true}}; }
    bool any_infinite() const { return infinite[0] || infinite[1]; }
};

struct PiTheta {
    Mat2 pi = Mat2::Zero();
    Mat2 theta = Mat2::Zero();
};

/// Xi = {(N1 c, N2 c) : c in C^2} in the (beta1, beta2) boundary coordinates.
struct BoundaryRelation {
    Mat2 n1, n2;
};

struct DiagonalConstants {
    Mat2 d1, d2, u_natural;
};

enum class SpecKind { U, B, PiTheta, Relation };

struct ExtensionSpec {
    double alpha = 0.5;
    std::variant<UnitaryU, HermitianB, PiTheta, BoundaryRelation> data;

    SpecKind kind() const { return SpecKind(data.index()); }
};

std::string kind_name(SpecKind k);

// ---- the matrices L(mu), Lambda(z), Lambda+-(lambda) -----------------------

/// -i sqrt(z) with the root fixed by Im sqrt(z) > 0; Re of the result is > 0.
cd mu_of_z(cd z);

Mat2 l_matrix(cd mu, double alpha);
Mat2 lambda_z(cd z, double alpha);

enum class Side { Plus, Minus };
Mat2 lambda_pm(double lambda, Side side, double alpha);

DiagonalConstants diagonal_constants(double alpha);
Mat2 u_natural(double alpha);

/// Positive weight W = (Im L(e^{i pi/4}))^{1/2}: the Gram root of the deficiency
/// basis. The shipped unitary U is W U_basis W^{-1}, see CALIBRATION.md.
Mat2 basis_weight(double alpha);

// ---- conversions -------------------------------------------------------------

/// Lagrangian plane {(q, t)} spanned by the columns of (q, t): q is the
/// r^{-nu} coefficient scaled by D1^{-1}, t the trace of the regular part.
struct BoundaryPlane {
    Mat2 q, t;
};

BoundaryPlane plane_from_u(const UnitaryU& u, double alpha);
UnitaryU u_from_plane(const BoundaryPlane& p, double alpha);

UnitaryU u_from_b(const HermitianB& b, double alpha);
HermitianB b_from_u(const UnitaryU& u, double alpha);
PiTheta pi_theta_from_u(const UnitaryU& u, double alpha);
UnitaryU u_from_pi_theta(const PiTheta& pt, double alpha);
PiTheta theta_from_b(const HermitianB& b, const Mat2& pi, double alpha);
BoundaryRelation relation_from_u(const UnitaryU& u, double alpha);
UnitaryU u_from_relation(const BoundaryRelation& rel, double alpha);

UnitaryU to_u(const ExtensionSpec& s);
PiTheta to_pi_theta(const ExtensionSpec& s);
ExtensionSpec convert(const ExtensionSpec& s, SpecKind target);

ExtensionSpec friedrichs(double alpha);
ExtensionSpec krein(double alpha);

struct Classification {
    bool rotation_invariant;
    bool dilation_homogeneous;
    std::string named;  ///< "F", "K" or "none"
};
Classification classify(const ExtensionSpec& s);

/// Distance between two relations as column spaces of the stacked 4x2 generators.
double relation_distance(const BoundaryRelation& a, const BoundaryRelation& b);

/// Orthogonal projector onto the column space of m, rank cut at tol.
Mat2 range_projector(const Mat2& m, double tol = 1e-12);

// ---- literal transcriptions, kept to document the calibration ---------------
namespace literal {
Mat2 u_from_b(const Mat2& b, double alpha);
Mat2 b_from_u(const Mat2& u, double alpha);
Mat2 theta_from_u(const Mat2& u, double alpha);
Mat2 u_from_pi_theta(const Mat2& pi, const Mat2& theta, double alpha);
} // namespace literal

} // namespace ab

#endif
