#ifndef AB_PARTIAL_WAVE_HPP
#define AB_PARTIAL_WAVE_HPP

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ab {

using cd = std::complex<double>;
using Radial = std::function<cd(double)>;

/// psi(r, theta) = sum_ell psi_ell(r) e^{i ell theta} / sqrt(2 pi).
/// With this normalization ||psi||^2 = sum_ell int r |psi_ell|^2 dr.
class PartialWaveFunction {
public:
    PartialWaveFunction() = default;

    /// Adds (or replaces) a mode. `derivative` may be empty; a finite
    /// difference is used then.
    PartialWaveFunction& set_mode(int ell, Radial value, Radial derivative = {});

    bool has_mode(int ell) const { return modes_.count(ell) != 0; }
    std::vector<int> modes() const;

    cd radial(int ell, double r) const;
    cd radial_derivative(int ell, double r) const;
    cd operator()(double r, double theta) const;

    PartialWaveFunction operator+(const PartialWaveFunction& o) const;
    PartialWaveFunction operator-(const PartialWaveFunction& o) const;
    PartialWaveFunction scaled(cd s) const;

    /// Dilation (D_gamma psi)(x) = e^gamma psi(e^gamma x).
    PartialWaveFunction dilated(double gamma) const;

    /// Log-spaced grid on [1e-6, 50] with 2000 points.
    static std::vector<double> default_grid();

    /// Columns r, Re psi_0, Im psi_0, Re psi_-1, Im psi_-1.
    std::string to_csv(const std::vector<double>& grid = default_grid()) const;

private:
    struct Mode {
        Radial value;
        Radial derivative;
    };
    std::map<int, Mode> modes_;
};

/// Five-point central difference with step h = 1e-3 r.
cd numeric_derivative(const Radial& f, double r);
cd numeric_second_derivative(const Radial& f, double r);

} // namespace ab

#endif
