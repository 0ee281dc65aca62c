#include "ab/partial_wave.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace ab {

cd numeric_derivative(const Radial& f, double r) {
    const double h = 1e-3 * r;
    return (f(r - 2 * h) - 8.0 * f(r - h) + 8.0 * f(r + h) - f(r + 2 * h)) / (12.0 * h);
}

cd numeric_second_derivative(const Radial& f, double r) {
    const double h = 2e-3 * r;
    return (-f(r - 2 * h) + 16.0 * f(r - h) - 30.0 * f(r) + 16.0 * f(r + h) - f(r + 2 * h)) / (12.0 * h * h);
}

PartialWaveFunction& PartialWaveFunction::set_mode(int ell, Radial value, Radial derivative) {
    modes_[ell] = Mode{std::move(value), std::move(derivative)};
    return *this;
}

std::vector<int> PartialWaveFunction::modes() const {
    std::vector<int> out;
    for (const auto& [ell, m] : modes_) out.push_back(ell);
    return out;
}

cd PartialWaveFunction::radial(int ell, double r) const {
    const auto it = modes_.find(ell);
    return it == modes_.end() ? cd(0.0) : it->second.value(r);
}

cd PartialWaveFunction::radial_derivative(int ell, double r) const {
    const auto it = modes_.find(ell);
    if (it == modes_.end()) return 0.0;
    if (it->second.derivative) return it->second.derivative(r);
    return numeric_derivative(it->second.value, r);
}

cd PartialWaveFunction::operator()(double r, double theta) const {
    cd s = 0.0;
    for (const auto& [ell, m] : modes_) s += m.value(r) * std::polar(1.0, ell * theta);
    return s / std::sqrt(2.0 * std::numbers::pi);
}

PartialWaveFunction PartialWaveFunction::operator+(const PartialWaveFunction& o) const {
    PartialWaveFunction out = *this;
    for (const auto& [ell, m] : o.modes_) {
        const auto it = modes_.find(ell);
        if (it == modes_.end()) {
            out.modes_[ell] = m;
            continue;
        }
        const Mode a = it->second, b = m;
        auto deriv = [](const Mode& m, double r) {
            return m.derivative ? m.derivative(r) : numeric_derivative(m.value, r);
        };
        out.modes_[ell] = Mode{[a, b](double r) { return a.value(r) + b.value(r); },
                               [a, b, deriv](double r) { return deriv(a, r) + deriv(b, r); }};
    }
    return out;
}

PartialWaveFunction PartialWaveFunction::scaled(cd s) const {
    PartialWaveFunction out;
    for (const auto& [ell, m] : modes_) {
        const Mode a = m;
        Radial d;
        if (a.derivative) d = [a, s](double r) { return s * a.derivative(r); };
        out.modes_[ell] = Mode{[a, s](double r) { return s * a.value(r); }, d};
    }
    return out;
}

PartialWaveFunction PartialWaveFunction::operator-(const PartialWaveFunction& o) const {
    return *this + o.scaled(-1.0);
}

PartialWaveFunction PartialWaveFunction::dilated(double gamma) const {
    const double s = std::exp(gamma);
    PartialWaveFunction out;
    for (const auto& [ell, m] : modes_) {
        const Mode a = m;
        Radial d;
        if (a.derivative) d = [a, s](double r) { return s * s * a.derivative(s * r); };
        out.modes_[ell] = Mode{[a, s](double r) { return s * a.value(s * r); }, d};
    }
    return out;
}

std::vector<double> PartialWaveFunction::default_grid() {
    const int n = 2000;
    const double a = std::log(1e-6), b = std::log(50.0);
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = std::exp(a + (b - a) * k / (n - 1));
    return g;
}

std::string PartialWaveFunction::to_csv(const std::vector<double>& grid) const {
    std::string out = "r,re_psi0,im_psi0,re_psim1,im_psim1\n";
    char buf[160];
    for (double r : grid) {
        const cd a = radial(0, r), b = radial(-1, r);
        std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e,%.16e,%.16e\n", r, a.real(), a.imag(), b.real(),
                      b.imag());
        out += buf;
    }
    return out;
}

} // namespace ab
