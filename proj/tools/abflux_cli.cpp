#include "ab/errors.hpp"
#include "ab/extparam.hpp"
#include "ab/scattering.hpp"
#include "ab/serialize.hpp"
#include "ab/specfun.hpp"
#include "ab/spectral.hpp"
#include "ab/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace ab;

namespace {

struct RunConfig {
    double alpha = 0.5;
    std::string extension = "friedrichs";
    std::string lambda_grid = "1";
    std::string omega_grid = "0.5:3.14159265358979323846:8";
    std::string out;
    std::string format = "json";
    Tolerances tol;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

/// "a:b:n" (n points, endpoints included) or a comma-separated list.
std::vector<double> parse_grid(const std::string& s) {
    const auto c1 = s.find(':');
    if (c1 == std::string::npos) return parse_list(s);
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw DomainError("grid '" + s + "': expected a:b:n");
    const double a = std::stod(s.substr(0, c1)), b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(s.substr(c2 + 1));
    if (n < 1) throw DomainError("grid '" + s + "': need n >= 1");
    std::vector<double> g;
    for (int k = 0; k < n; ++k) g.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    return g;
}

cd parse_complex(const std::string& s) {
    const std::vector<double> v = parse_list(s);
    if (v.size() == 1) return v[0];
    if (v.size() != 2) throw DomainError("complex '" + s + "': expected re,im");
    return {v[0], v[1]};
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw DomainError("cannot write " + cfg.out);
    f << text;
}

// Distance between two specs of the same kind in their own coordinates.
double native_distance(const ExtensionSpec& a, const ExtensionSpec& b) {
    switch (a.kind()) {
    case SpecKind::U:
        return (std::get<UnitaryU>(a.data).u - std::get<UnitaryU>(b.data).u).norm();
    case SpecKind::B: {
        const HermitianB &x = std::get<HermitianB>(a.data), &y = std::get<HermitianB>(b.data);
        return x.infinite != y.infinite ? INFINITY : (x.b - y.b).norm();
    }
    case SpecKind::PiTheta: {
        const PiTheta &x = std::get<PiTheta>(a.data), &y = std::get<PiTheta>(b.data);
        return (x.pi - y.pi).norm() + (x.theta - y.theta).norm();
    }
    case SpecKind::Relation:
        return relation_distance(std::get<BoundaryRelation>(a.data), std::get<BoundaryRelation>(b.data));
    }
    return INFINITY;
}

int cmd_convert(const RunConfig& cfg, const std::string& target) {
    const ExtensionSpec in = parse_extension(cfg.extension, cfg.alpha);
    const ExtensionSpec out = convert(in, parse_kind(target));
    const double residual = native_distance(in, convert(out, in.kind()));
    json j;
    j["input"] = to_json(in);
    j["output"] = to_json(out);
    j["round_trip_residual"] = residual;
    emit(cfg, dump(j) + "\n");
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    const ExtensionSpec spec = parse_extension(cfg.extension, cfg.alpha);
    const PiTheta pt = to_pi_theta(spec);
    json j;
    j["extension"] = to_json(spec);
    const json rep = spectral_report(bound_states(pt, spec.alpha), zero_resonances(pt, spec.alpha));
    for (auto it = rep.begin(); it != rep.end(); ++it) j[it.key()] = it.value();
    emit(cfg, dump(j) + "\n");
    return 0;
}

int cmd_scatter(const RunConfig& cfg, int ell_max) {
    const ExtensionSpec spec = parse_extension(cfg.extension, cfg.alpha);
    const std::vector<double> lambdas = parse_grid(cfg.lambda_grid), omegas = parse_grid(cfg.omega_grid);
    if (cfg.format == "json") {
        json arr = json::array();
        for (double lam : lambdas) arr.push_back(to_json(s_matrix(spec, lam)));
        json j;
        j["extension"] = to_json(spec);
        j["s_matrix"] = arr;
        emit(cfg, dump(j) + "\n");
        return 0;
    }
    if (cfg.format != "csv") throw DomainError("scatter: --format must be csv or json");
    std::string dcs = "lambda,omega,dcs\n";
    for (double lam : lambdas)
        for (double om : omegas) {
            const bool forward = std::abs(std::remainder(om, 2.0 * std::numbers::pi)) < 1e-12;
            dcs += format_double(lam) + "," + format_double(om) + "," +
                   (forward ? std::string("inf") : format_double(diff_cross_section(spec, lam, om))) + "\n";
        }
    std::string phases;
    if (classify(spec).rotation_invariant) {
        phases = "lambda,ell,re_delta,im_delta\n";
        for (double lam : lambdas)
            for (const auto& [ell, d] : phase_shifts(spec, lam, ell_max))
                phases += format_double(lam) + "," + std::to_string(ell) + "," + format_double(d.real()) + "," +
                          format_double(d.imag()) + "\n";
    }
    if (cfg.out.empty()) {
        std::cout << dcs;
        if (!phases.empty()) std::cout << "\n" << phases;
        return 0;
    }
    emit(cfg, dcs);
    if (!phases.empty()) {
        const std::string path = cfg.out + ".phase_shifts.csv";
        std::ofstream f(path);
        if (!f) throw DomainError("cannot write " + path);
        f << phases;
    }
    return 0;
}

int report_checks(const RunConfig& cfg, const VerifyReport& rep) {
    emit(cfg, dump(rep.to_json()) + "\n");
    if (const Check* c = rep.first_failure()) {
        std::cerr << "FAIL " << c->name << ": residual " << format_double(c->residual) << " > tol "
                  << format_double(c->tol) << " (" << c->tol_key << ")\n";
        return 1;
    }
    return 0;
}

int cmd_resolvent_check(const RunConfig& cfg, const std::string& z, const std::string& w) {
    const ExtensionSpec spec = parse_extension(cfg.extension, cfg.alpha);
    return report_checks(cfg, VerifyReport{"resolvent-check", resolvent_checks(spec, parse_complex(z), parse_complex(w), cfg.tol)});
}

int cmd_specfun_check(const RunConfig& cfg, const std::vector<double>& nus, const std::string& arg) {
    if (nus.empty()) return report_checks(cfg, run_verify("specfun", cfg.tol));
    const cd w = parse_complex(arg);
    json arr = json::array();
    for (double nu : nus) {
        json e;
        e["nu"] = nu;
        e["arg"] = json::array({w.real(), w.imag()});
        if (w.imag() == 0.0 && w.real() > 0.0) {
            e["J"] = bessel_j(nu, w.real());
            e["Y"] = bessel_y(nu, w.real());
        }
        const cd i = bessel_i(nu, w), k = bessel_k(nu, w);
        e["I"] = json::array({i.real(), i.imag()});
        e["K"] = json::array({k.real(), k.imag()});
        if (nu > 0.0) e["gamma"] = ab::gamma(nu);
        arr.push_back(e);
    }
    emit(cfg, dump(arr) + "\n");
    return 0;
}

int cmd_form_value(const RunConfig& cfg, const std::string& mus, const std::string& qs) {
    const ExtensionSpec spec = parse_extension(cfg.extension, cfg.alpha);
    const double a = spec.alpha;
    const HermitianB b = std::get<HermitianB>(convert(spec, SpecKind::B).data);
    const std::vector<double> qv = parse_list(qs);
    if (qv.size() != 4) throw DomainError("form-value: --q needs re0,im0,re1,im1");
    const Vec2 q(cd(qv[0], qv[1]), cd(qv[2], qv[3]));
    // Trial regular part: Friedrichs-domain Gaussians in both sectors.
    PartialWaveFunction phi;
    phi.set_mode(0, [a](double r) { return cd(std::pow(r, a) * std::exp(-r * r) * (1 + 0.3 * r * r)); });
    phi.set_mode(-1, [a](double r) { return cd(0.5, 0.2) * std::pow(r, 1 - a) * std::exp(-r * r); });
    const std::vector<double> mu = parse_list(mus);
    json arr = json::array();
    double lo = INFINITY, hi = -INFINITY;
    for (double m : mu) {
        const double v = form_value_extension(b, redecompose(phi, q, 1.0, m, a), q, m, a);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        json e;
        e["mu"] = m;
        e["value"] = v;
        arr.push_back(e);
    }
    json j;
    j["extension"] = to_json(spec);
    j["q"] = to_json(q);
    j["values"] = arr;
    j["spread"] = mu.empty() ? 0.0 : hi - lo;
    emit(cfg, dump(j) + "\n");
    return 0;
}

// --tol-KEY=V arguments left over by the parser.
void parse_tolerances(const std::vector<std::string>& extras, Tolerances& tol) {
    for (const std::string& s : extras) {
        const std::string pre = "--tol-";
        const auto eq = s.find('=');
        if (s.rfind(pre, 0) != 0 || eq == std::string::npos) throw CLI::ExtrasError({s});
        tol[s.substr(pre.size(), eq - pre.size())] = std::stod(s.substr(eq + 1));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"abflux: self-adjoint Aharonov-Bohm Hamiltonians"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&cfg](CLI::App* sub, bool with_grids) {
        sub->add_option("--alpha", cfg.alpha, "flux parameter in (0, 1)")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--extension", cfg.extension, "friedrichs | krein | JSON | @file");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json | csv");
        if (with_grids) {
            sub->add_option("--lambda-grid", cfg.lambda_grid, "energies a:b:n or list");
            sub->add_option("--omega-grid", cfg.omega_grid, "angles a:b:n or list");
        }
        sub->allow_extras();
    };

    std::string target = "U";
    auto* conv = app.add_subcommand("convert", "convert an extension between parametrizations");
    common(conv, false);
    conv->add_option("--target", target, "U | B | PiTheta | Relation")->required();

    auto* spec = app.add_subcommand("spectrum", "bound states and zero-energy resonances");
    common(spec, false);

    int ell_max = 3;
    auto* scat = app.add_subcommand("scatter", "cross-section and phase-shift tables");
    common(scat, true);
    scat->add_option("--ell-max", ell_max, "phase shifts for |ell| <= ell-max");

    std::string z = "-2,0.5", w = "-3,0";
    auto* rc = app.add_subcommand("resolvent-check", "resolvent identity residuals");
    common(rc, false);
    rc->add_option("--z", z, "re,im");
    rc->add_option("--w", w, "re,im");

    std::vector<double> nus;
    std::string arg = "1";
    auto* sf = app.add_subcommand("specfun-check", "Wronskian suite, or values at --nu/--arg");
    common(sf, false);
    sf->add_option("--nu", nus, "orders");
    sf->add_option("--arg", arg, "argument re,im");

    std::string mus = "0.5,1,2", qs = "0.7,0.2,-0.4,0.5";
    auto* fv = app.add_subcommand("form-value", "extension form on built-in trial data");
    common(fv, false);
    fv->add_option("--mu", mus, "spectral parameters");
    fv->add_option("--q", qs, "singular coefficients re0,im0,re1,im1");

    std::string suite = "all";
    auto* ver = app.add_subcommand("verify", "invariant suites");
    common(ver, false);
    ver->add_option("--suite", suite, "anchors | specfun | resolvent | all");

    CLI11_PARSE(app, argc, argv);

    try {
        for (CLI::App* sub : app.get_subcommands()) parse_tolerances(sub->remaining(), cfg.tol);
        if (*conv) return cmd_convert(cfg, target);
        if (*spec) return cmd_spectrum(cfg);
        if (*scat) {
            if (cfg.format == "json" && !scat->count("--format")) cfg.format = "csv";
            return cmd_scatter(cfg, ell_max);
        }
        if (*rc) return cmd_resolvent_check(cfg, z, w);
        if (*sf) return cmd_specfun_check(cfg, nus, arg);
        if (*fv) return cmd_form_value(cfg, mus, qs);
        if (*ver) return report_checks(cfg, run_verify(suite, cfg.tol));
    } catch (const CLI::ExtrasError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        json j;
        j["error"] = e.code();
        j["message"] = e.what();
        std::cerr << dump(j, 0) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
