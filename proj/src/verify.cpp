#include "ab/verify.hpp"
#include "ab/defect.hpp"
#include "ab/errors.hpp"
#include "ab/resolvent.hpp"
#include "ab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ab {

namespace {

const std::vector<double> kAlphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

Check make(const std::string& name, const std::string& key, double residual, const Tolerances& over) {
    const double tol = tolerance(over, key);
    return Check{name, key, residual, tol, residual <= tol};
}

Mat2 random_hermitian(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Mat2 m;
    m << n(rng), cd(n(rng), n(rng)), 0.0, n(rng);
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

Mat2 random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Mat2 g;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(a, b) = cd(n(rng), n(rng));
    Eigen::HouseholderQR<Mat2> qr(g);
    return qr.householderQ();
}

void anchor_checks(std::vector<Check>& out, const Tolerances& over) {
    double kb_u = 0, k_pt = 0, k_th = 0, f_u = 0, f_pi = 0, f_b = 0;
    for (double a : kAlphas) {
        const Mat2 un = u_natural(a);
        const Mat2 l1 = l_matrix(1.0, a);
        kb_u = std::max(kb_u, (u_from_b(HermitianB::finite(Mat2::Zero()), a).u - un).norm());
        const HermitianB bk = b_from_u(UnitaryU{un}, a);
        kb_u = std::max(kb_u, bk.b.norm() + (bk.any_infinite() ? 1.0 : 0.0));
        const PiTheta pk = pi_theta_from_u(UnitaryU{un}, a);
        k_pt = std::max(k_pt, (pk.pi - Mat2::Identity()).norm() + (pk.theta - l1).norm());
        k_pt = std::max(k_pt, (u_from_pi_theta(PiTheta{Mat2::Identity(), l1}, a).u - un).norm());
        k_th = std::max(k_th, (theta_from_b(HermitianB::finite(Mat2::Zero()), Mat2::Identity(), a).theta - l1).norm());

        f_u = std::max(f_u, (u_from_b(HermitianB::all_infinite(), a).u + Mat2::Identity()).norm());
        const HermitianB bf = b_from_u(UnitaryU{-Mat2::Identity()}, a);
        f_b = std::max(f_b, (bf.infinite[0] && bf.infinite[1]) ? 0.0 : 1.0);
        f_pi = std::max(f_pi, pi_theta_from_u(UnitaryU{-Mat2::Identity()}, a).pi.norm());
        f_pi = std::max(f_pi, (u_from_pi_theta(PiTheta{}, a).u + Mat2::Identity()).norm());
    }
    out.push_back(make("krein: B = 0 <-> U_natural", "anchor", kb_u, over));
    out.push_back(make("krein: U_natural <-> (Pi = 1, Theta = L(1))", "anchor", k_pt, over));
    out.push_back(make("krein: theta_from_b(0, 1) = L(1)", "anchor", k_th, over));
    out.push_back(make("friedrichs: B = inf <-> U = -1", "anchor", std::max(f_u, f_b), over));
    out.push_back(make("friedrichs: U = -1 <-> Pi = 0", "anchor", f_pi, over));

    std::mt19937_64 rng(20241014);
    double ub = 0, upt = 0, urel = 0, graph = 0;
    for (int seed = 0; seed < 20; ++seed) {
        const double a = kAlphas[std::size_t(seed) % kAlphas.size()];
        const Mat2 b = random_hermitian(rng);
        const UnitaryU u = u_from_b(HermitianB::finite(b), a);
        ub = std::max(ub, (b_from_u(u, a).b - b).norm());
        const UnitaryU v{random_unitary(rng)};
        upt = std::max(upt, (u_from_pi_theta(pi_theta_from_u(v, a), a).u - v.u).norm());
        urel = std::max(urel, (u_from_relation(relation_from_u(v, a), a).u - v.u).norm());
        graph = std::max(graph, (pi_theta_from_u(u, a).theta - theta_from_b(HermitianB::finite(b), Mat2::Identity(), a).theta).norm());
    }
    out.push_back(make("round trip U <-> B", "round_trip", ub, over));
    out.push_back(make("round trip U <-> (Pi, Theta)", "round_trip", upt, over));
    out.push_back(make("round trip U <-> relation", "round_trip", urel, over));
    out.push_back(make("conversion graph B -> U -> (Pi, Theta) = theta_from_b", "round_trip", graph, over));
}

void specfun_checks(std::vector<Check>& out, const Tolerances& over) {
    double wr = 0.0, wr_c = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double nu = 2.0 * i / 20.0;
        for (int j = 0; j < 10; ++j) {
            const double x = 1e-2 * std::pow(10.0, 4.0 * j / 9.0);
            const BesselIK b = bessel_ik(nu, x);
            wr = std::max(wr, std::abs((b.i * b.kp - b.ip * b.k) * x + 1.0));
            const cd w = std::polar(x, -std::numbers::pi / 4);
            const BesselIK c = bessel_ik(nu, w);
            wr_c = std::max(wr_c, std::abs((c.i * c.kp - c.ip * c.k) * w + 1.0));
        }
    }
    out.push_back(make("wronskian I K' - I' K = -1/x, real ray", "wronskian", wr, over));
    out.push_back(make("wronskian I K' - I' K = -1/w, e^{-i pi/4} ray", "wronskian", wr_c, over));
    double jy = 0.0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j < 10; ++j) {
            const double nu = 2.0 * i / 20.0, x = 1e-2 * std::pow(10.0, 4.0 * j / 9.0);
            const BesselJY b = bessel_jy(nu, x);
            jy = std::max(jy, std::abs((b.j * b.yp - b.jp * b.y) * std::numbers::pi * x / 2.0 - 1.0));
        }
    out.push_back(make("wronskian J Y' - J' Y = 2/(pi x)", "wronskian", jy, over));
}

PartialWaveFunction gaussian_input() {
    PartialWaveFunction f;
    f.set_mode(0, [](double r) { return cd(std::exp(-r * r)); }, [](double r) { return cd(-2.0 * r * std::exp(-r * r)); });
    f.set_mode(-1, [](double r) { return cd(r * std::exp(-(r - 1) * (r - 1)), 0.3 * std::exp(-r * r)); });
    f.set_mode(2, [](double r) { return cd(r * r * std::exp(-r * r)); });
    return f;
}

PartialWaveFunction gaussian_probe() {
    PartialWaveFunction h;
    h.set_mode(0, [](double r) { return cd(r * std::exp(-r * r / 2)); });
    h.set_mode(-1, [](double r) { return cd(std::exp(-r * r), 1.0); });
    h.set_mode(2, [](double r) { return cd(std::exp(-r * r)); });
    return h;
}

} // namespace

double tolerance(const Tolerances& over, const std::string& key) {
    if (const auto it = over.find(key); it != over.end()) return it->second;
    static const std::map<std::string, double> defaults = {
        {"anchor", 1e-10}, {"round_trip", 1e-10}, {"wronskian", 1e-9}, {"resolvent", 1e-6}, {"conjugation", 1e-6}};
    const auto it = defaults.find(key);
    return it == defaults.end() ? 0.0 : it->second;
}

bool VerifyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerifyReport::first_failure() const {
    for (const Check& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

json VerifyReport::to_json() const {
    json j;
    j["suite"] = suite;
    j["pass"] = pass();
    json arr = json::array();
    for (const Check& c : checks) {
        json e;
        e["name"] = c.name;
        e["tol_key"] = c.tol_key;
        e["residual"] = c.residual;
        e["tol"] = c.tol;
        e["pass"] = c.pass;
        arr.push_back(e);
    }
    j["checks"] = arr;
    return j;
}

std::vector<Check> resolvent_checks(const ExtensionSpec& spec, cd z, cd w, const Tolerances& over) {
    const PartialWaveFunction f = gaussian_input(), h = gaussian_probe();
    const PartialWaveFunction rz = krein_apply({z, spec}, f), rw = krein_apply({w, spec}, f);
    const PartialWaveFunction rzrw = krein_apply({z, spec}, rw);
    double id = 0.0;
    for (int ell : f.modes())
        for (double r : {0.01, 0.2, 1.0, 3.0})
            id = std::max(id, std::abs(rz.radial(ell, r) - rw.radial(ell, r) - (z - w) * rzrw.radial(ell, r)));
    const cd lhs = inner(h, rz);
    const cd rhs = inner(krein_apply({std::conj(z), spec}, h), f);
    const std::string tag = " [" + classify(spec).named + ", " + kind_name(spec.kind()) + "]";
    return {make("first resolvent identity" + tag, "resolvent", id, over),
            make("conjugation symmetry <h, R(z) f> = <R(conj z) h, f>" + tag, "conjugation", std::abs(lhs - rhs), over)};
}

VerifyReport run_verify(const std::string& suite, const Tolerances& over) {
    if (suite != "anchors" && suite != "specfun" && suite != "resolvent" && suite != "all")
        throw DomainError("unknown verify suite '" + suite + "'");
    VerifyReport rep{suite, {}};
    if (suite == "anchors" || suite == "all") anchor_checks(rep.checks, over);
    if (suite == "specfun" || suite == "all") specfun_checks(rep.checks, over);
    if (suite == "resolvent" || suite == "all") {
        const cd z(-2.0, 0.5), w(-3.0, 0.0);
        for (const Check& c : resolvent_checks(friedrichs(0.3), z, w, over)) rep.checks.push_back(c);
        Mat2 t;
        t << 0.4, cd(0.1, 0.2), cd(0.1, -0.2), -0.3;
        for (const Check& c : resolvent_checks(ExtensionSpec{0.3, PiTheta{Mat2::Identity(), t}}, z, w, over))
            rep.checks.push_back(c);
    }
    return rep;
}

} // namespace ab
