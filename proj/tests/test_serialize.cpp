#include "ab/errors.hpp"
#include "ab/serialize.hpp"
#include "ab/verify.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

using namespace ab;

namespace {

double spec_distance(const ExtensionSpec& a, const ExtensionSpec& b) {
    if (a.kind() != b.kind()) return INFINITY;
    switch (a.kind()) {
    case SpecKind::U: return (std::get<UnitaryU>(a.data).u - std::get<UnitaryU>(b.data).u).norm();
    case SpecKind::B: {
        const auto &x = std::get<HermitianB>(a.data), &y = std::get<HermitianB>(b.data);
        return x.infinite == y.infinite ? (x.b - y.b).norm() : INFINITY;
    }
    case SpecKind::PiTheta: {
        const auto &x = std::get<PiTheta>(a.data), &y = std::get<PiTheta>(b.data);
        return (x.pi - y.pi).norm() + (x.theta - y.theta).norm();
    }
    case SpecKind::Relation: {
        const auto &x = std::get<BoundaryRelation>(a.data), &y = std::get<BoundaryRelation>(b.data);
        return (x.n1 - y.n1).norm() + (x.n2 - y.n2).norm();
    }
    }
    return INFINITY;
}

ExtensionSpec reparse(const ExtensionSpec& s) { return spec_from_json(json::parse(dump(to_json(s)))); }

} // namespace

TEST_CASE("format_double is lossless") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = std::pow(10.0, u(rng)) * (k % 2 ? 1 : -1);
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
    CHECK(format_double(0.5) == "5.0000000000000000e-01");
    CHECK(format_double(-0.0) == "-0.0000000000000000e+00");
}

TEST_CASE("extension JSON round trips exactly for every kind") {
    const double a = 0.37;
    const ExtensionSpec u = convert(krein(a), SpecKind::U);
    for (SpecKind k : {SpecKind::U, SpecKind::B, SpecKind::PiTheta, SpecKind::Relation}) {
        const ExtensionSpec s = convert(u, k);
        const ExtensionSpec back = reparse(s);
        CHECK(back.alpha == a);
        CHECK(spec_distance(s, back) == 0.0);
        CHECK(dump(to_json(back)) == dump(to_json(s)));
    }
    HermitianB partial;
    partial.b(1, 1) = 0.25;
    partial.infinite = {true, false};
    const json j = to_json(ExtensionSpec{a, partial});
    CHECK(j["data"][0] == "inf");
    CHECK(j["data"][1][0] == 0.0);
    const ExtensionSpec back = spec_from_json(j);
    CHECK(std::get<HermitianB>(back.data).infinite[0]);
    CHECK_FALSE(std::get<HermitianB>(back.data).infinite[1]);
    CHECK(spec_distance(back, ExtensionSpec{a, partial}) == 0.0);
}

TEST_CASE("parse_extension: names, files, inline JSON, errors") {
    CHECK(spec_distance(parse_extension("friedrichs", 0.3), friedrichs(0.3)) == 0.0);
    CHECK(spec_distance(parse_extension("krein", 0.3), krein(0.3)) == 0.0);
    const ExtensionSpec s = convert(krein(0.6), SpecKind::PiTheta);
    const std::string text = dump(to_json(s));
    CHECK(spec_distance(parse_extension(text, 0.1), s) == 0.0);
    const std::string path = "serialize_test_extension.json";
    std::ofstream(path) << text;
    CHECK(spec_distance(parse_extension("@" + path, 0.1), s) == 0.0);
    std::remove(path.c_str());
    CHECK(parse_extension(R"({"kind":"U","data":[[-1,0],[0,0],[0,0],[-1,0]]})", 0.45).alpha == 0.45);
    CHECK_THROWS_AS(parse_extension("neumann", 0.3), DomainError);
    CHECK_THROWS_AS(parse_extension("@/nonexistent/file.json", 0.3), DomainError);
    CHECK_THROWS_AS(parse_extension(R"({"kind":"U","data":[[1,0]]})", 0.3), DomainError);
    CHECK_THROWS_AS(parse_extension(R"({"kind":"Q","data":[]})", 0.3), DomainError);
    CHECK_THROWS_AS(parse_extension(R"({"kind":"U","data":[["inf",0],[0,0],[0,0],[1,0]]})", 0.3), DomainError);
    CHECK(parse_kind("Relation") == SpecKind::Relation);
}

TEST_CASE("reports: spectral schema, kernel, verify, determinism") {
    const PiTheta pt{Mat2::Identity(), Mat2::Zero()};
    const json rep = spectral_report(bound_states(pt, 0.3), zero_resonances(pt, 0.3));
    REQUIRE(rep["bound_states"].size() == 1);
    CHECK(rep["bound_states"][0]["multiplicity"] == 2);
    CHECK(std::abs(rep["bound_states"][0]["energy"].get<double>() + 1.0) < 1e-12);
    CHECK(rep["ac_spectrum"][1] == "inf");
    CHECK(dump(rep).find("\"ac_spectrum\": [0.0000000000000000e+00,\"inf\"]") != std::string::npos);

    const json k = to_json(s_matrix(friedrichs(0.3), 2.0));
    CHECK(k["lambda"] == 2.0);
    CHECK(k["smooth"].size() == 4);
    CHECK(std::abs(k["pv_coeff"][1].get<double>() - std::sin(0.3 * M_PI) / M_PI) < 1e-15);

    const VerifyReport v = run_verify("anchors");
    CHECK(v.pass());
    CHECK(v.first_failure() == nullptr);
    CHECK(v.to_json()["checks"].size() == v.checks.size());
    CHECK(dump(v.to_json()) == dump(run_verify("anchors").to_json()));
    const VerifyReport tight = run_verify("anchors", {{"anchor", 0.0}});
    CHECK_FALSE(tight.pass());
    CHECK_THROWS_AS(run_verify("nonsense"), DomainError);
}
