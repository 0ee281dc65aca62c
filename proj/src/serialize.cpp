#include "ab/serialize.hpp"
#include "ab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ab {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

void dump_rec(const json& j, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? "\n" + std::string(std::size_t(indent * (depth + 1)), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(std::size_t(indent * depth), ' ') : "";
    if (j.is_number_float()) {
        out += format_double(j.get<double>());
    } else if (j.is_array()) {
        // Short numeric pairs stay on one line.
        const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
        out += "[";
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ",";
            if (!flat) out += pad;
            dump_rec(e, indent, depth + 1, out);
            first = false;
        }
        if (!flat && !j.empty()) out += close;
        out += "]";
    } else if (j.is_object()) {
        out += "{";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",";
            out += pad;
            out += json(it.key()).dump();
            out += indent > 0 ? ": " : ":";
            dump_rec(it.value(), indent, depth + 1, out);
            first = false;
        }
        if (!j.empty()) out += close;
        out += "}";
    } else {
        out += j.dump();
    }
}

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

cd cparse(const json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw DomainError("extension JSON: entries must be [re, im]");
    return {e[0].get<double>(), e[1].get<double>()};
}

void push_mat(json& data, const Mat2& m) {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) data.push_back(cjson(m(a, b)));
}

Mat2 read_mat(const json& data, std::size_t offset) {
    Mat2 m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m(a, b) = cparse(data.at(offset + std::size_t(2 * a + b)));
    return m;
}

} // namespace

std::string dump(const json& j, int indent) {
    std::string out;
    dump_rec(j, indent, 0, out);
    return out;
}

SpecKind parse_kind(const std::string& name) {
    if (name == "U") return SpecKind::U;
    if (name == "B") return SpecKind::B;
    if (name == "PiTheta") return SpecKind::PiTheta;
    if (name == "Relation") return SpecKind::Relation;
    throw DomainError("unknown extension kind '" + name + "'");
}

json to_json(const ExtensionSpec& s) {
    json j;
    j["kind"] = kind_name(s.kind());
    j["alpha"] = s.alpha;
    json data = json::array();
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, UnitaryU>) {
                push_mat(data, d.u);
            } else if constexpr (std::is_same_v<T, HermitianB>) {
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        if (a == b && d.infinite[std::size_t(a)])
                            data.push_back("inf");
                        else if (d.infinite[std::size_t(a)] || d.infinite[std::size_t(b)])
                            data.push_back(cjson(0.0));
                        else
                            data.push_back(cjson(d.b(a, b)));
                    }
            } else if constexpr (std::is_same_v<T, PiTheta>) {
                push_mat(data, d.pi);
                push_mat(data, d.theta);
            } else {
                push_mat(data, d.n1);
                push_mat(data, d.n2);
            }
        },
        s.data);
    j["data"] = data;
    return j;
}

ExtensionSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("data"))
        throw DomainError("extension JSON: need \"kind\" and \"data\"");
    ExtensionSpec s;
    s.alpha = j.value("alpha", 0.5);
    check_alpha(s.alpha);
    const json& data = j.at("data");
    const SpecKind kind = parse_kind(j.at("kind").get<std::string>());
    const std::size_t need = (kind == SpecKind::U || kind == SpecKind::B) ? 4 : 8;
    if (!data.is_array() || data.size() != need)
        throw DomainError("extension JSON: kind " + kind_name(kind) + " needs " + std::to_string(need) + " entries");
    switch (kind) {
    case SpecKind::U:
        s.data = UnitaryU{read_mat(data, 0)};
        break;
    case SpecKind::B: {
        HermitianB b;
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) {
                const json& e = data[std::size_t(2 * a + c)];
                if (e.is_string()) {
                    if (e.get<std::string>() != "inf" || a != c)
                        throw DomainError("extension JSON: \"inf\" only allowed on the B diagonal");
                    b.infinite[std::size_t(a)] = true;
                } else {
                    b.b(a, c) = cparse(e);
                }
            }
        for (int a = 0; a < 2; ++a)
            if (b.infinite[std::size_t(a)]) {
                b.b.row(a).setZero();
                b.b.col(a).setZero();
            }
        s.data = b;
        break;
    }
    case SpecKind::PiTheta:
        s.data = PiTheta{read_mat(data, 0), read_mat(data, 4)};
        break;
    case SpecKind::Relation:
        s.data = BoundaryRelation{read_mat(data, 0), read_mat(data, 4)};
        break;
    }
    return s;
}

ExtensionSpec parse_extension(const std::string& arg, double alpha) {
    if (arg == "friedrichs") return friedrichs(alpha);
    if (arg == "krein") return krein(alpha);
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw DomainError("cannot open extension file " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("extension: not a name, @file or JSON (") + e.what() + ")");
    }
    if (!j.contains("alpha")) j["alpha"] = alpha;
    return spec_from_json(j);
}

json to_json(const Vec2& v) { return json::array({cjson(v(0)), cjson(v(1))}); }

json to_json(const SMatrixKernel& s) {
    json j;
    j["alpha"] = s.alpha;
    j["lambda"] = s.lambda;
    j["delta_coeff"] = s.delta_coeff;
    j["pv_coeff"] = cjson(s.pv_coeff);
    json sm = json::array();
    push_mat(sm, s.smooth);
    j["smooth"] = sm;
    return j;
}

json spectral_report(const std::vector<BoundState>& bs, const std::vector<Vec2>& resonances) {
    json j;
    json b = json::array();
    for (const BoundState& s : bs) {
        json e;
        e["energy"] = s.energy;
        e["eigvec"] = to_json(s.eigvec);
        e["multiplicity"] = s.multiplicity;
        b.push_back(e);
    }
    j["bound_states"] = b;
    json r = json::array();
    for (const Vec2& v : resonances) r.push_back(to_json(v));
    j["resonances"] = r;
    j["ac_spectrum"] = json::array({0.0, "inf"});
    return j;
}

} // namespace ab
