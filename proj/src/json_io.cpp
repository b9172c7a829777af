#include "fourbody/json_io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fourbody/errors.hpp"

namespace fourbody {

using nlohmann::json;

namespace {

Vec3 vec3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw DomainError("json: expected a 3-vector");
    return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

std::array<double, 3> triple_from_json(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
        throw DomainError(std::string("json: expected 3-array field '") + key + "'");
    return {j[key][0].get<double>(), j[key][1].get<double>(), j[key][2].get<double>()};
}

}  // namespace

MassSet masses_from_json(const json& j) {
    if (!j.contains("masses") || !j["masses"].is_array() || j["masses"].size() != 4)
        throw DomainError("json: 'masses' must be an array of four values");
    const int nmax = j.value("nmax", 8);
    return derive_masses(j["masses"][0].get<double>(), j["masses"][1].get<double>(),
                         j["masses"][2].get<double>(), j["masses"][3].get<double>(), nmax);
}

json masses_to_json(const MassSet& ms) {
    return json{{"masses", {ms.m[0], ms.m[1], ms.m[2], ms.m[3]}}, {"nmax", ms.nmax}};
}

TaggedState state_from_json(const json& j) {
    if (!j.contains("coordinate_system"))
        throw DomainError("json: state needs a 'coordinate_system' tag");
    TaggedState s;
    s.coordinate_system = j["coordinate_system"].get<std::string>();
    if (s.coordinate_system == "cartesian") {
        for (int i = 0; i < 4; ++i) {
            s.cart.x[i] = vec3_from_json(j.at("x").at(i));
            s.cart.y[i] = vec3_from_json(j.at("y").at(i));
        }
    } else if (s.coordinate_system == "jacobi") {
        for (int i = 0; i < 4; ++i) {
            s.jac.q[i] = vec3_from_json(j.at("q").at(i));
            s.jac.p[i] = vec3_from_json(j.at("p").at(i));
        }
    } else if (s.coordinate_system == "deprit") {
        s.dep.ell = triple_from_json(j, "ell");
        s.dep.L = triple_from_json(j, "L");
        s.dep.gamma = triple_from_json(j, "gamma");
        s.dep.Gamma = triple_from_json(j, "Gamma");
        s.dep.psi = triple_from_json(j, "psi");
        s.dep.Psi = triple_from_json(j, "Psi");
    } else if (s.coordinate_system == "tilde") {
        TildeState t;
        t.gamma1 = j.at("gamma1").get<double>();
        t.Gamma1 = j.at("Gamma1").get<double>();
        t.gamma2t = j.at("gamma2t").get<double>();
        t.Gamma2t = j.at("Gamma2t").get<double>();
        t.psi1t = j.at("psi1t").get<double>();
        t.Psi1t = j.at("Psi1t").get<double>();
        t.gamma3t = j.at("gamma3t").get<double>();
        t.Gamma3t = j.at("Gamma3t").get<double>();
        t.delta1 = j.value("delta1", 0.5);
        t.delta2 = j.value("delta2", 0.5);
        t.delta3 = j.value("delta3", 0.2);
        t.L1 = j.value("L1", 1.0);
        t.L2 = j.value("L2", 1.0);
        t.L3 = j.value("L3", 1.0);
        s.til = t;
    } else {
        throw DomainError("json: unknown coordinate_system '" + s.coordinate_system + "'");
    }
    return s;
}

json state_to_json(const TaggedState& s) {
    json j;
    j["coordinate_system"] = s.coordinate_system;
    if (s.coordinate_system == "cartesian") {
        json xs = json::array(), ys = json::array();
        for (int i = 0; i < 4; ++i) {
            xs.push_back(vec3_to_json(s.cart.x[i]));
            ys.push_back(vec3_to_json(s.cart.y[i]));
        }
        j["x"] = xs;
        j["y"] = ys;
    } else if (s.coordinate_system == "jacobi") {
        json qs = json::array(), ps = json::array();
        for (int i = 0; i < 4; ++i) {
            qs.push_back(vec3_to_json(s.jac.q[i]));
            ps.push_back(vec3_to_json(s.jac.p[i]));
        }
        j["q"] = qs;
        j["p"] = ps;
    } else if (s.coordinate_system == "deprit") {
        j["ell"] = s.dep.ell;
        j["L"] = s.dep.L;
        j["gamma"] = s.dep.gamma;
        j["Gamma"] = s.dep.Gamma;
        j["psi"] = s.dep.psi;
        j["Psi"] = s.dep.Psi;
    } else if (s.coordinate_system == "tilde") {
        const TildeState& t = s.til;
        j["gamma1"] = t.gamma1;
        j["Gamma1"] = t.Gamma1;
        j["gamma2t"] = t.gamma2t;
        j["Gamma2t"] = t.Gamma2t;
        j["psi1t"] = t.psi1t;
        j["Psi1t"] = t.Psi1t;
        j["gamma3t"] = t.gamma3t;
        j["Gamma3t"] = t.Gamma3t;
        j["delta1"] = t.delta1;
        j["delta2"] = t.delta2;
        j["delta3"] = t.delta3;
        j["L1"] = t.L1;
        j["L2"] = t.L2;
        j["L3"] = t.L3;
    } else {
        throw DomainError("json: unknown coordinate_system '" + s.coordinate_system + "'");
    }
    return j;
}

SecularModel model_from_json(const json& j) {
    if (!j.is_array()) throw DomainError("json: model must be an array of terms");
    SecularModel m;
    for (const auto& tj : j) {
        const std::string name = tj.at("term").get<std::string>();
        const double coeff = tj.value("coefficient", 1.0);
        m.terms.emplace_back(term_from_name(name), coeff);
    }
    if (m.terms.empty()) throw DomainError("json: model has no terms");
    return m;
}

json model_to_json(const SecularModel& m) {
    json j = json::array();
    for (const auto& [t, c] : m.terms)
        j.push_back(json{{"term", term_name(t)}, {"coefficient", c}});
    return j;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex_digest(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

void write_manifest(const RunManifest& m, const std::string& path) {
    json j{{"command", m.command},
           {"config_path", m.config_path},
           {"config_digest", m.config_digest},
           {"library_version", m.library_version},
           {"outputs", m.outputs},
           {"wall_seconds", m.wall_seconds}};
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write manifest: " + path);
    out << j.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write csv: " + path);
    out << "# " << header << "\n";
    char buf[32];
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DomainError("invalid json in " + path);
    return j;
}

}  // namespace fourbody
