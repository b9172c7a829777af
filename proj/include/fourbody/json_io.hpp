#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fourbody/frames.hpp"
#include "fourbody/hamiltonians.hpp"

namespace fourbody {

/// A state with its coordinate-system tag; only the tagged member is valid.
struct TaggedState {
    std::string coordinate_system;  // cartesian | jacobi | deprit | tilde
    CartesianState cart;
    JacobiState jac;
    DepritState dep;
    TildeState til;
};

MassSet masses_from_json(const nlohmann::json& j);
nlohmann::json masses_to_json(const MassSet& ms);

TaggedState state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const TaggedState& s);

SecularModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const SecularModel& m);

/// 64-bit FNV-1a digest, hex-encoded, used to fingerprint config files.
std::uint64_t fnv1a64(const std::string& data);
std::string hex_digest(std::uint64_t value);

/// Provenance record written exactly once per CLI run.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_digest;
    std::string library_version;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
};

void write_manifest(const RunManifest& m, const std::string& path);

/// CSV with a single '#'-prefixed header line and fixed 17-digit rows.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

std::string read_text_file(const std::string& path);
nlohmann::json load_json_file(const std::string& path);

}  // namespace fourbody
