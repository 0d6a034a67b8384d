#pragma once

// JSON and OBJ serialization. Rationals travel as [numerator, denominator]
// pairs; each half is a JSON integer when it fits in 64 bits and a decimal
// string otherwise, so round trips are bit-exact.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "panelkit/counterexample.hpp"
#include "panelkit/linking.hpp"
#include "panelkit/spatial_graph.hpp"

namespace panelkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";

Json scalar_to_json(const Scalar& s);
// Accepts [num, den], a bare integer, or a "p" / "p/q" string. `path` prefixes
// MalformedConfig diagnostics.
Scalar scalar_from_json(const Json& j, const std::string& path = "$");
Json point_to_json(const Point3& p);
Point3 point_from_json(const Json& j, const std::string& path = "$");

Json embedding_to_json(const LinearEmbedding& e);
LinearEmbedding embedding_from_json(const Json& j);

Json config_to_json(const SceneConfig& cfg);
SceneConfig config_from_json(const Json& j);

Json scene_to_json(const Scene& s);

struct RunManifest {
  std::string command;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  std::string config_hash;
};

Json manifest_to_json(const RunManifest& m);
// FNV-1a 64 of the text, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& text);
// Hash of the canonical JSON form of a config.
std::string config_hash(const SceneConfig& cfg);

Json placement_to_json(const Placement& p);
Json star_report_to_json(const StarReport& r, const RunManifest& m, bool full_dump);
Json equator_report_to_json(const EquatorReport& r, const RunManifest& m);
Json link_report_to_json(const LinkReport& r, const RunManifest& m);

// Canonical text form used for every report file: two-space indent, trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);
// Throws ErrorKind::Io when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

// Groups delta, delta_patch, gamma_prime, d_f; coordinates with 17 significant digits.
std::string scene_to_obj(const Scene& s);

}  // namespace panelkit
