#ifndef SHFORGE_MANIFEST_HPP
#define SHFORGE_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace shforge {

inline constexpr const char* kToolVersion = "0.1.0";

/// Reproducibility record for one CLI run. Identical manifests (ignoring
/// elapsed_ms) imply identical output digests; digests are FNV-1a 64 over
/// the file bytes.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::map<std::string, std::string> input_digests;
    std::map<std::string, std::string> output_digests;
    std::int64_t elapsed_ms = 0;
};

/// Digest of a file's bytes ("fnv1a:<16 hex digits>").
std::string file_digest(const std::string& path);

nlohmann::json manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace shforge

#endif
