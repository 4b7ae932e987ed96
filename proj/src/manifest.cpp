#include "shforge/manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shforge/util.hpp"

namespace shforge {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file_digest: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return "fnv1a:" + fnv1a_hex(buf.str());
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["tool_version"] = m.tool_version;
    j["inputs"] = m.input_digests;
    j["outputs"] = m.output_digests;
    j["elapsed_ms"] = m.elapsed_ms;
    return j;
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << manifest_to_json(m).dump(2) << '\n';
}

}  // namespace shforge
