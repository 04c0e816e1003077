#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "subdiv/error.hpp"
#include "subdiv/io.hpp"

// Needs libcrypto (OpenSSL::Crypto) at link time.
namespace subdiv {

inline constexpr const char* kToolVersion = "0.1.0";

[[nodiscard]] inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::IoError, "SHA-256 failed");
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

[[nodiscard]] inline std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

struct RunManifest {
    std::vector<std::string> command_line;
    std::map<std::string, std::string> input_hashes;  // path -> sha256
    std::map<std::string, std::string> output_hashes; // path (or "stdout") -> sha256
    std::string tool_version = kToolVersion;
    nlohmann::json tolerances = nlohmann::json::object();
    double wall_time = 0;
};

[[nodiscard]] inline nlohmann::json manifest_to_json(const RunManifest& m) {
    return {{"command_line", m.command_line},
            {"input_hashes", m.input_hashes},
            {"output_hashes", m.output_hashes},
            {"tool_version", m.tool_version},
            {"tolerances", m.tolerances},
            {"wall_time", m.wall_time}};
}

} // namespace subdiv
