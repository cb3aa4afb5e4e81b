#pragma once

// Run manifests embedded in every CLI output. Digests are SHA-256 of the
// raw input bytes.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "gsc/io.hpp"

namespace gsc {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::vector<InputDigest> inputs;
  Json config = Json::object();
  std::optional<std::uint64_t> seed;
  std::string version = kToolVersion;
  std::optional<std::string> wall_clock;

  void add_input(const std::string& path, const std::string& bytes) { inputs.push_back({path, sha256_hex(bytes)}); }

  void stamp_clock() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    wall_clock = buf;
  }
};

inline Json to_json(const RunManifest& m) {
  Json inputs = Json::array();
  for (const auto& d : m.inputs) inputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
  Json j = {{"command", m.command}, {"inputs", inputs}, {"config", m.config}, {"version", m.version}};
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  j["wall_clock"] = m.wall_clock ? Json(*m.wall_clock) : Json(nullptr);
  return j;
}

inline RunManifest manifest_from_json(const Json& j, const std::string& at = "/manifest") {
  RunManifest m;
  m.command = detail::as_string(detail::require(j, at, "command"), detail::child(at, "command"));
  m.version = detail::as_string(detail::require(j, at, "version"), detail::child(at, "version"));
  if (m.version.empty()) throw SchemaError(detail::child(at, "version"), "version must be present");
  if (j.contains("config")) m.config = j["config"];
  if (j.contains("seed") && !j["seed"].is_null()) m.seed = detail::as_uint(j["seed"], detail::child(at, "seed"));
  if (j.contains("wall_clock") && !j["wall_clock"].is_null())
    m.wall_clock = detail::as_string(j["wall_clock"], detail::child(at, "wall_clock"));
  if (j.contains("inputs")) {
    const auto iat = detail::child(at, "inputs");
    const auto& is = detail::as_array(j["inputs"], iat);
    for (std::size_t i = 0; i < is.size(); ++i) {
      auto p = detail::child(iat, i);
      m.inputs.push_back({detail::as_string(detail::require(is[i], p, "path"), detail::child(p, "path")),
                          detail::as_string(detail::require(is[i], p, "sha256"), detail::child(p, "sha256"))});
    }
  }
  return m;
}

}  // namespace gsc
