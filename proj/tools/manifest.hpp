#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace gridpolicy::cli {

std::string sha256_hex(const std::string& bytes);
/// Throws std::runtime_error when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// What is needed to rerun a command and get the same outputs.
struct RunManifest {
  std::string command;
  nlohmann::json config;  // effective settings after defaults and overrides
  std::vector<std::uint64_t> seeds;
  std::size_t nfe = 0;
  std::vector<std::filesystem::path> inputs;
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();

  /// Digests the inputs and stamps the elapsed wall-clock time.
  nlohmann::json finish() const;
};

}  // namespace gridpolicy::cli
