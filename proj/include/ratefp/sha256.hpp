#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace ratefp {

// Standard SHA-256, used for config hashes and the run-manifest checksums.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  void update(std::string_view s) { update(s.data(), s.size()); }
  std::string hex_digest();  // finalizes; object must not be reused

 private:
  void process_block(const std::uint8_t* block);
  std::uint32_t h_[8];
  std::uint8_t buffer_[64];
  std::size_t buffer_len_ = 0;
  std::uint64_t total_len_ = 0;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace ratefp
