// sha256.hpp — compact SHA-256 for run-manifest input digests (no external crypto dep).
#pragma once

#include <cstdint>
#include <string>

namespace scat {

// Hex digest of a byte string.
std::string sha256_hex(const void* data, size_t len);
inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

// Hex digest of a file's contents; throws ValidationError if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace scat
