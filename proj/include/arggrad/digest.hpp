#ifndef ARGGRAD_DIGEST_HPP
#define ARGGRAD_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace arggrad {

/// FNV-1a 64-bit content hash, hex-encoded. Used for file provenance
/// digests and model identity stamps in serialized records.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes);

}  // namespace arggrad

#endif
