#include "saep/fingerprint.hpp"

#include <cstdio>
#include <fstream>

#include "saep/error.hpp"

namespace saep {

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& s, std::uint64_t h) {
  return fnv1a64(s.data(), s.size(), h);
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open file");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

std::string dataset_fingerprint(const std::vector<std::string>& paths) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& p : paths) {
    h = fnv1a64(p, h);
    h = fnv1a64(hash_hex(hash_file(p)), h);
  }
  return hash_hex(h);
}

}  // namespace saep
