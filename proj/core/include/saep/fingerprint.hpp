#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace saep {

// FNV-1a 64-bit content hashes used to stamp outputs with the identity of the
// inputs and configuration that produced them (provenance, not security).
std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL);

std::string hash_hex(std::uint64_t h);

// Hash of a file's bytes. Throws saep::Error if unreadable.
std::uint64_t hash_file(const std::string& path);

// Combined fingerprint over named input files: order-sensitive over
// (name, content) pairs.
std::string dataset_fingerprint(const std::vector<std::string>& paths);

}  // namespace saep
