#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace attrlab {

class Field;

// FNV-1a 64-bit content hash, used for artifact manifests and domain identity.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

std::uint64_t hash_file(const std::filesystem::path& p);

void write_text_file(const std::filesystem::path& p, std::string_view content);
std::string read_text_file(const std::filesystem::path& p);

// Flat little-endian float64 dump plus a JSON sidecar {domain_hash, sup_norm, count}.
void write_field(const std::filesystem::path& bin_path, const Field& u);
Field read_field(const std::filesystem::path& bin_path, const std::shared_ptr<const class GridDomain>& dom);

}  // namespace attrlab
