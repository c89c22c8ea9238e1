#include "attrlab/core/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "attrlab/core/field.hpp"

static_assert(std::endian::native == std::endian::little,
              "field binary format assumes a little-endian host");

namespace attrlab {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t hash_file(const std::filesystem::path& p) { return fnv1a64(read_text_file(p)); }

void write_text_file(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("short write to " + p.string());
}

void write_field(const std::filesystem::path& bin_path, const Field& u) {
  {
    std::ofstream out(bin_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + bin_path.string());
    out.write(reinterpret_cast<const char*>(u.values().data()),
              static_cast<std::streamsize>(u.values().size() * sizeof(double)));
  }
  nlohmann::json sidecar{{"domain_hash", hash_hex(u.domain().content_hash())},
                         {"sup_norm", u.sup_norm()},
                         {"count", u.size()}};
  write_text_file(bin_path.string() + ".json", sidecar.dump(2) + "\n");
}

Field read_field(const std::filesystem::path& bin_path, const DomainPtr& dom) {
  std::string bytes = read_text_file(bin_path);
  if (bytes.size() != static_cast<std::size_t>(dom->value_count()) * sizeof(double))
    throw DomainMismatch("field binary size does not match domain");
  Field u(dom);
  std::memcpy(u.values().data(), bytes.data(), bytes.size());
  return u;
}

}  // namespace attrlab
