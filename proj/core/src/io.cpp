#include "thinfb/io.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace thinfb {

namespace {

constexpr char kMagic[7] = {'T', 'H', 'I', 'N', 'P', 'H', '1'};

// All scalar fields are written little-endian; this code assumes a
// little-endian host (checked at startup of the writers below).
template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is, const std::string& what) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("truncated file while reading " + what);
  return v;
}

void write_header(std::ostream& os, const GridSpec& s, std::uint32_t vert_count) {
  os.write(kMagic, sizeof(kMagic));
  put<std::uint16_t>(os, kThinph1Version);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(s.n));
  put<double>(os, s.alpha);
  put<double>(os, s.half_extent);
  put<double>(os, s.spacing);
  for (int d = 0; d < s.n; ++d) put<std::uint32_t>(os, static_cast<std::uint32_t>(s.thin_count));
  put<std::uint32_t>(os, vert_count);
}

GridSpec read_header(std::istream& is, const std::string& path, std::uint32_t& vert_count) {
  char magic[7];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw IoError("bad magic in " + path);
  auto version = get<std::uint16_t>(is, "version");
  if (version != kThinph1Version) throw IoError("unsupported format version in " + path);
  int n = get<std::uint8_t>(is, "dimension");
  double alpha = get<double>(is, "alpha");
  double half_extent = get<double>(is, "half_extent");
  double spacing = get<double>(is, "spacing");
  std::uint32_t tc = 0;
  for (int d = 0; d < n; ++d) {
    std::uint32_t c = get<std::uint32_t>(is, "thin count");
    if (d > 0 && c != tc) throw IoError("anisotropic thin counts unsupported in " + path);
    tc = c;
  }
  vert_count = get<std::uint32_t>(is, "vertical count");
  GridSpec s = GridSpec::make(n, alpha, half_extent, spacing);
  if (static_cast<std::uint32_t>(s.thin_count) != tc)
    throw IoError("thin count inconsistent with extent/spacing in " + path);
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return is;
}

void check_trailing(std::istream& is, const std::string& path) {
  char c;
  if (is.read(&c, 1)) throw IoError("trailing bytes in " + path);
}

}  // namespace

void write_field(const std::string& path, const ScalarField& f) {
  auto os = open_out(path);
  write_header(os, f.spec, static_cast<std::uint32_t>(f.spec.vert_count));
  for (double v : f.values) put<double>(os, v);
  if (!os) throw IoError("write failed for " + path);
}

ScalarField read_field(const std::string& path) {
  auto is = open_in(path);
  std::uint32_t vc = 0;
  GridSpec s = read_header(is, path, vc);
  if (vc != static_cast<std::uint32_t>(s.vert_count))
    throw IoError("vertical count inconsistent with extent/spacing in " + path);
  ScalarField f(s);
  for (double& v : f.values) v = get<double>(is, "field values");
  check_trailing(is, path);
  return f;
}

void write_mask(const std::string& path, const ThinMask& m) {
  auto os = open_out(path);
  write_header(os, m.spec, 1);
  for (ThinState s : m.states)
    put<std::uint8_t>(os, s == ThinState::POSITIVE ? 1 : 0);
  if (!os) throw IoError("write failed for " + path);
}

ThinMask read_mask(const std::string& path) {
  auto is = open_in(path);
  std::uint32_t vc = 0;
  GridSpec s = read_header(is, path, vc);
  if (vc != 1) throw IoError("mask payload must have vertical count 1 in " + path);
  ThinMask m(s);
  for (ThinState& st : m.states) {
    auto b = get<std::uint8_t>(is, "mask bytes");
    if (b > 1) throw IoError("invalid mask byte in " + path);
    st = b ? ThinState::POSITIVE : ThinState::ZERO;
  }
  check_trailing(is, path);
  return m;
}

void write_thin_function(const std::string& path, const ThinFunction& f) {
  auto os = open_out(path);
  write_header(os, f.spec, 1);
  for (double v : f.values) put<double>(os, v);
  if (!os) throw IoError("write failed for " + path);
}

ThinFunction read_thin_function(const std::string& path) {
  auto is = open_in(path);
  std::uint32_t vc = 0;
  GridSpec s = read_header(is, path, vc);
  if (vc != 1) throw IoError("slab payload must have vertical count 1 in " + path);
  ThinFunction f(s);
  for (double& v : f.values) v = get<double>(is, "slab values");
  check_trailing(is, path);
  return f;
}

}  // namespace thinfb
