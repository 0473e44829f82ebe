#pragma once
// THINPH1 binary serialization for fields, masks, and slab functions, plus
// CSV helpers.  Layout (little-endian): 7-byte magic "THINPH1", u16 version,
// u8 n, f64 alpha, f64 half_extent, f64 spacing, u32 per-axis counts (n thin
// counts then the vertical count), then the payload: f64 per node in
// thin-axes-major order for fields, one byte per slab node (0=ZERO,
// 1=POSITIVE) for masks.  Slab-only payloads store a vertical count of 1.

#include <string>

#include "thinfb/extension.hpp"
#include "thinfb/grid.hpp"

namespace thinfb {

inline constexpr std::uint16_t kThinph1Version = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_field(const std::string& path, const ScalarField& f);
ScalarField read_field(const std::string& path);

void write_mask(const std::string& path, const ThinMask& m);
ThinMask read_mask(const std::string& path);

void write_thin_function(const std::string& path, const ThinFunction& f);
ThinFunction read_thin_function(const std::string& path);

}  // namespace thinfb
