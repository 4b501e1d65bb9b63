#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pcgpen/csgen.hpp"

namespace pcgpen {

// Binary container, all fields little-endian:
//   "PCG1" | u16 version | u32 m | u32 n | u32 k | f64 p | f64 sigma | u64 seed
//   | f64 A[m*n] (row-major) | f64 b[m] | f64 x_orig[n]
inline constexpr char kInstanceMagic[4] = {'P', 'C', 'G', '1'};
inline constexpr std::uint16_t kInstanceVersion = 1;

void write_instance(std::ostream& os, const CsInstance& inst);
CsInstance read_instance(std::istream& is);

// key=value sidecar describing how the instance was drawn.
void write_instance_metadata(std::ostream& os, const CsInstance& inst);

// Writes `path` and `path + ".meta"`.
void save_instance(const std::string& path, const CsInstance& inst);
CsInstance load_instance(const std::string& path);

}  // namespace pcgpen
