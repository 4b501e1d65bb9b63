#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcgpen/solver.hpp"

namespace pcgpen {

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kTraceHeader = "t,alpha,beta,H,obj,feas2,dx,dy,gap_r,dual,dist_ref";

// Decimal with 17 significant digits.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

// `# key=value` lines.
void write_metadata(std::ostream& os, const Metadata& meta);

// Metadata lines, header, one row per record; LF line endings.
void write_trace_csv(std::ostream& os, const IterTrace& trace, const Metadata& meta = {});

// Parses the output of write_trace_csv, skipping `#` lines.
IterTrace read_trace_csv(std::istream& is);

}  // namespace pcgpen
