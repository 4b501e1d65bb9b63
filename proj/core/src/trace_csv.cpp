#include "pcgpen/trace_csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pcgpen {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

void write_trace_csv(std::ostream& os, const IterTrace& trace, const Metadata& meta) {
  write_metadata(os, meta);
  os << kTraceHeader << '\n';
  for (const TraceRecord& r : trace) {
    os << r.t << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << ','
       << format_double(r.H) << ',' << format_double(r.obj) << ',' << format_double(r.feas2)
       << ',' << format_optional(r.dx) << ',' << format_optional(r.dy) << ','
       << format_optional(r.gap_r) << ',' << format_optional(r.dual) << ','
       << format_optional(r.dist_ref) << '\n';
  }
}

namespace {

std::optional<double> parse_field(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

IterTrace read_trace_csv(std::istream& is) {
  IterTrace out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kTraceHeader) throw std::runtime_error("read_trace_csv: unexpected header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 11) throw std::runtime_error("read_trace_csv: expected 11 fields");
    TraceRecord r;
    r.t = std::stol(fields[0]);
    r.alpha = std::stod(fields[1]);
    r.beta = std::stod(fields[2]);
    r.H = std::stod(fields[3]);
    r.obj = std::stod(fields[4]);
    r.feas2 = std::stod(fields[5]);
    r.dx = parse_field(fields[6]);
    r.dy = parse_field(fields[7]);
    r.gap_r = parse_field(fields[8]);
    r.dual = parse_field(fields[9]);
    r.dist_ref = parse_field(fields[10]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pcgpen
