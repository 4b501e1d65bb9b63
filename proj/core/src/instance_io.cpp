#include "pcgpen/instance_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "pcgpen/trace_csv.hpp"

namespace pcgpen {

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<char, sizeof(T)> bytes{};
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!is) throw std::runtime_error("read_instance: truncated input");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  if constexpr (std::is_same_v<T, double>) {
    return std::bit_cast<double>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

}  // namespace

void write_instance(std::ostream& os, const CsInstance& inst) {
  os.write(kInstanceMagic, 4);
  put_le<std::uint16_t>(os, kInstanceVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(inst.m()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(inst.n()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(inst.k));
  put_le<double>(os, inst.p);
  put_le<double>(os, inst.sigma);
  put_le<std::uint64_t>(os, inst.seed);
  for (std::size_t i = 0; i < inst.m(); ++i)
    for (std::size_t j = 0; j < inst.n(); ++j) put_le<double>(os, inst.A.at(i, j));
  for (double v : inst.b) put_le<double>(os, v);
  for (double v : inst.x_orig) put_le<double>(os, v);
  if (!os) throw std::runtime_error("write_instance: stream error");
}

CsInstance read_instance(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kInstanceMagic, 4) != 0) {
    throw std::runtime_error("read_instance: bad magic bytes");
  }
  const auto version = get_le<std::uint16_t>(is);
  if (version != kInstanceVersion) throw std::runtime_error("read_instance: unsupported version");
  const auto m = get_le<std::uint32_t>(is);
  const auto n = get_le<std::uint32_t>(is);
  const auto k = get_le<std::uint32_t>(is);
  const double p = get_le<double>(is);
  const double sigma = get_le<double>(is);
  const auto seed = get_le<std::uint64_t>(is);
  std::vector<double> a(static_cast<std::size_t>(m) * n);
  for (double& v : a) v = get_le<double>(is);
  Vector b(m);
  for (double& v : b) v = get_le<double>(is);
  Vector x(n);
  for (double& v : x) v = get_le<double>(is);
  return CsInstance{LinearMap::dense(m, n, std::move(a)), std::move(b), sigma, p, std::move(x), k,
                    seed, seed};
}

void write_instance_metadata(std::ostream& os, const CsInstance& inst) {
  os << "format=PCG1\n"
     << "version=" << kInstanceVersion << '\n'
     << "m=" << inst.m() << '\n'
     << "n=" << inst.n() << '\n'
     << "k=" << inst.k << '\n'
     << "p=" << format_double(inst.p) << '\n'
     << "sigma=" << format_double(inst.sigma) << '\n'
     << "seed=" << inst.seed << '\n'
     << "requested_seed=" << inst.requested_seed << '\n'
     << "rng=splitmix64-counter streams(matrix,support,signal,noise)\n"
     << "noise=generalized-gaussian density~exp(-|x|^p) E|X|^p=1/p\n"
     << "noise_scale=" << format_double(kNoiseScale) << '\n'
     << "sigma_factor=" << format_double(kSigmaFactor) << '\n';
}

void save_instance(const std::string& path, const CsInstance& inst) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("save_instance: cannot open " + path);
  write_instance(bin, inst);
  std::ofstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("save_instance: cannot open " + path + ".meta");
  write_instance_metadata(meta, inst);
}

CsInstance load_instance(const std::string& path) {
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("load_instance: cannot open " + path);
  return read_instance(bin);
}

}  // namespace pcgpen
