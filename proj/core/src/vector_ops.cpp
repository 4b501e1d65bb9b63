#include "pcgpen/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pcgpen {

double dot(ConstSpan a, ConstSpan b) {
  require_size(b.size(), a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(ConstSpan v) { return std::sqrt(dot(v, v)); }

double norm1(ConstSpan v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm_inf(ConstSpan v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double pow_abs(double x, double e) {
  const double a = std::abs(x);
  if (a == 0.0) return 0.0;
  return std::exp(e * std::log(a));
}

double norm_p(ConstSpan v, double p) {
  const double scale = norm_inf(v);
  if (scale == 0.0) return 0.0;
  if (p == 2.0) {
    double s = 0.0;
    for (double x : v) {
      const double r = x / scale;
      s += r * r;
    }
    return scale * std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v) s += pow_abs(x / scale, p);
  return scale * std::exp(std::log(s) / p);
}

Vector subtract(ConstSpan a, ConstSpan b) {
  require_size(b.size(), a.size(), "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

double distance2(ConstSpan a, ConstSpan b) {
  require_size(b.size(), a.size(), "distance2");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void axpy(double alpha, ConstSpan x, std::span<double> y) {
  require_size(y.size(), x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

bool all_finite(ConstSpan v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                std::to_string(got) + ", expected " + std::to_string(want) +
                                ")");
  }
}

}  // namespace pcgpen
