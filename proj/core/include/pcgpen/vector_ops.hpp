#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcgpen {

using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;

double dot(ConstSpan a, ConstSpan b);
double norm2(ConstSpan v);
double norm1(ConstSpan v);
double norm_inf(ConstSpan v);

// ell_p norm for p >= 1, evaluated on v / ||v||_inf so large q exponents do
// not overflow.
double norm_p(ConstSpan v, double p);

// |x|^e for x >= 0 and e > 0 via exp(e * ln x); returns 0 at x == 0.
double pow_abs(double x, double e);

// a - b
Vector subtract(ConstSpan a, ConstSpan b);
double distance2(ConstSpan a, ConstSpan b);

// y += alpha * x
void axpy(double alpha, ConstSpan x, std::span<double> y);

bool all_finite(ConstSpan v);

// Throws std::invalid_argument naming `what` when the sizes differ.
void require_size(std::size_t got, std::size_t want, const char* what);

}  // namespace pcgpen
