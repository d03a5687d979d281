#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace qw {

using cd = std::complex<double>;

// Truncated Fourier series on period p: f(k) = sum_j c_j e^{2 pi i j k / p}.
struct FourierSeries {
  double p = 0.0;
  std::vector<std::pair<int, cd>> coeff;  // (frequency, c_j), sorted by frequency

  cd eval(double k) const;
  FourierSeries derivative() const;  // c_j -> (2 pi i j / p) c_j
  double coeff_mass() const;         // sum |c_j|
};

// DFT fit of uniform samples f(u p / N), u = 0..N-1; frequencies are mapped to
// the symmetric range and coefficients below rel_tol * max|c| are dropped.
FourierSeries fourier_fit(const std::vector<cd>& samples, double p, double rel_tol = 1e-13);

}  // namespace qw
