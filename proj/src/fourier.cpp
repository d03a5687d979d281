#include "qw/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace qw {

cd FourierSeries::eval(double k) const {
  cd v = 0.0;
  const double w = 2.0 * M_PI * k / p;
  for (const auto& [j, c] : coeff) v += c * std::polar(1.0, j * w);
  return v;
}

FourierSeries FourierSeries::derivative() const {
  FourierSeries d = *this;
  for (auto& [j, c] : d.coeff) c *= cd(0.0, 2.0 * M_PI * j / p);
  return d;
}

double FourierSeries::coeff_mass() const {
  double m = 0.0;
  for (const auto& [j, c] : coeff) m += std::abs(c);
  return m;
}

FourierSeries fourier_fit(const std::vector<cd>& samples, double p, double rel_tol) {
  const int n = static_cast<int>(samples.size());
  Eigen::FFT<double> fft;
  std::vector<cd> freq(n);
  std::vector<cd> in(samples);
  fft.fwd(freq, in);  // X_m = sum_u x_u e^{-2 pi i u m / n}

  // x_u = (1/n) sum_m X_m e^{+2 pi i u m / n}, so c_j = X_{j mod n} / n with
  // j in the symmetric range.
  double peak = 0.0;
  for (const auto& v : freq) peak = std::max(peak, std::abs(v) / n);
  FourierSeries s;
  s.p = p;
  const double cut = rel_tol * peak;
  for (int m = 0; m < n; ++m) {
    const int j = (m <= n / 2 - (n % 2 == 0 ? 1 : 0)) ? m : m - n;
    const cd c = freq[m] / static_cast<double>(n);
    if (std::abs(c) > cut) s.coeff.emplace_back(j, c);
  }
  std::sort(s.coeff.begin(), s.coeff.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

}  // namespace qw
