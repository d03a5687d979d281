#include "qw/kwindow.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "qw/errors.hpp"

namespace qw {

namespace {
using cd = std::complex<double>;
}

KWindow centered_window(int M, int n) { return KWindow{-M / 2, M, n}; }

Eigen::MatrixXcd KWindow::to_k(const StateVector& xi) const {
  if (xi.d != 1 || xi.n != n) throw DimensionMismatch("window expects matching 1-d state");
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, M);
  for (const auto& [key, amp] : xi.amplitudes) {
    long long x = key;
    if (x < x0 || x >= x0 + static_cast<long long>(M))
      throw WindowTooSmall("state support leaves the window [" + std::to_string(x0) + ", " +
                           std::to_string(x0 + M) + ")");
    dense.col(static_cast<int>(x - x0)) = amp;
  }

  Eigen::FFT<double> fft;
  Eigen::MatrixXcd out(n, M);
  std::vector<cd> row(M), spec(M);
  for (int c = 0; c < n; ++c) {
    for (int u = 0; u < M; ++u) row[u] = dense(c, u);
    fft.inv(spec, row);  // spec[m] = (1/M) sum_u row[u] e^{+2 pi i m u / M}
    for (int m = 0; m < M; ++m) out(c, m) = static_cast<double>(M) * spec[m];
  }
  // Shift phases from window-relative u to absolute x = x0 + u.
  for (int m = 0; m < M; ++m) out.col(m) *= std::polar(1.0, k_at(m) * x0);
  return out;
}

StateVector KWindow::from_k(const Eigen::MatrixXcd& f, double trunc) const {
  if (f.rows() != n || f.cols() != M) throw DimensionMismatch("window k-data has wrong shape");
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd dense(n, M);
  std::vector<cd> row(M), spec(M);
  for (int c = 0; c < n; ++c) {
    for (int m = 0; m < M; ++m) spec[m] = f(c, m) * std::polar(1.0, -k_at(m) * x0);
    fft.fwd(row, spec);  // row[u] = sum_m spec[m] e^{-2 pi i m u / M}
    for (int u = 0; u < M; ++u) dense(c, u) = row[u] / static_cast<double>(M);
  }

  StateVector out;
  out.d = 1;
  out.n = n;
  for (int u = 0; u < M; ++u) {
    if (dense.col(u).norm() <= trunc) continue;
    out.amplitudes[static_cast<long long>(x0) + u] = dense.col(u);
  }
  return out;
}

StateVector cyclic_step(const WalkDefinition& w, const KWindow& win, const StateVector& xi) {
  if (w.d != 1 || w.n != win.n) throw DimensionMismatch("walk does not match window");
  Eigen::MatrixXcd f = win.to_k(xi);
  for (int m = 0; m < win.M; ++m) {
    Eigen::MatrixXcd u = evaluate_symbol(w, win.k_at(m));
    f.col(m) = (u * f.col(m)).eval();
  }
  return win.from_k(f);
}

double state_distance(const StateVector& a, const StateVector& b) {
  if (a.d != b.d || a.n != b.n) throw DimensionMismatch("states live on different lattices");
  std::set<long long> keys;
  for (const auto& [k, v] : a.amplitudes) keys.insert(k);
  for (const auto& [k, v] : b.amplitudes) keys.insert(k);
  double sq = 0.0;
  for (long long k : keys) {
    Eigen::VectorXcd va = Eigen::VectorXcd::Zero(a.n), vb = Eigen::VectorXcd::Zero(a.n);
    if (auto it = a.amplitudes.find(k); it != a.amplitudes.end()) va = it->second;
    if (auto it = b.amplitudes.find(k); it != b.amplitudes.end()) vb = it->second;
    sq += (va - vb).squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace qw
