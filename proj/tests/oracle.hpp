#pragma once

// Independent ground truth for evolution tests: the one-step operator is
// assembled as a dense matrix over a truncated box, straight from the walk
// entries, and applied by plain matrix-vector products.  Nothing here shares
// code with the library's evolution path.  If probability mass gets within
// one propagation radius of the box edge the next product would clip it, so
// the oracle aborts instead of silently returning a wrong answer.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "qw/state.hpp"
#include "qw/walk.hpp"

namespace testutil {

using cd = std::complex<double>;

class DenseEvolver {
 public:
  DenseEvolver(const qw::WalkDefinition& w, std::vector<int> lo, std::vector<int> hi)
      : d_(w.d), n_(w.n), lo_(std::move(lo)), hi_(std::move(hi)),
        radius_(qw::propagation_radius(w)) {
    if (static_cast<int>(lo_.size()) != d_ || static_cast<int>(hi_.size()) != d_)
      throw std::runtime_error("oracle box dimension mismatch");
    dims_.resize(d_);
    nsites_ = 1;
    for (int a = 0; a < d_; ++a) {
      dims_[a] = hi_[a] - lo_[a] + 1;
      if (dims_[a] <= 0) throw std::runtime_error("oracle box is empty");
      nsites_ *= dims_[a];
    }
    const long long dim = nsites_ * n_;
    u_ = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<int> x(d_, 0), y(d_, 0);
    for (long long s = 0; s < nsites_; ++s) {
      site_at(s, x);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          for (const auto& term : w.at(i, j).terms) {
            bool inside = true;
            for (int a = 0; a < d_; ++a) {
              y[a] = x[a] - term.shift[a];
              if (y[a] < lo_[a] || y[a] > hi_[a]) inside = false;
            }
            if (!inside) continue;
            u_(s * n_ + i, index_of(y) * n_ + j) += term.coeff;
          }
    }
  }

  Eigen::VectorXcd lift(const qw::StateVector& xi) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(nsites_ * n_);
    for (const auto& [key, amp] : xi.amplitudes) {
      const std::vector<int> x = qw::unpack_position(key, d_);
      for (int a = 0; a < d_; ++a)
        if (x[a] < lo_[a] || x[a] > hi_[a])
          throw std::runtime_error("oracle: initial state outside the box");
      v.segment(index_of(x) * n_, n_) = amp;
    }
    return v;
  }

  qw::StateVector lower(const Eigen::VectorXcd& v) const {
    qw::StateVector out;
    out.d = d_;
    out.n = n_;
    std::vector<int> x(d_, 0);
    for (long long s = 0; s < nsites_; ++s) {
      const Eigen::VectorXcd amp = v.segment(s * n_, n_);
      if (amp.norm() == 0.0) continue;
      site_at(s, x);
      out.amplitudes[qw::pack_position(x)] = amp;
    }
    return out;
  }

  // Throws when mass sits close enough to the edge that one more step clips.
  void check_margin(const Eigen::VectorXcd& v) const {
    if (radius_ == 0) return;
    std::vector<int> x(d_, 0);
    double leak = 0.0;
    for (long long s = 0; s < nsites_; ++s) {
      site_at(s, x);
      int dist = dims_[0];
      for (int a = 0; a < d_; ++a)
        dist = std::min({dist, x[a] - lo_[a], hi_[a] - x[a]});
      if (dist < radius_) leak += v.segment(s * n_, n_).squaredNorm();
    }
    if (leak > 1e-26) throw std::runtime_error("oracle: mass reached the box edge");
  }

  Eigen::VectorXcd step(const Eigen::VectorXcd& v) const {
    check_margin(v);
    return u_ * v;
  }

 private:
  long long index_of(const std::vector<int>& x) const {
    long long idx = 0;
    for (int a = 0; a < d_; ++a) idx = idx * dims_[a] + (x[a] - lo_[a]);
    return idx;
  }
  void site_at(long long idx, std::vector<int>& x) const {
    for (int a = d_ - 1; a >= 0; --a) {
      x[a] = lo_[a] + static_cast<int>(idx % dims_[a]);
      idx /= dims_[a];
    }
  }

  int d_, n_;
  std::vector<int> lo_, hi_, dims_;
  long long nsites_ = 0;
  int radius_;
  Eigen::MatrixXcd u_;
};

// t steps of a periodic schedule (factors applied in order, cycled) on the box.
inline qw::StateVector dense_evolve_schedule(const std::vector<qw::WalkDefinition>& factors,
                                             const qw::StateVector& xi, long long t,
                                             const std::vector<int>& lo,
                                             const std::vector<int>& hi) {
  std::vector<DenseEvolver> ops;
  ops.reserve(factors.size());
  for (const auto& w : factors) ops.emplace_back(w, lo, hi);
  Eigen::VectorXcd v = ops.front().lift(xi);
  for (long long s = 0; s < t; ++s) v = ops[s % ops.size()].step(v);
  return ops.front().lower(v);
}

inline qw::StateVector dense_evolve(const qw::WalkDefinition& w, const qw::StateVector& xi,
                                    long long t, const std::vector<int>& lo,
                                    const std::vector<int>& hi) {
  return dense_evolve_schedule({w}, xi, t, lo, hi);
}

// 1-D truncated Gaussian profile with seeded random unit spinors, renormalized.
inline qw::StateVector gaussian_state(int n, double sigma, int halfwidth, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  qw::StateVector xi;
  xi.d = 1;
  xi.n = n;
  for (int x = -halfwidth; x <= halfwidth; ++x) {
    Eigen::VectorXcd v(n);
    for (int c = 0; c < n; ++c) v[c] = cd(gauss(rng), gauss(rng));
    v.normalize();
    xi.amplitudes[x] = std::exp(-double(x) * x / (4.0 * sigma * sigma)) * v;
  }
  xi.normalize();
  return xi;
}

// Seeded complex-Gaussian amplitudes on the centered 1-D window, unit norm.
inline qw::StateVector random_state(int n, int halfwidth, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  qw::StateVector xi;
  xi.d = 1;
  xi.n = n;
  for (int x = -halfwidth; x <= halfwidth; ++x) {
    Eigen::VectorXcd v(n);
    for (int c = 0; c < n; ++c) v[c] = cd(gauss(rng), gauss(rng));
    xi.amplitudes[x] = v;
  }
  xi.normalize();
  return xi;
}

}  // namespace testutil
