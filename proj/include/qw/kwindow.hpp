#pragma once

#include <Eigen/Dense>

#include "qw/state.hpp"
#include "qw/walk.hpp"

namespace qw {

// Cyclic window [x0, x0+M) on the 1-d lattice with absolute-coordinate
// Fourier phases: to_k(psi)(c, m) = sum_x psi(x)[c] e^{i k_m x}, k_m = 2 pi m / M.
struct KWindow {
  int x0 = 0;
  int M = 0;
  int n = 1;

  Eigen::MatrixXcd to_k(const StateVector& xi) const;  // WindowTooSmall if support leaks
  StateVector from_k(const Eigen::MatrixXcd& f, double trunc = 1e-12) const;
  double k_at(int m) const { return 2.0 * M_PI * m / M; }
};

KWindow centered_window(int M, int n);

// One walk step applied cyclically on the window (diagonal in window k-space);
// equals the lattice step exactly while the support stays R away from edges.
StateVector cyclic_step(const WalkDefinition& w, const KWindow& win, const StateVector& xi);

// l2 distance over the union support.
double state_distance(const StateVector& a, const StateVector& b);

}  // namespace qw
