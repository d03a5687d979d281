#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qw/laurent.hpp"

namespace qw {

// Every Laurent-symbol walk has strictly finite propagation, which implies
// the rest of the chain; the class records the radius witnessing it.
struct RegularityClass {
  int radius = 0;
  bool finite_propagation = true;
  bool analytic = true;
  bool smooth = true;
  bool uniform = true;
};

// Space-homogeneous walk on Z^d with n internal states, given as the n x n
// Laurent matrix of its symbol U(k)[i][j] = sum_s A_s[i][j] e^{i s.k}.
struct WalkDefinition {
  std::string name;
  int d = 1;
  int n = 1;
  std::vector<LaurentPoly> entries;  // row-major, n*n
  double unitarity_defect = -1.0;    // filled by validate_walk

  const LaurentPoly& at(int i, int j) const { return entries[i * n + j]; }
  LaurentPoly& at(int i, int j) { return entries[i * n + j]; }
};

Eigen::MatrixXcd evaluate_symbol(const WalkDefinition& w, const Eigen::VectorXd& k);
Eigen::MatrixXcd evaluate_symbol(const WalkDefinition& w, double k);

int propagation_radius(const WalkDefinition& w);

RegularityClass classify_regularity(const WalkDefinition& w);

// Block-diagonal join; requires equal lattice dimension.
WalkDefinition direct_sum(const WalkDefinition& w1, const WalkDefinition& w2);

// Checks ||U(k)*U(k) - I||_max <= tol on a uniform grid of points_per_axis^d
// momenta.  Throws NonUnitaryError naming the worst k; returns the max defect
// and records it on the walk.
double validate_walk(WalkDefinition& w, int points_per_axis = 256, double tol = 1e-10);

// Construct + validate in one go.
WalkDefinition make_walk(std::string name, int d, int n, std::vector<LaurentPoly> entries);

}  // namespace qw
