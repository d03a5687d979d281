#pragma once

#include <cmath>
#include <vector>

#include "qw/fourier.hpp"
#include "qw/state.hpp"
#include "qw/walk.hpp"

namespace qw {

// One tracked eigenvalue branch lambda : [0, p) -> T with p = 2*pi*translates,
// sampled uniformly with spacing 2*pi / base_grid().
struct EigenvalueFunction {
  double p = 2.0 * M_PI;
  int translates = 1;
  int ambient_n = 1;  // internal dimension of the walk the branch lives in
  Eigen::VectorXcd samples;
  FourierSeries fourier;
  bool constant = false;
  cd constant_value = 0.0;
  double closure_defect = 0.0;  // off-grid interpolation error against the spectrum
  double minimal_period = 0.0;  // 0 for constant branches
  int winding = 0;              // over one minimal period
  double winding_residual = 0.0;

  int base_grid() const { return static_cast<int>(samples.size()) / translates; }
  double grid_step() const { return p / static_cast<double>(samples.size()); }
  cd eval(double k) const { return constant ? constant_value : fourier.eval(k); }
};

struct SpectrumDecomposition {
  int grid = 0;  // base momentum grid over [0, 2*pi)
  std::vector<EigenvalueFunction> branches;  // translate counts sum to n
};

// Eigenvalues of the symbol at one momentum (d = 1), all on the unit circle
// within 1e-9.
std::vector<cd> eigenvalues_at(const WalkDefinition& w, double k);

// Sweeps the momentum grid once, gluing eigenvalue samples into closed
// branches of period 2*pi*m via extrapolation-guided matching with bisection
// refinement at crossings.
SpectrumDecomposition track_branches(const WalkDefinition& w, int grid_size = 4096);

// Builds the derived branch data (Fourier fit, constancy, minimal period,
// winding) from raw samples; used by track_branches and by tests on
// synthetic branches.
EigenvalueFunction make_branch(Eigen::VectorXcd samples, double p, int ambient_n);

// Smallest q = p/m, m = 1..2*ambient_n, with sup |lambda(k+q)-lambda(k)| <= tol;
// 0 for constant branches.
double minimal_period_of(const EigenvalueFunction& lam, double tol = 1e-7);

// Signed turns of lambda around 0 per minimal period; UnwrapFailure when the
// grid is too coarse or the total is not near an integer.
int winding_number(const EigenvalueFunction& lam, double* residual = nullptr);

// v(k) = Im(conj(lambda(k)) lambda'(k)) via the Fourier derivative.
double group_velocity(const EigenvalueFunction& lam, double k);

// Uniform resampling of a fitted series: count points covering one period
// starting at k = offset.  WindowTooSmall when count undersamples the
// retained bandwidth.
std::vector<cd> series_samples(const FourierSeries& s, int count, double offset = 0.0);

struct LimitDistribution {
  std::vector<std::pair<double, double>> atoms;  // (velocity, mass), sorted
  double total_mass = 0.0;
};

// Spectral weak-limit velocity law for a unit state: group-velocity atoms
// weighted by |<section, xi_hat>|^2 h / (2*pi) over every branch domain.
LimitDistribution limit_velocity_distribution(const WalkDefinition& w, const StateVector& xi,
                                              int grid_size = 4096);

}  // namespace qw
