#pragma once

#include <utility>
#include <vector>

#include "qw/category.hpp"

namespace qw {

// A walk embeds in a continuous-time evolution e^{itH} with H = h(K) exactly
// when every indecomposable part has winding zero.
struct RealizabilityVerdict {
  bool realizable = false;
  std::vector<std::pair<int, int>> windings;  // (part index, winding)
  int obstruction = -1;                       // first part with nonzero winding
};

RealizabilityVerdict realizable(const WalkDefinition& w, int grid = 4096);

// Branchwise phase h with e^{ih} = lambda, h(0) in (-pi, pi], built by
// unwrapping along the branch; throws NotRealizable on a winding obstruction.
struct PhaseGenerator {
  WalkDefinition walk;
  Decomposition decomposition;
  std::vector<Eigen::VectorXd> phase_samples;  // per branch, on its domain grid
  std::vector<FourierSeries> phase_fourier;    // per branch ((0, h) for constants)
};

PhaseGenerator build_generator(const WalkDefinition& w, int grid = 4096);

// e^{ith(K)} bound to a window: branch sections and phases at window resolution.
struct ContinuousWalk {
  KWindow win;
  std::vector<Eigen::MatrixXcd> sections;  // per branch
  std::vector<Eigen::VectorXd> phases;     // per branch, per domain column

  StateVector apply(double t, const StateVector& xi, double trunc = 1e-12) const;
};

ContinuousWalk bind_generator(const PhaseGenerator& g, int window);

StateVector evolve_continuous(const PhaseGenerator& g, double t, const StateVector& xi,
                              int window);

// Max over random window states of || e^{iH} xi - U xi || with U the lattice step.
double verify_realization(const PhaseGenerator& g, int window, int trials = 20,
                          unsigned seed = 11);

}  // namespace qw
