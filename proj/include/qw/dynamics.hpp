#pragma once

#include <vector>

#include "qw/state.hpp"
#include "qw/walk.hpp"

namespace qw {

// Probability mass per lattice site of a unit state.
struct PositionDistribution {
  int d = 1;
  std::unordered_map<int64_t, double> mass;

  std::vector<std::pair<std::vector<int>, double>> sorted() const;
};

// Position distribution of an evolved state pushed forward by x -> x/t.
struct VelocityDistribution {
  int d = 1;
  long t = 1;
  std::unordered_map<int64_t, double> mass;  // keyed by the site x, atom at x/t

  std::vector<std::pair<std::vector<double>, double>> sorted() const;
  // d = 1 only: atoms as (v, mass), sorted by v
  std::vector<std::pair<double, double>> atoms1d() const;
};

// Applied cyclically, V_1 first.
struct PeriodicSchedule {
  std::vector<WalkDefinition> factors;
};

struct MomentReport {
  int order = 0;
  // raw(a, m) = m-th raw moment along axis a, m = 0..order
  Eigen::MatrixXd raw;
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

StateVector step(const WalkDefinition& w, const StateVector& xi);
StateVector evolve(const WalkDefinition& w, const StateVector& xi, long t);
StateVector periodic_evolve(const PeriodicSchedule& s, const StateVector& xi, long t);

PositionDistribution position_distribution(const StateVector& xi);        // NotNormalized
VelocityDistribution velocity_distribution(const StateVector& evolved, long t);

cd characteristic_function(const VelocityDistribution& nu, const Eigen::VectorXd& k);
cd characteristic_function(const VelocityDistribution& nu, double k);

MomentReport moments(const PositionDistribution& mu, int order);   // order <= 8
MomentReport moments(const VelocityDistribution& nu, int order);

// Kolmogorov distance between two purely atomic measures on the line,
// given as (point, mass) lists (need not be normalized identically).
double kolmogorov_distance(std::vector<std::pair<double, double>> a,
                           std::vector<std::pair<double, double>> b);

}  // namespace qw
