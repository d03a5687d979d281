#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qw/laurent.hpp"

namespace qw {

// Lattice points pack into a single hashable key (d = 1: full 64-bit range,
// d = 2: 32 bits per axis, d = 3: 21 bits per axis).
int64_t pack_position(const std::vector<int>& x);
std::vector<int> unpack_position(int64_t key, int d);

// Finitely supported vector in l2(Z^d) (x) C^n, site -> spinor.
struct StateVector {
  int d = 1;
  int n = 1;
  std::unordered_map<int64_t, Eigen::VectorXcd> amplitudes;

  cd amplitude(const std::vector<int>& x, int comp) const;
  void add(const std::vector<int>& x, int comp, cd v);
  double norm() const;
  void normalize();
  void truncate(double eps);               // drop spinors with norm <= eps
  std::vector<int64_t> sorted_support() const;
  // componentwise bounding box, lo/hi inclusive; false when empty
  bool bounding_box(std::vector<int>& lo, std::vector<int>& hi) const;
};

StateVector delta_state(int d, int n, const std::vector<int>& x, int comp);

}  // namespace qw
