#pragma once

#include "qw/spectral.hpp"

namespace qw {

// Orthonormal eigenvector samples for every branch over its domain, one
// ComplexSchur solve per base momentum.  Column u of per_branch[b] is the
// unit eigenvector of U(offset + u 2 pi / base_grid) for eigenvalue
// lambda_b(offset + u 2 pi / base_grid); columns sharing a base momentum are
// exactly orthonormal, and consecutive columns are phase/basis aligned
// (Procrustes on near-degenerate clusters, closing holonomy spread along the
// branch).
struct BranchSections {
  int base_grid = 0;
  double offset = 0.0;
  std::vector<Eigen::MatrixXcd> per_branch;
};

BranchSections build_sections(const WalkDefinition& w, const SpectrumDecomposition& spec,
                              int base_grid, double offset = 0.0);

}  // namespace qw
