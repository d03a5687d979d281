#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qw/kwindow.hpp"
#include "qw/sections.hpp"
#include "qw/spectral.hpp"
#include "qw/walk.hpp"

namespace qw {

// Multiplication operator M[lambda] on l2 of the length-p torus; the canonical
// indecomposable building block once lambda sits at its minimal period.
struct ModelWalk {
  EigenvalueFunction lambda;  // torus length lambda.p

  double period() const { return lambda.p; }
  bool constant() const { return lambda.constant; }
};

// Full decomposition of a walk: tracked eigenvalue branches, then each branch
// split into copies of its minimal-period model.  parent[i] is the branch that
// produced parts[i].
struct Decomposition {
  SpectrumDecomposition spectrum;
  std::vector<ModelWalk> parts;
  std::vector<int> parent;
};

struct IntertwinerDescriptor {
  enum class Kind { None, Translation };
  Kind kind = Kind::None;
  double shift = 0.0;   // the l in M[f] sigma_l, valid when kind == Translation
  std::string family;   // human-readable description of the nonzero space
};

// One matched pair of parts with the translation that conjugates them.
struct PairedParts {
  int part1 = -1;
  int part2 = -1;
  double shift = 0.0;
};

struct SimilarityReport {
  bool intertwiner_exists = false;  // some nonzero uniform intertwiner
  bool similar = false;             // parts biject, i.e. the walks are unitarily equivalent
  std::vector<PairedParts> witness;  // every compatible pair, not just a matching
  double defect = -1.0;             // numerical check residual when one was run
};

Decomposition decompose(const WalkDefinition& w, int grid = 4096);

// Splits p = m q at the minimal period q into m identical copies.
std::vector<ModelWalk> split_model(const ModelWalk& m);

// Least l in [0, q) with lambda2(k) = lambda1(k - l), if any; inputs must share
// the (minimal) period.  Snap-to-zero below 1e-8.
std::optional<double> translation_shift(const EigenvalueFunction& l1,
                                        const EigenvalueFunction& l2);

// Uniform intertwiners between two model walks: zero, or the translation family.
IntertwinerDescriptor intertwiner_space(const ModelWalk& m1, const ModelWalk& m2);

SimilarityReport has_uniform_intertwiner(const WalkDefinition& w1, const WalkDefinition& w2,
                                         int grid = 4096);

// A maximum matching extracted from the witness list, usable as a pairing.
std::vector<PairedParts> maximum_pairing(const SimilarityReport& rep);

bool is_indecomposable(const WalkDefinition& w, int grid = 4096);

// Greatest common part multiset: a maximum matching of mutually intertwining
// parts, returned as copies of the w1 representatives.
std::vector<ModelWalk> common_divisor(const WalkDefinition& w1, const WalkDefinition& w2,
                                      int grid = 4096);

// A partial isometry between the walks' window spaces assembled from branch
// sections: on each paired branch, s1(k - l) |-> f(k) s2(k) summed over the
// branch domain.  f defaults to 1; supplying it exercises the M[f] sigma_l family.
struct MaterializedIntertwiner {
  KWindow win1;
  KWindow win2;
  struct BranchPair {
    int branch1 = -1;
    int branch2 = -1;
    double shift = 0.0;
    std::function<std::complex<double>(double)> multiplier;  // f on the branch domain
  };
  std::vector<BranchPair> pairs;
  std::vector<BranchSections> sections1;  // per pair, sampled on the shifted grid
  BranchSections sections2;               // shared, unshifted

  StateVector apply(const StateVector& xi) const;
};

MaterializedIntertwiner materialize_intertwiner(
    const WalkDefinition& w1, const WalkDefinition& w2, const Decomposition& d1,
    const Decomposition& d2, const std::vector<PairedParts>& pairing, int window,
    const std::vector<std::function<std::complex<double>(double)>>& multipliers = {});

// Max over random window states of || W U1 xi - U2 W xi || with both walks
// applied cyclically on the window.
double verify_intertwiner(const WalkDefinition& w1, const WalkDefinition& w2,
                          const std::vector<PairedParts>& pairing, int window,
                          int trials = 20, unsigned seed = 7, int grid = 4096,
                          const std::vector<std::function<std::complex<double>(double)>>&
                              multipliers = {});

}  // namespace qw
