#pragma once

// Two-face distance characterization of point evaluations. For an anchor t0
// and a target value alpha in the closed unit disk, membership in the set
//   { x on the sphere : d(x, F+) <= 1-|alpha|  and  d(x, F-) <= 1+|alpha| }
// (F± the faces labelled ±alpha/|alpha| over t0) holds exactly when
// x(t0) = alpha. The verifier checks that equivalence on sampled sphere
// points, confirms the boundary distances are tight, runs the
// case-appropriate witness pipelines, and cross-checks the underlying disk
// geometry with an independent planar oracle.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mulab/bundle.hpp"
#include "mulab/facegeom.hpp"

namespace mulab {

// Anchor plus target value; mu is the unit direction of alpha (1 when
// alpha = 0). Requires |alpha| <= 1 + kExactTol.
struct MSetSpec {
    std::size_t t0 = 0;
    PolarValue alpha{0.0, 0.0};

    PolarValue mu() const { return {1.0, alpha.mod == 0.0 ? 0.0 : alpha.arg}; }
    PolarValue minus_mu() const;
};

MSetSpec make_mset_spec(std::size_t t0, std::complex<double> alpha);

struct MsetMembership {
    bool member = false;
    double d_plus = 0.0;   // distance to the aligned face
    double d_minus = 0.0;  // distance to the opposed face
};

// Both face-distance constraints, each with kMembershipTol slack.
MsetMembership mset_membership(const TripleFn& a, const MSetSpec& spec);

// The predicted characterization: a(t0) = alpha within kMembershipTol.
bool mset_predicted(const TripleFn& a, const MSetSpec& spec);

// Planar form of the two constraints for a single disk value z.
bool disk_feasible(std::complex<double> z, const MSetSpec& spec);

struct DiskOracleResult {
    std::size_t points = 0;
    std::size_t feasible = 0;
    std::size_t violations = 0;  // feasible far from alpha, or alpha infeasible
    bool pass = false;
};

// Sweeps ~`points` polar-grid values of the closed unit disk (alpha
// appended) and checks: feasible  <=>  |z - alpha| <= kMembershipTol.
DiskOracleResult disk_oracle(const MSetSpec& spec, std::size_t points);

struct CharacterizationReport {
    std::size_t trials = 0;
    std::vector<std::string> counterexamples;
    std::size_t tight_boundary_hits = 0;
    double witness_chain_max_slack = 0.0;
    std::size_t anchored_trials = 0;   // trials with a(t0) = alpha forced
    DiskOracleResult disk;
    bool pass = false;
};

// Samples `trials` sphere points from the polar grid (every 4th trial forces
// a(t0) = alpha so the anchored branch is exercised), checks
// membership <=> predicted, verifies boundary tightness at kExactTol, runs
// the case-appropriate witness pipeline, and finishes with the disk oracle.
// Requires at least two base points when |alpha| < 1.
CharacterizationReport verify_characterization(const Bundle& bd, const MSetSpec& spec,
                                               std::size_t trials, std::uint64_t seed,
                                               std::size_t disk_points = 100000);

} // namespace mulab
