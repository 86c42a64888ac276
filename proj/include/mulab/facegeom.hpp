#pragma once

// Maximal faces of the unit sphere in the finite model. A face is labelled by
// a base point t and a unimodular lambda: it consists of the norm-one
// functions with value lambda at t. Labels are in bijection with the faces,
// which is what makes face geometry a transport invariant for sphere maps.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "mulab/bundle.hpp"
#include "mulab/rng.hpp"

namespace mulab {

// Face label (t, lambda); lambda is canonicalized to modulus exactly 1.
struct Face {
    std::size_t t = 0;
    PolarValue lambda{1.0, 0.0};
};

// Same payload, used where a face is handled as a label of the face lattice
// rather than as a point set.
using FaceLabel = Face;

Face make_face(std::size_t t, std::complex<double> lambda);

// Distance from a norm-one function to the face: an element of the face can
// match a everywhere except at t, so the infimum is |a(t) - lambda|.
// Throws std::domain_error if | ‖a‖ - 1 | > kMembershipTol (off the sphere).
double dist_to_face(const TripleFn& a, const Face& f);

// Hausdorff distance between two maximal faces: |lambda1 - lambda2| on the
// same base point, otherwise 2 (each face contains a function that is
// anti-aligned with the other face's label).
double hausdorff(const Face& f1, const Face& f2);

// Independent sup-inf oracle over sampled faces. Each face is sampled as a
// product grid: the labelled coordinate pinned to lambda, every other
// coordinate running over a (moduli x fiber_samples) polar grid of the disk.
// Over a product sample set the inner infimum of a sup-norm distance splits
// per coordinate, so this value equals full enumeration of the grid at
// O(grid) cost. Never consults the closed form.
double hausdorff_sampled(const Bundle& bd, const Face& f1, const Face& f2, int moduli = 64);

// Brute-force distance oracle used by tests: minimizes ‖a - b‖ over
// explicitly enumerated members of the face (product polar grid with the
// given resolution). Cost (moduli*phases)^(n-1); keep the base small.
double dist_to_face_enumerated(const Bundle& bd, const TripleFn& a, const Face& f,
                               int moduli, int phases);

// Explicit counterpart of hausdorff_sampled for cross-checking the
// decomposition; enumerates both faces. Cost (moduli*phases)^(2(n-1)).
double hausdorff_enumerated(const Bundle& bd, const Face& f1, const Face& f2,
                            int moduli, int phases);

// Norm-one function lying in both faces, built from disjoint urysohn peaks:
// a = lambda1 * peak(t1) + lambda2 * peak(t2) with supports in the separated
// balls. Exact coordinate equality at both labels. Requires t1 != t2.
TripleFn faces_intersect_witness(const Bundle& bd, std::size_t t1, std::complex<double> lambda1,
                                 std::size_t t2, std::complex<double> lambda2);

// Random member of the face: labelled coordinate pinned, others sampled from
// the polar grid. With exclude_unit_modulus the free moduli stay below 1 so
// the labelled coordinate is the unique unit-modulus one.
TripleFn sample_face_member(const Bundle& bd, const Face& f, Rng& rng,
                            bool exclude_unit_modulus = false);

struct HausdorffCell {
    std::size_t t1 = 0, t2 = 0;
    std::complex<double> lambda1, lambda2;
    double closed = 0.0;
    double sampled = 0.0;
};

struct HausdorffReport {
    std::size_t pairs_checked = 0;
    double max_deviation = 0.0;
    double grid_bound = 0.0;          // accepted deviation: 2 * (2 pi / m)
    std::size_t witness_checks = 0;
    std::vector<std::string> failures;
    std::vector<HausdorffCell> table;
    bool pass = false;
};

// Full dichotomy check over every ordered pair of base points and every pair
// of labels from a lambda_grid-point phase grid: closed form vs sampled
// oracle, plus intersection witnesses for all distinct-point pairs.
// Requires at least two base points.
HausdorffReport check_hausdorff_condition(const Bundle& bd, int lambda_grid);

} // namespace mulab
