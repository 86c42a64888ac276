#pragma once

// Piecewise-affine modulus gates and the face-witness constructions built
// from them. A gate g reshapes moduli only; applied equivariantly it sends
// a(s) to (a(s)/|a(s)|) * g(|a(s)|) and fixes zeros, so it commutes with the
// circle action by construction. The witness pipelines combine a plateau
// gate, a urysohn bump and a phase retraction to produce named sphere points
// near a given face, each with a checkable certificate.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "mulab/bundle.hpp"

namespace mulab {

// Continuous piecewise-affine function on [0,1] with g(0) = 0 and values in
// [0,1]. Breakpoints are strictly increasing from 0 to 1; evaluation between
// breakpoints interpolates linearly and returns stored values exactly at
// breakpoints and on constant segments.
class PiecewiseGate {
public:
    PiecewiseGate(std::vector<double> breakpoints, std::vector<double> values);

    double operator()(double x) const;
    double lipschitz() const;  // max absolute segment slope

    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

private:
    std::vector<double> xs_, ys_;
};

// Largest |g1 - g2| over [0,1]; attained at a merged breakpoint because the
// difference is affine in between.
double gate_sup_distance(const PiecewiseGate& g1, const PiecewiseGate& g2);

PiecewiseGate identity_gate();

// 0 on [0, eps/2], affine up to 1 at eps, 1 on [eps, 1]. Requires 0 < eps < 1.
PiecewiseGate threshold_gate(double eps);

// Identity outside (level-eps, level+eps), constant `level` on
// [level-eps/2, level+eps/2], affine in between. Sup distance to the
// identity is eps/2. Requires 0 < eps < min(level, 1-level).
PiecewiseGate plateau_gate(double level, double eps);

// 0 on [0, eps/2], affine to eps at eps, identity on [eps, 1].
// Requires 0 < eps < 1.
PiecewiseGate kill_gate(double eps);

// Equivariant application: modulus through the gate, argument untouched,
// zeros stay zero. Requires ‖a‖ <= 1 + kMembershipTol.
TripleFn apply_gate(const PiecewiseGate& g, const TripleFn& a);

// Unit phase retraction: threshold gate at eps, so u(s) = a(s)/|a(s)|
// exactly wherever |a(s)| >= eps. Requires 0 < eps < ‖a‖ <= 1 + tol; the
// maximizing coordinate then already has modulus 1, no rescale happens.
TripleFn unit_retraction(const TripleFn& a, double eps);

enum class WitnessVariant { opposite, approach };

// Certificate of one witness construction. All closed-form clauses are
// checked with kExactTol slack; `pass` requires every clause.
struct WitnessCertificate {
    WitnessVariant variant = WitnessVariant::opposite;

    // inputs
    std::size_t anchor = 0;                 // t0
    double eps = 0.0;
    double contraction = 0.0;               // r
    std::complex<double> anchor_value;      // alpha = a(t0)
    double anchor_modulus = 0.0;            // |alpha|

    // pipeline stages
    TripleFn pinned;     // plateau gate applied to a; anchor value preserved
    TripleFn bump;       // urysohn peak supported inside the modulus band
    TripleFn unit_part;  // phase retraction of pinned at |alpha| - eps
    TripleFn witness;    // the produced sphere point

    // measured quantities
    double approx_error = 0.0;              // ‖a - pinned‖
    bool pinned_matches_anchor = false;     // pinned(t0) == alpha, polar-exact
    std::complex<double> witness_at_anchor;
    std::complex<double> target_at_anchor;  // -alpha/|alpha| or alpha/|alpha|
    double anchor_residual = 0.0;           // |witness(t0) - target|
    double witness_norm = 0.0;
    double distance = 0.0;                  // ‖pinned - c‖ (opposite), ‖a - c'‖ (approach)
    double bound = 0.0;                     // 2-r+r|alpha| or 2-r-r|alpha|+eps

    // clauses
    bool clause_approx = false;
    bool clause_anchor = false;
    bool clause_ball = false;
    bool clause_distance = false;
    bool pass = false;
};

// Produces a sphere point c in the face opposed to a's anchor value:
// c(t0) = -alpha/|alpha|, ‖c‖ <= 1, ‖pinned - c‖ <= 2 - r + r|alpha|,
// ‖a - pinned‖ <= eps/2. Requires ‖a‖ = 1 (within kMembershipTol),
// 0 < |alpha| < 1, 0 < eps < min(|alpha|, 1-|alpha|), 0 < r < 1.
WitnessCertificate opposite_face_witness(const Bundle& bd, const TripleFn& a, std::size_t t0,
                                         double eps, double r);

// Same pipeline, landing on the aligned face instead: c'(t0) = alpha/|alpha|,
// ‖c'‖ <= 1, ‖a - c'‖ <= 2 - r - r|alpha| + eps. Same preconditions.
WitnessCertificate approach_face_witness(const Bundle& bd, const TripleFn& a, std::size_t t0,
                                         double eps, double r);

// Vanishing-anchor variant: requires a(t0) = 0 exactly. Returns the gated
// function (zero on a neighborhood of t0) and a unit bump supported there;
// the two have disjoint supports, so ‖gated ± bump‖ <= 1 and a sits within
// 1 + eps of both unit faces over t0. Requires ‖a‖ = 1, 0 < eps < 1.
std::pair<TripleFn, TripleFn> kill_gate_witness(const Bundle& bd, const TripleFn& a,
                                                std::size_t t0, double eps);

} // namespace mulab
