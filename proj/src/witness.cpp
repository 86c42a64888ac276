#include "mulab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mulab {

namespace {

constexpr double kPi = kTwoPi / 2.0;

void require_on_sphere(const TripleFn& a) {
    if (std::abs(a.norm() - 1.0) > kMembershipTol)
        throw std::domain_error("off the sphere: ‖a‖ = " + std::to_string(a.norm()));
}

// Ball at t0 with half the distance to the nearest base point violating the
// predicate; covers the whole base (radius diameter+1 halved) if none does.
template <typename Pred>
Ball half_gap_ball(const Bundle& bd, std::size_t t0, Pred&& outside) {
    double gap = bd.diameter() + 1.0;
    bool found = false;
    for (std::size_t b = 0; b < bd.size(); ++b) {
        if (outside(b)) {
            gap = found ? std::min(gap, bd.distance(t0, b)) : bd.distance(t0, b);
            found = true;
        }
    }
    return shrink(bd, Ball{t0, 0.0}, Ball{t0, gap});
}

} // namespace

PiecewiseGate::PiecewiseGate(std::vector<double> breakpoints, std::vector<double> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size())
        throw std::invalid_argument("gate needs matching breakpoint and value lists");
    if (xs_.front() != 0.0 || xs_.back() != 1.0)
        throw std::invalid_argument("gate breakpoints must run from 0 to 1");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i - 1] < xs_[i]))
            throw std::invalid_argument("gate breakpoints must be strictly increasing");
    for (double y : ys_)
        if (!(0.0 <= y && y <= 1.0))
            throw std::invalid_argument("gate values must lie in [0,1]");
    if (ys_.front() != 0.0)
        throw std::invalid_argument("gate must vanish at 0");
}

double PiecewiseGate::operator()(double x) const {
    if (x <= 0.0) return ys_.front();
    if (x >= 1.0) return ys_.back();
    std::size_t hi = 1;
    while (xs_[hi] < x) ++hi;
    if (xs_[hi] == x) return ys_[hi];
    const std::size_t lo = hi - 1;
    if (ys_[lo] == ys_[hi]) return ys_[lo];  // constant segment, exact
    const double t = (x - xs_[lo]) * ((ys_[hi] - ys_[lo]) / (xs_[hi] - xs_[lo]));
    return std::min(1.0, std::max(0.0, ys_[lo] + t));
}

double PiecewiseGate::lipschitz() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < xs_.size(); ++i)
        worst = std::max(worst, std::abs(ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]));
    return worst;
}

double gate_sup_distance(const PiecewiseGate& g1, const PiecewiseGate& g2) {
    std::vector<double> xs = g1.breakpoints();
    xs.insert(xs.end(), g2.breakpoints().begin(), g2.breakpoints().end());
    std::sort(xs.begin(), xs.end());
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, std::abs(g1(x) - g2(x)));
    return worst;
}

PiecewiseGate identity_gate() { return PiecewiseGate({0.0, 1.0}, {0.0, 1.0}); }

PiecewiseGate threshold_gate(double eps) {
    if (!(0.0 < eps && eps < 1.0))
        throw std::domain_error("invalid epsilon: threshold needs 0 < eps < 1");
    return PiecewiseGate({0.0, eps / 2.0, eps, 1.0}, {0.0, 0.0, 1.0, 1.0});
}

PiecewiseGate plateau_gate(double level, double eps) {
    if (!(0.0 < level && level < 1.0))
        throw std::domain_error("invalid level: plateau needs 0 < level < 1");
    if (!(0.0 < eps && eps < std::min(level, 1.0 - level)))
        throw std::domain_error("invalid epsilon: plateau needs 0 < eps < min(level, 1-level)");
    return PiecewiseGate(
        {0.0, level - eps, level - eps / 2.0, level + eps / 2.0, level + eps, 1.0},
        {0.0, level - eps, level, level, level + eps, 1.0});
}

PiecewiseGate kill_gate(double eps) {
    if (!(0.0 < eps && eps < 1.0))
        throw std::domain_error("invalid epsilon: kill gate needs 0 < eps < 1");
    return PiecewiseGate({0.0, eps / 2.0, eps, 1.0}, {0.0, 0.0, eps, 1.0});
}

TripleFn apply_gate(const PiecewiseGate& g, const TripleFn& a) {
    if (a.norm() > 1.0 + kMembershipTol)
        throw std::domain_error("out of the unit ball: ‖a‖ = " + std::to_string(a.norm()));
    TripleFn out(a.size());
    for (std::size_t b = 0; b < a.size(); ++b) {
        const PolarValue v = a.at(b);
        if (v.mod == 0.0) continue;
        const double m = g(std::min(v.mod, 1.0));
        out.set(b, m == 0.0 ? PolarValue{0.0, 0.0} : PolarValue{m, v.arg});
    }
    return out;
}

TripleFn unit_retraction(const TripleFn& a, double eps) {
    const double n = a.norm();
    if (n > 1.0 + kMembershipTol)
        throw std::domain_error("out of the unit ball: ‖a‖ = " + std::to_string(n));
    if (!(0.0 < eps && eps < n))
        throw std::domain_error("invalid epsilon: retraction needs 0 < eps < ‖a‖");
    // The maximizing coordinate passes the gate's unit plateau, so the result
    // has norm exactly 1 without rescaling.
    return apply_gate(threshold_gate(eps), a);
}

namespace {

struct Pipeline {
    TripleFn pinned;
    TripleFn bump;
    TripleFn unit_part;
    double rho = 0.0;   // |alpha|
    double mu_arg = 0.0;
};

// Shared first half of both witness constructions: pin the modulus band at
// |alpha|, find a ball whose points all have in-band moduli, bump there,
// retract phases above |alpha| - eps.
Pipeline common_pipeline(const Bundle& bd, const TripleFn& a, std::size_t t0, double eps) {
    if (t0 >= bd.size() || a.size() != bd.size())
        throw std::out_of_range("base index out of range");
    require_on_sphere(a);
    const PolarValue alpha = a.at(t0);
    if (!(0.0 < alpha.mod && alpha.mod < 1.0))
        throw std::domain_error("anchor value must have modulus strictly between 0 and 1");
    if (!(0.0 < eps && eps < std::min(alpha.mod, 1.0 - alpha.mod)))
        throw std::domain_error("invalid epsilon: need 0 < eps < min(|alpha|, 1-|alpha|)");

    Pipeline p;
    p.rho = alpha.mod;
    p.mu_arg = alpha.arg;
    p.pinned = apply_gate(plateau_gate(alpha.mod, eps), a);
    const Ball inside = half_gap_ball(bd, t0, [&](std::size_t b) {
        return !(std::abs(a.modulus(b) - alpha.mod) < eps / 2.0);
    });
    p.bump = urysohn_peak(bd, t0, inside.radius / 2.0, inside.radius);
    p.unit_part = unit_retraction(p.pinned, alpha.mod - eps);
    return p;
}

} // namespace

WitnessCertificate opposite_face_witness(const Bundle& bd, const TripleFn& a, std::size_t t0,
                                         double eps, double r) {
    if (!(0.0 < r && r < 1.0))
        throw std::domain_error("contraction factor must satisfy 0 < r < 1");
    Pipeline p = common_pipeline(bd, a, t0, eps);

    WitnessCertificate cert;
    cert.variant = WitnessVariant::opposite;
    cert.anchor = t0;
    cert.eps = eps;
    cert.contraction = r;
    cert.anchor_value = a.value(t0);
    cert.anchor_modulus = p.rho;

    const double k = 1.0 + r * p.rho;
    TripleFn c(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b)
        c.set(b, r * p.pinned.value(b) - k * p.bump.modulus(b) * p.unit_part.value(b));

    cert.pinned = p.pinned;
    cert.bump = p.bump;
    cert.unit_part = p.unit_part;
    cert.witness = c;

    cert.approx_error = sup_distance(a, p.pinned);
    cert.pinned_matches_anchor = polar_equal(p.pinned.at(t0), a.at(t0));
    cert.witness_at_anchor = c.value(t0);
    cert.target_at_anchor = to_complex(PolarValue{1.0, p.mu_arg + kPi});
    cert.anchor_residual = std::abs(cert.witness_at_anchor - cert.target_at_anchor);
    cert.witness_norm = c.norm();
    cert.distance = sup_distance(p.pinned, c);
    cert.bound = 2.0 - r + r * p.rho;

    cert.clause_approx = cert.approx_error <= eps / 2.0 + kExactTol && cert.pinned_matches_anchor;
    cert.clause_anchor = cert.anchor_residual <= kExactTol;
    cert.clause_ball = cert.witness_norm <= 1.0 + kExactTol;
    cert.clause_distance = cert.distance <= cert.bound + kExactTol;
    cert.pass = cert.clause_approx && cert.clause_anchor && cert.clause_ball && cert.clause_distance;
    return cert;
}

WitnessCertificate approach_face_witness(const Bundle& bd, const TripleFn& a, std::size_t t0,
                                         double eps, double r) {
    if (!(0.0 < r && r < 1.0))
        throw std::domain_error("contraction factor must satisfy 0 < r < 1");
    Pipeline p = common_pipeline(bd, a, t0, eps);

    WitnessCertificate cert;
    cert.variant = WitnessVariant::approach;
    cert.anchor = t0;
    cert.eps = eps;
    cert.contraction = r;
    cert.anchor_value = a.value(t0);
    cert.anchor_modulus = p.rho;

    // Companion sphere point in the unit face over t0: |bump| * unit_part
    // rotated back by the anchor phase, so its anchor value is exactly 1.
    TripleFn companion(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        const double m = p.bump.modulus(b) * p.unit_part.modulus(b);
        if (m != 0.0)
            companion.set(b, PolarValue{m, p.unit_part.argument(b) - p.mu_arg});
    }

    const std::complex<double> mu = to_complex(PolarValue{1.0, p.mu_arg});
    const double k = 1.0 - r * p.rho;
    TripleFn c(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b)
        c.set(b, r * p.pinned.value(b) + k * mu * companion.value(b));

    cert.pinned = p.pinned;
    cert.bump = companion;  // certificate keeps the face companion
    cert.unit_part = p.unit_part;
    cert.witness = c;

    cert.approx_error = sup_distance(a, p.pinned);
    cert.pinned_matches_anchor = polar_equal(p.pinned.at(t0), a.at(t0));
    cert.witness_at_anchor = c.value(t0);
    cert.target_at_anchor = mu;
    cert.anchor_residual = std::abs(cert.witness_at_anchor - cert.target_at_anchor);
    cert.witness_norm = c.norm();
    cert.distance = sup_distance(a, c);
    cert.bound = 2.0 - r - r * p.rho + eps;

    cert.clause_approx = cert.approx_error <= eps / 2.0 + kExactTol && cert.pinned_matches_anchor &&
                         polar_equal(companion.at(t0), PolarValue{1.0, 0.0});
    cert.clause_anchor = cert.anchor_residual <= kExactTol;
    cert.clause_ball = cert.witness_norm <= 1.0 + kExactTol;
    cert.clause_distance = cert.distance <= cert.bound + kExactTol;
    cert.pass = cert.clause_approx && cert.clause_anchor && cert.clause_ball && cert.clause_distance;
    return cert;
}

std::pair<TripleFn, TripleFn> kill_gate_witness(const Bundle& bd, const TripleFn& a,
                                                std::size_t t0, double eps) {
    if (t0 >= bd.size() || a.size() != bd.size())
        throw std::out_of_range("base index out of range");
    require_on_sphere(a);
    if (a.modulus(t0) != 0.0)
        throw std::domain_error("wrong case: anchor value must vanish");
    if (!(0.0 < eps && eps < 1.0))
        throw std::domain_error("invalid epsilon: need 0 < eps < 1");

    const TripleFn gated = apply_gate(kill_gate(eps), a);
    const Ball quiet = half_gap_ball(bd, t0, [&](std::size_t b) {
        return !(a.modulus(b) < eps / 2.0);
    });
    const TripleFn bump = urysohn_peak(bd, t0, quiet.radius / 2.0, quiet.radius);
    // Support check: the bump lives where |a| < eps/2, which the kill gate
    // sends to zero, so the two functions never overlap.
    for (std::size_t b = 0; b < bd.size(); ++b)
        if (bump.modulus(b) != 0.0 && gated.modulus(b) != 0.0)
            throw std::logic_error("kill gate left support under the bump");
    return {gated, bump};
}

} // namespace mulab
