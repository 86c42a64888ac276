#include "mulab/mset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mulab/rng.hpp"
#include "mulab/witness.hpp"

namespace mulab {

namespace {

constexpr double kPi = kTwoPi / 2.0;

// Sphere point with polar-grid coordinates: grid moduli j/63, fiber-grid
// phases, one chosen coordinate forced to modulus 1.
TripleFn random_sphere_point(const Bundle& bd, Rng& rng, std::size_t unit_coord) {
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        const double mod = b == unit_coord ? 1.0 : static_cast<double>(rng.below(64)) / 63.0;
        const double ang = bd.fiber_angle(static_cast<int>(rng.below(bd.fiber_samples())));
        a.set(b, PolarValue{mod, ang});
    }
    return a;
}

} // namespace

PolarValue MSetSpec::minus_mu() const {
    return {1.0, (alpha.mod == 0.0 ? 0.0 : alpha.arg) + kPi};
}

MSetSpec make_mset_spec(std::size_t t0, std::complex<double> alpha) {
    const PolarValue v = polar_from(alpha);
    if (v.mod > 1.0 + kExactTol)
        throw std::domain_error("target value must lie in the closed unit disk");
    return MSetSpec{t0, v};
}

MsetMembership mset_membership(const TripleFn& a, const MSetSpec& spec) {
    MsetMembership out;
    out.d_plus = dist_to_face(a, Face{spec.t0, spec.mu()});
    out.d_minus = dist_to_face(a, Face{spec.t0, spec.minus_mu()});
    out.member = out.d_plus <= 1.0 - spec.alpha.mod + kMembershipTol &&
                 out.d_minus <= 1.0 + spec.alpha.mod + kMembershipTol;
    return out;
}

bool mset_predicted(const TripleFn& a, const MSetSpec& spec) {
    if (spec.t0 >= a.size()) throw std::out_of_range("base index out of range");
    return std::abs(a.value(spec.t0) - to_complex(spec.alpha)) <= kMembershipTol;
}

bool disk_feasible(std::complex<double> z, const MSetSpec& spec) {
    const std::complex<double> mu = to_complex(spec.mu());
    return std::abs(z - mu) <= 1.0 - spec.alpha.mod + kMembershipTol &&
           std::abs(z + mu) <= 1.0 + spec.alpha.mod + kMembershipTol;
}

DiskOracleResult disk_oracle(const MSetSpec& spec, std::size_t points) {
    DiskOracleResult out;
    const std::complex<double> alpha = to_complex(spec.alpha);
    const std::size_t side = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::sqrt(static_cast<double>(points))));
    std::vector<std::complex<double>> grid;
    grid.reserve(side * side + 1);
    for (std::size_t j = 0; j < side; ++j) {
        const double r = static_cast<double>(j) / static_cast<double>(side - 1);
        for (std::size_t k = 0; k < side; ++k)
            grid.push_back(std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(side)));
    }
    grid.push_back(alpha);

    for (const auto& z : grid) {
        ++out.points;
        const bool feasible = disk_feasible(z, spec);
        const bool at_alpha = std::abs(z - alpha) <= kMembershipTol;
        if (feasible) ++out.feasible;
        if (feasible != at_alpha) ++out.violations;
    }
    out.pass = out.violations == 0 && out.feasible >= 1;
    return out;
}

CharacterizationReport verify_characterization(const Bundle& bd, const MSetSpec& spec,
                                               std::size_t trials, std::uint64_t seed,
                                               std::size_t disk_points) {
    if (spec.t0 >= bd.size()) throw std::out_of_range("base index out of range");
    if (bd.size() < 2 && spec.alpha.mod < 1.0 - kExactTol)
        throw std::domain_error(
            "a single-point base admits no sphere point with |a(t0)| < 1; need at least two points");

    CharacterizationReport rep;
    rep.trials = trials;
    const double rho = spec.alpha.mod;

    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(task_seed(seed, 0xA1, i));
        const bool force_anchor = i % 4 == 0;

        std::size_t unit_coord = spec.t0;
        if (bd.size() > 1) {
            // Keep the forced unit-modulus coordinate away from the anchor
            // whenever the anchor must carry |alpha| < 1.
            unit_coord = rng.below(bd.size());
            if (force_anchor && rho < 1.0 && unit_coord == spec.t0)
                unit_coord = (spec.t0 + 1) % bd.size();
        }
        TripleFn a = random_sphere_point(bd, rng, unit_coord);
        if (force_anchor) a.set(spec.t0, spec.alpha);

        const MsetMembership m = mset_membership(a, spec);
        const bool predicted = mset_predicted(a, spec);
        if (m.member != predicted) {
            std::ostringstream msg;
            msg << "trial " << i << ": membership " << (m.member ? "true" : "false")
                << " but anchor match " << (predicted ? "true" : "false")
                << " (d_plus = " << m.d_plus << ", d_minus = " << m.d_minus << ")";
            rep.counterexamples.push_back(msg.str());
            continue;
        }
        if (!predicted) continue;

        ++rep.anchored_trials;
        bool tight = false;
        if (rho >= 1.0 - kExactTol) {
            tight = m.d_plus <= kExactTol && std::abs(m.d_minus - 2.0) <= kExactTol;
        } else if (rho == 0.0) {
            tight = std::abs(m.d_plus - 1.0) <= kExactTol && std::abs(m.d_minus - 1.0) <= kExactTol;
            // Vanishing anchor: disjoint-support witness reaches both unit
            // faces within 1 + eps.
            const double eps = 0.125;
            const auto [gated, bump] = kill_gate_witness(bd, a, spec.t0, eps);
            const double to_plus = sup_distance(a, bump);
            const double to_minus = sup_distance(a, bump.scaled(-1.0));
            const double chain_bound = 1.0 + eps;
            if (to_plus > chain_bound + kExactTol || to_minus > chain_bound + kExactTol) {
                std::ostringstream msg;
                msg << "trial " << i << ": kill-gate chain exceeded " << chain_bound;
                rep.counterexamples.push_back(msg.str());
            }
            rep.witness_chain_max_slack = std::max(
                rep.witness_chain_max_slack,
                std::max(to_plus - m.d_plus, to_minus - m.d_minus));
        } else {
            tight = std::abs(m.d_plus - (1.0 - rho)) <= kExactTol &&
                    std::abs(m.d_minus - (1.0 + rho)) <= kExactTol;
            // Interior anchor: both witness pipelines must certify, and their
            // produced points dominate the closed-form distances.
            const double eps = 0.5 * std::min(rho, 1.0 - rho);
            const double r = 0.5;
            const WitnessCertificate toward = approach_face_witness(bd, a, spec.t0, eps, r);
            const WitnessCertificate away = opposite_face_witness(bd, a, spec.t0, eps, r);
            if (!toward.pass || !away.pass) {
                std::ostringstream msg;
                msg << "trial " << i << ": witness certificate failed ("
                    << (toward.pass ? "" : "approach ") << (away.pass ? "" : "opposite") << ")";
                rep.counterexamples.push_back(msg.str());
            }
            const double to_plus = sup_distance(a, toward.witness);
            const double to_minus = sup_distance(a, away.witness);
            if (m.d_plus > to_plus + kExactTol || m.d_minus > to_minus + kExactTol) {
                std::ostringstream msg;
                msg << "trial " << i << ": closed-form distance exceeds a witness distance";
                rep.counterexamples.push_back(msg.str());
            }
            rep.witness_chain_max_slack = std::max(
                rep.witness_chain_max_slack,
                std::max(to_plus - m.d_plus, to_minus - m.d_minus));
        }
        if (tight) {
            ++rep.tight_boundary_hits;
        } else {
            std::ostringstream msg;
            msg << "trial " << i << ": boundary distances not tight (d_plus = " << m.d_plus
                << ", d_minus = " << m.d_minus << ")";
            rep.counterexamples.push_back(msg.str());
        }
    }

    rep.disk = disk_oracle(spec, disk_points);
    rep.pass = rep.counterexamples.empty() && rep.disk.pass && rep.anchored_trials > 0;
    return rep;
}

} // namespace mulab
