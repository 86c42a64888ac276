#pragma once

// Finite model of the equivariant continuous-function space over a trivial
// circle bundle. The total space is T x B for a finite metric base B; an
// equivariant function is determined by its values on the fiber over each
// base point, so functions are complex vectors indexed by B with the sup
// norm. All constructions downstream (faces, gates, witnesses, isometries)
// operate on this model.

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace mulab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Accepted deviation of |lambda| from 1 for unimodular scalar inputs.
inline constexpr double kUnimodularTol = 1e-9;

// Slack for clause checks whose closed forms hold with exact arithmetic.
inline constexpr double kExactTol = 1e-12;

// Tolerance separating boundary equalities from violations in membership
// predicates.
inline constexpr double kMembershipTol = 1e-9;

// One coordinate value in polar form. Keeping (modulus, argument) separate
// makes the circle action exact: rotations, conjugations, gates and phase
// retractions each touch a single field, so sup norms survive them bit for
// bit. Invariant: mod >= 0; a zero value is stored as (0, 0).
struct PolarValue {
    double mod = 0.0;
    double arg = 0.0;
};

PolarValue polar_from(std::complex<double> z);

// Canonicalizes a unimodular scalar to (1, atan2). Throws std::domain_error
// if | |lambda| - 1 | > kUnimodularTol.
PolarValue unit_from(std::complex<double> lambda);

std::complex<double> to_complex(PolarValue v);

// Zero compares equal regardless of stored argument.
bool polar_equal(PolarValue a, PolarValue b);

// An equivariant function in the finite model: one polar value per base
// point. The sup norm is the maximal modulus.
class TripleFn {
public:
    TripleFn() = default;
    explicit TripleFn(std::size_t n) : vals_(n) {}

    static TripleFn from_complex_values(const std::vector<std::complex<double>>& zs);

    std::size_t size() const { return vals_.size(); }

    PolarValue at(std::size_t b) const { return vals_[b]; }
    double modulus(std::size_t b) const { return vals_[b].mod; }
    double argument(std::size_t b) const { return vals_[b].arg; }
    std::complex<double> value(std::size_t b) const { return to_complex(vals_[b]); }
    std::vector<std::complex<double>> complex_values() const;

    void set(std::size_t b, PolarValue v);
    void set(std::size_t b, std::complex<double> z) { set(b, polar_from(z)); }

    double norm() const;

    TripleFn rotated(double angle) const;   // multiply by e^{i angle}
    TripleFn conjugated() const;
    TripleFn scaled(double s) const;        // real scalar; s < 0 adds a half turn
    TripleFn divided(double d) const;       // d > 0

    friend bool polar_equal(const TripleFn& a, const TripleFn& b);

private:
    std::vector<PolarValue> vals_;
};

TripleFn add(const TripleFn& a, const TripleFn& b);
TripleFn subtract(const TripleFn& a, const TripleFn& b);
double sup_distance(const TripleFn& a, const TripleFn& b);

// Open metric ball in the base.
struct Ball {
    std::size_t center = 0;
    double radius = 0.0;
};

// Finite base: named points, a metric, and the fiber sampling resolution m
// (phases e^{2 pi i k / m} used by samplers and oracles; m >= 8).
class Bundle {
public:
    Bundle(std::vector<std::string> base_points,
           std::vector<std::vector<double>> metric,
           int fiber_samples);

    // n points on a circle with chord distances; the default test base.
    static Bundle ring(std::size_t n, int fiber_samples = 64);

    // Two points at the given distance.
    static Bundle two_points(double distance, int fiber_samples = 64);

    static Bundle from_json_text(const std::string& text);
    static Bundle from_json_file(const std::string& path);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t b) const { return names_[b]; }
    double distance(std::size_t i, std::size_t j) const { return metric_[i][j]; }
    int fiber_samples() const { return fiber_samples_; }

    double fiber_angle(int k) const;                  // 2 pi k / m
    std::complex<double> fiber_phase(int k) const;    // e^{i fiber_angle(k)}

    double diameter() const;
    bool contains(const Ball& ball, std::size_t b) const;  // open ball

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> metric_;
    int fiber_samples_;
};

// Sup norm of the function.
double norm(const TripleFn& a);

// Value of the equivariant extension at the fiber point (lambda, b):
// lambda * a(b). Throws std::domain_error for non-unimodular lambda
// (invalid fiber point) and std::out_of_range for a bad base index.
std::complex<double> full_eval(const TripleFn& a, std::complex<double> lambda, std::size_t b);

// Real tent function of the base distance to t0: 1 on the closed ball of
// radius r_in, 0 outside the open ball of radius r_out, affine in the
// distance in between. Requires 0 <= r_in < r_out.
TripleFn urysohn_peak(const Bundle& bd, std::size_t t0, double r_in, double r_out);

// Disjoint open balls at two distinct base points, radius d(t1,t2)/3; the
// closed balls of that radius are already disjoint.
std::pair<Ball, Ball> separate(const Bundle& bd, std::size_t t1, std::size_t t2);

// Midpoint-radius ball strictly between two concentric balls. Requires the
// same center and inner.radius < outer.radius.
Ball shrink(const Bundle& bd, const Ball& inner, const Ball& outer);

} // namespace mulab
