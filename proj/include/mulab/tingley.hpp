#pragma once

// Surjective sphere isometries of the finite model and their homogeneous
// extensions. Every generator isometry permutes base points, rotates each
// fiber, and optionally conjugates coordinates; its sphere restriction is
// extended to the whole space by T(x) = ‖x‖ Δ(x/‖x‖), which is then checked
// for additivity, real homogeneity and isometry on random ball points. Face
// transport (the induced label bijection) is measured alongside, and seeded
// perturbations provide negative controls.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mulab/bundle.hpp"
#include "mulab/facegeom.hpp"
#include "mulab/rng.hpp"

namespace mulab {

// Generator isometry: (Δa)(b) = phase_b * K_b(a(perm^{-1}(b))) with K_b
// complex conjugation where flagged. Acting in polar form copies moduli
// verbatim, so sup norms are preserved bit for bit.
struct SphereIsometry {
    std::vector<std::size_t> perm;        // perm[i] = image of base point i
    std::vector<std::size_t> inverse;     // inverse[perm[i]] = i
    std::vector<double> phase_arg;        // per target coordinate
    std::vector<std::complex<double>> phase;  // original phases, for reports
    std::vector<char> conj;               // per target coordinate

    TripleFn apply(const TripleFn& a) const;
};

// Validates bijectivity of perm and unimodularity of each phase
// (kUnimodularTol); throws std::invalid_argument / std::domain_error.
SphereIsometry make_isometry(std::vector<std::size_t> perm,
                             std::vector<std::complex<double>> phases,
                             std::vector<char> conj);

// Parses {"perm": [...], "phases": [[re,im],...], "conj": [...]}.
SphereIsometry isometry_from_json_text(const std::string& text);
SphereIsometry isometry_from_json_file(const std::string& path);

SphereIsometry random_isometry(std::size_t n, Rng& rng);

// Black-box map of the unit sphere (norm-one inputs to norm-one outputs).
using SphereMap = std::function<TripleFn(const TripleFn&)>;

SphereMap as_sphere_map(const SphereIsometry& iso);

// T(x) = ‖x‖ Δ(x/‖x‖), T(0) = 0.
TripleFn homogeneous_extension(const SphereMap& map, const TripleFn& x);

// Seeded disturbance: x -> renormalize(Δ(x) + delta * eta(x)) with eta a
// deterministic pseudo-random sphere point derived from the bits of x.
// delta = 0 reproduces the isometry up to rounding.
SphereMap perturb(const SphereIsometry& iso, double delta, std::uint64_t seed);

struct LabelPair {
    FaceLabel from;
    FaceLabel to;
};

struct ExtensionReport {
    std::size_t trials = 0;
    double tol = 0.0;
    double max_additivity = 0.0;
    double max_homogeneity = 0.0;     // real scalars
    double max_isometry = 0.0;        // | ‖Tx-Ty‖ - ‖x-y‖ |
    double max_complex_homogeneity = 0.0;  // informational: ‖T(ix) - iT(x)‖
    double sphere_residual = 0.0;     // isometry defect measured on the sphere
    bool linear_pass = false;
    std::size_t labels_checked = 0;
    bool label_bijection = false;
    bool label_dichotomy = false;     // equal t maps to equal t'
    std::vector<LabelPair> label_map;
    std::string failure_stage;        // empty when verdict holds
    bool verdict = false;
};

// Random ball pairs through the extension: additivity, real homogeneity and
// isometry residuals, all required <= tol; complex homogeneity reported but
// not enforced.
ExtensionReport check_real_linearity(const SphereMap& map, const Bundle& bd, std::size_t trials,
                                     std::uint64_t seed, double tol);

// Maps `probes` sampled members of the face through the map and identifies
// the unique label (t', lambda') carrying every image. Throws
// std::domain_error (not an isometry) if no unique label fits.
FaceLabel face_image(const SphereMap& map, const Bundle& bd, const Face& face, int probes,
                     std::uint64_t seed);

// Full demonstration for one candidate map: sphere-isometry residual, the
// linearity report of the extension, and the face-label transport over every
// (base point, grid phase) label. Verdict requires all three stages.
ExtensionReport mup_demonstration(const Bundle& bd, const SphereMap& map, std::size_t trials,
                                  std::uint64_t seed, double tol, int label_grid = 16);

} // namespace mulab
