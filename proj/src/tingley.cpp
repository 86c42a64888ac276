#include "mulab/tingley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace mulab {

namespace {

// Continuous samples; exact grids are not needed for residual measurements.
TripleFn random_ball_point(const Bundle& bd, Rng& rng) {
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b)
        a.set(b, PolarValue{rng.uniform(), rng.uniform(0.0, kTwoPi)});
    return a;
}

TripleFn random_sphere_point(const Bundle& bd, Rng& rng) {
    TripleFn a = random_ball_point(bd, rng);
    std::size_t top = rng.below(bd.size());
    a.set(top, PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
    return a;
}

std::uint64_t bits_of(const TripleFn& a) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t b = 0; b < a.size(); ++b) {
        h = mix64(h ^ std::bit_cast<std::uint64_t>(a.modulus(b)));
        h = mix64(h ^ std::bit_cast<std::uint64_t>(a.argument(b)));
    }
    return h;
}

} // namespace

TripleFn SphereIsometry::apply(const TripleFn& a) const {
    if (a.size() != perm.size()) throw std::invalid_argument("isometry: size mismatch");
    TripleFn out(a.size());
    for (std::size_t b = 0; b < perm.size(); ++b) {
        std::size_t src = inverse[b];
        double arg = a.argument(src);
        if (conj[b]) arg = -arg;
        // Modulus is copied verbatim: the action is norm preserving bit for bit.
        out.set(b, PolarValue{a.modulus(src), phase_arg[b] + arg});
    }
    return out;
}

SphereIsometry make_isometry(std::vector<std::size_t> perm,
                             std::vector<std::complex<double>> phases,
                             std::vector<char> conj) {
    std::size_t n = perm.size();
    if (n == 0) throw std::invalid_argument("isometry: empty permutation");
    if (phases.size() != n || conj.size() != n)
        throw std::invalid_argument("isometry: component lists disagree in length");
    std::vector<char> seen(n, 0);
    for (std::size_t v : perm) {
        if (v >= n) throw std::invalid_argument("isometry: permutation entry out of range");
        if (seen[v]) throw std::invalid_argument("isometry: permutation entry repeated");
        seen[v] = 1;
    }
    SphereIsometry iso;
    iso.perm = std::move(perm);
    iso.inverse.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) iso.inverse[iso.perm[i]] = i;
    iso.phase_arg.reserve(n);
    for (const auto& w : phases) {
        if (std::abs(std::abs(w) - 1.0) > kUnimodularTol)
            throw std::domain_error("isometry: fiber phase is not unimodular");
        iso.phase_arg.push_back(std::arg(w));
    }
    iso.phase = std::move(phases);
    iso.conj = std::move(conj);
    return iso;
}

SphereIsometry isometry_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("isometry: bad json: ") + e.what());
    }
    if (!doc.contains("perm") || !doc.contains("phases") || !doc.contains("conj"))
        throw std::invalid_argument("isometry: need perm, phases, conj");
    std::vector<std::size_t> perm;
    for (const auto& v : doc["perm"]) perm.push_back(v.get<std::size_t>());
    std::vector<std::complex<double>> phases;
    for (const auto& v : doc["phases"]) {
        if (!v.is_array() || v.size() != 2)
            throw std::invalid_argument("isometry: phase entries are [re, im] pairs");
        phases.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    std::vector<char> conj;
    for (const auto& v : doc["conj"]) conj.push_back(v.get<bool>() ? 1 : 0);
    return make_isometry(std::move(perm), std::move(phases), std::move(conj));
}

SphereIsometry isometry_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open isometry description: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return isometry_from_json_text(buf.str());
}

SphereIsometry random_isometry(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<std::complex<double>> phases;
    std::vector<char> conj;
    for (std::size_t i = 0; i < n; ++i) {
        phases.push_back(std::polar(1.0, rng.uniform(0.0, kTwoPi)));
        conj.push_back(rng.coin() ? 1 : 0);
    }
    return make_isometry(std::move(perm), std::move(phases), std::move(conj));
}

SphereMap as_sphere_map(const SphereIsometry& iso) {
    return [iso](const TripleFn& a) { return iso.apply(a); };
}

TripleFn homogeneous_extension(const SphereMap& map, const TripleFn& x) {
    double m = norm(x);
    if (m == 0.0) return TripleFn(x.size());
    // x/m puts the maximizing coordinate at modulus exactly 1.
    return map(x.divided(m)).scaled(m);
}

SphereMap perturb(const SphereIsometry& iso, double delta, std::uint64_t seed) {
    return [iso, delta, seed](const TripleFn& a) {
        TripleFn y = iso.apply(a);
        if (delta == 0.0) return y;
        Rng rng(task_seed(seed, 0xE7, bits_of(a)));
        // Sphere-valued disturbance: the renormalized result stays norm one,
        // so the defect shows up only through distance distortion.
        TripleFn eta(a.size());
        for (std::size_t b = 0; b < a.size(); ++b)
            eta.set(b, PolarValue{rng.uniform(), rng.uniform(0.0, kTwoPi)});
        eta.set(rng.below(a.size()), PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
        TripleFn z = add(y, eta.scaled(delta));
        double m = norm(z);
        if (m == 0.0) return y;
        return z.divided(m);
    };
}

ExtensionReport check_real_linearity(const SphereMap& map, const Bundle& bd, std::size_t trials,
                                     std::uint64_t seed, double tol) {
    ExtensionReport rep;
    rep.trials = trials;
    rep.tol = tol;
    auto ext = [&map](const TripleFn& x) { return homogeneous_extension(map, x); };
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(task_seed(seed, 0x11, i));
        TripleFn x = random_ball_point(bd, rng);
        TripleFn y = random_ball_point(bd, rng);
        double s = rng.uniform(-2.0, 2.0);

        TripleFn tx = ext(x);
        TripleFn ty = ext(y);
        double add_resid = sup_distance(ext(add(x, y)), add(tx, ty));
        double hom_resid = sup_distance(ext(x.scaled(s)), tx.scaled(s));
        double iso_resid = std::abs(sup_distance(tx, ty) - sup_distance(x, y));
        double cplx_resid = sup_distance(ext(x.rotated(kTwoPi / 4.0)), tx.rotated(kTwoPi / 4.0));

        rep.max_additivity = std::max(rep.max_additivity, add_resid);
        rep.max_homogeneity = std::max(rep.max_homogeneity, hom_resid);
        rep.max_isometry = std::max(rep.max_isometry, iso_resid);
        rep.max_complex_homogeneity = std::max(rep.max_complex_homogeneity, cplx_resid);
    }
    rep.linear_pass = rep.max_additivity <= tol && rep.max_homogeneity <= tol &&
                      rep.max_isometry <= tol;
    return rep;
}

FaceLabel face_image(const SphereMap& map, const Bundle& bd, const Face& face, int probes,
                     std::uint64_t seed) {
    constexpr double kFitTol = 1e-6;
    Rng rng(task_seed(seed, 0xFA, face.t * 1024 + std::bit_cast<std::uint64_t>(face.lambda.arg) % 1024));
    // One resample on inconsistency before giving up; the rng keeps advancing,
    // so the second attempt sees fresh probes.
    for (int attempt = 0; attempt < 2; ++attempt) {
        // Probes keep free coordinates strictly inside the disc, so only the
        // face coordinate of a true isometry image sits at modulus one.
        std::vector<TripleFn> images;
        images.reserve(static_cast<std::size_t>(probes));
        for (int p = 0; p < probes; ++p)
            images.push_back(map(sample_face_member(bd, face, rng, true)));

        std::vector<FaceLabel> candidates;
        for (std::size_t b = 0; b < bd.size(); ++b) {
            if (std::abs(images[0].modulus(b) - 1.0) > kFitTol) continue;
            candidates.push_back(FaceLabel{b, PolarValue{1.0, images[0].argument(b)}});
        }
        std::vector<FaceLabel> kept;
        for (const auto& cand : candidates) {
            bool ok = true;
            std::complex<double> want = to_complex(cand.lambda);
            for (const auto& img : images) {
                if (std::abs(img.modulus(cand.t) - 1.0) > kFitTol ||
                    std::abs(img.value(cand.t) - want) > kFitTol) {
                    ok = false;
                    break;
                }
            }
            if (ok) kept.push_back(cand);
        }
        if (kept.size() == 1) return kept.front();
    }
    throw std::domain_error("face_image: map does not carry this face onto a face");
}

ExtensionReport mup_demonstration(const Bundle& bd, const SphereMap& map, std::size_t trials,
                                  std::uint64_t seed, double tol, int label_grid) {
    ExtensionReport rep;
    rep.trials = trials;
    rep.tol = tol;

    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(task_seed(seed, 0x51, i));
        TripleFn x = random_sphere_point(bd, rng);
        TripleFn y = random_sphere_point(bd, rng);
        TripleFn mx = map(x);
        TripleFn my = map(y);
        double resid = std::max(std::abs(norm(mx) - 1.0),
                                std::abs(sup_distance(mx, my) - sup_distance(x, y)));
        rep.sphere_residual = std::max(rep.sphere_residual, resid);
    }
    if (rep.sphere_residual > tol) {
        rep.failure_stage = "sphere_isometry";
        return rep;
    }

    ExtensionReport lin = check_real_linearity(map, bd, trials, mix64(seed ^ 0x22), tol);
    rep.max_additivity = lin.max_additivity;
    rep.max_homogeneity = lin.max_homogeneity;
    rep.max_isometry = lin.max_isometry;
    rep.max_complex_homogeneity = lin.max_complex_homogeneity;
    rep.linear_pass = lin.linear_pass;
    if (!rep.linear_pass) {
        rep.failure_stage = "extension_linearity";
        return rep;
    }

    rep.label_bijection = true;
    rep.label_dichotomy = true;
    try {
        for (std::size_t t = 0; t < bd.size(); ++t) {
            for (int j = 0; j < label_grid; ++j) {
                Face f = make_face(t, std::polar(1.0, kTwoPi * j / label_grid));
                FaceLabel img = face_image(map, bd, f, 32, mix64(seed ^ (t * 131 + j)));
                rep.label_map.push_back(LabelPair{FaceLabel{f.t, f.lambda}, img});
            }
        }
    } catch (const std::domain_error&) {
        rep.label_bijection = false;
        rep.failure_stage = "face_transport";
        return rep;
    }
    rep.labels_checked = rep.label_map.size();

    constexpr double kSameTol = 1e-6;
    auto same_label = [](const FaceLabel& u, const FaceLabel& v) {
        return u.t == v.t && std::abs(to_complex(u.lambda) - to_complex(v.lambda)) <= kSameTol;
    };
    for (std::size_t i = 0; i < rep.label_map.size() && rep.label_bijection; ++i)
        for (std::size_t j = i + 1; j < rep.label_map.size(); ++j)
            if (same_label(rep.label_map[i].to, rep.label_map[j].to)) {
                rep.label_bijection = false;
                break;
            }
    // Orthogonality of faces is a metric invariant: labels over one base point
    // must land over one base point.
    for (std::size_t i = 0; i < rep.label_map.size() && rep.label_dichotomy; ++i)
        for (std::size_t j = i + 1; j < rep.label_map.size(); ++j)
            if ((rep.label_map[i].from.t == rep.label_map[j].from.t) !=
                (rep.label_map[i].to.t == rep.label_map[j].to.t)) {
                rep.label_dichotomy = false;
                break;
            }

    if (!rep.label_bijection || !rep.label_dichotomy) rep.failure_stage = "face_transport";
    rep.verdict = rep.linear_pass && rep.label_bijection && rep.label_dichotomy;
    return rep;
}

} // namespace mulab
