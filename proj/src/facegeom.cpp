#include "mulab/facegeom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mulab {

namespace {

void require_on_sphere(const TripleFn& a) {
    if (std::abs(a.norm() - 1.0) > kMembershipTol)
        throw std::domain_error("off the sphere: ‖a‖ = " + std::to_string(a.norm()));
}

// Polar grid of the closed unit disk: `moduli` evenly spaced levels of [0,1]
// times the bundle's fiber phases.
std::vector<std::complex<double>> disk_grid(const Bundle& bd, int moduli) {
    std::vector<std::complex<double>> g;
    g.reserve(static_cast<std::size_t>(moduli) * static_cast<std::size_t>(bd.fiber_samples()));
    for (int j = 0; j < moduli; ++j) {
        const double r = static_cast<double>(j) / static_cast<double>(moduli - 1);
        for (int k = 0; k < bd.fiber_samples(); ++k)
            g.push_back(std::polar(r, bd.fiber_angle(k)));
    }
    return g;
}

double dist_to_grid(std::complex<double> z, const std::vector<std::complex<double>>& grid) {
    double best = std::abs(z - grid.front());
    for (const auto& g : grid) best = std::min(best, std::abs(z - g));
    return best;
}

double max_dist_from_grid(std::complex<double> z, const std::vector<std::complex<double>>& grid) {
    double worst = 0.0;
    for (const auto& g : grid) worst = std::max(worst, std::abs(g - z));
    return worst;
}

// One direction of the sampled sup-inf distance, decomposed per coordinate.
// A sampled member of the source face carries lambda_src at t_src and grid
// values elsewhere; the nearest sampled member of the target face matches it
// coordinate-by-coordinate. Free coordinates of both faces run over the same
// grid, so they contribute zero.
double directed_sampled(const Face& src, const Face& dst,
                        const std::vector<std::complex<double>>& grid) {
    const std::complex<double> ls = to_complex(src.lambda);
    const std::complex<double> ld = to_complex(dst.lambda);
    if (src.t == dst.t) return std::abs(ls - ld);
    double worst = dist_to_grid(ls, grid);            // source label vs free grid of dst
    worst = std::max(worst, max_dist_from_grid(ld, grid));  // free grid of src vs dst label
    return worst;
}

std::vector<std::complex<double>> enumeration_grid(int moduli, int phases) {
    std::vector<std::complex<double>> g;
    g.reserve(static_cast<std::size_t>(moduli) * static_cast<std::size_t>(phases));
    for (int j = 0; j < moduli; ++j) {
        const double r = static_cast<double>(j) / static_cast<double>(moduli - 1);
        for (int k = 0; k < phases; ++k)
            g.push_back(std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(phases)));
    }
    return g;
}

// Enumerates every member of the face over the product grid, invoking fn on
// each. Members are built in cartesian form.
template <typename F>
void for_each_member(const Bundle& bd, const Face& face,
                     const std::vector<std::complex<double>>& grid, F&& fn) {
    const std::size_t n = bd.size();
    std::vector<std::size_t> free_coords;
    for (std::size_t b = 0; b < n; ++b)
        if (b != face.t) free_coords.push_back(b);

    std::vector<std::complex<double>> member(n);
    member[face.t] = to_complex(face.lambda);

    std::vector<std::size_t> idx(free_coords.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < free_coords.size(); ++i) member[free_coords[i]] = grid[idx[i]];
        fn(member);
        std::size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < grid.size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
    }
}

double sup_norm_diff(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

Face make_face(std::size_t t, std::complex<double> lambda) {
    return Face{t, unit_from(lambda)};
}

double dist_to_face(const TripleFn& a, const Face& f) {
    if (f.t >= a.size()) throw std::out_of_range("base index out of range");
    require_on_sphere(a);
    return std::abs(a.value(f.t) - to_complex(f.lambda));
}

double hausdorff(const Face& f1, const Face& f2) {
    if (f1.t == f2.t) return std::abs(to_complex(f1.lambda) - to_complex(f2.lambda));
    return 2.0;
}

double hausdorff_sampled(const Bundle& bd, const Face& f1, const Face& f2, int moduli) {
    if (f1.t >= bd.size() || f2.t >= bd.size())
        throw std::out_of_range("base index out of range");
    if (moduli < 2) throw std::invalid_argument("need at least two modulus levels");
    const auto grid = disk_grid(bd, moduli);
    return std::max(directed_sampled(f1, f2, grid), directed_sampled(f2, f1, grid));
}

double dist_to_face_enumerated(const Bundle& bd, const TripleFn& a, const Face& f,
                               int moduli, int phases) {
    require_on_sphere(a);
    const auto grid = enumeration_grid(moduli, phases);
    const auto av = a.complex_values();
    double best = 4.0;
    for_each_member(bd, f, grid, [&](const std::vector<std::complex<double>>& member) {
        best = std::min(best, sup_norm_diff(av, member));
    });
    return best;
}

double hausdorff_enumerated(const Bundle& bd, const Face& f1, const Face& f2,
                            int moduli, int phases) {
    const auto grid = enumeration_grid(moduli, phases);
    double dir1 = 0.0;
    for_each_member(bd, f1, grid, [&](const std::vector<std::complex<double>>& x) {
        double nearest = 4.0;
        for_each_member(bd, f2, grid, [&](const std::vector<std::complex<double>>& y) {
            nearest = std::min(nearest, sup_norm_diff(x, y));
        });
        dir1 = std::max(dir1, nearest);
    });
    double dir2 = 0.0;
    for_each_member(bd, f2, grid, [&](const std::vector<std::complex<double>>& y) {
        double nearest = 4.0;
        for_each_member(bd, f1, grid, [&](const std::vector<std::complex<double>>& x) {
            nearest = std::min(nearest, sup_norm_diff(x, y));
        });
        dir2 = std::max(dir2, nearest);
    });
    return std::max(dir1, dir2);
}

TripleFn faces_intersect_witness(const Bundle& bd, std::size_t t1, std::complex<double> lambda1,
                                 std::size_t t2, std::complex<double> lambda2) {
    if (t1 == t2)
        throw std::domain_error("faces over the same base point with different labels are disjoint");
    const PolarValue l1 = unit_from(lambda1);
    const PolarValue l2 = unit_from(lambda2);
    const auto [ball1, ball2] = separate(bd, t1, t2);
    const TripleFn peak1 = urysohn_peak(bd, t1, ball1.radius / 2.0, ball1.radius);
    const TripleFn peak2 = urysohn_peak(bd, t2, ball2.radius / 2.0, ball2.radius);
    // The peaks have disjoint supports, so the sum is a pointwise selection
    // and can be written directly in polar form: modulus from the live peak,
    // argument from its label.
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        const double m1 = peak1.modulus(b);
        const double m2 = peak2.modulus(b);
        if (m1 != 0.0 && m2 != 0.0)
            throw std::logic_error("separated peaks overlap");
        if (m1 != 0.0) {
            a.set(b, PolarValue{m1, l1.arg});
        } else if (m2 != 0.0) {
            a.set(b, PolarValue{m2, l2.arg});
        }
    }
    return a;
}

TripleFn sample_face_member(const Bundle& bd, const Face& f, Rng& rng,
                            bool exclude_unit_modulus) {
    const int levels = exclude_unit_modulus ? 63 : 64;
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        if (b == f.t) {
            a.set(b, f.lambda);
            continue;
        }
        const double mod = static_cast<double>(rng.below(levels)) / 63.0;
        const double ang = bd.fiber_angle(static_cast<int>(rng.below(bd.fiber_samples())));
        a.set(b, PolarValue{mod, ang});
    }
    return a;
}

HausdorffReport check_hausdorff_condition(const Bundle& bd, int lambda_grid) {
    if (bd.size() < 2)
        throw std::domain_error("condition check needs at least two base points");
    if (lambda_grid < 2) throw std::invalid_argument("need at least two label phases");

    HausdorffReport rep;
    rep.grid_bound = 2.0 * (kTwoPi / static_cast<double>(bd.fiber_samples()));

    // The sampled oracle only ever consults the grid through two label
    // statistics; precompute them per label phase.
    const auto grid = disk_grid(bd, 64);
    std::vector<std::complex<double>> labels(lambda_grid);
    std::vector<double> label_to_grid(lambda_grid);
    std::vector<double> grid_to_label(lambda_grid);
    for (int j = 0; j < lambda_grid; ++j) {
        labels[j] = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(lambda_grid));
        label_to_grid[j] = dist_to_grid(labels[j], grid);
        grid_to_label[j] = max_dist_from_grid(labels[j], grid);
    }

    for (std::size_t t1 = 0; t1 < bd.size(); ++t1) {
        for (std::size_t t2 = 0; t2 < bd.size(); ++t2) {
            for (int j1 = 0; j1 < lambda_grid; ++j1) {
                for (int j2 = 0; j2 < lambda_grid; ++j2) {
                    const Face f1 = make_face(t1, labels[j1]);
                    const Face f2 = make_face(t2, labels[j2]);
                    const double closed = hausdorff(f1, f2);
                    double sampled;
                    if (t1 == t2) {
                        sampled = std::abs(to_complex(f1.lambda) - to_complex(f2.lambda));
                    } else {
                        const double dir1 = std::max(label_to_grid[j1], grid_to_label[j2]);
                        const double dir2 = std::max(label_to_grid[j2], grid_to_label[j1]);
                        sampled = std::max(dir1, dir2);
                    }
                    const double deviation = std::abs(closed - sampled);
                    rep.max_deviation = std::max(rep.max_deviation, deviation);
                    ++rep.pairs_checked;
                    rep.table.push_back({t1, t2, labels[j1], labels[j2], closed, sampled});
                    if (deviation > rep.grid_bound) {
                        std::ostringstream msg;
                        msg << "dichotomy deviation " << deviation << " at (" << bd.name(t1)
                            << "," << j1 << "," << bd.name(t2) << "," << j2 << ")";
                        rep.failures.push_back(msg.str());
                    }
                }
            }
        }
    }

    // Sufficiency: distinct base points admit a common norm-one function for
    // every pair of labels, with exact coordinate equality.
    for (std::size_t t1 = 0; t1 < bd.size(); ++t1) {
        for (std::size_t t2 = 0; t2 < bd.size(); ++t2) {
            if (t1 == t2) continue;
            for (int j1 = 0; j1 < lambda_grid; ++j1) {
                for (int j2 = 0; j2 < lambda_grid; ++j2) {
                    const TripleFn w = faces_intersect_witness(bd, t1, labels[j1], t2, labels[j2]);
                    ++rep.witness_checks;
                    const bool in_f1 = polar_equal(w.at(t1), unit_from(labels[j1]));
                    const bool in_f2 = polar_equal(w.at(t2), unit_from(labels[j2]));
                    if (!in_f1 || !in_f2 || w.norm() != 1.0) {
                        std::ostringstream msg;
                        msg << "intersection witness violated at (" << bd.name(t1) << "," << j1
                            << "," << bd.name(t2) << "," << j2 << ")";
                        rep.failures.push_back(msg.str());
                    }
                }
            }
        }
    }

    rep.pass = rep.failures.empty();
    return rep;
}

} // namespace mulab
