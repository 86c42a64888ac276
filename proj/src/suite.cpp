#include "mulab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "mulab/facegeom.hpp"
#include "mulab/mset.hpp"
#include "mulab/rng.hpp"
#include "mulab/tingley.hpp"
#include "mulab/witness.hpp"

namespace mulab {

namespace {

// Sphere point from the polar grid: 64 modulus levels per coordinate, fiber
// phases, one uniformly chosen coordinate forced to modulus exactly 1.
TripleFn grid_sphere_point(const Bundle& bd, Rng& rng) {
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        double mod = static_cast<double>(rng.below(64)) / 63.0;
        a.set(b, PolarValue{mod, bd.fiber_angle(static_cast<int>(rng.below(
                                     static_cast<std::size_t>(bd.fiber_samples()))))});
    }
    std::size_t top = rng.below(bd.size());
    a.set(top, PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
    return a;
}

void write_fn(JsonWriter& w, const TripleFn& a) {
    w.begin_array();
    for (std::size_t b = 0; b < a.size(); ++b) w.value(a.value(b));
    w.end_array();
}

void write_certificate_fields(JsonWriter& w, const WitnessCertificate& c) {
    w.field("anchor", c.anchor);
    w.field("eps", c.eps);
    w.field("contraction", c.contraction);
    w.field("anchor_value", c.anchor_value);
    w.field("approx_error", c.approx_error);
    w.field("anchor_residual", c.anchor_residual);
    w.field("witness_norm", c.witness_norm);
    w.field("distance", c.distance);
    w.field("bound", c.bound);
    w.field("pass", c.pass);
}

} // namespace

Bundle make_suite_bundle(const SuiteConfig& cfg) {
    if (!cfg.bundle_path.empty()) return Bundle::from_json_file(cfg.bundle_path);
    return Bundle::ring(cfg.base_size, cfg.fiber_samples);
}

bool run_dichotomy_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w) {
    HausdorffReport rep = check_hausdorff_condition(bd, cfg.lambda_grid);
    w.begin_object();
    w.field("pairs_checked", rep.pairs_checked);
    w.field("max_deviation", rep.max_deviation);
    w.field("grid_bound", rep.grid_bound);
    w.field("witness_checks", rep.witness_checks);
    w.key("failures");
    w.begin_array();
    for (const auto& f : rep.failures) w.value(f);
    w.end_array();
    w.field("pass", rep.pass);
    w.end_object();
    return rep.pass;
}

static std::string dichotomy_rows_csv(const HausdorffReport& rep) {
    CsvWriter csv;
    csv.cell("t1");
    csv.cell("lambda1_re");
    csv.cell("lambda1_im");
    csv.cell("t2");
    csv.cell("lambda2_re");
    csv.cell("lambda2_im");
    csv.cell("closed");
    csv.cell("sampled");
    csv.endrow();
    for (const auto& cell : rep.table) {
        csv.cell(cell.t1);
        csv.cell(cell.lambda1.real());
        csv.cell(cell.lambda1.imag());
        csv.cell(cell.t2);
        csv.cell(cell.lambda2.real());
        csv.cell(cell.lambda2.imag());
        csv.cell(cell.closed);
        csv.cell(cell.sampled);
        csv.endrow();
    }
    return csv.str();
}

std::string dichotomy_table_csv(const Bundle& bd, const SuiteConfig& cfg) {
    return dichotomy_rows_csv(check_hausdorff_condition(bd, cfg.lambda_grid));
}

bool run_retraction_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w) {
    std::size_t failures = 0;
    std::size_t exact_checks = 0;
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(task_seed(cfg.seed, 0x38, i));
        TripleFn a = grid_sphere_point(bd, rng);
        double eps = rng.uniform(0.001, 0.999);
        TripleFn u = unit_retraction(a, eps);
        bool ok = norm(u) == 1.0;
        for (std::size_t b = 0; b < bd.size(); ++b) {
            if (a.modulus(b) >= eps) {
                ++exact_checks;
                // u must equal the exact phase of a at this coordinate.
                if (u.modulus(b) != 1.0 || u.argument(b) != a.argument(b)) ok = false;
            } else if (u.modulus(b) > 1.0) {
                ok = false;
            }
        }
        if (!ok) {
            ++failures;
            if (notes.size() < 8)
                notes.push_back("trial " + std::to_string(i) + " eps " + format_double(eps));
        }
    }
    bool pass = failures == 0;
    w.begin_object();
    w.field("trials", cfg.trials);
    w.field("exact_checks", exact_checks);
    w.field("failures", failures);
    w.key("notes");
    w.begin_array();
    for (const auto& s : notes) w.value(s);
    w.end_array();
    w.field("pass", pass);
    w.end_object();
    return pass;
}

bool run_certificate_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w) {
    if (bd.size() < 2)
        throw std::invalid_argument("certificate suite requires at least two base points");
    std::size_t failures = 0;
    std::size_t limit_checks = 0, limit_failures = 0;
    double max_anchor_residual = 0.0;
    double max_norm_excess = 0.0;
    double max_distance_excess = 0.0;
    std::vector<std::string> notes;

    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(task_seed(cfg.seed, 0x39, i));
        TripleFn a = grid_sphere_point(bd, rng);
        std::size_t t0 = rng.below(bd.size());
        double rho = rng.uniform(0.05, 0.95);
        a.set(t0, PolarValue{rho, rng.uniform(0.0, kTwoPi)});
        if (norm(a) != 1.0)
            a.set((t0 + 1) % bd.size(), PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
        double eps = rng.uniform(0.1, 0.9) * std::min(rho, 1.0 - rho);
        double r = rng.uniform(0.05, 0.99);

        WitnessCertificate opp = opposite_face_witness(bd, a, t0, eps, r);
        WitnessCertificate app = approach_face_witness(bd, a, t0, eps, r);
        if (!opp.pass || !app.pass) {
            ++failures;
            if (notes.size() < 8) notes.push_back("trial " + std::to_string(i));
        }
        max_anchor_residual = std::max(max_anchor_residual,
                                       std::max(opp.anchor_residual, app.anchor_residual));
        max_norm_excess = std::max(max_norm_excess,
                                   std::max(opp.witness_norm, app.witness_norm) - 1.0);
        max_distance_excess = std::max(max_distance_excess,
                                       std::max(opp.distance - opp.bound, app.distance - app.bound));

        // Limit run: the opposite bound 2 - r + r|alpha| decreases to
        // 1 + |alpha| as r -> 1.
        if (i % 97 == 0) {
            ++limit_checks;
            double prev = 4.0;
            bool ok = true;
            for (double rr : {0.9, 0.99, 0.999}) {
                WitnessCertificate c = opposite_face_witness(bd, a, t0, eps, rr);
                if (!c.pass || c.bound > prev + cfg.tol) ok = false;
                prev = c.bound;
            }
            if (std::abs(prev - (1.0 + rho)) > 1e-3 + cfg.tol) ok = false;
            if (!ok) ++limit_failures;
        }
    }

    // Pinned instance on the two point bundle: anchor 0.5, companion 1.
    Bundle b2 = Bundle::two_points(1.0);
    TripleFn wa(2);
    wa.set(0, PolarValue{0.5, 0.0});
    wa.set(1, PolarValue{1.0, 0.0});
    WitnessCertificate wopp = opposite_face_witness(b2, wa, 0, 0.2, 0.5);
    WitnessCertificate wapp = approach_face_witness(b2, wa, 0, 0.2, 0.5);
    bool worked_ok = wopp.pass && wapp.pass &&
                     std::abs(wopp.witness.value(0) - std::complex<double>(-1.0, 0.0)) <= cfg.tol &&
                     std::abs(wopp.witness.value(1) - std::complex<double>(0.5, 0.0)) <= cfg.tol &&
                     std::abs(wopp.distance - 1.5) <= cfg.tol &&
                     std::abs(wopp.bound - 1.75) <= cfg.tol &&
                     std::abs(wapp.witness.value(0) - std::complex<double>(1.0, 0.0)) <= cfg.tol &&
                     std::abs(wapp.witness.value(1) - std::complex<double>(0.5, 0.0)) <= cfg.tol;

    bool pass = failures == 0 && limit_failures == 0 && worked_ok;
    w.begin_object();
    w.field("trials", cfg.trials);
    w.field("failures", failures);
    w.field("max_anchor_residual", max_anchor_residual);
    w.field("max_norm_excess", max_norm_excess);
    w.field("max_distance_excess", max_distance_excess);
    w.field("limit_checks", limit_checks);
    w.field("limit_failures", limit_failures);
    w.key("notes");
    w.begin_array();
    for (const auto& s : notes) w.value(s);
    w.end_array();
    w.key("worked_instance");
    w.begin_object();
    w.key("opposite");
    w.begin_object();
    write_certificate_fields(w, wopp);
    w.key("witness");
    write_fn(w, wopp.witness);
    w.end_object();
    w.key("approach");
    w.begin_object();
    write_certificate_fields(w, wapp);
    w.key("witness");
    write_fn(w, wapp.witness);
    w.end_object();
    w.field("pass", worked_ok);
    w.end_object();
    w.field("pass", pass);
    w.end_object();
    return pass;
}

bool run_intersection_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w) {
    if (bd.size() < 2)
        throw std::invalid_argument("intersection suite requires at least two base points");
    std::size_t checked = 0, failures = 0;
    std::vector<std::string> notes;
    for (std::size_t t1 = 0; t1 < bd.size(); ++t1) {
        for (std::size_t t2 = 0; t2 < bd.size(); ++t2) {
            if (t1 == t2) continue;
            for (int j1 = 0; j1 < cfg.lambda_grid; ++j1) {
                for (int j2 = 0; j2 < cfg.lambda_grid; ++j2) {
                    std::complex<double> l1 = std::polar(1.0, kTwoPi * j1 / cfg.lambda_grid);
                    std::complex<double> l2 = std::polar(1.0, kTwoPi * j2 / cfg.lambda_grid);
                    TripleFn a = faces_intersect_witness(bd, t1, l1, t2, l2);
                    ++checked;
                    // Zero tolerance: polar coordinates match the labels exactly.
                    bool ok = norm(a) == 1.0 && polar_equal(a.at(t1), unit_from(l1)) &&
                              polar_equal(a.at(t2), unit_from(l2));
                    if (!ok) {
                        ++failures;
                        if (notes.size() < 8)
                            notes.push_back("t1 " + bd.name(t1) + " t2 " + bd.name(t2) + " j1 " +
                                            std::to_string(j1) + " j2 " + std::to_string(j2));
                    }
                }
            }
        }
    }
    bool pass = failures == 0;
    w.begin_object();
    w.field("pairs_checked", checked);
    w.field("grid", cfg.lambda_grid);
    w.field("failures", failures);
    w.key("notes");
    w.begin_array();
    for (const auto& s : notes) w.value(s);
    w.end_array();
    w.field("pass", pass);
    w.end_object();
    return pass;
}

bool run_characterization_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w) {
    if (bd.size() < 2)
        throw std::invalid_argument("characterization suite requires at least two base points");
    // Target values: five interior moduli by eight phases, the center, and
    // eight boundary values.
    std::vector<std::complex<double>> alphas;
    for (int k = 1; k <= 5; ++k)
        for (int j = 0; j < 8; ++j)
            alphas.push_back(std::polar(k / 6.0, kTwoPi * j / 8.0));
    alphas.push_back(std::complex<double>(0.0, 0.0));
    for (int j = 0; j < 8; ++j) alphas.push_back(std::polar(1.0, kTwoPi * j / 8.0));

    std::size_t total_counterexamples = 0;
    std::size_t total_tight = 0;
    double max_slack = 0.0;
    bool disk_all = true;
    bool pass = true;

    w.begin_object();
    w.field("alphas", alphas.size());
    w.field("trials_per_alpha", cfg.trials);
    w.key("rows");
    w.begin_array();
    for (std::size_t idx = 0; idx < alphas.size(); ++idx) {
        MSetSpec spec = make_mset_spec(idx % bd.size(), alphas[idx]);
        CharacterizationReport rep = verify_characterization(
            bd, spec, cfg.trials, task_seed(cfg.seed, 0x310, idx), 100000);
        total_counterexamples += rep.counterexamples.size();
        total_tight += rep.tight_boundary_hits;
        max_slack = std::max(max_slack, rep.witness_chain_max_slack);
        disk_all = disk_all && rep.disk.pass;
        pass = pass && rep.pass;
        w.begin_object();
        w.field("alpha", alphas[idx]);
        w.field("t0", spec.t0);
        w.field("counterexamples", rep.counterexamples.size());
        w.field("tight_boundary_hits", rep.tight_boundary_hits);
        w.field("anchored_trials", rep.anchored_trials);
        w.field("witness_chain_max_slack", rep.witness_chain_max_slack);
        w.field("disk_feasible", rep.disk.feasible);
        w.field("disk_violations", rep.disk.violations);
        w.field("pass", rep.pass);
        w.end_object();
    }
    w.end_array();
    w.field("counterexamples", total_counterexamples);
    w.field("tight_boundary_hits", total_tight);
    w.field("witness_chain_max_slack", max_slack);
    w.field("disk_pass", disk_all);
    w.field("pass", pass);
    w.end_object();
    return pass;
}

bool run_extension_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w) {
    constexpr double kDetectTol = 1e-6;
    const std::size_t positives = 6;
    const std::size_t negatives_per_delta = 3;
    const double deltas[] = {1e-3, 1e-1};

    bool pass = true;
    w.begin_object();
    w.key("positive");
    w.begin_array();
    for (std::size_t i = 0; i < positives; ++i) {
        SphereMap map;
        bool from_file = i == 0 && !cfg.iso_path.empty();
        if (from_file) {
            map = as_sphere_map(isometry_from_json_file(cfg.iso_path));
        } else {
            Rng rng(task_seed(cfg.seed, 0x31, i));
            map = as_sphere_map(random_isometry(bd.size(), rng));
        }
        ExtensionReport rep = mup_demonstration(bd, map, cfg.trials, task_seed(cfg.seed, 0x32, i),
                                                cfg.tol, cfg.lambda_grid);
        pass = pass && rep.verdict;
        w.begin_object();
        w.field("source", from_file ? "file" : "random");
        w.field("sphere_residual", rep.sphere_residual);
        w.field("max_additivity", rep.max_additivity);
        w.field("max_homogeneity", rep.max_homogeneity);
        w.field("max_isometry", rep.max_isometry);
        w.field("max_complex_homogeneity", rep.max_complex_homogeneity);
        w.field("labels_checked", rep.labels_checked);
        w.field("label_bijection", rep.label_bijection);
        w.field("label_dichotomy", rep.label_dichotomy);
        w.field("failure_stage", rep.failure_stage);
        w.field("verdict", rep.verdict);
        w.end_object();
    }
    w.end_array();

    std::size_t detected = 0, negative_total = 0;
    w.key("negative");
    w.begin_array();
    for (double delta : deltas) {
        for (std::size_t i = 0; i < negatives_per_delta; ++i) {
            Rng rng(task_seed(cfg.seed, 0x33, negative_total));
            SphereIsometry iso = random_isometry(bd.size(), rng);
            SphereMap map = perturb(iso, delta, task_seed(cfg.seed, 0x34, negative_total));
            ExtensionReport rep = mup_demonstration(bd, map, cfg.trials, task_seed(cfg.seed, 0x35, negative_total),
                                                    kDetectTol, cfg.lambda_grid);
            ++negative_total;
            bool caught = !rep.verdict;
            if (caught) ++detected;
            w.begin_object();
            w.field("delta", delta);
            w.field("sphere_residual", rep.sphere_residual);
            w.field("failure_stage", rep.failure_stage);
            w.field("detected", caught);
            w.end_object();
        }
    }
    w.end_array();
    pass = pass && detected == negative_total;

    if (cfg.inject_perturbation > 0.0) {
        // A perturbed map presented as a positive candidate: the verdict must
        // be counted toward the suite, which is how injection forces failure.
        Rng rng(task_seed(cfg.seed, 0x36, 0));
        SphereIsometry iso = random_isometry(bd.size(), rng);
        SphereMap map = perturb(iso, cfg.inject_perturbation, task_seed(cfg.seed, 0x36, 1));
        ExtensionReport rep = mup_demonstration(bd, map, cfg.trials, task_seed(cfg.seed, 0x36, 2),
                                                cfg.tol, cfg.lambda_grid);
        pass = pass && rep.verdict;
        w.key("injected");
        w.begin_object();
        w.field("delta", cfg.inject_perturbation);
        w.field("sphere_residual", rep.sphere_residual);
        w.field("failure_stage", rep.failure_stage);
        w.field("verdict", rep.verdict);
        w.end_object();
    }

    w.field("negatives", negative_total);
    w.field("detected", detected);
    w.field("pass", pass);
    w.end_object();
    return pass;
}

void emit_report(const SuiteConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + cfg.out_path);
    out << text;
}

namespace {

void write_config(const SuiteConfig& cfg, const Bundle& bd, JsonWriter& w) {
    w.begin_object();
    w.field("bundle", cfg.bundle_path.empty() ? "ring" : cfg.bundle_path.c_str());
    w.field("base_points", bd.size());
    w.field("fiber_samples", static_cast<long long>(bd.fiber_samples()));
    w.field("trials", cfg.trials);
    w.field("seed", static_cast<unsigned long long>(cfg.seed));
    w.field("tol", cfg.tol);
    w.field("lambda_grid", cfg.lambda_grid);
    w.field("inject_perturbation", cfg.inject_perturbation);
    w.end_object();
}

using SuiteRunner = bool (*)(const Bundle&, const SuiteConfig&, JsonWriter&);

struct SuiteEntry {
    const char* name;
    SuiteRunner run;
    bool needs_pair;  // requires >= 2 base points
};

constexpr SuiteEntry kSuites[] = {
    {"dichotomy", run_dichotomy_suite, true},
    {"retraction", run_retraction_suite, false},
    {"certificate", run_certificate_suite, true},
    {"intersection", run_intersection_suite, true},
    {"characterization", run_characterization_suite, true},
    {"extension", run_extension_suite, false},
};

} // namespace

int run_single_suite(const std::string& name, const SuiteConfig& cfg) {
    const SuiteEntry* entry = nullptr;
    for (const auto& e : kSuites)
        if (name == e.name) entry = &e;
    if (!entry) {
        std::fprintf(stderr, "unknown suite: %s\n", name.c_str());
        return 2;
    }
    if (cfg.format != "json" && !(cfg.format == "csv" && name == "dichotomy")) {
        std::fprintf(stderr, "format %s is not available for suite %s\n", cfg.format.c_str(),
                     name.c_str());
        return 2;
    }
    try {
        Bundle bd = make_suite_bundle(cfg);
        if (entry->needs_pair && bd.size() < 2) {
            std::fprintf(stderr, "suite %s requires at least two base points\n", name.c_str());
            return 2;
        }
        if (cfg.format == "csv") {
            HausdorffReport rep = check_hausdorff_condition(bd, cfg.lambda_grid);
            emit_report(cfg, dichotomy_rows_csv(rep));
            return rep.pass ? 0 : 1;
        }
        JsonWriter w;
        w.begin_object();
        w.key("config");
        write_config(cfg, bd, w);
        w.field("suite", entry->name);
        w.key("report");
        bool pass = entry->run(bd, cfg, w);
        w.field("pass", pass);
        w.end_object();
        emit_report(cfg, w.str() + "\n");
        return pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}

int run_all_suites(const SuiteConfig& cfg) {
    if (cfg.format != "json") {
        std::fprintf(stderr, "the combined suite emits json only\n");
        return 2;
    }
    Bundle bd = Bundle::two_points(1.0);
    try {
        bd = make_suite_bundle(cfg);
        if (bd.size() < 2)
            throw std::invalid_argument("the combined suite requires at least two base points");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    JsonWriter w;
    w.begin_object();
    w.key("config");
    write_config(cfg, bd, w);
    w.key("suites");
    w.begin_object();
    std::size_t passed = 0, failed = 0;
    for (const auto& e : kSuites) {
        w.key(e.name);
        bool ok = e.run(bd, cfg, w);
        (ok ? passed : failed) += 1;
    }
    w.end_object();
    w.key("summary");
    w.begin_object();
    w.key("order");
    w.begin_array();
    for (const auto& e : kSuites) w.value(e.name);
    w.end_array();
    w.field("passed", passed);
    w.field("failed", failed);
    w.field("overall", failed == 0 ? "PASS" : "FAIL");
    w.end_object();
    w.end_object();

    try {
        emit_report(cfg, w.str() + "\n");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    return failed == 0 ? 0 : 1;
}

} // namespace mulab
