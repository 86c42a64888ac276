// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit code equals
// the number of failed criteria. Tolerances are pinned here on purpose;
// loosening them is a spec change, not a fix.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mulab/bundle.hpp"
#include "mulab/facegeom.hpp"
#include "mulab/mset.hpp"
#include "mulab/rng.hpp"
#include "mulab/suite.hpp"
#include "mulab/tingley.hpp"
#include "mulab/witness.hpp"

using namespace mulab;

namespace {

constexpr double kTolExact = 1e-12;
constexpr double kDetectTol = 1e-6;

int g_failures = 0;

void line(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str());
    if (!ok) ++g_failures;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

TripleFn grid_sphere_point(const Bundle& bd, Rng& rng) {
    TripleFn a(bd.size());
    for (std::size_t b = 0; b < bd.size(); ++b) {
        double mod = static_cast<double>(rng.below(64)) / 63.0;
        a.set(b, PolarValue{mod, bd.fiber_angle(static_cast<int>(rng.below(
                                     static_cast<std::size_t>(bd.fiber_samples()))))});
    }
    a.set(rng.below(bd.size()), PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
    return a;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 1. Hausdorff dichotomy: closed form exact on the label grid, sampled
//    oracle within 2 * (2 pi / 64), bundle sizes 2, 3, 5.
void criterion1() {
    const double bound = 2.0 * (kTwoPi / 64.0);
    bool ok = true;
    double worst = 0.0;
    std::size_t pairs = 0;
    for (std::size_t n : {2u, 3u, 5u}) {
        Bundle bd = Bundle::ring(n);
        HausdorffReport rep = check_hausdorff_condition(bd, 16);
        ok = ok && rep.pass && rep.failures.empty() && rep.grid_bound == bound &&
             rep.max_deviation <= bound;
        worst = std::max(worst, rep.max_deviation);
        pairs += rep.pairs_checked;
        for (std::size_t t1 = 0; t1 < n && ok; ++t1)
            for (std::size_t t2 = 0; t2 < n; ++t2)
                for (int j1 = 0; j1 < 16; ++j1)
                    for (int j2 = 0; j2 < 16; ++j2) {
                        Face f1 = make_face(t1, std::polar(1.0, kTwoPi * j1 / 16.0));
                        Face f2 = make_face(t2, std::polar(1.0, kTwoPi * j2 / 16.0));
                        double closed = hausdorff(f1, f2);
                        double want = t1 == t2
                                          ? std::abs(to_complex(f1.lambda) - to_complex(f2.lambda))
                                          : 2.0;
                        if (closed != want) ok = false;
                        if (j1 == j2 && t1 == t2 && closed != 0.0) ok = false;
                    }
    }
    line(1, "hausdorff dichotomy, closed exact and sampled in bound", ok,
         std::to_string(pairs) + " grid pairs, max sampled deviation " + num(worst) +
             " <= " + num(bound));
}

// 2. Intersection witnesses with zero tolerance: norm exactly 1, both label
//    coordinates polar-exact, sizes 2, 3, 5 over the full 16x16 grid.
void criterion2() {
    bool ok = true;
    std::size_t count = 0;
    for (std::size_t n : {2u, 3u, 5u}) {
        Bundle bd = Bundle::ring(n);
        for (std::size_t t1 = 0; t1 < n; ++t1)
            for (std::size_t t2 = 0; t2 < n; ++t2) {
                if (t1 == t2) continue;
                for (int j1 = 0; j1 < 16; ++j1)
                    for (int j2 = 0; j2 < 16; ++j2) {
                        std::complex<double> l1 = std::polar(1.0, kTwoPi * j1 / 16.0);
                        std::complex<double> l2 = std::polar(1.0, kTwoPi * j2 / 16.0);
                        TripleFn w = faces_intersect_witness(bd, t1, l1, t2, l2);
                        ++count;
                        if (w.norm() != 1.0 || !polar_equal(w.at(t1), unit_from(l1)) ||
                            !polar_equal(w.at(t2), unit_from(l2)))
                            ok = false;
                    }
            }
    }
    line(2, "face intersection witnesses, zero tolerance", ok,
         std::to_string(count) + " witnesses, norm and labels exact");
}

// 3. Unit retraction: 1000 random sphere points, ‖u‖ = 1 exactly and
//    u(s) = a(s)/|a(s)| bit for bit wherever |a(s)| >= eps.
void criterion3() {
    Bundle bd = Bundle::ring(3);
    std::size_t failures = 0, exact_checks = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        Rng rng(task_seed(42, 0x38, i));
        TripleFn a = grid_sphere_point(bd, rng);
        double eps = rng.uniform(0.001, 0.999);
        TripleFn u = unit_retraction(a, eps);
        bool good = norm(u) == 1.0;
        for (std::size_t b = 0; b < bd.size(); ++b) {
            if (a.modulus(b) >= eps) {
                ++exact_checks;
                if (u.modulus(b) != 1.0 || u.argument(b) != a.argument(b)) good = false;
            }
        }
        if (!good) ++failures;
    }
    line(3, "phase retraction exactness over 1000 trials", failures == 0,
         std::to_string(exact_checks) + " exact coordinate checks, " +
             std::to_string(failures) + " failures");
}

// 4. Opposite-face certificates: 1000 random anchored points, all four
//    clauses at 1e-12, plus the pinned worked instance.
void criterion4() {
    Bundle bd = Bundle::ring(3);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        Rng rng(task_seed(42, 0x39, i));
        TripleFn a = grid_sphere_point(bd, rng);
        std::size_t t0 = rng.below(bd.size());
        double rho = rng.uniform(0.05, 0.95);
        a.set(t0, PolarValue{rho, rng.uniform(0.0, kTwoPi)});
        if (norm(a) != 1.0)
            a.set((t0 + 1) % bd.size(), PolarValue{1.0, rng.uniform(0.0, kTwoPi)});
        double eps = rng.uniform(0.1, 0.9) * std::min(rho, 1.0 - rho);
        double r = rng.uniform(0.05, 0.99);
        WitnessCertificate c = opposite_face_witness(bd, a, t0, eps, r);
        bool good = c.approx_error <= eps / 2.0 + kTolExact && c.pinned_matches_anchor &&
                    c.anchor_residual <= kTolExact && c.witness_norm <= 1.0 + kTolExact &&
                    c.distance <= c.bound + kTolExact && c.pass;
        if (!good) ++failures;
    }

    Bundle b2 = Bundle::two_points(1.0);
    TripleFn wa(2);
    wa.set(0, PolarValue{0.5, 0.0});
    wa.set(1, PolarValue{1.0, 0.0});
    WitnessCertificate c = opposite_face_witness(b2, wa, 0, 0.2, 0.5);
    bool worked = c.pass &&
                  std::abs(c.witness.value(0) - std::complex<double>(-1.0, 0.0)) <= kTolExact &&
                  std::abs(c.witness.value(1) - std::complex<double>(0.5, 0.0)) <= kTolExact &&
                  std::abs(c.distance - 1.5) <= kTolExact && c.distance <= 1.75 + kTolExact &&
                  std::abs(c.bound - 1.75) <= kTolExact;

    line(4, "opposite-face certificates over 1000 trials", failures == 0 && worked,
         std::to_string(failures) + " trial failures, worked instance distance " +
             num(c.distance) + " <= " + num(c.bound));
}

// 5. Point-evaluation characterization: sizes 2 and 3, 49 target values
//    (five interior moduli by eight phases, zero, eight unimodular),
//    2000 sphere points each, disk oracle with 1e5 points.
void criterion5() {
    std::vector<std::complex<double>> alphas;
    for (int k = 1; k <= 5; ++k)
        for (int j = 0; j < 8; ++j) alphas.push_back(std::polar(k / 6.0, kTwoPi * j / 8.0));
    alphas.push_back({0.0, 0.0});
    for (int j = 0; j < 8; ++j) alphas.push_back(std::polar(1.0, kTwoPi * j / 8.0));

    bool ok = alphas.size() == 49;
    std::size_t reports = 0;
    for (std::size_t n : {2u, 3u}) {
        Bundle bd = Bundle::ring(n);
        for (std::size_t idx = 0; idx < alphas.size(); ++idx) {
            MSetSpec spec = make_mset_spec(idx % n, alphas[idx]);
            CharacterizationReport rep =
                verify_characterization(bd, spec, 2000, task_seed(5, n, idx), 100000);
            ++reports;
            if (!rep.pass || !rep.counterexamples.empty() || !rep.disk.pass ||
                rep.tight_boundary_hits != rep.anchored_trials || rep.anchored_trials < 500)
                ok = false;
        }
    }
    line(5, "two-face characterization over the target grid", ok,
         std::to_string(reports) + " reports, tight boundaries and unique disk solutions");
}

// 6. Convergence schedule (eps, r) = (0.1 * 2^-k, 1 - 2^-k), k = 1..10:
//    approach bound decreases to 1 - |alpha|, opposite to 1 + |alpha|,
//    both monotone within 1e-12.
void criterion6() {
    Bundle bd = Bundle::two_points(1.0);
    const double rho = 0.5;
    TripleFn a(2);
    a.set(0, PolarValue{rho, 0.0});
    a.set(1, PolarValue{1.0, 0.0});

    bool ok = true;
    double prev_opp = 4.0, prev_app = 4.0, last_opp = 4.0, last_app = 4.0;
    for (int k = 1; k <= 10; ++k) {
        double shrink = std::ldexp(1.0, -k);
        WitnessCertificate opp = opposite_face_witness(bd, a, 0, 0.1 * shrink, 1.0 - shrink);
        WitnessCertificate app = approach_face_witness(bd, a, 0, 0.1 * shrink, 1.0 - shrink);
        ok = ok && opp.pass && app.pass;
        ok = ok && std::abs(opp.bound - ((1.0 + rho) + shrink * (1.0 - rho))) <= kTolExact;
        ok = ok && std::abs(app.bound - ((1.0 - rho) + shrink * (1.1 + rho))) <= kTolExact;
        ok = ok && opp.bound < prev_opp + kTolExact && app.bound < prev_app + kTolExact;
        prev_opp = opp.bound;
        prev_app = app.bound;
        last_opp = opp.bound;
        last_app = app.bound;
    }
    ok = ok && last_opp - (1.0 + rho) <= 1e-3 && last_app - (1.0 - rho) <= 2e-3;
    line(6, "witness bounds converge to the face distances", ok,
         "opposite -> " + num(last_opp) + " vs 1.5, approach -> " + num(last_app) + " vs 0.5");
}

// 7. Extension demonstrations: 50 generators per size in {2,3,5} certified at
//    1e-12 with n*16 transported labels; perturbed negatives at deltas 1e-3
//    and 1e-1 all rejected at 1e-6.
void criterion7() {
    bool ok = true;
    std::size_t positives = 0;
    for (std::size_t n : {2u, 3u, 5u}) {
        Bundle bd = Bundle::ring(n);
        for (std::size_t i = 0; i < 50; ++i) {
            Rng mk(task_seed(7, n, i));
            SphereIsometry iso = random_isometry(n, mk);
            ExtensionReport rep =
                mup_demonstration(bd, as_sphere_map(iso), 200, task_seed(8, n, i), kTolExact, 16);
            ++positives;
            if (!rep.verdict || rep.labels_checked != n * 16) ok = false;
        }
    }

    Bundle bd = Bundle::ring(3);
    std::size_t caught = 0, wanted = 0;
    for (double delta : {1e-3, 1e-1}) {
        for (std::size_t i = 0; i < 50; ++i) {
            Rng mk(task_seed(9, std::size_t(delta * 1000), i));
            SphereIsometry iso = random_isometry(3, mk);
            SphereMap map = perturb(iso, delta, task_seed(10, std::size_t(delta * 1000), i));
            ExtensionReport rep = mup_demonstration(bd, map, 100, task_seed(11, 0, i), kDetectTol, 16);
            ++wanted;
            if (!rep.verdict) ++caught;
        }
    }
    ok = ok && caught == wanted;
    line(7, "homogeneous extension certification and negative controls", ok,
         std::to_string(positives) + " generators certified, " + std::to_string(caught) + "/" +
             std::to_string(wanted) + " perturbations rejected");
}

// 8. Determinism: two combined-suite runs with one config produce
//    byte-identical report files.
void criterion8() {
    SuiteConfig cfg;
    cfg.base_size = 2;
    cfg.trials = 200;
    cfg.seed = 7;
    cfg.out_path = "/tmp/mulab_acceptance_a.json";
    int rc1 = run_all_suites(cfg);
    cfg.out_path = "/tmp/mulab_acceptance_b.json";
    int rc2 = run_all_suites(cfg);

    std::string ra = slurp("/tmp/mulab_acceptance_a.json");
    std::string rb = slurp("/tmp/mulab_acceptance_b.json");
    bool ok = rc1 == 0 && rc2 == 0 && !ra.empty() && ra == rb &&
              ra.find("\"overall\":\"PASS\"") != std::string::npos;
    line(8, "combined suite reruns are byte identical", ok,
         std::to_string(ra.size()) + " bytes, exit codes " + std::to_string(rc1) + "/" +
             std::to_string(rc2));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0)
        std::printf("all 8 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
