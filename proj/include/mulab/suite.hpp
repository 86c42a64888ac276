#pragma once

// Deterministic verification suites over one bundle, plus the orchestrator
// that runs all of them in dependency order and emits a combined report.
// Identical configs produce byte-identical report files: fixed key order,
// fixed trial seeding, 17-digit float formatting, no timestamps.

#include <cstdint>
#include <string>

#include "mulab/bundle.hpp"
#include "mulab/report.hpp"

namespace mulab {

struct SuiteConfig {
    std::string bundle_path;        // empty: ring of base_size points
    std::size_t base_size = 3;
    int fiber_samples = 64;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-12;
    std::string out_path;           // empty: stdout
    std::string format = "json";    // json | csv (csv: dichotomy table only)
    int lambda_grid = 16;
    double inject_perturbation = 0.0;  // > 0: present a perturbed map as a positive case
    std::string iso_path;           // optional isometry description file
};

// Throws std::invalid_argument on unusable configuration.
Bundle make_suite_bundle(const SuiteConfig& cfg);

// Each runner writes one JSON object (the suite report) and returns its
// verdict. Writers are positioned inside an enclosing document by the caller.
bool run_dichotomy_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w);
bool run_retraction_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w);
bool run_certificate_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w);
bool run_intersection_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w);
bool run_characterization_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w);
bool run_extension_suite(const Bundle& bd, const SuiteConfig& cfg, JsonWriter& w);

// The dichotomy table as CSV (t1, lambda1, t2, lambda2, closed, sampled).
std::string dichotomy_table_csv(const Bundle& bd, const SuiteConfig& cfg);

// Writes the report text to cfg.out_path or stdout.
void emit_report(const SuiteConfig& cfg, const std::string& text);

// Runs one named suite (dichotomy, retraction, certificate, intersection,
// characterization, extension) and emits its report.
// Returns 0 on pass, 1 on violation. Unknown names and config errors: 2.
int run_single_suite(const std::string& name, const SuiteConfig& cfg);

// Runs every suite in fixed order and emits the combined document
// {config, suites, summary}. Returns 0 iff all suites pass, else 1;
// 2 on configuration errors.
int run_all_suites(const SuiteConfig& cfg);

} // namespace mulab
