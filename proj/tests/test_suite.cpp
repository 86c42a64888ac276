#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mulab/suite.hpp"

using namespace mulab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Small but representative: every suite runs in well under a second.
SuiteConfig small_config() {
    SuiteConfig cfg;
    cfg.base_size = 2;
    cfg.trials = 120;
    cfg.seed = 7;
    cfg.lambda_grid = 8;
    return cfg;
}

} // namespace

TEST_SUITE("suite") {

TEST_CASE("combined run passes and is byte identical across reruns") {
    SuiteConfig a = small_config();
    a.out_path = "/tmp/mulab_suite_a.json";
    SuiteConfig b = small_config();
    b.out_path = "/tmp/mulab_suite_b.json";

    CHECK(run_all_suites(a) == 0);
    CHECK(run_all_suites(b) == 0);

    std::string ra = slurp(a.out_path);
    std::string rb = slurp(b.out_path);
    REQUIRE(!ra.empty());
    CHECK(ra == rb);
    CHECK(ra.find("\"overall\":\"PASS\"") != std::string::npos);
    CHECK(ra.find("\"dichotomy\"") != std::string::npos);
    CHECK(ra.find("\"extension\"") != std::string::npos);
    CHECK(ra.find("\"failed\":0") != std::string::npos);
}

TEST_CASE("dichotomy table is available as csv") {
    SuiteConfig cfg = small_config();
    cfg.format = "csv";
    cfg.out_path = "/tmp/mulab_dichotomy.csv";
    CHECK(run_single_suite("dichotomy", cfg) == 0);

    std::string text = slurp(cfg.out_path);
    REQUIRE(!text.empty());
    CHECK(text.rfind("t1,lambda1_re,lambda1_im,t2,lambda2_re,lambda2_im,closed,sampled\n", 0) == 0);
    // header + one row per ordered (face, face) grid pair
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2 * 8 * 8);
}

TEST_CASE("single suite reports carry their verdict") {
    SuiteConfig cfg = small_config();
    cfg.out_path = "/tmp/mulab_retraction.json";
    CHECK(run_single_suite("retraction", cfg) == 0);
    std::string text = slurp(cfg.out_path);
    CHECK(text.find("\"suite\":\"retraction\"") != std::string::npos);
    CHECK(text.find("\"failures\":0") != std::string::npos);
    CHECK(text.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("unknown suites and unsupported formats are config errors") {
    SuiteConfig cfg = small_config();
    CHECK(run_single_suite("nope", cfg) == 2);

    SuiteConfig csv = small_config();
    csv.format = "csv";
    csv.out_path = "/tmp/mulab_bad_format.csv";
    CHECK(run_single_suite("retraction", csv) == 2);
    CHECK(run_all_suites(csv) == 2);
}

TEST_CASE("unusable configurations are reported as errors") {
    SuiteConfig missing = small_config();
    missing.bundle_path = "/nonexistent/bundle.json";
    CHECK(run_single_suite("dichotomy", missing) == 2);
    CHECK(run_all_suites(missing) == 2);

    SuiteConfig unwritable = small_config();
    unwritable.out_path = "/nonexistent_dir/report.json";
    CHECK(run_single_suite("retraction", unwritable) == 2);

    SuiteConfig solo = small_config();
    solo.base_size = 1;
    CHECK(run_single_suite("dichotomy", solo) == 2);
    CHECK(run_all_suites(solo) == 2);
    solo.out_path = "/tmp/mulab_solo_retraction.json";
    CHECK(run_single_suite("retraction", solo) == 0);
}

TEST_CASE("an injected perturbation defeats the extension suite") {
    SuiteConfig cfg = small_config();
    cfg.inject_perturbation = 0.1;
    cfg.out_path = "/tmp/mulab_injected.json";
    CHECK(run_single_suite("extension", cfg) == 1);
    std::string text = slurp(cfg.out_path);
    CHECK(text.find("\"injected\"") != std::string::npos);
    CHECK(text.find("\"verdict\":false") != std::string::npos);
    CHECK(text.find("\"pass\":false") != std::string::npos);
}

} // TEST_SUITE
