#pragma once

#include <string>
#include <vector>

#include "padic/frame.hpp"
#include "padic/json_io.hpp"
#include "padic/operators.hpp"

namespace padic {

struct ToleranceSet {
    double identity = 1e-9; // composed identities
    double single = 1e-12;  // single operations
};

// Fully determines a run: two runs with an identical config produce
// byte-identical canonical reports.
struct ExperimentConfig {
    std::string name = "experiment";
    std::uint32_t p = 2;
    int d = 1;
    int precision = PAdic::kDefaultPrecision;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                                        11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    std::vector<double> alphas = {0.5, 1.0, 2.0};
    int gamma_max = 40;
    int window_margin = 1; // identity probes widen supp(f) by this many levels
    int span_size = 10;    // wavelets per random test function
    int field_count = 5;   // seeded vector fields per morphism (covariance)
    int function_count = 5;
    ToleranceSet tol;
    bool negative_control = false;

    static ExperimentConfig from_json(const Json& j);
    Json to_json() const;
};

struct CaseResult {
    std::string case_id;
    std::uint32_t p = 2;
    int d = 1;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    std::string inputs;
    std::string expected;
    std::string observed;
    double residual = 0.0;
    bool pass = false;
    std::string provenance; // paper-formula | oracle | triviality | property
    double wall_ms = 0.0;
};

struct Report {
    std::string suite;
    Json config_echo;
    std::vector<CaseResult> cases;

    int total() const { return static_cast<int>(cases.size()); }
    int passed() const;
    bool all_pass() const { return passed() == total(); }

    // canonical serialization: fixed key order, floats at 17 significant
    // digits, no timing data (timings go to the sidecar CSV)
    std::string to_json_string() const;
    std::string to_csv() const;     // case_id,p,d,seed,alpha,residual,pass
    std::string timings_csv() const;
};

Report run_frame_bound(const ExperimentConfig& cfg);
Report run_identity_suite(const ExperimentConfig& cfg);
Report run_structure_suite(const ExperimentConfig& cfg);
Report run_oracle_suite(const ExperimentConfig& cfg);

// per-gamma frame partial sums, CSV "gamma,partial"
std::string frame_gamma_csv(const ExperimentConfig& cfg);

struct ApplyRequest {
    std::string op; // vladimirov | kernel | vf | pushforward
    std::string function_file;
    std::string kernel_file;   // kernel / vf
    std::string morphism_file; // pushforward
    std::string field_file;    // vf
    std::string window_file;   // optional; default: support x resolution
    double alpha = 1.0;        // vladimirov
    std::string out_dir = ".";
};

// Applies the operator, writes <out>/apply_output.json and
// <out>/apply_output.csv, and returns a one-case report.
Report run_apply(const ApplyRequest& req);

// deterministic 17-significant-digit float rendering used by all writers
std::string format_double(double v);

// Shared deterministic builders (also used by the acceptance suite).
LCFunction random_wavelet_span(std::uint32_t p, int d, int count, std::uint64_t seed,
                               int gamma_lo = -1, int gamma_hi = 2);
Morphism seeded_parabolic_morphism(std::uint32_t p, int d, std::uint64_t seed);
Morphism seeded_affine_isometry(std::uint32_t p, int d, std::uint64_t seed);
// table+tail kernel covering the chains of phi-images of the window cells
KernelSpec chain_table_kernel(std::uint32_t p, double alpha, const Morphism& phi,
                              const LCFunction& f, const Window& w, std::uint64_t seed);

} // namespace padic
