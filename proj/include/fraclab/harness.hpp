#pragma once

#include "fraclab/estimators.hpp"
#include "fraclab/fields.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fraclab {

enum class SetKind { interval, cantor, two_phase, point };

struct SetSpec {
    SetKind kind = SetKind::interval;
    // cantor / two_phase parameters
    int m = 2;
    double r = 1.0 / 3.0;
    int depth = 12;
    int m_b = 2;
    double r_b = 0.5;
    int growth = 3;
    double at = 0.0;  // point mass location

    // analytic dimensions of the construction
    double dim_hausdorff() const;
    double dim_packing() const;
    bool hausdorff_equals_packing() const { return kind != SetKind::two_phase; }
};

struct EstimatorParams {
    std::size_t n_probe = 64;
    double quantile = 0.5;          // reported quantile of per-probe exponents
    bool log_correction = true;
    std::vector<double> radii;      // empty = auto
    std::vector<double> scales;     // empty = auto dyadic window
};

struct ProbeConfig {
    std::string condition = "c1";  // c1 | c2 | fourier
    double exponent = 0.5;         // H1 or H2
    std::size_t reps = 2000;
    std::size_t pair_count = 5;
    std::size_t mc_reps = 1500;
};

struct ExperimentConfig {
    std::string case_id;
    std::string theorem;         // prediction rule tag (see predict)
    double tolerance = 0.15;
    std::vector<std::string> checks = {"box"};  // which estimates must pass
    FieldSpec field;
    SetSpec set;
    EstimatorParams est;
    ProbeConfig probe;
    std::size_t replication = 4;
    std::uint64_t master_seed = 20260801;
    std::string out_dir;
};

// strict flat key-value config with [sections]; unknown keys are errors
ExperimentConfig parse_config(const std::string& text);
std::string config_to_text(const ExperimentConfig& cfg);

struct Prediction {
    double value = 0.0;
    std::string formula;  // self-describing provenance
};

struct PredictInput {
    std::string theorem;   // hausdorff-image | packing-image | corollary-ne-hd |
                           // hausdorff-image-measure | packing-image-measure |
                           // stable-image | rosenblatt-image
    double H = 0.5;        // self-similarity index (2*kappa for rosenblatt)
    int d = 1;
    int N = 1;
    double dim_h = 1.0;    // dim_H of E (or of mu)
    double dim_p = 1.0;    // dim_P of E (or of mu)
    bool hausdorff_equals_packing = true;
    std::optional<double> profile_hd;  // measured Dim_{Hd} when the closed form is unavailable
};

Prediction predict(const PredictInput& in);

struct CaseOutcome {
    std::string case_id;
    std::string theorem;
    std::string formula;
    double predicted = 0.0;
    double estimate = 0.0;        // the headline estimate (first failing or first check)
    double tolerance = 0.0;
    bool pass = false;
    bool incomplete = false;      // budget exceeded
    double runtime_seconds = 0.0;
    json report;
};

// full pipeline: replicate, image, estimate, compare, persist
CaseOutcome run_experiment(const ExperimentConfig& cfg);

// registered verification cases (the built-in suite)
std::vector<std::string> registry_case_ids();
ExperimentConfig registry_case(const std::string& id);
CaseOutcome verify_theorem(const std::string& case_id, double budget_seconds,
                           std::uint64_t master_seed, const std::string& out_dir);

// two-column plot files extracted from a report
void emit_plot_data(const json& report, const std::string& out_dir);

// suite checks without a single closed-form target
struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double runtime_seconds = 0.0;
    json report;
};

SuiteResult profile_identity_suite(std::uint64_t master_seed, const std::string& out_dir);
SuiteResult tail_exponent_suite(std::uint64_t master_seed, const std::string& out_dir);
SuiteResult fourier_equivalence_suite(std::uint64_t master_seed, const std::string& out_dir);
SuiteResult property_suite(std::uint64_t master_seed, const std::string& out_dir);

}  // namespace fraclab
