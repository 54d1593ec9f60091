#pragma once

#include "pdclab/counting.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pdclab {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& name);

/// Angles are in degrees here; everything below the runner works in radians.
struct SweepSpec
{
    std::vector<double> theta1_list{0.0, 7.5, 15.0, 22.5};
    std::vector<double> theta2_list = default_theta2_list();
    DetectionConfig detection;
    TimingBudget timing;
    std::optional<std::vector<std::vector<double>>> hidden_splits;
    std::string output_path; // empty: caller decides (stdout for the CLI)
    OutputFormat format = OutputFormat::Csv;

    void validate() const;

    /// 0 to 45 degrees in 2.5 degree steps.
    static std::vector<double> default_theta2_list();
};

/// Parses a JSON object whose keys mirror SweepSpec in snake_case. Missing
/// keys keep their defaults; unknown keys throw ConfigError.
SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::string& path);

struct SweepRow
{
    double theta1_deg = 0.0;
    double theta2_deg = 0.0;
    double k_theory = 0.0;
    double c_theory = 0.0;
    double c12_theory = 0.0;
    std::uint64_t n_a1 = 0;
    std::uint64_t n_a2 = 0;
    std::uint64_t n_coinc = 0;
    double k_est = 0.0;
    double k_sigma = 0.0;
    double c_est = 0.0;
    double c_sigma = 0.0;
    std::uint32_t warn_flags = kWarnNone;
};

/// One row per (theta1, theta2) pair, theta1 outermost. Row i simulates with
/// seed detection.seed + i. Hidden-mode splits only affect the simulated columns.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "theta1_deg,theta2_deg,k_theory,c_theory,c12_theory,n_a1,n_a2,n_coinc,k_est,k_sigma,c_est,c_sigma,warn_flags";

std::string render_rows(const std::vector<SweepRow>& rows, OutputFormat format);

/// Writes the rendered rows to `path`; IoError names the path on failure.
void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

struct IdentityReport
{
    int max_d = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    // Largest pairwise gap among two-copy, four-photon and 2(1 + sum lambda^2).
    double eq4_max_dev = 0.0;
    // Largest |projector route - purity route| concurrence difference.
    double projector_max_dev = 0.0;
    // Largest relative gap between closed-form and state-pipeline coincidence probabilities.
    double coincidence_max_rel_dev = 0.0;

    bool passed() const;
    std::string to_json() const;
};

/// Random spectra with d drawn from {2..max_d} (max_d <= 8).
IdentityReport run_identity_suite(int max_d, std::uint64_t trials, std::uint64_t seed);

} // namespace pdclab
