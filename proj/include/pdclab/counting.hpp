#pragma once

#include "pdclab/fock.hpp"
#include "pdclab/source.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pdclab {

/// Bit flags attached to estimates and sweep rows.
enum WarnFlag : std::uint32_t {
    kWarnNone = 0,
    kWarnKAboveOne = 1u << 0,      // C clamped to 0
    kWarnKBelowZero = 1u << 1,     // C clamped to sqrt(2)
    kWarnInfiniteSigma = 1u << 2,  // K-hat at the sqrt(2 - 2K) singularity
    kWarnHighProbability = 1u << 3, // per-pulse probability above 0.1
    kWarnUndefinedEstimate = 1u << 4, // a count was zero
};

/// "k_above_one|infinite_sigma", or "" when no flag is set.
std::string warn_flags_to_string(std::uint32_t flags);

struct DetectionConfig
{
    double eta_a1 = 0.2;
    double eta_a2 = 0.2;
    double rep_rate_hz = 76e6;
    double pump_amplitude = kDefaultPumpAmplitude;
    double duration_s = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Laser and detection time scales, in seconds. Defaults are the
/// experiment's: 1.68 ps pulse delay, 150 fs pulses, 676 fs correlation time,
/// 3 ns coincidence window.
struct TimingBudget
{
    double delta_t_pulse_sep = 1.68e-12;
    double tau_pump = 150e-15;
    double tau_corr = 676e-15;
    double coincidence_window = 3e-9;

    void validate() const;
};

struct CountRecord
{
    std::uint64_t n_a1 = 0;
    std::uint64_t n_a2 = 0;
    std::uint64_t n_coinc = 0;
    double duration_s = 1.0;
    double rep_rate_hz = 76e6;
};

struct ConcurrenceValue
{
    double c = 0.0;
    std::uint32_t flags = kWarnNone;
};

struct EstimateResult
{
    double k_hat = 0.0;
    double k_sigma = 0.0;
    double c_hat = 0.0;
    double c_sigma = 0.0;
    std::uint32_t flags = kWarnNone;
};

/// P = eta_port |eta| / 2 per pulse. `which` must be A1 or A2.
double single_count_probability(const DetectionConfig& cfg, Port which);

/// P_A1A2 = P_A1 P_A2 (1 + sum lambda^2).
double coincidence_probability(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg);

/// Same probability through the state pipeline: (1/4) eta_A1 eta_A2 |eta|^2
/// times the norm of the coincidence part of the split four-photon term.
double coincidence_probability_from_state(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg);

/// K = f T n12 / (n1 n2) - 1. Throws EstimateError on zero singles.
double k_from_rates(const CountRecord& record);

/// sqrt(2 - 2K), clamped into [0, sqrt 2] with a warning flag outside K in [0, 1].
ConcurrenceValue concurrence_from_k(double k);

/// Independent Poisson draws for A1 singles, A2 singles and coincidences, in
/// that order, from a per-call generator seeded with cfg.seed.
CountRecord simulate_counts(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg);

/// kWarnHighProbability when any per-pulse probability exceeds 0.1, where the
/// Poisson treatment of counts stops being a good model.
std::uint32_t simulation_flags(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg);

/// Point estimate plus first-order Poisson error propagation.
EstimateResult estimate_with_uncertainty(const CountRecord& record);

/// Integration time that makes the expected coincidence count equal `target`.
double duration_for_expected_coincidences(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg,
                                          double target);

/// Splits each Schmidt mode over unresolved extra modes: lambda_i -> lambda_i w_ik.
/// Each split must be a probability vector; one split per mode.
SchmidtSpectrum refine_with_hidden_modes(const SchmidtSpectrum& spectrum,
                                         const std::vector<std::vector<double>>& splits);

struct TimingCondition
{
    std::string name;
    double ratio = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct TimingReport
{
    std::vector<TimingCondition> conditions;
    bool all_passed() const;
};

inline constexpr double kDefaultSeparationFactor = 100.0;

/// Pulse separation must exceed both pulse width and correlation time, and
/// the coincidence window must exceed both by `separation_factor`.
TimingReport check_timing(const TimingBudget& budget, double separation_factor = kDefaultSeparationFactor);

} // namespace pdclab
