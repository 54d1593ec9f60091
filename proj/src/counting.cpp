#include "pdclab/counting.hpp"

#include "pdclab/error.hpp"
#include "pdclab/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace pdclab {

namespace {

constexpr double kProbabilityAdvisory = 0.1;
constexpr double kSingularityGuard = 1e-9;
constexpr double kSplitTolerance = 1e-12;

bool finite_positive(double x)
{
    return std::isfinite(x) && x > 0.0;
}

std::uint64_t draw_poisson(std::mt19937_64& rng, double mean)
{
    if (mean <= 0.0)
        return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

} // namespace

std::string warn_flags_to_string(std::uint32_t flags)
{
    static constexpr std::pair<WarnFlag, const char*> names[] = {
        {kWarnKAboveOne, "k_above_one"},
        {kWarnKBelowZero, "k_below_zero"},
        {kWarnInfiniteSigma, "infinite_sigma"},
        {kWarnHighProbability, "high_probability"},
        {kWarnUndefinedEstimate, "undefined_estimate"},
    };
    std::string out;
    for (const auto& [bit, name] : names) {
        if (!(flags & bit))
            continue;
        if (!out.empty())
            out += '|';
        out += name;
    }
    return out;
}

void DetectionConfig::validate() const
{
    if (!finite_positive(eta_a1) || eta_a1 > 1.0 || !finite_positive(eta_a2) || eta_a2 > 1.0)
        throw ConfigError("detection efficiencies must lie in (0, 1]");
    if (!finite_positive(rep_rate_hz))
        throw ConfigError("repetition rate must be positive");
    if (!finite_positive(pump_amplitude) || pump_amplitude >= 1.0)
        throw ConfigError("pump amplitude must lie in (0, 1)");
    if (!finite_positive(duration_s))
        throw ConfigError("duration must be positive");
}

void TimingBudget::validate() const
{
    if (!finite_positive(delta_t_pulse_sep) || !finite_positive(tau_pump) || !finite_positive(tau_corr)
        || !finite_positive(coincidence_window))
        throw ConfigError("timing budget entries must be positive");
}

double single_count_probability(const DetectionConfig& cfg, Port which)
{
    cfg.validate();
    switch (which) {
    case Port::A1: return 0.5 * cfg.eta_a1 * cfg.pump_amplitude;
    case Port::A2: return 0.5 * cfg.eta_a2 * cfg.pump_amplitude;
    case Port::Source: break;
    }
    throw ConfigError("single counts are defined for ports A1 and A2 only");
}

double coincidence_probability(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg)
{
    return single_count_probability(cfg, Port::A1) * single_count_probability(cfg, Port::A2)
           * (spectrum.sum_squares() + 1.0);
}

double coincidence_probability_from_state(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg)
{
    cfg.validate();
    const FockVector coinc = coincidence_component(split_side_a(build_psi4(spectrum)));
    return 0.25 * cfg.eta_a1 * cfg.eta_a2 * cfg.pump_amplitude * cfg.pump_amplitude * coinc.norm2();
}

double k_from_rates(const CountRecord& record)
{
    if (record.n_a1 == 0 || record.n_a2 == 0)
        throw EstimateError("K is undefined with zero singles counts");
    if (!finite_positive(record.duration_s) || !finite_positive(record.rep_rate_hz))
        throw ConfigError("count record needs positive duration and repetition rate");
    const double pulses = record.rep_rate_hz * record.duration_s;
    return pulses * static_cast<double>(record.n_coinc)
               / (static_cast<double>(record.n_a1) * static_cast<double>(record.n_a2))
           - 1.0;
}

ConcurrenceValue concurrence_from_k(double k)
{
    if (k > 1.0)
        return {0.0, kWarnKAboveOne};
    if (k < 0.0)
        return {std::sqrt(2.0), kWarnKBelowZero};
    return {std::sqrt(2.0 - 2.0 * k), kWarnNone};
}

CountRecord simulate_counts(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg)
{
    cfg.validate();
    const double pulses = cfg.rep_rate_hz * cfg.duration_s;
    std::mt19937_64 rng(cfg.seed);
    CountRecord rec;
    rec.duration_s = cfg.duration_s;
    rec.rep_rate_hz = cfg.rep_rate_hz;
    rec.n_a1 = draw_poisson(rng, single_count_probability(cfg, Port::A1) * pulses);
    rec.n_a2 = draw_poisson(rng, single_count_probability(cfg, Port::A2) * pulses);
    rec.n_coinc = draw_poisson(rng, coincidence_probability(spectrum, cfg) * pulses);
    return rec;
}

std::uint32_t simulation_flags(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg)
{
    const double p = std::max({single_count_probability(cfg, Port::A1), single_count_probability(cfg, Port::A2),
                               coincidence_probability(spectrum, cfg)});
    return p > kProbabilityAdvisory ? kWarnHighProbability : kWarnNone;
}

EstimateResult estimate_with_uncertainty(const CountRecord& record)
{
    EstimateResult r;
    r.k_hat = k_from_rates(record);
    if (record.n_coinc == 0)
        throw EstimateError("uncertainty is undefined with zero coincidences");
    r.k_sigma = (r.k_hat + 1.0)
                * std::sqrt(1.0 / static_cast<double>(record.n_coinc) + 1.0 / static_cast<double>(record.n_a1)
                            + 1.0 / static_cast<double>(record.n_a2));
    r.flags = concurrence_from_k(r.k_hat).flags;
    // Not clamped above sqrt(2): an overshoot is reported as measured.
    r.c_hat = std::sqrt(std::max(0.0, 2.0 - 2.0 * r.k_hat));
    if (r.k_hat >= 1.0 - kSingularityGuard) {
        r.c_sigma = std::numeric_limits<double>::infinity();
        r.flags |= kWarnInfiniteSigma;
    } else {
        r.c_sigma = r.k_sigma / std::sqrt(2.0 - 2.0 * r.k_hat);
    }
    return r;
}

double duration_for_expected_coincidences(const SchmidtSpectrum& spectrum, const DetectionConfig& cfg,
                                          double target)
{
    if (!finite_positive(target))
        throw ConfigError("target coincidence count must be positive");
    return target / (coincidence_probability(spectrum, cfg) * cfg.rep_rate_hz);
}

SchmidtSpectrum refine_with_hidden_modes(const SchmidtSpectrum& spectrum,
                                         const std::vector<std::vector<double>>& splits)
{
    if (splits.size() != static_cast<std::size_t>(spectrum.dimension()))
        throw ConfigError("need one hidden-mode split per Schmidt mode");
    std::vector<double> refined;
    for (std::size_t i = 0; i < splits.size(); ++i) {
        const auto& w = splits[i];
        if (w.empty())
            throw ConfigError("hidden-mode split " + std::to_string(i) + " is empty");
        for (double x : w)
            if (!std::isfinite(x) || x < 0.0)
                throw ConfigError("hidden-mode weights must be nonnegative");
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        if (std::abs(sum - 1.0) > kSplitTolerance)
            throw ConfigError("hidden-mode split " + std::to_string(i) + " does not sum to 1");
        for (double x : w)
            refined.push_back(spectrum[i] * x);
    }
    // Renormalize away rounding so the refined spectrum passes validation.
    const double total = std::accumulate(refined.begin(), refined.end(), 0.0);
    for (double& x : refined)
        x /= total;
    return SchmidtSpectrum(std::move(refined));
}

bool TimingReport::all_passed() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

TimingReport check_timing(const TimingBudget& budget, double separation_factor)
{
    budget.validate();
    if (!finite_positive(separation_factor))
        throw ConfigError("separation factor must be positive");
    TimingReport report;
    const double sep_pump = budget.delta_t_pulse_sep / budget.tau_pump;
    const double sep_corr = budget.delta_t_pulse_sep / budget.tau_corr;
    const double window = budget.coincidence_window / std::max(budget.tau_corr, budget.delta_t_pulse_sep);
    report.conditions.push_back({"pulse_separation_exceeds_pump_width", sep_pump, 1.0, sep_pump > 1.0});
    report.conditions.push_back({"pulse_separation_exceeds_correlation_time", sep_corr, 1.0, sep_corr > 1.0});
    report.conditions.push_back(
        {"coincidence_window_hides_time_bins", window, separation_factor, window >= separation_factor});
    return report;
}

} // namespace pdclab
