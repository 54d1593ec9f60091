#include "pdclab/source.hpp"

#include "pdclab/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace pdclab {

namespace {

constexpr double kSumTolerance = 1e-12;

std::vector<double> signed_roots(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases)
{
    const auto d = static_cast<std::size_t>(spectrum.dimension());
    if (phases && phases->size() != d)
        throw ConfigError("phase list has " + std::to_string(phases->size())
                          + " entries for a spectrum of dimension " + std::to_string(d));
    std::vector<double> roots(d);
    for (std::size_t i = 0; i < d; ++i) {
        int s = 1;
        if (phases) {
            s = (*phases)[i];
            if (s != 1 && s != -1)
                throw ConfigError("phase signs must be +1 or -1");
        }
        roots[i] = s * std::sqrt(spectrum[i]);
    }
    return roots;
}

// Applies a_i^dag b_i^dag for each index in `pairs` to the vacuum.
FockVector paired_creation(int d, std::initializer_list<int> pairs)
{
    FockVector v = FockVector::vacuum(d);
    for (int i : pairs) {
        v = apply_creation(v, ModeId::a(i));
        v = apply_creation(v, ModeId::b(i));
    }
    return v;
}

} // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> weights) : weights_(std::move(weights))
{
    if (weights_.empty())
        throw ConfigError("Schmidt spectrum must have at least one weight");
    for (double w : weights_)
        if (!std::isfinite(w) || w < 0.0 || w > 1.0)
            throw ConfigError("Schmidt weights must lie in [0, 1]");
    const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw ConfigError("Schmidt weights sum to " + std::to_string(sum) + ", expected 1");
}

double SchmidtSpectrum::sum_squares() const
{
    double s = 0.0;
    for (double w : weights_)
        s += w * w;
    return s;
}

double deg_to_rad(double deg)
{
    return deg * std::numbers::pi / 180.0;
}

AnglePair AnglePair::from_degrees(double theta1_deg, double theta2_deg)
{
    return {deg_to_rad(theta1_deg), deg_to_rad(theta2_deg)};
}

std::pair<double, double> pump_amplitudes(double theta1)
{
    return {std::cos(2 * theta1), std::sin(2 * theta1)};
}

SchmidtSpectrum schmidt_from_angles(const AnglePair& angles)
{
    const double c1 = std::cos(2 * angles.theta1), s1 = std::sin(2 * angles.theta1);
    const double c2 = std::cos(2 * angles.theta2), s2 = std::sin(2 * angles.theta2);
    return SchmidtSpectrum({c1 * c1 * c2 * c2, c1 * c1 * s2 * s2, s1 * s1 * s2 * s2, s1 * s1 * c2 * c2});
}

std::vector<int> angle_state_phases()
{
    return {1, 1, 1, -1};
}

double k_closed_form(const AnglePair& angles)
{
    auto quartic = [](double t) {
        const double c = std::cos(2 * t), s = std::sin(2 * t);
        return std::pow(c, 4) + std::pow(s, 4);
    };
    return quartic(angles.theta1) * quartic(angles.theta2);
}

FockVector build_psi2(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases)
{
    const int d = spectrum.dimension();
    const auto roots = signed_roots(spectrum, phases);
    std::vector<Term> terms;
    for (int i = 0; i < d; ++i)
        if (roots[i] != 0.0)
            terms.emplace_back(roots[i], paired_creation(d, {i}));
    if (terms.empty())
        return FockVector(d);
    return superpose(terms);
}

FockVector build_psi4(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases)
{
    const int d = spectrum.dimension();
    const auto roots = signed_roots(spectrum, phases);
    std::vector<Term> terms;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (roots[i] * roots[j] != 0.0)
                terms.emplace_back(roots[i] * roots[j], paired_creation(d, {i, j}));
    if (terms.empty())
        return FockVector(d);
    return superpose(terms);
}

FockVector build_psi4_grouped(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases)
{
    const int d = spectrum.dimension();
    const auto roots = signed_roots(spectrum, phases);
    std::vector<Term> terms;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j)
            if (roots[i] * roots[j] != 0.0)
                terms.emplace_back(2.0 * roots[i] * roots[j], paired_creation(d, {i, j}));
        if (spectrum[i] != 0.0) {
            FockVector bunched = apply_creation(FockVector::vacuum(d), ModeId::a(i), 2);
            bunched = apply_creation(bunched, ModeId::b(i), 2);
            terms.emplace_back(spectrum[i], std::move(bunched));
        }
    }
    if (terms.empty())
        return FockVector(d);
    return superpose(terms);
}

FockVector build_psi6(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases)
{
    const int d = spectrum.dimension();
    const auto roots = signed_roots(spectrum, phases);
    std::vector<Term> terms;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                if (roots[i] * roots[j] * roots[k] != 0.0)
                    terms.emplace_back(roots[i] * roots[j] * roots[k], paired_creation(d, {i, j, k}));
    if (terms.empty())
        return FockVector(d);
    return superpose(terms);
}

std::vector<std::string> TruncatedSource::validate() const
{
    if (!std::isfinite(pump_amplitude) || pump_amplitude <= 0.0 || pump_amplitude >= 1.0)
        throw ConfigError("pump amplitude must lie in (0, 1)");
    if (truncation_order < 1 || truncation_order > 3)
        throw ConfigError("truncation order must be 1, 2 or 3");
    if (phases && phases->size() != static_cast<std::size_t>(spectrum.dimension()))
        throw ConfigError("phase list length does not match spectrum dimension");
    std::vector<std::string> advisories;
    if (pump_amplitude > 0.1)
        advisories.emplace_back("pump amplitude " + std::to_string(pump_amplitude)
                                + " is outside the weak-pump regime (> 0.1)");
    return advisories;
}

FockVector build_truncated_source(const TruncatedSource& source)
{
    source.validate();
    const int d = source.spectrum.dimension();
    const double eta = source.pump_amplitude;
    std::vector<Term> terms;
    terms.emplace_back(1.0, FockVector::vacuum(d));
    terms.emplace_back(std::sqrt(eta), build_psi2(source.spectrum, source.phases));
    if (source.truncation_order >= 2)
        terms.emplace_back(eta / 2.0, build_psi4(source.spectrum, source.phases));
    if (source.truncation_order >= 3)
        terms.emplace_back(std::pow(eta, 1.5) / 6.0, build_psi6(source.spectrum, source.phases));
    return superpose(terms);
}

} // namespace pdclab
