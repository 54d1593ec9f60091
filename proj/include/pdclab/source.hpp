#pragma once

#include "pdclab/fock.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pdclab {

/// Schmidt weights of a bipartite pure state: nonnegative, summing to one.
class SchmidtSpectrum
{
public:
    explicit SchmidtSpectrum(std::vector<double> weights);

    int dimension() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }

    /// sum of lambda_i^2; equals the purity of either marginal.
    double sum_squares() const;

private:
    std::vector<double> weights_;
};

/// Half-wave-plate angles in radians.
struct AnglePair
{
    double theta1 = 0.0;
    double theta2 = 0.0;

    static AnglePair from_degrees(double theta1_deg, double theta2_deg);
};

double deg_to_rad(double deg);

/// Pump amplitudes on |H T1> and |V T2> after the delay crystal.
std::pair<double, double> pump_amplitudes(double theta1);

/// Four-mode spectrum ordered (V T1, H T1, V T2, H T2).
SchmidtSpectrum schmidt_from_angles(const AnglePair& angles);

/// Relative signs matching schmidt_from_angles: the H T2 pair carries a minus sign.
std::vector<int> angle_state_phases();

/// Closed-form purity of the angle-family marginal.
double k_closed_form(const AnglePair& angles);

using PhaseSigns = std::vector<int>;

/// sum_i s_i sqrt(lambda_i) a_i^dag b_i^dag |vac>
FockVector build_psi2(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases = {});

/// sum_ij s_i s_j sqrt(lambda_i lambda_j) a_i^dag a_j^dag b_i^dag b_j^dag |vac>, built by the double sum.
FockVector build_psi4(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases = {});

/// Same state built from the regrouped form: off-diagonal pairs with weight
/// 2 sqrt(lambda_i lambda_j) plus the bunched diagonal lambda_i a_i^dag2 b_i^dag2.
FockVector build_psi4_grouped(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases = {});

/// Triple-sum six-photon term, used only by the order-3 source.
FockVector build_psi6(const SchmidtSpectrum& spectrum, const std::optional<PhaseSigns>& phases = {});

inline constexpr double kDefaultPumpAmplitude = 0.01;

struct TruncatedSource
{
    SchmidtSpectrum spectrum;
    double pump_amplitude = kDefaultPumpAmplitude;
    int truncation_order = 2;
    std::optional<PhaseSigns> phases;

    /// Throws ConfigError on invalid fields; returns human-readable advisories
    /// (e.g. a pump amplitude above 0.1 leaves the perturbative regime).
    std::vector<std::string> validate() const;
};

/// |vac> + sqrt(eta)|Psi2> + (eta/2!)|Psi4> [+ (eta^{3/2}/3!)|Psi6>], unnormalized.
FockVector build_truncated_source(const TruncatedSource& source);

} // namespace pdclab
