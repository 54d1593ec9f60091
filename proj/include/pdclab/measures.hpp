#pragma once

#include "pdclab/fock.hpp"
#include "pdclab/source.hpp"

#include <Eigen/Dense>

#include <utility>

namespace pdclab {

/// Reduced state of subsystem A in the internal-mode basis 0..d-1.
class DensityMatrix
{
public:
    /// Validates hermiticity and unit trace (1e-12) and eigenvalues >= -1e-10.
    explicit DensityMatrix(Eigen::MatrixXcd matrix);

    int dimension() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

private:
    Eigen::MatrixXcd matrix_;
};

/// Explicit operator on the d^2-dimensional two-copy space, product basis
/// index i*d + j for |i>|j'>.
class TwoCopyOperator
{
public:
    TwoCopyOperator(int d, Eigen::MatrixXd symmetric);

    int dimension() const { return d_; }
    const Eigen::MatrixXd& symmetric() const { return symmetric_; }
    Eigen::MatrixXd antisymmetric() const;
    /// 4 x antisymmetric projector: its two-copy expectation is C^2.
    Eigen::MatrixXd concurrence_observable() const;

private:
    int d_;
    Eigen::MatrixXd symmetric_;
};

/// psi(a_i, b_j) amplitude matrix of a state with one photon per side.
/// Throws PreconditionError on any other occupation.
Eigen::MatrixXcd pair_amplitudes(const FockVector& psi2);

/// Partial trace over side B. Requires a normalized one-photon-per-side state.
DensityMatrix reduced_density(const FockVector& psi2);

double purity(const DensityMatrix& rho);

/// sqrt(2 (1 - Tr rho_A^2))
double i_concurrence(const FockVector& psi2);

/// sqrt(2 (M - 1) / M), M = min(d1, d2)
double max_i_concurrence(int d1, int d2);

TwoCopyOperator build_symmetric_projector(int d);

/// sqrt(4 Tr(P_- rho_A (x) rho_A)) evaluated by explicit d^2 x d^2 contraction.
double concurrence_via_projector(const FockVector& psi2);

struct Eq4Sides
{
    double two_copy = 0.0;  // <psi2 psi2'| 4 P_+ |psi2 psi2'>
    double four_photon = 0.0; // <Psi4|Psi4>
};

/// Both sides of the two-copy / four-photon norm identity; each equals 2(1 + sum lambda^2).
Eq4Sides eq4_check(const SchmidtSpectrum& spectrum);

/// 2 |(cos^2 2t1 - sin^2 2t1) cos 2t2 sin 2t2|, concurrence of the polarization
/// marginal once the time-bin label is traced out.
double sub_concurrence_c12(const AnglePair& angles);

/// sqrt(2 - 2 K) for the angle family, from the closed-form K.
double concurrence_closed_form(const AnglePair& angles);

} // namespace pdclab
