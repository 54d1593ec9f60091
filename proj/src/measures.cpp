#include "pdclab/measures.hpp"

#include "pdclab/error.hpp"

#include <algorithm>
#include <cmath>

namespace pdclab {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;
constexpr double kNormTolerance = 1e-9;

} // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix))
{
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
        throw ConfigError("density matrix must be square and nonempty");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
        throw ConfigError("density matrix is not Hermitian");
    if (std::abs(matrix_.trace() - Amplitude(1.0)) > kTraceTolerance)
        throw ConfigError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTolerance)
        throw ConfigError("density matrix has a negative eigenvalue");
}

TwoCopyOperator::TwoCopyOperator(int d, Eigen::MatrixXd symmetric) : d_(d), symmetric_(std::move(symmetric))
{
    if (d < 1 || symmetric_.rows() != d * d || symmetric_.cols() != d * d)
        throw ConfigError("two-copy operator must be d^2 x d^2");
}

Eigen::MatrixXd TwoCopyOperator::antisymmetric() const
{
    return Eigen::MatrixXd::Identity(d_ * d_, d_ * d_) - symmetric_;
}

Eigen::MatrixXd TwoCopyOperator::concurrence_observable() const
{
    return 4.0 * antisymmetric();
}

Eigen::MatrixXcd pair_amplitudes(const FockVector& psi2)
{
    const int d = psi2.dimension();
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [occ, amp] : psi2.entries()) {
        const auto e = occ.entries();
        const bool paired = e.size() == 2 && e[0].second == 1 && e[1].second == 1
                            && e[0].first.side == Side::A && e[0].first.port == Port::Source
                            && e[1].first.side == Side::B;
        if (!paired)
            throw PreconditionError("expected one photon per side, found " + to_string(occ));
        psi(e[0].first.internal, e[1].first.internal) = amp;
    }
    return psi;
}

DensityMatrix reduced_density(const FockVector& psi2)
{
    const Eigen::MatrixXcd psi = pair_amplitudes(psi2);
    if (std::abs(psi2.norm2() - 1.0) > kNormTolerance)
        throw PreconditionError("reduced_density needs a normalized state");
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    // Restore exact hermiticity lost to rounding.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

double purity(const DensityMatrix& rho)
{
    // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
    return rho.matrix().cwiseAbs2().sum();
}

double i_concurrence(const FockVector& psi2)
{
    const double p = purity(reduced_density(psi2));
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

double max_i_concurrence(int d1, int d2)
{
    if (d1 < 1 || d2 < 1)
        throw ConfigError("dimensions must be positive");
    const double m = std::min(d1, d2);
    return std::sqrt(2.0 * (m - 1.0) / m);
}

TwoCopyOperator build_symmetric_projector(int d)
{
    if (d < 1)
        throw ConfigError("dimension must be positive");
    const int n = d * d;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < d; ++i) {
        p(i * d + i, i * d + i) = 1.0;
        for (int j = i + 1; j < d; ++j) {
            // (|ij'> + |ji'>)/sqrt(2), outer product
            const int ij = i * d + j, ji = j * d + i;
            p(ij, ij) += 0.5;
            p(ij, ji) += 0.5;
            p(ji, ij) += 0.5;
            p(ji, ji) += 0.5;
        }
    }
    return TwoCopyOperator(d, std::move(p));
}

double concurrence_via_projector(const FockVector& psi2)
{
    const DensityMatrix rho = reduced_density(psi2);
    const int d = rho.dimension();
    const TwoCopyOperator proj = build_symmetric_projector(d);

    Eigen::MatrixXcd two_copy(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            two_copy.block(i * d, j * d, d, d) = rho.matrix()(i, j) * rho.matrix();

    const Amplitude c2 = (proj.concurrence_observable().cast<Amplitude>() * two_copy).trace();
    return std::sqrt(std::max(0.0, c2.real()));
}

Eq4Sides eq4_check(const SchmidtSpectrum& spectrum)
{
    const FockVector psi2 = build_psi2(spectrum);
    const FockVector psi4 = build_psi4(spectrum);
    const Eigen::MatrixXcd psi = pair_amplitudes(psi2);
    const int d = spectrum.dimension();
    const Eigen::MatrixXcd four_p = 4.0 * build_symmetric_projector(d).symmetric().cast<Amplitude>();

    // |psi2>|psi2'> = sum_{b,b'} v_{bb'} (x) |b b'>, v_{bb'}(a, a') = psi(a,b) psi(a',b').
    double lhs = 0.0;
    Eigen::VectorXcd v(d * d);
    for (int b = 0; b < d; ++b) {
        for (int bp = 0; bp < d; ++bp) {
            for (int a = 0; a < d; ++a)
                for (int ap = 0; ap < d; ++ap)
                    v(a * d + ap) = psi(a, b) * psi(ap, bp);
            lhs += v.dot(four_p * v).real();
        }
    }
    return {lhs, inner(psi4, psi4).real()};
}

double sub_concurrence_c12(const AnglePair& angles)
{
    const double c1 = std::cos(2 * angles.theta1), s1 = std::sin(2 * angles.theta1);
    const double c2 = std::cos(2 * angles.theta2), s2 = std::sin(2 * angles.theta2);
    return 2.0 * std::abs((c1 * c1 - s1 * s1) * c2 * s2);
}

double concurrence_closed_form(const AnglePair& angles)
{
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * k_closed_form(angles)));
}

} // namespace pdclab
