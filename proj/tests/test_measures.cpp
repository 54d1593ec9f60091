#include "pdclab/error.hpp"
#include "pdclab/measures.hpp"
#include "pdclab/source.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pdclab;

namespace {

double c_theory(double t1_deg, double t2_deg)
{
    return i_concurrence(build_psi2(schmidt_from_angles(AnglePair::from_degrees(t1_deg, t2_deg))));
}

} // namespace

TEST_CASE("reduced density matrices")
{
    CHECK(reduced_density(build_psi2(SchmidtSpectrum({1.0}))).matrix()(0, 0) == Amplitude(1.0));

    const auto bell = reduced_density(build_psi2(SchmidtSpectrum({0.5, 0.5}))).matrix();
    CHECK(std::abs(bell(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(bell(1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(bell(0, 1)) < 1e-15);

    // Explicit partial trace over the written-out angle-family amplitudes.
    const auto psi = build_psi2(schmidt_from_angles(AnglePair::from_degrees(22.5, 22.5)), angle_state_phases());
    const auto rho = reduced_density(psi).matrix();
    const auto expected = oracle::partial_trace_b(pair_amplitudes(psi));
    CHECK((rho - expected).cwiseAbs().maxCoeff() < 1e-15);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(rho(i, i) - 0.25) < 1e-15);
}

TEST_CASE("reduced density preconditions")
{
    CHECK_THROWS_AS(reduced_density(build_psi4(SchmidtSpectrum({1.0}))), PreconditionError);
    const auto unnormalized = superpose({{2.0, build_psi2(SchmidtSpectrum({1.0}))}});
    CHECK_THROWS_AS(reduced_density(unnormalized), PreconditionError);
    CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd::Identity(2, 2)}, ConfigError);
    Eigen::MatrixXcd bad(2, 2);
    bad << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityMatrix{bad}, ConfigError);
}

TEST_CASE("purity")
{
    Eigen::MatrixXcd one(1, 1);
    one << 1.0;
    CHECK(purity(DensityMatrix(one)) == 1.0);
    CHECK(purity(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) * 0.25)) == doctest::Approx(0.25));
    Eigen::MatrixXcd half = Eigen::MatrixXcd::Zero(4, 4);
    half(0, 0) = half(1, 1) = 0.5;
    CHECK(purity(DensityMatrix(half)) == doctest::Approx(0.5));
}

TEST_CASE("I-concurrence values")
{
    CHECK(i_concurrence(build_psi2(SchmidtSpectrum({1.0}))) == 0.0);
    CHECK(std::abs(i_concurrence(build_psi2(SchmidtSpectrum({0.5, 0.5}))) - 1.0) < 1e-15);
    CHECK(std::abs(i_concurrence(build_psi2(SchmidtSpectrum({0.25, 0.25, 0.25, 0.25}))) - std::sqrt(6.0) / 2) < 1e-14);

    CHECK(max_i_concurrence(2, 2) == 1.0);
    CHECK(std::abs(max_i_concurrence(4, 4) - std::sqrt(1.5)) < 1e-15);
    CHECK(max_i_concurrence(2, 4) == 1.0);
    CHECK_THROWS_AS(max_i_concurrence(0, 3), ConfigError);
}

TEST_CASE("I-concurrence is bounded by the dimension maximum")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 500; ++t) {
        const int d = 2 + t % 5;
        const double c = i_concurrence(build_psi2(SchmidtSpectrum(oracle::random_weights(rng, d))));
        CHECK(c >= 0.0);
        CHECK(c <= max_i_concurrence(d, d) + 1e-12);
    }
    for (int d = 1; d <= 8; ++d) {
        const double c = i_concurrence(build_psi2(SchmidtSpectrum(std::vector<double>(d, 1.0 / d))));
        CHECK(std::abs(c - max_i_concurrence(d, d)) < 1e-12);
    }
}

TEST_CASE("symmetric projector")
{
    for (int d = 1; d <= 6; ++d) {
        const auto p = build_symmetric_projector(d);
        const auto& s = p.symmetric();
        const int n = d * d;
        CHECK((s * s - s).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
        // Independent construction via the swap operator.
        const Eigen::MatrixXd ref = 0.5 * (Eigen::MatrixXd::Identity(n, n) + oracle::swap_operator(d));
        CHECK((s - ref).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(std::lround(s.trace()) == d * (d + 1) / 2);
        CHECK(std::lround(p.antisymmetric().trace()) == d * (d - 1) / 2);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(p.antisymmetric());
        CHECK(lu.rank() == d * (d - 1) / 2);
    }
    CHECK(build_symmetric_projector(1).symmetric()(0, 0) == 1.0);
}

TEST_CASE("projector route to the concurrence")
{
    CHECK(concurrence_via_projector(build_psi2(SchmidtSpectrum({1.0}))) == doctest::Approx(0.0));
    CHECK(std::abs(concurrence_via_projector(build_psi2(SchmidtSpectrum({0.5, 0.5}))) - 1.0) < 1e-14);

    std::mt19937_64 rng(32);
    for (int t = 0; t < 1000; ++t) {
        const int d = 2 + t % 5;
        const auto psi = build_psi2(SchmidtSpectrum(oracle::random_weights(rng, d)));
        REQUIRE(std::abs(concurrence_via_projector(psi) - i_concurrence(psi)) < 1e-10);
    }

    // Purity identities: Tr rho^2 = 1 - 2 Tr(P- rho rho) = 2 Tr(P+ rho rho) - 1.
    const auto rho = reduced_density(build_psi2(SchmidtSpectrum({0.1, 0.2, 0.7}))).matrix();
    Eigen::MatrixXcd rr(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rr.block(3 * i, 3 * j, 3, 3) = rho(i, j) * rho;
    const auto p = build_symmetric_projector(3);
    const double plus = (p.symmetric().cast<Amplitude>() * rr).trace().real();
    const double minus = (p.antisymmetric().cast<Amplitude>() * rr).trace().real();
    const double pur = 0.01 + 0.04 + 0.49;
    CHECK(std::abs(1.0 - 2.0 * minus - pur) < 1e-14);
    CHECK(std::abs(2.0 * plus - 1.0 - pur) < 1e-14);
}

TEST_CASE("two-copy and four-photon norms agree")
{
    auto check_sides = [](const std::vector<double>& w, double expected) {
        const auto sides = eq4_check(SchmidtSpectrum(w));
        CHECK(std::abs(sides.two_copy - expected) < 1e-12);
        CHECK(std::abs(sides.four_photon - expected) < 1e-12);
    };
    check_sides({1.0}, 4.0);
    check_sides({0.5, 0.5}, 3.0);
    check_sides({0.25, 0.25, 0.25, 0.25}, oracle::psi4_norm2_dense({0.25, 0.25, 0.25, 0.25}));

    std::mt19937_64 rng(33);
    for (int t = 0; t < 1000; ++t) {
        const int d = 1 + t % 6;
        const SchmidtSpectrum s(oracle::random_weights(rng, d));
        const auto sides = eq4_check(s);
        const double closed = 2.0 * (1.0 + s.sum_squares());
        REQUIRE(std::abs(sides.two_copy - sides.four_photon) < 1e-12);
        REQUIRE(std::abs(sides.two_copy - closed) < 1e-12);
    }
}

TEST_CASE("sub-concurrence closed form")
{
    CHECK(std::abs(sub_concurrence_c12(AnglePair::from_degrees(0, 22.5)) - 1.0) < 1e-15);
    for (double t2 : {0.0, 10.0, 22.5, 33.0})
        CHECK(sub_concurrence_c12(AnglePair::from_degrees(22.5, t2)) < 1e-15);
    CHECK(sub_concurrence_c12(AnglePair::from_degrees(0, 0)) == 0.0);
}

TEST_CASE("sub-concurrence equals the spin-flip concurrence of the polarization marginal")
{
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.0, 45.0);
    for (int t = 0; t < 500; ++t) {
        const double t1 = u(rng), t2 = u(rng);
        const auto ang = AnglePair::from_degrees(t1, t2);
        const auto rho = oracle::polarization_marginal(oracle::angle_state_pol_time(ang.theta1, ang.theta2));
        CHECK(std::abs(oracle::wootters_concurrence(rho) - sub_concurrence_c12(ang)) < 1e-10);
    }
}

TEST_CASE("written-out angle state has the expected spectrum")
{
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> u(0.0, 45.0);
    for (int t = 0; t < 100; ++t) {
        const auto ang = AnglePair::from_degrees(u(rng), u(rng));
        const auto rho = oracle::partial_trace_b(oracle::angle_state_pol_time(ang.theta1, ang.theta2));
        const double pur = rho.cwiseAbs2().sum();
        CHECK(std::abs(pur - schmidt_from_angles(ang).sum_squares()) < 1e-12);
    }
}

TEST_CASE("concurrence dominates the sub-concurrence on the angle grid")
{
    for (int i = 0; i <= 180; ++i)
        for (int j = 0; j <= 180; ++j) {
            const auto ang = AnglePair::from_degrees(0.25 * i, 0.25 * j);
            REQUIRE(concurrence_closed_form(ang) >= sub_concurrence_c12(ang) - 1e-12);
        }
    CHECK(std::abs(c_theory(0, 22.5) - 1.0) < 1e-15);
}
