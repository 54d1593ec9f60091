#include "pdclab/counting.hpp"
#include "pdclab/error.hpp"
#include "pdclab/measures.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace pdclab;

namespace {

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v)
{
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

const SchmidtSpectrum kUniform4({0.25, 0.25, 0.25, 0.25});
const SchmidtSpectrum kBell({0.5, 0.5});

} // namespace

TEST_CASE("single-count probability")
{
    DetectionConfig cfg;
    CHECK(std::abs(single_count_probability(cfg, Port::A1) - 0.001) < 1e-18);
    cfg.eta_a1 = 1.0;
    cfg.pump_amplitude = 0.999999;
    CHECK(single_count_probability(cfg, Port::A1) == doctest::Approx(0.5).epsilon(1e-5));

    DetectionConfig base, doubled;
    doubled.eta_a2 = 2 * base.eta_a2;
    CHECK(single_count_probability(doubled, Port::A2) == doctest::Approx(2 * single_count_probability(base, Port::A2)));
    CHECK_THROWS_AS(single_count_probability(base, Port::Source), ConfigError);

    DetectionConfig bad;
    bad.eta_a1 = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {};
    bad.duration_s = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("coincidence probability")
{
    const DetectionConfig cfg;
    CHECK(std::abs(coincidence_probability(kUniform4, cfg) - 1.25e-6) < 1e-20);
    const double p1 = single_count_probability(cfg, Port::A1), p2 = single_count_probability(cfg, Port::A2);
    CHECK(coincidence_probability(SchmidtSpectrum({1.0}), cfg) == doctest::Approx(2 * p1 * p2).epsilon(1e-15));

    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        const SchmidtSpectrum s(oracle::random_weights(rng, 1 + t % 6));
        const double closed = coincidence_probability(s, cfg);
        CHECK(closed >= p1 * p2);
        // Through the state pipeline, both as the coincidence-component norm
        // and as (1/8) eta1 eta2 |eta|^2 <Psi4|Psi4>.
        CHECK(std::abs(coincidence_probability_from_state(s, cfg) - closed) / closed < 1e-12);
        const double via_psi4 = 0.125 * cfg.eta_a1 * cfg.eta_a2 * cfg.pump_amplitude * cfg.pump_amplitude
                                * build_psi4(s).norm2();
        CHECK(std::abs(via_psi4 - closed) / closed < 1e-12);
    }
}

TEST_CASE("K from counts")
{
    CountRecord r{100000, 100000, 165, 1.0, 76e6};
    CHECK(std::abs(k_from_rates(r) - 0.254) < 1e-12);

    CountRecord baseline{1000, 1000, 1, 1.0, 1e6};
    CHECK(k_from_rates(baseline) == 0.0);

    CountRecord doubled{200000, 200000, 330, 2.0, 76e6};
    CHECK(std::abs(k_from_rates(doubled) - k_from_rates(r)) < 1e-12);

    CHECK_THROWS_AS(k_from_rates({0, 10, 1, 1.0, 76e6}), EstimateError);
    CHECK_THROWS_AS(k_from_rates({10, 0, 1, 1.0, 76e6}), EstimateError);
}

TEST_CASE("concurrence from K")
{
    CHECK(std::abs(concurrence_from_k(0.25).c - std::sqrt(6.0) / 2) < 1e-15);
    CHECK(concurrence_from_k(1.0).c == 0.0);
    CHECK(concurrence_from_k(0.5).c == 1.0);
    CHECK(concurrence_from_k(0.5).flags == kWarnNone);

    const auto over = concurrence_from_k(1.2);
    CHECK(over.c == 0.0);
    CHECK(over.flags == kWarnKAboveOne);
    const auto under = concurrence_from_k(-0.1);
    CHECK(under.c == std::sqrt(2.0));
    CHECK(under.flags == kWarnKBelowZero);

    std::mt19937_64 rng(42);
    for (int t = 0; t < 500; ++t) {
        const SchmidtSpectrum s(oracle::random_weights(rng, 1 + t % 6));
        CHECK(std::abs(concurrence_from_k(s.sum_squares()).c - i_concurrence(build_psi2(s))) < 1e-12);
    }
}

TEST_CASE("simulated counts are seeded and Poisson distributed")
{
    DetectionConfig cfg;
    cfg.seed = 1234;
    const auto a = simulate_counts(kBell, cfg), b = simulate_counts(kBell, cfg);
    CHECK(a.n_a1 == b.n_a1);
    CHECK(a.n_a2 == b.n_a2);
    CHECK(a.n_coinc == b.n_coinc);
    cfg.seed = 1235;
    const auto c = simulate_counts(kBell, cfg);
    CHECK((c.n_a1 != a.n_a1 || c.n_coinc != a.n_coinc));

    const double mean_coinc = coincidence_probability(kUniform4, cfg) * cfg.rep_rate_hz * cfg.duration_s;
    std::vector<double> coinc;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        cfg.seed = s;
        coinc.push_back(static_cast<double>(simulate_counts(kUniform4, cfg).n_coinc));
    }
    const double standard_error = std::sqrt(mean_coinc / 1000.0);
    CHECK(std::abs(mean_of(coinc) - mean_coinc) < 3 * standard_error);
    CHECK(stddev_of(coinc) == doctest::Approx(std::sqrt(mean_coinc)).epsilon(0.1));

    cfg.duration_s = 1e-9;
    cfg.seed = 7;
    const auto tiny = simulate_counts(kUniform4, cfg);
    CHECK(tiny.n_a1 == 0);
    CHECK(tiny.n_a2 == 0);
    CHECK(tiny.n_coinc == 0);
}

TEST_CASE("simulation flags")
{
    DetectionConfig cfg;
    CHECK(simulation_flags(kBell, cfg) == kWarnNone);
    cfg.eta_a1 = cfg.eta_a2 = 1.0;
    cfg.pump_amplitude = 0.5;
    CHECK(simulation_flags(kBell, cfg) == kWarnHighProbability);
}

TEST_CASE("estimate with uncertainty")
{
    // 278 coincidences, large singles, rate tuned so K-hat = 0.5.
    const double n1 = 1e7, n2 = 1e7, nc = 278;
    const double pulses = 1.5 * n1 * n2 / nc;
    CountRecord r{10000000, 10000000, 278, 1.0, pulses};
    const auto e = estimate_with_uncertainty(r);
    CHECK(std::abs(e.k_hat - 0.5) < 1e-12);
    CHECK(std::abs(e.c_hat - 1.0) < 1e-12);
    const double expected_sigma = 1.5 * std::sqrt(1.0 / nc + 1.0 / n1 + 1.0 / n2);
    CHECK(std::abs(e.k_sigma - expected_sigma) < 1e-15);
    CHECK(std::abs(e.c_sigma - 0.09) < 1e-3);

    CountRecord scaled{1000000000, 1000000000, 27800, 100.0, pulses};
    const auto es = estimate_with_uncertainty(scaled);
    CHECK(std::abs(es.k_hat - e.k_hat) < 1e-12);
    CHECK(es.k_sigma == doctest::Approx(e.k_sigma / 10).epsilon(1e-12));
    CHECK(es.c_sigma == doctest::Approx(e.c_sigma / 10).epsilon(1e-12));

    // K-hat exactly 1: 2 coincidences where 1 is the uncorrelated baseline.
    const auto singular = estimate_with_uncertainty({1000, 1000, 2, 1.0, 1e6});
    CHECK(singular.k_hat == 1.0);
    CHECK(singular.c_hat == 0.0);
    CHECK(std::isinf(singular.c_sigma));
    CHECK((singular.flags & kWarnInfiniteSigma));

    // Overshoot stays representable: c_hat = sqrt(max(0, 2 - 2K)).
    const auto over = estimate_with_uncertainty({1000, 1000, 1, 1.0, 0.5e6});
    CHECK(over.k_hat == -0.5);
    CHECK(std::abs(over.c_hat - std::sqrt(3.0)) < 1e-15);
    CHECK((over.flags & kWarnKBelowZero));

    CHECK_THROWS_AS(estimate_with_uncertainty({0, 5, 5, 1.0, 1e6}), EstimateError);
    CHECK_THROWS_AS(estimate_with_uncertainty({5, 5, 0, 1.0, 1e6}), EstimateError);
}

TEST_CASE("calibrated duration hits the target coincidence count")
{
    const DetectionConfig cfg;
    const double t = duration_for_expected_coincidences(kBell, cfg, 278.0);
    CHECK(coincidence_probability(kBell, cfg) * cfg.rep_rate_hz * t == doctest::Approx(278.0));
    CHECK_THROWS_AS(duration_for_expected_coincidences(kBell, cfg, 0.0), ConfigError);
}

TEST_CASE("hidden-mode refinement")
{
    const auto same = refine_with_hidden_modes(kUniform4, {{1.0}, {1.0}, {1.0}, {1.0}});
    CHECK(same.weights() == kUniform4.weights());

    const auto halves = refine_with_hidden_modes(SchmidtSpectrum({1.0}), {{0.5, 0.5}});
    CHECK(halves.weights() == std::vector<double>{0.5, 0.5});
    CHECK(halves.sum_squares() == 0.5);

    const std::vector<double> w{0.9, 0.1};
    const auto r = refine_with_hidden_modes(kUniform4, {w, w, w, w});
    CHECK(std::abs(r.sum_squares() - 0.25 * 0.82) < 1e-15);

    CHECK_THROWS_AS(refine_with_hidden_modes(kUniform4, {{0.5, 0.4}, {1.0}, {1.0}, {1.0}}), ConfigError);
    CHECK_THROWS_AS(refine_with_hidden_modes(kUniform4, {{1.0}}), ConfigError);
    CHECK_THROWS_AS(refine_with_hidden_modes(kUniform4, {{1.2, -0.2}, {1.0}, {1.0}, {1.0}}), ConfigError);
}

TEST_CASE("refinement never raises the purity")
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> parts(1, 4);
    for (int t = 0; t < 1000; ++t) {
        const int d = 1 + t % 6;
        const SchmidtSpectrum s(oracle::random_weights(rng, d));
        std::vector<std::vector<double>> splits;
        bool nontrivial = false;
        for (int i = 0; i < d; ++i) {
            const int k = parts(rng);
            splits.push_back(oracle::random_weights(rng, k));
            nontrivial |= (k >= 2 && s[i] > 0.0);
        }
        const double refined = refine_with_hidden_modes(s, splits).sum_squares();
        CHECK(refined <= s.sum_squares() + 1e-15);
        if (nontrivial)
            CHECK(refined < s.sum_squares());
    }
}

TEST_CASE("timing budget")
{
    const auto ok = check_timing(TimingBudget{});
    CHECK(ok.all_passed());
    REQUIRE(ok.conditions.size() == 3);
    CHECK(ok.conditions[2].ratio == doctest::Approx(3e-9 / 1.68e-12));
    CHECK(std::lround(ok.conditions[2].ratio) == 1786);

    TimingBudget short_sep;
    short_sep.delta_t_pulse_sep = 100e-15;
    const auto bad = check_timing(short_sep);
    CHECK_FALSE(bad.all_passed());
    CHECK_FALSE(bad.conditions[0].passed);

    TimingBudget narrow;
    narrow.coincidence_window = 10 * narrow.delta_t_pulse_sep;
    const auto w = check_timing(narrow, 100.0);
    CHECK_FALSE(w.conditions[2].passed);
    CHECK(w.conditions[0].passed);
    CHECK(w.conditions[1].passed);

    TimingBudget zero;
    zero.tau_pump = 0.0;
    CHECK_THROWS_AS(check_timing(zero), ConfigError);
}

TEST_CASE("estimator converges as duration^-1/2")
{
    const SchmidtSpectrum s = kUniform4;
    const double truth = s.sum_squares();
    DetectionConfig cfg;
    for (double duration : {1.0, 10.0, 100.0, 1000.0}) {
        cfg.duration_s = duration;
        std::vector<double> abs_err, sigma;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            cfg.seed = seed;
            const auto e = estimate_with_uncertainty(simulate_counts(s, cfg));
            abs_err.push_back(std::abs(e.k_hat - truth));
            sigma.push_back(e.k_sigma);
        }
        // Mean |error| of a normal variate is sigma sqrt(2/pi).
        const double predicted = (1.0 + truth)
                                 * std::sqrt(1.0 / (coincidence_probability(s, cfg) * cfg.rep_rate_hz * duration))
                                 * std::sqrt(2.0 / M_PI);
        const double ratio = mean_of(abs_err) / predicted;
        INFO("duration " << duration << " ratio " << ratio);
        CHECK(ratio > 1.0 / 3.0);
        CHECK(ratio < 3.0);
    }
}

TEST_CASE("empirical spread of K-hat matches the propagated sigma")
{
    DetectionConfig cfg;
    std::vector<double> k, sig;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        cfg.seed = seed;
        const auto e = estimate_with_uncertainty(simulate_counts(kBell, cfg));
        k.push_back(e.k_hat);
        sig.push_back(e.k_sigma);
    }
    CHECK(std::abs(stddev_of(k) / mean_of(sig) - 1.0) < 0.2);
}
