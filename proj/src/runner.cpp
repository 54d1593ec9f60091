#include "pdclab/runner.hpp"

#include "pdclab/error.hpp"
#include "pdclab/measures.hpp"
#include "pdclab/optics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace pdclab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kMaxIdentityDimension = 8;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object())
        throw ConfigError(where + " must be a JSON object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

template <typename T>
void read_if_present(const json& obj, const char* key, T& out, const std::string& where)
{
    if (!obj.contains(key))
        return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

std::string fmt9(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

SchmidtSpectrum random_spectrum(std::mt19937_64& rng, int d)
{
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(d);
    double total = 0.0;
    for (double& x : w) {
        x = expo(rng);
        total += x;
    }
    for (double& x : w)
        x /= total;
    // Push any rounding residue into the largest weight.
    double sum = 0.0;
    for (double x : w)
        sum += x;
    *std::max_element(w.begin(), w.end()) += 1.0 - sum;
    return SchmidtSpectrum(std::move(w));
}

} // namespace

OutputFormat parse_output_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

std::vector<double> SweepSpec::default_theta2_list()
{
    std::vector<double> out;
    for (int i = 0; i <= 18; ++i)
        out.push_back(2.5 * i);
    return out;
}

void SweepSpec::validate() const
{
    if (theta1_list.empty() || theta2_list.empty())
        throw ConfigError("angle lists must be nonempty");
    for (double t : theta1_list)
        if (!std::isfinite(t))
            throw ConfigError("theta1 angles must be finite");
    for (double t : theta2_list)
        if (!std::isfinite(t))
            throw ConfigError("theta2 angles must be finite");
    detection.validate();
    timing.validate();
    if (hidden_splits)
        refine_with_hidden_modes(schmidt_from_angles({}), *hidden_splits);
}

SweepSpec parse_sweep_spec(const std::string& json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(root,
                        {"theta1_list", "theta2_list", "detection", "timing", "hidden_splits", "output_path", "format"},
                        "config");
    SweepSpec spec;
    read_if_present(root, "theta1_list", spec.theta1_list, "config");
    read_if_present(root, "theta2_list", spec.theta2_list, "config");
    read_if_present(root, "output_path", spec.output_path, "config");
    if (root.contains("format")) {
        std::string fmt;
        read_if_present(root, "format", fmt, "config");
        spec.format = parse_output_format(fmt);
    }
    if (root.contains("hidden_splits") && !root.at("hidden_splits").is_null()) {
        std::vector<std::vector<double>> splits;
        read_if_present(root, "hidden_splits", splits, "config");
        spec.hidden_splits = std::move(splits);
    }
    if (root.contains("detection")) {
        const json& det = root.at("detection");
        reject_unknown_keys(det, {"eta_a1", "eta_a2", "rep_rate_hz", "pump_amplitude", "duration_s", "seed"},
                            "detection");
        auto& d = spec.detection;
        read_if_present(det, "eta_a1", d.eta_a1, "detection");
        read_if_present(det, "eta_a2", d.eta_a2, "detection");
        read_if_present(det, "rep_rate_hz", d.rep_rate_hz, "detection");
        read_if_present(det, "pump_amplitude", d.pump_amplitude, "detection");
        read_if_present(det, "duration_s", d.duration_s, "detection");
        read_if_present(det, "seed", d.seed, "detection");
    }
    if (root.contains("timing")) {
        const json& tim = root.at("timing");
        reject_unknown_keys(tim, {"delta_t_pulse_sep", "tau_pump", "tau_corr", "coincidence_window"}, "timing");
        auto& t = spec.timing;
        read_if_present(tim, "delta_t_pulse_sep", t.delta_t_pulse_sep, "timing");
        read_if_present(tim, "tau_pump", t.tau_pump, "timing");
        read_if_present(tim, "tau_corr", t.tau_corr, "timing");
        read_if_present(tim, "coincidence_window", t.coincidence_window, "timing");
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_spec(ss.str());
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.theta1_list.size() * spec.theta2_list.size());
    std::uint64_t index = 0;
    for (double t1 : spec.theta1_list) {
        for (double t2 : spec.theta2_list) {
            const AnglePair angles = AnglePair::from_degrees(t1, t2);
            const SchmidtSpectrum nominal = schmidt_from_angles(angles);

            SweepRow row;
            row.theta1_deg = t1;
            row.theta2_deg = t2;
            row.k_theory = nominal.sum_squares();
            row.c_theory = std::sqrt(std::max(0.0, 2.0 - 2.0 * row.k_theory));
            row.c12_theory = sub_concurrence_c12(angles);

            const SchmidtSpectrum simulated =
                spec.hidden_splits ? refine_with_hidden_modes(nominal, *spec.hidden_splits) : nominal;
            DetectionConfig cfg = spec.detection;
            cfg.seed = spec.detection.seed + index;
            const CountRecord rec = simulate_counts(simulated, cfg);
            row.n_a1 = rec.n_a1;
            row.n_a2 = rec.n_a2;
            row.n_coinc = rec.n_coinc;
            row.warn_flags = simulation_flags(simulated, cfg);
            try {
                const EstimateResult est = estimate_with_uncertainty(rec);
                row.k_est = est.k_hat;
                row.k_sigma = est.k_sigma;
                row.c_est = est.c_hat;
                row.c_sigma = est.c_sigma;
                row.warn_flags |= est.flags;
            } catch (const EstimateError&) {
                const double nan = std::nan("");
                row.k_est = row.k_sigma = row.c_est = row.c_sigma = nan;
                row.warn_flags |= kWarnUndefinedEstimate;
            }
            rows.push_back(row);
            ++index;
        }
    }
    return rows;
}

std::string render_rows(const std::vector<SweepRow>& rows, OutputFormat format)
{
    if (format == OutputFormat::Csv) {
        std::string out = kCsvHeader;
        out += '\n';
        for (const auto& r : rows) {
            out += fmt9(r.theta1_deg) + ',' + fmt9(r.theta2_deg) + ',' + fmt9(r.k_theory) + ',' + fmt9(r.c_theory)
                   + ',' + fmt9(r.c12_theory) + ',' + std::to_string(r.n_a1) + ',' + std::to_string(r.n_a2) + ','
                   + std::to_string(r.n_coinc) + ',' + fmt9(r.k_est) + ',' + fmt9(r.k_sigma) + ',' + fmt9(r.c_est)
                   + ',' + fmt9(r.c_sigma) + ',' + warn_flags_to_string(r.warn_flags) + '\n';
        }
        return out;
    }

    // Non-finite values (an infinite c_sigma) serialize as null.
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json o;
        o["theta1_deg"] = r.theta1_deg;
        o["theta2_deg"] = r.theta2_deg;
        o["k_theory"] = r.k_theory;
        o["c_theory"] = r.c_theory;
        o["c12_theory"] = r.c12_theory;
        o["n_a1"] = r.n_a1;
        o["n_a2"] = r.n_a2;
        o["n_coinc"] = r.n_coinc;
        o["k_est"] = r.k_est;
        o["k_sigma"] = r.k_sigma;
        o["c_est"] = r.c_est;
        o["c_sigma"] = r.c_sigma;
        o["warn_flags"] = warn_flags_to_string(r.warn_flags);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + '\n';
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path)
{
    write_text_file(path, render_rows(rows, format));
}

bool IdentityReport::passed() const
{
    return eq4_max_dev < tolerance && projector_max_dev < tolerance && coincidence_max_rel_dev < tolerance;
}

std::string IdentityReport::to_json() const
{
    ordered_json o;
    o["max_d"] = max_d;
    o["trials"] = trials;
    o["seed"] = seed;
    o["tolerance"] = tolerance;
    o["eq4_max_dev"] = eq4_max_dev;
    o["projector_max_dev"] = projector_max_dev;
    o["coincidence_max_rel_dev"] = coincidence_max_rel_dev;
    o["passed"] = passed();
    return o.dump(2) + '\n';
}

IdentityReport run_identity_suite(int max_d, std::uint64_t trials, std::uint64_t seed)
{
    if (max_d < 1 || max_d > kMaxIdentityDimension)
        throw ConfigError("identity suite dimension must lie in 1.." + std::to_string(kMaxIdentityDimension));
    IdentityReport report;
    report.max_d = max_d;
    report.trials = trials;
    report.seed = seed;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_d(std::min(2, max_d), max_d);
    const DetectionConfig cfg;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const SchmidtSpectrum spectrum = random_spectrum(rng, pick_d(rng));

        const Eq4Sides sides = eq4_check(spectrum);
        const double closed = 2.0 * (1.0 + spectrum.sum_squares());
        report.eq4_max_dev = std::max({report.eq4_max_dev, std::abs(sides.two_copy - sides.four_photon),
                                       std::abs(sides.two_copy - closed), std::abs(sides.four_photon - closed)});

        const FockVector psi2 = build_psi2(spectrum);
        report.projector_max_dev =
            std::max(report.projector_max_dev, std::abs(concurrence_via_projector(psi2) - i_concurrence(psi2)));

        const double p_closed = coincidence_probability(spectrum, cfg);
        const double p_state = coincidence_probability_from_state(spectrum, cfg);
        const double p_norm = 0.125 * cfg.eta_a1 * cfg.eta_a2 * cfg.pump_amplitude * cfg.pump_amplitude
                              * sides.four_photon;
        report.coincidence_max_rel_dev = std::max(
            {report.coincidence_max_rel_dev, std::abs(p_state - p_closed) / p_closed,
             std::abs(p_norm - p_closed) / p_closed});
    }
    return report;
}

} // namespace pdclab
