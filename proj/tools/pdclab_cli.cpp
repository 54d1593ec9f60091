// Command-line front end. Talks to the library only through the C API.

#include "pdclab/pdclab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitTolerance = 3;

struct CliError
{
    int code;
};

int exit_code_for(pdclab_status s)
{
    switch (s) {
    case PDCLAB_OK: return kExitOk;
    case PDCLAB_ERR_IO: return kExitIo;
    case PDCLAB_ERR_TOLERANCE: return kExitTolerance;
    default: return kExitConfig;
    }
}

void check(pdclab_status s)
{
    if (s == PDCLAB_OK)
        return;
    std::cerr << "pdclab: " << pdclab_status_string(s) << ": " << pdclab_last_error() << '\n';
    throw CliError{exit_code_for(s)};
}

// --seed wins, then PDC_LAB_SEED, then whatever the config carries.
std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag)
        return flag;
    if (const char* env = std::getenv("PDC_LAB_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0') {
            std::cerr << "pdclab: PDC_LAB_SEED is not an unsigned integer: " << env << '\n';
            throw CliError{kExitConfig};
        }
        return static_cast<std::uint64_t>(v);
    }
    return std::nullopt;
}

void write_or_print(const std::string& path, const char* text)
{
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
        return;
    }
    check(pdclab_write_text(path.c_str(), text));
}

struct SweepOptions
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::vector<double> theta1;
    std::vector<double> theta2;
};

void add_sweep_options(CLI::App* cmd, SweepOptions& o)
{
    cmd->add_option("--config", o.config, "JSON sweep configuration")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "base RNG seed (row i uses seed + i); falls back to PDC_LAB_SEED");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--theta1-deg", o.theta1, "HWP1 angle(s) in degrees, comma separated")->delimiter(',');
    cmd->add_option("--theta2-deg", o.theta2, "HWP2 angle(s) in degrees, comma separated")->delimiter(',');
}

int run_sweep_command(const SweepOptions& o, const std::vector<double>& default_theta1,
                      const std::vector<double>& default_theta2)
{
    pdclab_sweep_spec* spec = nullptr;
    if (!o.config.empty())
        check(pdclab_sweep_spec_load(o.config.c_str(), &spec));
    else
        check(pdclab_sweep_spec_create_default(&spec));
    std::unique_ptr<pdclab_sweep_spec, decltype(&pdclab_sweep_spec_destroy)> guard(spec, pdclab_sweep_spec_destroy);

    if (const auto seed = resolve_seed(o.seed))
        check(pdclab_sweep_spec_set_seed(spec, *seed));
    const auto& t1 = !o.theta1.empty() ? o.theta1 : default_theta1;
    const auto& t2 = !o.theta2.empty() ? o.theta2 : default_theta2;
    if (!t1.empty())
        check(pdclab_sweep_spec_set_theta1_deg(spec, t1.data(), t1.size()));
    if (!t2.empty())
        check(pdclab_sweep_spec_set_theta2_deg(spec, t2.data(), t2.size()));
    if (!o.format.empty())
        check(pdclab_sweep_spec_set_format(spec, o.format == "json" ? PDCLAB_FORMAT_JSON : PDCLAB_FORMAT_CSV));
    if (!o.out.empty())
        check(pdclab_sweep_spec_set_output_path(spec, o.out.c_str()));

    const char* path = nullptr;
    pdclab_format format = PDCLAB_FORMAT_CSV;
    check(pdclab_sweep_spec_get_output(spec, &path, &format));

    pdclab_sweep_result* result = nullptr;
    check(pdclab_sweep_run(spec, &result));
    std::unique_ptr<pdclab_sweep_result, decltype(&pdclab_sweep_result_destroy)> rguard(result,
                                                                                       pdclab_sweep_result_destroy);
    const char* text = nullptr;
    check(pdclab_sweep_result_render(result, format, &text));
    write_or_print(path, text);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Photon-pair source simulator: I-concurrence from one-sided two-photon coincidences.\n"
                 "All angles are given in degrees."};
    app.require_subcommand(1);

    SweepOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "theory and simulated estimates over a grid of wave-plate angles");
    add_sweep_options(sweep, sweep_opts);

    SweepOptions counts_opts;
    auto* counts = app.add_subcommand(
        "counts", "single-point count simulation (theta1 defaults to 22.5, theta2 to 22.5 degrees)");
    add_sweep_options(counts, counts_opts);

    int max_d = 6;
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> id_seed;
    std::string id_out;
    auto* identities = app.add_subcommand("identities", "brute-force checks of the two-copy identities");
    identities->add_option("--max-d", max_d, "largest Schmidt dimension (<= 8)")->capture_default_str();
    identities->add_option("--trials", trials, "number of random spectra")->capture_default_str();
    identities->add_option("--seed", id_seed, "RNG seed; falls back to PDC_LAB_SEED, then 0");
    identities->add_option("--out", id_out, "output file (default: stdout)");

    std::string timing_config;
    double factor = 100.0;
    auto* timing = app.add_subcommand("timing", "check the time-scale separation conditions");
    timing->add_option("--config", timing_config, "JSON sweep configuration (its timing block is used)")
        ->check(CLI::ExistingFile);
    timing->add_option("--factor", factor, "required window / time-scale ratio")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sweep)
            return run_sweep_command(sweep_opts, {}, {});
        if (*counts)
            return run_sweep_command(counts_opts, {22.5}, {22.5});

        if (*identities) {
            pdclab_identity_report* report = nullptr;
            check(pdclab_identity_run(max_d, trials, resolve_seed(id_seed).value_or(0), &report));
            std::unique_ptr<pdclab_identity_report, decltype(&pdclab_identity_report_destroy)> guard(
                report, pdclab_identity_report_destroy);
            const char* text = nullptr;
            check(pdclab_identity_report_json(report, &text));
            write_or_print(id_out, text);
            int passed = 0;
            check(pdclab_identity_report_passed(report, &passed));
            if (!passed) {
                std::cerr << "pdclab: identity deviations exceed tolerance\n";
                return kExitTolerance;
            }
            return kExitOk;
        }

        if (*timing) {
            pdclab_timing_budget budget;
            pdclab_timing_budget_default(&budget);
            if (!timing_config.empty()) {
                pdclab_sweep_spec* spec = nullptr;
                check(pdclab_sweep_spec_load(timing_config.c_str(), &spec));
                pdclab_sweep_spec_get_timing(spec, &budget);
                pdclab_sweep_spec_destroy(spec);
            }
            pdclab_timing_report report;
            check(pdclab_check_timing(&budget, factor, &report));
            for (size_t i = 0; i < report.count; ++i) {
                const auto& c = report.conditions[i];
                std::printf("%-44s ratio=%-12.6g threshold=%-8.6g %s\n", c.name, c.ratio, c.threshold,
                            c.passed ? "PASS" : "FAIL");
            }
            std::printf("overall: %s\n", report.all_passed ? "PASS" : "FAIL");
            return kExitOk;
        }
    } catch (const CliError& e) {
        return e.code;
    }
    return kExitOk;
}
