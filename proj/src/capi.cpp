#include "pdclab/pdclab.h"

#include "pdclab/counting.hpp"
#include "pdclab/error.hpp"
#include "pdclab/measures.hpp"
#include "pdclab/optics.hpp"
#include "pdclab/runner.hpp"
#include "pdclab/source.hpp"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

struct pdclab_state
{
    pdclab::FockVector value;
};

struct pdclab_sweep_spec
{
    pdclab::SweepSpec value;
};

struct pdclab_sweep_result
{
    std::vector<pdclab::SweepRow> rows;
    std::string rendered;
};

struct pdclab_identity_report
{
    pdclab::IdentityReport value;
    std::string json;
};

namespace {

thread_local std::string g_last_error;

pdclab_status fail(pdclab_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
pdclab_status guarded(Fn&& fn)
{
    try {
        fn();
        g_last_error.clear();
        return PDCLAB_OK;
    } catch (const pdclab::ConfigError& e) {
        return fail(PDCLAB_ERR_CONFIG, e.what());
    } catch (const pdclab::IoError& e) {
        return fail(PDCLAB_ERR_IO, e.what());
    } catch (const pdclab::PreconditionError& e) {
        return fail(PDCLAB_ERR_PRECONDITION, e.what());
    } catch (const pdclab::EstimateError& e) {
        return fail(PDCLAB_ERR_ESTIMATE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PDCLAB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(PDCLAB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PDCLAB_ERR_INTERNAL, "unknown error");
    }
}

#define PDCLAB_REQUIRE(ptr)                                                                                           \
    do {                                                                                                              \
        if ((ptr) == nullptr)                                                                                         \
            return fail(PDCLAB_ERR_INVALID_ARG, #ptr " must not be NULL");                                            \
    } while (0)

pdclab::SchmidtSpectrum spectrum_from(const double* weights, size_t d)
{
    if (d == 0)
        throw pdclab::ConfigError("spectrum dimension must be positive");
    return pdclab::SchmidtSpectrum(std::vector<double>(weights, weights + d));
}

pdclab::DetectionConfig to_cpp(const pdclab_detection_config& c)
{
    pdclab::DetectionConfig out;
    out.eta_a1 = c.eta_a1;
    out.eta_a2 = c.eta_a2;
    out.rep_rate_hz = c.rep_rate_hz;
    out.pump_amplitude = c.pump_amplitude;
    out.duration_s = c.duration_s;
    out.seed = c.seed;
    return out;
}

pdclab_detection_config to_c(const pdclab::DetectionConfig& c)
{
    return {c.eta_a1, c.eta_a2, c.rep_rate_hz, c.pump_amplitude, c.duration_s, c.seed};
}

pdclab_timing_budget to_c(const pdclab::TimingBudget& t)
{
    return {t.delta_t_pulse_sep, t.tau_pump, t.tau_corr, t.coincidence_window};
}

pdclab::OutputFormat to_cpp(pdclab_format f)
{
    switch (f) {
    case PDCLAB_FORMAT_CSV: return pdclab::OutputFormat::Csv;
    case PDCLAB_FORMAT_JSON: return pdclab::OutputFormat::Json;
    }
    throw pdclab::ConfigError("unknown output format");
}

pdclab_state* wrap(pdclab::FockVector v)
{
    return new pdclab_state{std::move(v)};
}

} // namespace

extern "C" {

const char* pdclab_version(void)
{
    return "1.0.0";
}

const char* pdclab_last_error(void)
{
    return g_last_error.c_str();
}

const char* pdclab_status_string(pdclab_status status)
{
    switch (status) {
    case PDCLAB_OK: return "ok";
    case PDCLAB_ERR_CONFIG: return "configuration error";
    case PDCLAB_ERR_IO: return "I/O error";
    case PDCLAB_ERR_TOLERANCE: return "tolerance exceeded";
    case PDCLAB_ERR_PRECONDITION: return "precondition violated";
    case PDCLAB_ERR_ESTIMATE: return "estimate undefined";
    case PDCLAB_ERR_INVALID_ARG: return "invalid argument";
    case PDCLAB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

// ---- states ---------------------------------------------------------------

pdclab_status pdclab_state_psi2(const double* weights, size_t d, pdclab_state** out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = wrap(pdclab::build_psi2(spectrum_from(weights, d))); });
}

pdclab_status pdclab_state_psi4(const double* weights, size_t d, pdclab_state** out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = wrap(pdclab::build_psi4(spectrum_from(weights, d))); });
}

pdclab_status pdclab_state_truncated_source(const double* weights, size_t d, double pump_amplitude,
                                            int truncation_order, pdclab_state** out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(out);
    return guarded([&] {
        pdclab::TruncatedSource src{spectrum_from(weights, d), pump_amplitude, truncation_order, {}};
        *out = wrap(pdclab::build_truncated_source(src));
    });
}

pdclab_status pdclab_state_split(const pdclab_state* state, pdclab_state** out)
{
    PDCLAB_REQUIRE(state);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = wrap(pdclab::split_side_a(state->value)); });
}

pdclab_status pdclab_state_coincidence(const pdclab_state* state, pdclab_state** out)
{
    PDCLAB_REQUIRE(state);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = wrap(pdclab::coincidence_component(state->value)); });
}

pdclab_status pdclab_state_norm2(const pdclab_state* state, double* out)
{
    PDCLAB_REQUIRE(state);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = state->value.norm2(); });
}

pdclab_status pdclab_state_inner(const pdclab_state* x, const pdclab_state* y, double* re, double* im)
{
    PDCLAB_REQUIRE(x);
    PDCLAB_REQUIRE(y);
    return guarded([&] {
        const auto v = pdclab::inner(x->value, y->value);
        if (re)
            *re = v.real();
        if (im)
            *im = v.imag();
    });
}

pdclab_status pdclab_state_size(const pdclab_state* state, size_t* out)
{
    PDCLAB_REQUIRE(state);
    PDCLAB_REQUIRE(out);
    *out = state->value.size();
    return PDCLAB_OK;
}

void pdclab_state_destroy(pdclab_state* state)
{
    delete state;
}

// ---- measures ---------------------------------------------------------------

pdclab_status pdclab_schmidt_from_angles_deg(double theta1_deg, double theta2_deg, double* out_weights)
{
    PDCLAB_REQUIRE(out_weights);
    return guarded([&] {
        const auto s = pdclab::schmidt_from_angles(pdclab::AnglePair::from_degrees(theta1_deg, theta2_deg));
        std::copy(s.weights().begin(), s.weights().end(), out_weights);
    });
}

pdclab_status pdclab_i_concurrence(const double* weights, size_t d, double* out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = pdclab::i_concurrence(pdclab::build_psi2(spectrum_from(weights, d))); });
}

pdclab_status pdclab_concurrence_via_projector(const double* weights, size_t d, double* out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(out);
    return guarded(
        [&] { *out = pdclab::concurrence_via_projector(pdclab::build_psi2(spectrum_from(weights, d))); });
}

pdclab_status pdclab_max_i_concurrence(int d1, int d2, double* out)
{
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = pdclab::max_i_concurrence(d1, d2); });
}

pdclab_status pdclab_eq4_check(const double* weights, size_t d, double* two_copy, double* four_photon)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(two_copy);
    PDCLAB_REQUIRE(four_photon);
    return guarded([&] {
        const auto sides = pdclab::eq4_check(spectrum_from(weights, d));
        *two_copy = sides.two_copy;
        *four_photon = sides.four_photon;
    });
}

pdclab_status pdclab_sub_concurrence_c12_deg(double theta1_deg, double theta2_deg, double* out)
{
    PDCLAB_REQUIRE(out);
    return guarded(
        [&] { *out = pdclab::sub_concurrence_c12(pdclab::AnglePair::from_degrees(theta1_deg, theta2_deg)); });
}

// ---- counting ---------------------------------------------------------------

void pdclab_detection_config_default(pdclab_detection_config* out)
{
    if (out)
        *out = to_c(pdclab::DetectionConfig{});
}

void pdclab_timing_budget_default(pdclab_timing_budget* out)
{
    if (out)
        *out = to_c(pdclab::TimingBudget{});
}

pdclab_status pdclab_coincidence_probability(const double* weights, size_t d, const pdclab_detection_config* cfg,
                                             double* out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(cfg);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = pdclab::coincidence_probability(spectrum_from(weights, d), to_cpp(*cfg)); });
}

pdclab_status pdclab_simulate_counts(const double* weights, size_t d, const pdclab_detection_config* cfg,
                                     pdclab_count_record* out)
{
    PDCLAB_REQUIRE(weights);
    PDCLAB_REQUIRE(cfg);
    PDCLAB_REQUIRE(out);
    return guarded([&] {
        const auto r = pdclab::simulate_counts(spectrum_from(weights, d), to_cpp(*cfg));
        *out = {r.n_a1, r.n_a2, r.n_coinc, r.duration_s, r.rep_rate_hz};
    });
}

pdclab_status pdclab_estimate_counts(const pdclab_count_record* record, pdclab_estimate* out)
{
    PDCLAB_REQUIRE(record);
    PDCLAB_REQUIRE(out);
    return guarded([&] {
        pdclab::CountRecord r{record->n_a1, record->n_a2, record->n_coinc, record->duration_s, record->rep_rate_hz};
        const auto e = pdclab::estimate_with_uncertainty(r);
        *out = {e.k_hat, e.k_sigma, e.c_hat, e.c_sigma, e.flags};
    });
}

pdclab_status pdclab_check_timing(const pdclab_timing_budget* budget, double separation_factor,
                                  pdclab_timing_report* out)
{
    PDCLAB_REQUIRE(budget);
    PDCLAB_REQUIRE(out);
    return guarded([&] {
        pdclab::TimingBudget b{budget->delta_t_pulse_sep, budget->tau_pump, budget->tau_corr,
                               budget->coincidence_window};
        const auto report = pdclab::check_timing(b, separation_factor);
        std::memset(out, 0, sizeof *out);
        for (const auto& c : report.conditions) {
            if (out->count == sizeof out->conditions / sizeof out->conditions[0])
                break;
            auto& dst = out->conditions[out->count++];
            std::strncpy(dst.name, c.name.c_str(), sizeof dst.name - 1);
            dst.ratio = c.ratio;
            dst.threshold = c.threshold;
            dst.passed = c.passed ? 1 : 0;
        }
        out->all_passed = report.all_passed() ? 1 : 0;
    });
}

// ---- sweeps -----------------------------------------------------------------

pdclab_status pdclab_sweep_spec_create_default(pdclab_sweep_spec** out)
{
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = new pdclab_sweep_spec{}; });
}

pdclab_status pdclab_sweep_spec_load(const char* path, pdclab_sweep_spec** out)
{
    PDCLAB_REQUIRE(path);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = new pdclab_sweep_spec{pdclab::load_sweep_spec(path)}; });
}

pdclab_status pdclab_sweep_spec_parse(const char* json_text, pdclab_sweep_spec** out)
{
    PDCLAB_REQUIRE(json_text);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = new pdclab_sweep_spec{pdclab::parse_sweep_spec(json_text)}; });
}

pdclab_status pdclab_sweep_spec_set_seed(pdclab_sweep_spec* spec, uint64_t seed)
{
    PDCLAB_REQUIRE(spec);
    spec->value.detection.seed = seed;
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_spec_set_theta1_deg(pdclab_sweep_spec* spec, const double* angles, size_t n)
{
    PDCLAB_REQUIRE(spec);
    PDCLAB_REQUIRE(angles);
    if (n == 0)
        return fail(PDCLAB_ERR_CONFIG, "theta1 list must be nonempty");
    spec->value.theta1_list.assign(angles, angles + n);
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_spec_set_theta2_deg(pdclab_sweep_spec* spec, const double* angles, size_t n)
{
    PDCLAB_REQUIRE(spec);
    PDCLAB_REQUIRE(angles);
    if (n == 0)
        return fail(PDCLAB_ERR_CONFIG, "theta2 list must be nonempty");
    spec->value.theta2_list.assign(angles, angles + n);
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_spec_set_format(pdclab_sweep_spec* spec, pdclab_format format)
{
    PDCLAB_REQUIRE(spec);
    return guarded([&] { spec->value.format = to_cpp(format); });
}

pdclab_status pdclab_sweep_spec_set_output_path(pdclab_sweep_spec* spec, const char* path)
{
    PDCLAB_REQUIRE(spec);
    PDCLAB_REQUIRE(path);
    return guarded([&] { spec->value.output_path = path; });
}

pdclab_status pdclab_sweep_spec_get_output(const pdclab_sweep_spec* spec, const char** path, pdclab_format* format)
{
    PDCLAB_REQUIRE(spec);
    if (path)
        *path = spec->value.output_path.c_str();
    if (format)
        *format = spec->value.format == pdclab::OutputFormat::Json ? PDCLAB_FORMAT_JSON : PDCLAB_FORMAT_CSV;
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_spec_get_detection(const pdclab_sweep_spec* spec, pdclab_detection_config* out)
{
    PDCLAB_REQUIRE(spec);
    PDCLAB_REQUIRE(out);
    *out = to_c(spec->value.detection);
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_spec_get_timing(const pdclab_sweep_spec* spec, pdclab_timing_budget* out)
{
    PDCLAB_REQUIRE(spec);
    PDCLAB_REQUIRE(out);
    *out = to_c(spec->value.timing);
    return PDCLAB_OK;
}

void pdclab_sweep_spec_destroy(pdclab_sweep_spec* spec)
{
    delete spec;
}

pdclab_status pdclab_sweep_run(const pdclab_sweep_spec* spec, pdclab_sweep_result** out)
{
    PDCLAB_REQUIRE(spec);
    PDCLAB_REQUIRE(out);
    return guarded([&] { *out = new pdclab_sweep_result{pdclab::run_sweep(spec->value), {}}; });
}

pdclab_status pdclab_sweep_result_size(const pdclab_sweep_result* result, size_t* out)
{
    PDCLAB_REQUIRE(result);
    PDCLAB_REQUIRE(out);
    *out = result->rows.size();
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_result_row(const pdclab_sweep_result* result, size_t index, pdclab_sweep_row* out)
{
    PDCLAB_REQUIRE(result);
    PDCLAB_REQUIRE(out);
    if (index >= result->rows.size())
        return fail(PDCLAB_ERR_INVALID_ARG, "row index out of range");
    const auto& r = result->rows[index];
    *out = {r.theta1_deg, r.theta2_deg, r.k_theory, r.c_theory, r.c12_theory, r.n_a1, r.n_a2,
            r.n_coinc,    r.k_est,      r.k_sigma,  r.c_est,    r.c_sigma,    r.warn_flags};
    return PDCLAB_OK;
}

pdclab_status pdclab_sweep_result_render(pdclab_sweep_result* result, pdclab_format format, const char** text)
{
    PDCLAB_REQUIRE(result);
    PDCLAB_REQUIRE(text);
    return guarded([&] {
        result->rendered = pdclab::render_rows(result->rows, to_cpp(format));
        *text = result->rendered.c_str();
    });
}

pdclab_status pdclab_sweep_result_write(const pdclab_sweep_result* result, pdclab_format format, const char* path)
{
    PDCLAB_REQUIRE(result);
    PDCLAB_REQUIRE(path);
    return guarded([&] { pdclab::emit(result->rows, to_cpp(format), path); });
}

void pdclab_sweep_result_destroy(pdclab_sweep_result* result)
{
    delete result;
}

// ---- identity suite ---------------------------------------------------------

pdclab_status pdclab_identity_run(int max_d, uint64_t trials, uint64_t seed, pdclab_identity_report** out)
{
    PDCLAB_REQUIRE(out);
    return guarded([&] {
        auto report = pdclab::run_identity_suite(max_d, trials, seed);
        std::string json = report.to_json();
        *out = new pdclab_identity_report{report, std::move(json)};
    });
}

pdclab_status pdclab_identity_report_passed(const pdclab_identity_report* report, int* passed)
{
    PDCLAB_REQUIRE(report);
    PDCLAB_REQUIRE(passed);
    *passed = report->value.passed() ? 1 : 0;
    return PDCLAB_OK;
}

pdclab_status pdclab_identity_report_deviations(const pdclab_identity_report* report, double* eq4, double* projector,
                                                double* coincidence)
{
    PDCLAB_REQUIRE(report);
    if (eq4)
        *eq4 = report->value.eq4_max_dev;
    if (projector)
        *projector = report->value.projector_max_dev;
    if (coincidence)
        *coincidence = report->value.coincidence_max_rel_dev;
    return PDCLAB_OK;
}

pdclab_status pdclab_identity_report_json(const pdclab_identity_report* report, const char** text)
{
    PDCLAB_REQUIRE(report);
    PDCLAB_REQUIRE(text);
    *text = report->json.c_str();
    return PDCLAB_OK;
}

void pdclab_identity_report_destroy(pdclab_identity_report* report)
{
    delete report;
}

pdclab_status pdclab_write_text(const char* path, const char* text)
{
    PDCLAB_REQUIRE(path);
    PDCLAB_REQUIRE(text);
    return guarded([&] { pdclab::write_text_file(path, text); });
}

} // extern "C"
