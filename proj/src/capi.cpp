#include "gqtm/gqtm.h"

#include "gqtm/counting.hpp"
#include "gqtm/error.hpp"
#include "gqtm/path.hpp"
#include "gqtm/substitution.hpp"
#include "gqtm/tight_binding.hpp"
#include "gqtm/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

struct gqtm_word {
    std::vector<gqtm::Bit> bits;
    std::vector<std::size_t> gaps;
};

struct gqtm_chain {
    gqtm::TightBindingMatrix matrix;
};

namespace {

thread_local std::string g_last_error;

gqtm_status to_status(gqtm::ErrorCode code) {
    using gqtm::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument: return GQTM_ERR_INVALID_ARGUMENT;
    case ErrorCode::malformed_counter: return GQTM_ERR_MALFORMED_COUNTER;
    case ErrorCode::degenerate_state: return GQTM_ERR_DEGENERATE_STATE;
    case ErrorCode::horizon_exhausted: return GQTM_ERR_HORIZON;
    case ErrorCode::corrupted_operator: return GQTM_ERR_CORRUPTED_OPERATOR;
    case ErrorCode::resource_exhausted: return GQTM_ERR_RESOURCE;
    case ErrorCode::out_of_band: return GQTM_ERR_OUT_OF_BAND;
    case ErrorCode::dimension_mismatch: return GQTM_ERR_DIMENSION;
    case ErrorCode::not_normalized: return GQTM_ERR_NOT_NORMALIZED;
    }
    return GQTM_ERR_INTERNAL;
}

gqtm_status set_error(gqtm_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <class F>
gqtm_status guarded(F&& body) {
    try {
        body();
        return GQTM_OK;
    } catch (const gqtm::Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(GQTM_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return set_error(GQTM_ERR_INTERNAL, e.what());
    }
}

std::size_t env_budget(const char* name, std::size_t fallback) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (end == value || *end != '\0' || parsed == 0) return fallback;
    return static_cast<std::size_t>(parsed);
}

std::size_t step_budget_for(std::span<const int> n_values) {
    std::size_t total = 64;
    for (int n : n_values) {
        if (n < 0 || n > 40) gqtm::fail(gqtm::ErrorCode::invalid_argument, "counter widths must lie in 0..40");
        total += n == 0 ? 8 : gqtm::safe_step_bound(n);
    }
    const std::size_t cap = gqtm_step_budget();
    if (total > cap)
        gqtm::fail(gqtm::ErrorCode::resource_exhausted,
                   "simulation needs up to " + std::to_string(total) + " steps, budget is " + std::to_string(cap));
    return total;
}

#define GQTM_REQUIRE(cond, message)                                                                        \
    do {                                                                                                   \
        if (!(cond)) return set_error(GQTM_ERR_INVALID_ARGUMENT, message);                                 \
    } while (0)

} // namespace

extern "C" {

const char* gqtm_version(void) { return GQTM_VERSION; }

const char* gqtm_last_error(void) { return g_last_error.c_str(); }

const char* gqtm_status_name(gqtm_status status) {
    switch (status) {
    case GQTM_OK: return "ok";
    case GQTM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case GQTM_ERR_MALFORMED_COUNTER: return "malformed-counter";
    case GQTM_ERR_DEGENERATE_STATE: return "degenerate-state";
    case GQTM_ERR_HORIZON: return "horizon-exhausted";
    case GQTM_ERR_CORRUPTED_OPERATOR: return "corrupted-operator";
    case GQTM_ERR_RESOURCE: return "resource-exhausted";
    case GQTM_ERR_OUT_OF_BAND: return "out-of-band";
    case GQTM_ERR_DIMENSION: return "dimension-mismatch";
    case GQTM_ERR_NOT_NORMALIZED: return "not-normalized";
    case GQTM_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case GQTM_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

size_t gqtm_step_budget(void) { return env_budget("GQTM_MAX_STEPS", std::size_t{1} << 30); }

size_t gqtm_entry_budget(void) { return env_budget("GQTM_MAX_ENTRIES", gqtm::kDefaultMaxEntries); }

gqtm_status gqtm_word_simulate(const int* n_values, size_t count, double gamma, gqtm_word** out) {
    GQTM_REQUIRE(out != nullptr, "output handle is null");
    GQTM_REQUIRE(n_values != nullptr && count > 0, "need at least one counter width");
    return guarded([&] {
        const std::span<const int> ns(n_values, count);
        auto word = gqtm::simulate_counting_word(ns, gamma, step_budget_for(ns));
        *out = new gqtm_word{std::move(word.bits), {}};
    });
}

gqtm_status gqtm_word_simulate_single(size_t limit, double gamma, gqtm_word** out) {
    GQTM_REQUIRE(out != nullptr, "output handle is null");
    GQTM_REQUIRE(limit >= 1, "limit must be >= 1");
    return guarded([&] {
        if (limit > gqtm_step_budget())
            gqtm::fail(gqtm::ErrorCode::resource_exhausted, "limit exceeds the step budget");
        auto word = gqtm::simulate_single_marker_word(limit, gamma);
        *out = new gqtm_word{std::move(word.bits), {}};
    });
}

gqtm_status gqtm_word_substitution(const int* n_values, size_t count, gqtm_word** out) {
    GQTM_REQUIRE(out != nullptr, "output handle is null");
    GQTM_REQUIRE(n_values != nullptr && count > 0, "need at least one counter width");
    return guarded([&] {
        const std::span<const int> ns(n_values, count);
        if (count == 1) {
            auto word = gqtm::expand(gqtm::r_prefix(ns[0], gqtm_entry_budget()));
            *out = new gqtm_word{std::move(word.bits), {}};
            return;
        }
        for (int n : ns)
            (void)gqtm::r_prefix(n, gqtm_entry_budget()); // budget check before simulating
        auto built = gqtm::construct_multi_marker(ns, step_budget_for(ns));
        *out = new gqtm_word{std::move(built.word.bits), std::move(built.word.gaps)};
    });
}

gqtm_status gqtm_word_stream(size_t limit, gqtm_word** out) {
    GQTM_REQUIRE(out != nullptr, "output handle is null");
    return guarded([&] {
        if (limit > gqtm_entry_budget() * 64)
            gqtm::fail(gqtm::ErrorCode::resource_exhausted, "limit exceeds the entry budget");
        auto word = gqtm::stream_word(limit);
        *out = new gqtm_word{std::move(word.bits), {}};
    });
}

gqtm_status gqtm_word_from_string(const char* bits, gqtm_word** out) {
    GQTM_REQUIRE(out != nullptr && bits != nullptr, "null argument");
    return guarded([&] { *out = new gqtm_word{gqtm::bits_from_string(bits), {}}; });
}

void gqtm_word_free(gqtm_word* word) { delete word; }

size_t gqtm_word_length(const gqtm_word* word) { return word ? word->bits.size() : 0; }

gqtm_status gqtm_word_bits(const gqtm_word* word, char* buffer, size_t buffer_size) {
    GQTM_REQUIRE(word != nullptr && buffer != nullptr, "null argument");
    if (buffer_size < word->bits.size() + 1)
        return set_error(GQTM_ERR_BUFFER_TOO_SMALL, "buffer needs length + 1 bytes");
    for (std::size_t i = 0; i < word->bits.size(); ++i) buffer[i] = word->bits[i] ? '1' : '0';
    buffer[word->bits.size()] = '\0';
    return GQTM_OK;
}

gqtm_status gqtm_word_resize(gqtm_word* word, size_t length) {
    GQTM_REQUIRE(word != nullptr, "null word");
    return guarded([&] { word->bits.resize(length, 0); });
}

gqtm_status gqtm_word_run_profile(const gqtm_word* word, size_t* pairs, size_t capacity, size_t* run_count,
                                  size_t* trailing_gap) {
    GQTM_REQUIRE(word != nullptr && run_count != nullptr, "null argument");
    const auto profile = gqtm::run_profile(word->bits);
    *run_count = profile.runs.size();
    if (trailing_gap) *trailing_gap = profile.trailing_gap;
    if (pairs == nullptr) return GQTM_OK;
    if (capacity < 2 * profile.runs.size())
        return set_error(GQTM_ERR_BUFFER_TOO_SMALL, "profile buffer needs 2 * run_count entries");
    return guarded([&] {
        for (std::size_t i = 0; i < profile.runs.size(); ++i) {
            pairs[2 * i] = profile.runs[i].first;
            pairs[2 * i + 1] = profile.runs[i].second;
        }
    });
}

size_t gqtm_word_gap_count(const gqtm_word* word) { return word ? word->gaps.size() : 0; }

size_t gqtm_word_gap(const gqtm_word* word, size_t index) {
    return (word && index < word->gaps.size()) ? word->gaps[index] : 0;
}

gqtm_status gqtm_chain_create(const gqtm_word* word, double K, double gamma, gqtm_chain** out) {
    GQTM_REQUIRE(word != nullptr && out != nullptr, "null argument");
    return guarded([&] { *out = new gqtm_chain{gqtm::build_hamiltonian(word->bits, K, gamma)}; });
}

void gqtm_chain_free(gqtm_chain* chain) { delete chain; }

size_t gqtm_chain_sites(const gqtm_chain* chain) { return chain ? chain->matrix.sites() : 0; }

gqtm_status gqtm_chain_spectrum(const gqtm_chain* chain, double* values, size_t capacity) {
    GQTM_REQUIRE(chain != nullptr && values != nullptr, "null argument");
    if (capacity < chain->matrix.sites())
        return set_error(GQTM_ERR_BUFFER_TOO_SMALL, "spectrum buffer smaller than the chain");
    return guarded([&] {
        const auto ev = gqtm::spectrum(chain->matrix);
        std::copy(ev.begin(), ev.end(), values);
    });
}

gqtm_status gqtm_chain_evolve(const gqtm_chain* chain, double* re, double* im, size_t length, double t,
                              gqtm_evolve_method method) {
    GQTM_REQUIRE(chain != nullptr && re != nullptr && im != nullptr, "null argument");
    return guarded([&] {
        std::vector<gqtm::Complex> psi(length);
        for (std::size_t i = 0; i < length; ++i) psi[i] = {re[i], im[i]};
        const auto m = method == GQTM_EVOLVE_CHECKED_STEPPER ? gqtm::EvolveMethod::checked_stepper
                                                             : gqtm::EvolveMethod::exact_diag;
        const auto out = gqtm::evolve(chain->matrix, psi, t, m);
        for (std::size_t i = 0; i < length; ++i) {
            re[i] = out[i].real();
            im[i] = out[i].imag();
        }
    });
}

gqtm_status gqtm_chain_energy(const gqtm_chain* chain, const double* re, const double* im, size_t length,
                              double* energy) {
    GQTM_REQUIRE(chain != nullptr && re != nullptr && im != nullptr && energy != nullptr, "null argument");
    return guarded([&] {
        std::vector<gqtm::Complex> psi(length);
        for (std::size_t i = 0; i < length; ++i) psi[i] = {re[i], im[i]};
        *energy = gqtm::expectation(chain->matrix, psi);
    });
}

gqtm_status gqtm_transmission(const gqtm_word* word, double energy, double K, double gamma, double* transmission,
                              double* reflection) {
    GQTM_REQUIRE(word != nullptr && transmission != nullptr, "null argument");
    return guarded([&] {
        const auto s = gqtm::scatter(word->bits, energy, K, gamma);
        *transmission = s.transmission;
        if (reflection) *reflection = s.reflection;
    });
}

gqtm_status gqtm_verify(int n_max, int inject_fault, int* passed, char** report_json) {
    GQTM_REQUIRE(passed != nullptr && report_json != nullptr, "null argument");
    return guarded([&] {
        gqtm::VerifyOptions options;
        options.n_max = n_max;
        options.inject_fault = inject_fault != 0;
        const auto report = gqtm::run_verification(options);
        const std::string text = report.to_json();
        char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
        if (buffer == nullptr) throw std::bad_alloc();
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *passed = report.pass ? 1 : 0;
        *report_json = buffer;
    });
}

void gqtm_string_free(char* text) { std::free(text); }

} // extern "C"
