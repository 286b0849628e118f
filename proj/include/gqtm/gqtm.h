/*
 * C interface to the gqtm library.
 *
 * Objects are opaque handles created by gqtm_*_create-style calls and released
 * with the matching *_free call. Every fallible call returns a gqtm_status;
 * on failure gqtm_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Words are binary
 * potential sequences; chains are tight-binding Hamiltonians built on them.
 */
#ifndef GQTM_H
#define GQTM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define GQTM_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define GQTM_API __attribute__((visibility("default")))
#else
#  define GQTM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gqtm_status {
    GQTM_OK = 0,
    GQTM_ERR_INVALID_ARGUMENT = 1,
    GQTM_ERR_MALFORMED_COUNTER = 2,
    GQTM_ERR_DEGENERATE_STATE = 3,
    GQTM_ERR_HORIZON = 4,
    GQTM_ERR_CORRUPTED_OPERATOR = 5,
    GQTM_ERR_RESOURCE = 6,
    GQTM_ERR_OUT_OF_BAND = 7,
    GQTM_ERR_DIMENSION = 8,
    GQTM_ERR_NOT_NORMALIZED = 9,
    GQTM_ERR_BUFFER_TOO_SMALL = 10,
    GQTM_ERR_INTERNAL = 99
} gqtm_status;

typedef enum gqtm_evolve_method {
    GQTM_EVOLVE_EXACT_DIAG = 0,
    GQTM_EVOLVE_CHECKED_STEPPER = 1
} gqtm_evolve_method;

typedef struct gqtm_word gqtm_word;
typedef struct gqtm_chain gqtm_chain;

GQTM_API const char* gqtm_version(void);
GQTM_API const char* gqtm_last_error(void);
GQTM_API const char* gqtm_status_name(gqtm_status status);

/* Budgets read from GQTM_MAX_STEPS / GQTM_MAX_ENTRIES when set. */
GQTM_API size_t gqtm_step_budget(void);
GQTM_API size_t gqtm_entry_budget(void);

/* ---- words ------------------------------------------------------------ */

/* Counting-machine word for markers spaced n_values[i] + 1 apart, from the
 * head in state 1 on the first units marker until every counter has been
 * enumerated and restored. */
GQTM_API gqtm_status gqtm_word_simulate(const int* n_values, size_t count, double gamma,
                                        gqtm_word** out);
/* First `limit` bits of the single-marker (non-halting) machine's word. */
GQTM_API gqtm_status gqtm_word_simulate_single(size_t limit, double gamma, gqtm_word** out);
/* Substitution construction. For one block this is expand(R_n); for several
 * blocks the inter-block gaps are measured from a simulation. */
GQTM_API gqtm_status gqtm_word_substitution(const int* n_values, size_t count, gqtm_word** out);
/* First `limit` bits of the infinite expanded word, generated lazily. */
GQTM_API gqtm_status gqtm_word_stream(size_t limit, gqtm_word** out);
/* From a NUL-terminated string of '0'/'1'. */
GQTM_API gqtm_status gqtm_word_from_string(const char* bits, gqtm_word** out);
GQTM_API void gqtm_word_free(gqtm_word* word);

GQTM_API size_t gqtm_word_length(const gqtm_word* word);
/* Writes the bits as '0'/'1' plus a terminating NUL; needs length + 1 bytes. */
GQTM_API gqtm_status gqtm_word_bits(const gqtm_word* word, char* buffer, size_t buffer_size);
/* Keeps the first `length` bits, or pads with zeros up to `length`. */
GQTM_API gqtm_status gqtm_word_resize(gqtm_word* word, size_t length);
/* Run-length profile: pairs (zero gap, one run) written to `pairs` as
 * 2 * run_count values. Call with pairs == NULL to query run_count. */
GQTM_API gqtm_status gqtm_word_run_profile(const gqtm_word* word, size_t* pairs, size_t capacity,
                                           size_t* run_count, size_t* trailing_gap);
/* Gap lengths recorded by a multi-block substitution word (may be zero). */
GQTM_API size_t gqtm_word_gap_count(const gqtm_word* word);
GQTM_API size_t gqtm_word_gap(const gqtm_word* word, size_t index);

/* ---- tight-binding chains ---------------------------------------------- */

GQTM_API gqtm_status gqtm_chain_create(const gqtm_word* word, double K, double gamma, gqtm_chain** out);
GQTM_API void gqtm_chain_free(gqtm_chain* chain);
GQTM_API size_t gqtm_chain_sites(const gqtm_chain* chain);

/* All eigenvalues ascending; `values` must hold gqtm_chain_sites() doubles. */
GQTM_API gqtm_status gqtm_chain_spectrum(const gqtm_chain* chain, double* values, size_t capacity);

/* Evolves (re, im) in place by time t. */
GQTM_API gqtm_status gqtm_chain_evolve(const gqtm_chain* chain, double* re, double* im, size_t length,
                                       double t, gqtm_evolve_method method);
GQTM_API gqtm_status gqtm_chain_energy(const gqtm_chain* chain, const double* re, const double* im,
                                       size_t length, double* energy);

/* |t|^2 and |r|^2 for the word placed between two uniform hopping-K leads. */
GQTM_API gqtm_status gqtm_transmission(const gqtm_word* word, double energy, double K, double gamma,
                                       double* transmission, double* reflection);

/* ---- verification ------------------------------------------------------ */

/* Runs the oracle suite. *passed receives 1/0; *report_json receives a
 * string to release with gqtm_string_free. */
GQTM_API gqtm_status gqtm_verify(int n_max, int inject_fault, int* passed, char** report_json);
GQTM_API void gqtm_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* GQTM_H */
