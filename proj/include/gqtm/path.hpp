#pragma once

// Unfolding of a computation path into an ordered chain of states, and the
// binary bond-potential word it induces: bit k is 1 iff the step from path
// position k to k+1 was a weighted (gamma < 1) step.

#include "gqtm/lattice.hpp"
#include "gqtm/step.hpp"
#include "gqtm/substitution.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gqtm {

struct PathStep {
    std::size_t term_id = 0;
    double weight = 1.0;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct PathRecord {
    /// Position 0 is the furthest state reached backwards.
    std::vector<BasisState> states;
    /// steps[k] connects states[k] to states[k+1].
    std::vector<PathStep> steps;
    /// Path position of the seed.
    std::size_t seed_position = 0;
    /// Classification of the explored window: a direction counts as
    /// terminated only if no further step exists past its horizon.
    PathClass termination;
};

struct PotentialWord {
    std::vector<Bit> bits;

    friend bool operator==(const PotentialWord&, const PotentialWord&) = default;
};

/// Throws corrupted_operator if a recorded state has two preimages.
PathRecord unfold_path(const StepOperator& op, const BasisState& seed, std::size_t back_steps,
                       std::size_t fwd_steps);

PotentialWord potential_word(const PathRecord& path);
PotentialWord potential_word(std::span<const PathStep> steps);

/// Forward steps only, without materializing states.
std::vector<PathStep> trace_steps(const StepOperator& op, const BasisState& seed, std::size_t max_steps);

struct RunProfile {
    /// (zero-run length, one-run length) per run of ones.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t trailing_gap = 0;

    friend bool operator==(const RunProfile&, const RunProfile&) = default;
};

RunProfile run_profile(std::span<const Bit> bits);

std::span<const Bit> strip_trailing_zeros(std::span<const Bit> bits) noexcept;

/// Counting-machine word from |1, n_1 + 1> on markers spaced n_i + 1 apart,
/// up to the first step at which the head stands right of the last marker in
/// state 1 (all counters enumerated and restored). Throws horizon_exhausted
/// past `max_steps`.
PotentialWord simulate_counting_word(std::span<const int> n_values, double gamma,
                                     std::size_t max_steps, Site translation = 0);

/// First `limit` bits of the word of the single-marker machine started at
/// |1, 0>, which counts without halting.
PotentialWord simulate_single_marker_word(std::size_t limit, double gamma);

struct MultiMarkerConstruction {
    ExpandedWord word;
    /// Zeros following the last block in the simulated word.
    std::size_t trailing_gap = 0;
};

/// Reads the inter-block gaps off a simulated multi-marker word: block i is
/// expand(r_prefix(n_i)) and must appear verbatim. Throws invalid_argument if
/// the simulated word does not have that shape. Requires every n_i >= 1.
MultiMarkerConstruction measure_marker_gaps(std::span<const Bit> simulated, std::span<const int> n_values);

/// Simulates once with gamma = 1/2 to measure gaps, then builds the word by
/// concatenation.
MultiMarkerConstruction construct_multi_marker(std::span<const int> n_values, std::size_t max_steps);

} // namespace gqtm
