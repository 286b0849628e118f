#pragma once

// The seven-term counting machine: starting at the units marker of a blank
// counter of n digits it enumerates 0 .. 2^n - 1 by repeated increments,
// restores the blank counter on overflow and then runs off to the right.

#include "gqtm/lattice.hpp"
#include "gqtm/step.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gqtm {

/// Head states of the counting machine.
inline constexpr HeadState kSeek = 0;      // travelling right towards a marker
inline constexpr HeadState kReturn = 1;    // carrying / returning to the units marker
inline constexpr HeadState kIncrement = 2; // propagating a carry leftwards

/// 1-based ids of the seven terms, in the order they appear in `build_counting_T`.
inline constexpr std::size_t kWeightedTerm = 5;

struct CountingMachineConfig {
    double gamma = 1.0;
    double K = 1.0;
    std::vector<Site> spacings;
    bool single_marker = false;

    /// Throws invalid_argument unless gamma in (0, 1], K > 0 and the marker
    /// layout is nonempty (or single_marker).
    void validate() const;
};

/// The seven-term step operator; only the (head 2, read 1) term carries
/// weight `gamma`.
StepOperator build_counting_T(double gamma);

enum class HeadVariant { packet_left_head0, at_units_marker_head1 };

/// |1, n+1> on markers at 0 and n+1.
BasisState units_marker_seed(int n);

/// Markers at 0 and n+1. The packet variant places a head-0 Gaussian over
/// sites -packet_width .. -1.
WaveFunction initial_state_counting(int n, HeadVariant variant, int packet_width = 5);

struct TraceEntry {
    std::size_t step = 0;
    std::uint64_t counter = 0;
    std::size_t term_id = 0;
};

/// Runs from `units_marker_seed(n)` and records the counter every time the
/// head sits in state 1 on the units marker. Stops once the head has passed
/// the right marker in state 1; throws horizon_exhausted if that does not
/// happen within `max_steps`, and corrupted_operator if the lattice is not
/// restored at that point.
std::vector<TraceEntry> enumeration_trace(int n, double gamma, std::size_t max_steps);

/// Step budget that always covers a full enumeration with restoration.
std::size_t safe_step_bound(int n);

} // namespace gqtm
