#include "gqtm/counting.hpp"

#include "gqtm/error.hpp"

#include <array>
#include <string>

namespace gqtm {

void CountingMachineConfig::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) fail(ErrorCode::invalid_argument, "gamma must lie in (0, 1]");
    if (!(K > 0.0)) fail(ErrorCode::invalid_argument, "K must be positive");
    if (!single_marker) (void)make_marker_lattice(spacings);
}

StepOperator build_counting_T(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) fail(ErrorCode::invalid_argument, "gamma must lie in (0, 1]");
    using QT = QubitTransform;
    std::vector<StepTerm> terms = {
        {kSeek, 0, 0, QT::identity, Move::right, 1.0},
        {kSeek, kMarker, +1, QT::identity, Move::right, 1.0},
        {kReturn, 0, 0, QT::identity, Move::right, 1.0},
        {kReturn, kMarker, +1, QT::identity, Move::left, 1.0},
        {kIncrement, 1, 0, QT::exchange01, Move::left, gamma},
        {kIncrement, 0, -1, QT::exchange01, Move::right, 1.0},
        {kIncrement, kMarker, +1, QT::identity, Move::right, 1.0},
    };
    return StepOperator(std::move(terms), 3, 3);
}

BasisState units_marker_seed(int n) {
    if (n < 1) fail(ErrorCode::invalid_argument, "counter width n must be >= 1");
    const std::array<Site, 1> spacing{n + 1};
    return BasisState{kReturn, n + 1, make_marker_lattice(spacing)};
}

WaveFunction initial_state_counting(int n, HeadVariant variant, int packet_width) {
    const BasisState seed = units_marker_seed(n);
    if (variant == HeadVariant::at_units_marker_head1) {
        WaveFunction psi;
        psi.add(seed, 1.0);
        return psi;
    }
    if (packet_width < 1) fail(ErrorCode::invalid_argument, "packet width must be >= 1");
    std::vector<Site> sites;
    for (Site s = -packet_width; s <= -1; ++s) sites.push_back(s);
    const double center = -(packet_width + 1) / 2.0;
    return gaussian_packet(kSeek, sites, seed.qubits, center, packet_width / 4.0 + 0.5);
}

std::vector<TraceEntry> enumeration_trace(int n, double gamma, std::size_t max_steps) {
    const StepOperator op = build_counting_T(gamma);
    const BasisState seed = units_marker_seed(n);
    const Site units = n + 1;
    BasisState state = seed;
    std::vector<TraceEntry> trace;
    for (std::size_t step = 0; step < max_steps; ++step) {
        if (state.head_state == kReturn && state.head_site == units) {
            const auto index = op.term_index(state.head_state, state.qubits.get(state.head_site));
            trace.push_back({step, decode_between_markers(state.qubits, 0, units),
                             index ? *index + 1 : 0});
        }
        if (state.head_state == kReturn && state.head_site > units) {
            if (state.qubits != seed.qubits)
                fail(ErrorCode::corrupted_operator, "lattice not restored after overflow");
            return trace;
        }
        if (!advance(op, state))
            fail(ErrorCode::corrupted_operator,
                 "counting machine halted at step " + std::to_string(step));
    }
    fail(ErrorCode::horizon_exhausted,
         "enumeration for n=" + std::to_string(n) + " not finished within " +
             std::to_string(max_steps) + " steps");
}

std::size_t safe_step_bound(int n) {
    if (n < 1 || n > 40) fail(ErrorCode::invalid_argument, "counter width n must lie in 1..40");
    // sum over j < 2^n of (2 R(j) + 2), using sum R(j) = 2^n - 1
    const std::size_t span = std::size_t{1} << n;
    const std::size_t increments = 2 * (span - 1) + 2 * span;
    return 2 * increments + 4 * static_cast<std::size_t>(n + 2);
}

} // namespace gqtm
