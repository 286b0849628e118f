#include "gqtm/path.hpp"

#include "gqtm/counting.hpp"
#include "gqtm/error.hpp"

#include <algorithm>
#include <string>

namespace gqtm {

namespace {

void require_single_preimage(const StepOperator& op, const BasisState& state) {
    if (count_preimages(op, state) > 1)
        fail(ErrorCode::corrupted_operator, "path join: state has more than one preimage");
    if (count_images(op, state) > 1)
        fail(ErrorCode::corrupted_operator, "path branch: state has more than one image");
}

} // namespace

PathRecord unfold_path(const StepOperator& op, const BasisState& seed, std::size_t back_steps,
                       std::size_t fwd_steps) {
    PathRecord path;
    require_single_preimage(op, seed);

    std::vector<BasisState> back_states;
    std::vector<PathStep> back_path;
    BasisState state = seed;
    bool back_terminated = false;
    while (back_path.size() < back_steps) {
        const auto index = retreat(op, state);
        if (!index) { back_terminated = true; break; }
        require_single_preimage(op, state);
        back_path.push_back({*index + 1, op.terms()[*index].weight});
        back_states.push_back(state);
    }
    if (!back_terminated) back_terminated = count_preimages(op, state) == 0;

    path.states.assign(back_states.rbegin(), back_states.rend());
    path.steps.assign(back_path.rbegin(), back_path.rend());
    path.seed_position = path.states.size();
    path.states.push_back(seed);

    state = seed;
    std::size_t forward = 0;
    bool fwd_terminated = false;
    bool cyclic = false;
    while (forward < fwd_steps) {
        const auto index = advance(op, state);
        if (!index) { fwd_terminated = true; break; }
        ++forward;
        path.steps.push_back({*index + 1, op.terms()[*index].weight});
        if (state == seed) { cyclic = true; break; }
        require_single_preimage(op, state);
        path.states.push_back(state);
    }
    if (!fwd_terminated && !cyclic) fwd_terminated = count_images(op, state) == 0;

    using K = PathClass::Kind;
    if (cyclic) {
        // the closing step leads back to the seed; keep states distinct
        path.termination = {K::cyclic, forward};
        path.steps.pop_back();
    } else if (fwd_terminated && back_terminated) {
        path.termination = {K::finite, path.steps.size()};
    } else if (fwd_terminated) {
        path.termination = {K::half_infinite_backward, 0};
    } else if (back_terminated) {
        path.termination = {K::half_infinite_forward, 0};
    } else {
        path.termination = {K::bi_infinite_at_horizon, 0};
    }
    return path;
}

PotentialWord potential_word(std::span<const PathStep> steps) {
    PotentialWord word;
    word.bits.reserve(steps.size());
    for (const auto& s : steps) word.bits.push_back(s.weight < 1.0 ? 1 : 0);
    return word;
}

PotentialWord potential_word(const PathRecord& path) { return potential_word(path.steps); }

std::vector<PathStep> trace_steps(const StepOperator& op, const BasisState& seed, std::size_t max_steps) {
    std::vector<PathStep> steps;
    BasisState state = seed;
    while (steps.size() < max_steps) {
        const auto index = advance(op, state);
        if (!index) break;
        steps.push_back({*index + 1, op.terms()[*index].weight});
    }
    return steps;
}

RunProfile run_profile(std::span<const Bit> bits) {
    RunProfile profile;
    std::size_t zeros = 0;
    std::size_t i = 0;
    while (i < bits.size()) {
        if (bits[i] == 0) {
            ++zeros;
            ++i;
            continue;
        }
        std::size_t ones = 0;
        while (i < bits.size() && bits[i] != 0) {
            ++ones;
            ++i;
        }
        profile.runs.emplace_back(zeros, ones);
        zeros = 0;
    }
    profile.trailing_gap = zeros;
    return profile;
}

std::span<const Bit> strip_trailing_zeros(std::span<const Bit> bits) noexcept {
    std::size_t end = bits.size();
    while (end > 0 && bits[end - 1] == 0) --end;
    return bits.first(end);
}

PotentialWord simulate_counting_word(std::span<const int> n_values, double gamma, std::size_t max_steps,
                                     Site translation) {
    if (n_values.empty()) fail(ErrorCode::invalid_argument, "need at least one counter width");
    std::vector<Site> spacings;
    for (int n : n_values) {
        if (n < 0) fail(ErrorCode::invalid_argument, "counter widths must be >= 0");
        spacings.push_back(static_cast<Site>(n) + 1);
    }
    const StepOperator op = build_counting_T(gamma);
    BasisState state{kReturn, spacings.front() + translation,
                     make_marker_lattice(spacings).translated(translation)};
    Site last_marker = translation;
    for (Site s : spacings) last_marker += s;

    PotentialWord word;
    while (!(state.head_state == kReturn && state.head_site > last_marker)) {
        if (word.bits.size() >= max_steps)
            fail(ErrorCode::horizon_exhausted,
                 "counting word not complete within " + std::to_string(max_steps) + " steps");
        const auto index = advance(op, state);
        if (!index) fail(ErrorCode::corrupted_operator, "counting machine halted");
        word.bits.push_back(op.terms()[*index].weight < 1.0 ? 1 : 0);
    }
    return word;
}

PotentialWord simulate_single_marker_word(std::size_t limit, double gamma) {
    const StepOperator op = build_counting_T(gamma);
    const BasisState seed{kReturn, 0, make_single_marker_lattice()};
    return potential_word(trace_steps(op, seed, limit));
}

MultiMarkerConstruction measure_marker_gaps(std::span<const Bit> simulated, std::span<const int> n_values) {
    if (n_values.empty()) fail(ErrorCode::invalid_argument, "need at least one counter width");
    std::vector<std::vector<Bit>> blocks;
    for (int n : n_values) {
        if (n < 1) fail(ErrorCode::invalid_argument, "gap measurement needs counter widths >= 1");
        blocks.push_back(expand(r_prefix(n)).bits);
    }
    std::vector<std::size_t> gaps;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& block = blocks[i];
        if (i > 0) {
            const auto first_one = std::find(simulated.begin() + static_cast<std::ptrdiff_t>(pos),
                                             simulated.end(), Bit{1});
            const auto zeros = static_cast<std::size_t>(first_one - simulated.begin()) - pos;
            const auto lead = static_cast<std::size_t>(std::find(block.begin(), block.end(), Bit{1}) -
                                                       block.begin());
            if (first_one == simulated.end() || zeros < lead)
                fail(ErrorCode::invalid_argument, "block " + std::to_string(i) + " not found");
            gaps.push_back(zeros - lead);
            pos += zeros - lead;
        }
        if (pos + block.size() > simulated.size() ||
            !std::equal(block.begin(), block.end(), simulated.begin() + static_cast<std::ptrdiff_t>(pos)))
            fail(ErrorCode::invalid_argument,
                 "simulated word deviates from block " + std::to_string(i) + " at offset " +
                     std::to_string(pos));
        pos += block.size();
    }
    if (std::find(simulated.begin() + static_cast<std::ptrdiff_t>(pos), simulated.end(), Bit{1}) !=
        simulated.end())
        fail(ErrorCode::invalid_argument, "simulated word has ones after the last block");

    MultiMarkerConstruction out;
    out.word = multi_marker_word(n_values, gaps);
    out.trailing_gap = simulated.size() - pos;
    return out;
}

MultiMarkerConstruction construct_multi_marker(std::span<const int> n_values, std::size_t max_steps) {
    const PotentialWord sim = simulate_counting_word(n_values, 0.5, max_steps);
    return measure_marker_gaps(sim.bits, n_values);
}

} // namespace gqtm
