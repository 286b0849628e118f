#include "gqtm/step.hpp"

#include "gqtm/error.hpp"

#include <map>
#include <string>

namespace gqtm {

namespace {

constexpr std::size_t kMaxViolationsPerSeed = 16;

Site move_offset(Move move) noexcept { return move == Move::right ? 1 : -1; }

// Preimage of `state` under one term, expressed as the site and head state
// the term must have read from. Returns false when the adjoint annihilates.
bool preimage_site(const StepTerm& term, int head_states, const BasisState& state,
                   Site& site_out) noexcept {
    const HeadState pre_head = shift_head(state.head_state, -term.head_shift, head_states);
    if (pre_head != term.read_head) return false;
    const Site pre_site = state.head_site - move_offset(term.move);
    if (state.qubits.get(pre_site) != transform_symbol(term.qubit_transform, term.read_qubit))
        return false;
    site_out = pre_site;
    return true;
}

void write_and_move(const StepTerm& term, int head_states, BasisState& state) {
    state.qubits.set(state.head_site, transform_symbol(term.qubit_transform, term.read_qubit));
    state.head_site += move_offset(term.move);
    state.head_state = shift_head(state.head_state, term.head_shift, head_states);
}

void undo_write_and_move(const StepTerm& term, int head_states, Site pre_site, BasisState& state) {
    state.qubits.set(pre_site, term.read_qubit);
    state.head_site = pre_site;
    state.head_state = shift_head(state.head_state, -term.head_shift, head_states);
}

} // namespace

Symbol transform_symbol(QubitTransform transform, Symbol symbol) noexcept {
    if (transform == QubitTransform::exchange01 && symbol <= 1) return static_cast<Symbol>(1 - symbol);
    return symbol;
}

HeadState shift_head(HeadState head, int shift, int head_states) noexcept {
    int next = (static_cast<int>(head) + shift) % head_states;
    if (next < 0) next += head_states;
    return static_cast<HeadState>(next);
}

StepOperator::StepOperator(std::vector<StepTerm> terms, int head_states, int qubit_symbols)
    : terms_(std::move(terms)), head_states_(head_states), qubit_symbols_(qubit_symbols) {
    if (head_states < 1 || head_states > 256 || qubit_symbols < 1 || qubit_symbols > 256)
        fail(ErrorCode::invalid_argument, "alphabet sizes must lie in 1..256");
    lookup_.assign(static_cast<std::size_t>(head_states * qubit_symbols), -1);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const StepTerm& t = terms_[i];
        const std::string where = "term " + std::to_string(i + 1);
        if (t.read_head >= head_states) fail(ErrorCode::invalid_argument, where + " reads unknown head state");
        if (t.read_qubit >= qubit_symbols) fail(ErrorCode::invalid_argument, where + " reads unknown qubit symbol");
        if (t.qubit_transform == QubitTransform::exchange01 && qubit_symbols < 2)
            fail(ErrorCode::invalid_argument, where + " exchanges 0/1 on a unary alphabet");
        if (!(t.weight > 0.0 && t.weight <= 1.0))
            fail(ErrorCode::invalid_argument, where + " has weight outside (0, 1]");
        int& slot = lookup_[static_cast<std::size_t>(t.read_head * qubit_symbols + t.read_qubit)];
        if (slot >= 0)
            fail(ErrorCode::invalid_argument,
                 where + " reads the same (head, qubit) pair as term " + std::to_string(slot + 1));
        slot = static_cast<int>(i);
    }
}

std::optional<std::size_t> StepOperator::term_index(HeadState head, Symbol qubit) const noexcept {
    if (head >= head_states_ || qubit >= qubit_symbols_) return std::nullopt;
    const int slot = lookup_[static_cast<std::size_t>(head * qubit_symbols_ + qubit)];
    if (slot < 0) return std::nullopt;
    return static_cast<std::size_t>(slot);
}

StepOperator StepOperator::unweighted() const {
    std::vector<StepTerm> terms = terms_;
    for (auto& t : terms) t.weight = 1.0;
    return StepOperator(std::move(terms), head_states_, qubit_symbols_);
}

std::optional<Transition> apply_term(const StepTerm& term, int head_states, const BasisState& state) {
    if (state.head_state != term.read_head) return std::nullopt;
    if (state.qubits.get(state.head_site) != term.read_qubit) return std::nullopt;
    Transition out{state, term.weight, 0};
    write_and_move(term, head_states, out.state);
    return out;
}

std::optional<Transition> forward_step(const StepOperator& op, const BasisState& state) {
    auto index = op.term_index(state.head_state, state.qubits.get(state.head_site));
    if (!index) return std::nullopt;
    auto out = apply_term(op.terms()[*index], op.head_states(), state);
    out->term_id = *index + 1;
    return out;
}

std::vector<Transition> backward_steps(const StepOperator& op, const BasisState& state) {
    std::vector<Transition> out;
    const auto terms = op.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Site pre_site = 0;
        if (!preimage_site(terms[i], op.head_states(), state, pre_site)) continue;
        Transition t{state, terms[i].weight, i + 1};
        undo_write_and_move(terms[i], op.head_states(), pre_site, t.state);
        out.push_back(std::move(t));
    }
    return out;
}

std::optional<std::size_t> advance(const StepOperator& op, BasisState& state) {
    auto index = op.term_index(state.head_state, state.qubits.get(state.head_site));
    if (!index) return std::nullopt;
    write_and_move(op.terms()[*index], op.head_states(), state);
    return index;
}

std::optional<std::size_t> retreat(const StepOperator& op, BasisState& state) {
    const auto terms = op.terms();
    std::optional<std::size_t> found;
    Site found_site = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Site pre_site = 0;
        if (!preimage_site(terms[i], op.head_states(), state, pre_site)) continue;
        if (found)
            fail(ErrorCode::corrupted_operator,
                 "state has two preimages (terms " + std::to_string(*found + 1) + " and " +
                     std::to_string(i + 1) + ")");
        found = i;
        found_site = pre_site;
    }
    if (found) undo_write_and_move(terms[*found], op.head_states(), found_site, state);
    return found;
}

std::size_t count_images(const StepOperator& op, const BasisState& state) noexcept {
    const Symbol read = state.qubits.get(state.head_site);
    std::size_t n = 0;
    for (const auto& t : op.terms())
        if (t.read_head == state.head_state && t.read_qubit == read) ++n;
    return n;
}

std::size_t count_preimages(const StepOperator& op, const BasisState& state) noexcept {
    std::size_t n = 0;
    Site unused = 0;
    for (const auto& t : op.terms())
        if (preimage_site(t, op.head_states(), state, unused)) ++n;
    return n;
}

WaveFunction apply_T(const StepOperator& op, const WaveFunction& psi) {
    WaveFunction out(psi.prune_threshold());
    for (const auto& [state, a] : psi.amplitudes()) {
        for (const auto& term : op.terms()) {
            if (auto t = apply_term(term, op.head_states(), state)) out.add(t->state, a * t->weight);
        }
    }
    return out;
}

WaveFunction apply_T_adjoint(const StepOperator& op, const WaveFunction& psi) {
    WaveFunction out(psi.prune_threshold());
    for (const auto& [state, a] : psi.amplitudes()) {
        for (const auto& t : backward_steps(op, state)) out.add(t.state, a * t.weight);
    }
    return out;
}

double UDDecomposition::diagonal(const BasisState& state) const noexcept {
    auto index = source.term_index(state.head_state, state.qubits.get(state.head_site));
    return index ? source.terms()[*index].weight : 1.0;
}

UDDecomposition decompose_UD(const StepOperator& op) { return {op.unweighted(), op}; }

std::string to_string(const PathClass& c) {
    switch (c.kind) {
    case PathClass::Kind::bi_infinite_at_horizon: return "bi_infinite_at_horizon";
    case PathClass::Kind::half_infinite_forward: return "half_infinite_forward";
    case PathClass::Kind::half_infinite_backward: return "half_infinite_backward";
    case PathClass::Kind::finite: return "finite(" + std::to_string(c.length) + ")";
    case PathClass::Kind::cyclic: return "cyclic(" + std::to_string(c.length) + ")";
    }
    return "unknown";
}

std::string to_string(PathViolation::Kind kind) {
    switch (kind) {
    case PathViolation::Kind::branch: return "branch";
    case PathViolation::Kind::join: return "join";
    case PathViolation::Kind::intersect: return "intersect";
    }
    return "unknown";
}

namespace {

struct DirectionResult {
    std::size_t steps = 0;
    bool terminated = false;
    bool returned_to_seed = false;
};

PathClass classify(const DirectionResult& fwd, const DirectionResult& bwd) {
    using K = PathClass::Kind;
    if (fwd.returned_to_seed) return {K::cyclic, fwd.steps};
    if (fwd.terminated && bwd.terminated) return {K::finite, fwd.steps + bwd.steps};
    if (fwd.terminated) return {K::half_infinite_backward, 0};
    if (bwd.terminated) return {K::half_infinite_forward, 0};
    return {K::bi_infinite_at_horizon, 0};
}

} // namespace

PathClass classify_path(const StepOperator& op, const BasisState& seed, std::size_t max_steps) {
    if (max_steps < 1) fail(ErrorCode::invalid_argument, "max_steps must be >= 1");
    DirectionResult fwd, bwd;
    BasisState state = seed;
    while (fwd.steps < max_steps) {
        if (!advance(op, state)) { fwd.terminated = true; break; }
        ++fwd.steps;
        if (state == seed) { fwd.returned_to_seed = true; break; }
    }
    if (!fwd.returned_to_seed) {
        state = seed;
        while (bwd.steps < max_steps) {
            if (!retreat(op, state)) { bwd.terminated = true; break; }
            ++bwd.steps;
        }
    }
    return classify(fwd, bwd);
}

DistinctPathReport verify_distinct_paths(const StepOperator& op, std::span<const BasisState> seeds,
                                         std::size_t max_steps) {
    if (max_steps < 1) fail(ErrorCode::invalid_argument, "max_steps must be >= 1");
    DistinctPathReport report;
    report.seeds.resize(seeds.size());

    std::map<std::pair<HeadState, Site>, std::vector<std::size_t>> seed_index;
    for (std::size_t i = 0; i < seeds.size(); ++i)
        seed_index[{seeds[i].head_state, seeds[i].head_site}].push_back(i);

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        SeedReport& sr = report.seeds[i];
        std::size_t violations = 0;

        // Branch/join checks are local; together they exclude any revisit
        // other than a return to the seed itself.
        auto check_local = [&](const BasisState& s) {
            bool ok = true;
            if (const auto n = count_images(op, s); n > 1) {
                ok = false;
                if (violations++ < kMaxViolationsPerSeed)
                    report.violations.push_back({PathViolation::Kind::branch, i, s,
                                                 std::to_string(n) + " successors"});
            }
            if (const auto n = count_preimages(op, s); n > 1) {
                ok = false;
                if (violations++ < kMaxViolationsPerSeed)
                    report.violations.push_back({PathViolation::Kind::join, i, s,
                                                 std::to_string(n) + " predecessors"});
            }
            return ok;
        };
        auto note_seeds = [&](const BasisState& s, long long offset) {
            auto it = seed_index.find({s.head_state, s.head_site});
            if (it == seed_index.end()) return;
            for (std::size_t other : it->second)
                if (other != i && seeds[other] == s) sr.coincident.push_back({other, offset});
        };

        check_local(seeds[i]);
        DirectionResult fwd, bwd;
        BasisState state = seeds[i];
        while (fwd.steps < max_steps) {
            if (!advance(op, state)) { fwd.terminated = true; break; }
            ++fwd.steps;
            if (state == seeds[i]) { fwd.returned_to_seed = true; break; }
            note_seeds(state, static_cast<long long>(fwd.steps));
            if (!check_local(state)) break;
        }
        if (!fwd.returned_to_seed) {
            state = seeds[i];
            while (bwd.steps < max_steps) {
                if (count_preimages(op, state) > 1) break; // already reported
                if (!retreat(op, state)) { bwd.terminated = true; break; }
                ++bwd.steps;
                note_seeds(state, -static_cast<long long>(bwd.steps));
                if (!check_local(state)) break;
            }
        }
        sr.forward_steps = fwd.steps;
        sr.backward_steps = bwd.steps;
        sr.path_class = classify(fwd, bwd);
    }

    // Coincident seeds must see each other at opposite offsets.
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const SeedReport& sr = report.seeds[i];
        const bool cyclic = sr.path_class.kind == PathClass::Kind::cyclic;
        for (const auto& [other, offset] : sr.coincident) {
            long long expected = -offset;
            if (cyclic) {
                const auto m = static_cast<long long>(sr.path_class.length);
                expected = ((expected % m) + m) % m;
            }
            bool found = false;
            for (const auto& [back, back_offset] : report.seeds[other].coincident)
                if (back == i && back_offset == expected) found = true;
            if (!found)
                report.violations.push_back(
                    {PathViolation::Kind::intersect, i, seeds[other],
                     "seed " + std::to_string(other) + " lies on this path at offset " +
                         std::to_string(offset) + " but its own path disagrees"});
        }
    }
    report.pass = report.violations.empty();
    return report;
}

} // namespace gqtm
