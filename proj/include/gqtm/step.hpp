#pragma once

// Step operators T = sum_{l,s} gamma_{l,s} W_{l,s} built from elementary
// read / write / move terms, their adjoints, the T = UD split, and empirical
// checks that T generates distinct (non-branching, non-joining) paths.

#include "gqtm/lattice.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gqtm {

enum class QubitTransform { identity, exchange01 };
enum class Move { right, left };

/// One elementary term gamma * w Q_l v P_{s,j} u P_j. The term reads head
/// state `read_head` and qubit `read_qubit` at the head site, rewrites that
/// qubit, moves the head one site, then shifts the head state cyclically.
struct StepTerm {
    HeadState read_head = 0;
    Symbol read_qubit = 0;
    int head_shift = 0;
    QubitTransform qubit_transform = QubitTransform::identity;
    Move move = Move::right;
    double weight = 1.0;

    friend bool operator==(const StepTerm&, const StepTerm&) = default;
};

Symbol transform_symbol(QubitTransform transform, Symbol symbol) noexcept;

/// Result of one elementary step. `term_id` is the 1-based position of the
/// active term in its operator.
struct Transition {
    BasisState state;
    double weight = 1.0;
    std::size_t term_id = 0;
};

class StepOperator {
public:
    /// Head states are 0..head_states-1, qubit symbols 0..qubit_symbols-1.
    /// Throws invalid_argument if two terms read the same (l, s), a weight is
    /// outside (0, 1], or a read symbol lies outside its alphabet.
    StepOperator(std::vector<StepTerm> terms, int head_states, int qubit_symbols);

    std::span<const StepTerm> terms() const noexcept { return terms_; }
    int head_states() const noexcept { return head_states_; }
    int qubit_symbols() const noexcept { return qubit_symbols_; }

    /// 0-based index of the term reading (head, qubit), if any.
    std::optional<std::size_t> term_index(HeadState head, Symbol qubit) const noexcept;

    /// Same terms with every weight set to 1.
    StepOperator unweighted() const;

private:
    std::vector<StepTerm> terms_;
    std::vector<int> lookup_;
    int head_states_;
    int qubit_symbols_;
};

HeadState shift_head(HeadState head, int shift, int head_states) noexcept;

/// Empty if the term's projectors annihilate `state`.
std::optional<Transition> apply_term(const StepTerm& term, int head_states,
                                     const BasisState& state);

/// The unique T-image of a basis state, if any.
std::optional<Transition> forward_step(const StepOperator& op, const BasisState& state);

/// All basis states that T maps onto `state`, one per term whose adjoint
/// does not annihilate it. A distinct-path operator yields at most one.
std::vector<Transition> backward_steps(const StepOperator& op, const BasisState& state);

/// In-place walkers for long paths. They return the 0-based term index used,
/// or nullopt (leaving `state` untouched) when the step annihilates.
/// `retreat` requires a unique preimage and throws corrupted_operator otherwise.
std::optional<std::size_t> advance(const StepOperator& op, BasisState& state);
std::optional<std::size_t> retreat(const StepOperator& op, BasisState& state);

/// Number of terms that act nontrivially on `state` (forward) and number of
/// terms whose adjoint acts nontrivially (backward). Both computed without
/// building the neighbouring states.
std::size_t count_images(const StepOperator& op, const BasisState& state) noexcept;
std::size_t count_preimages(const StepOperator& op, const BasisState& state) noexcept;

WaveFunction apply_T(const StepOperator& op, const WaveFunction& psi);
WaveFunction apply_T_adjoint(const StepOperator& op, const WaveFunction& psi);

/// T = U D with U the unweighted shift part and D diagonal in the basis.
struct UDDecomposition {
    StepOperator shift;
    StepOperator source;

    /// gamma_{l, S(j)} of the matching term, or 1 when no term matches.
    double diagonal(const BasisState& state) const noexcept;
};

UDDecomposition decompose_UD(const StepOperator& op);

struct PathClass {
    enum class Kind {
        bi_infinite_at_horizon,
        half_infinite_forward,
        half_infinite_backward,
        finite,
        cyclic,
    };
    Kind kind = Kind::finite;
    /// Steps in the path for `finite`, cycle length for `cyclic`, else 0.
    std::size_t length = 0;

    friend bool operator==(const PathClass&, const PathClass&) = default;
};

std::string to_string(const PathClass& path_class);

PathClass classify_path(const StepOperator& op, const BasisState& seed, std::size_t max_steps);

struct PathViolation {
    enum class Kind { branch, join, intersect };
    Kind kind;
    std::size_t seed_index;
    BasisState witness;
    std::string detail;
};

struct SeedReport {
    PathClass path_class;
    std::size_t forward_steps = 0;
    std::size_t backward_steps = 0;
    /// Other seeds found on this path, with their signed path offset.
    std::vector<std::pair<std::size_t, long long>> coincident;
};

struct DistinctPathReport {
    bool pass = true;
    std::vector<SeedReport> seeds;
    std::vector<PathViolation> violations;
};

std::string to_string(PathViolation::Kind kind);

/// Walks U and U^dagger up to `max_steps` from every seed and checks that
/// no visited state branches or joins, and that paths of distinct seeds
/// either coincide (with consistent offsets) or are disjoint.
DistinctPathReport verify_distinct_paths(const StepOperator& op, std::span<const BasisState> seeds,
                                         std::size_t max_steps);

} // namespace gqtm
