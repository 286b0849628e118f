#include "gqtm/counting.hpp"
#include "gqtm/error.hpp"
#include "gqtm/path.hpp"
#include "gqtm/step.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace gqtm;

namespace {

QubitConfig markers(std::initializer_list<Site> spacings) {
    const std::vector<Site> s(spacings);
    return make_marker_lattice(s);
}

// States along the n-marker path around the units seed.
std::vector<BasisState> reachable_states(int n, double gamma) {
    const auto op = build_counting_T(gamma);
    auto path = unfold_path(op, units_marker_seed(n), 20, safe_step_bound(n));
    return path.states;
}

// Head walks 0 -> 1 -> 0 -> 1 over two sites, stepping the head state each move.
StepOperator four_cycle() {
    std::vector<StepTerm> terms = {
        {0, 0, +1, QubitTransform::identity, Move::right, 1.0},
        {1, 0, +1, QubitTransform::identity, Move::left, 1.0},
        {2, 0, +1, QubitTransform::identity, Move::right, 1.0},
        {3, 0, +1, QubitTransform::identity, Move::left, 1.0},
    };
    return StepOperator(terms, 4, 2);
}

} // namespace

TEST_CASE("operator invariants are enforced") {
    std::vector<StepTerm> dup = {{0, 0, 0, QubitTransform::identity, Move::right, 1.0},
                                 {0, 0, 1, QubitTransform::identity, Move::left, 1.0}};
    CHECK_THROWS_AS(StepOperator(dup, 2, 2), Error);
    std::vector<StepTerm> heavy = {{0, 0, 0, QubitTransform::identity, Move::right, 1.5}};
    CHECK_THROWS_AS(StepOperator(heavy, 1, 2), Error);
    std::vector<StepTerm> zero = {{0, 0, 0, QubitTransform::identity, Move::right, 0.0}};
    CHECK_THROWS_AS(StepOperator(zero, 1, 2), Error);
    std::vector<StepTerm> alphabet = {{0, 3, 0, QubitTransform::identity, Move::right, 1.0}};
    CHECK_THROWS_AS(StepOperator(alphabet, 1, 3), Error);
}

TEST_CASE("single terms of the counting machine") {
    const auto op = build_counting_T(0.5);
    const auto terms = op.terms();

    const auto s7 = markers({7});
    const auto t4 = apply_term(terms[3], op.head_states(), BasisState{1, 7, s7});
    REQUIRE(t4);
    CHECK(t4->state == BasisState{2, 6, s7});
    CHECK(t4->weight == 1.0);
    CHECK_FALSE(apply_term(terms[3], op.head_states(), BasisState{0, 7, s7}));

    QubitConfig s;
    s.set(3, 1);
    QubitConfig s_flipped;
    const auto t5 = apply_term(terms[4], op.head_states(), BasisState{2, 3, s});
    REQUIRE(t5);
    CHECK(t5->state == BasisState{2, 2, s_flipped});
    CHECK(t5->weight == 0.5);
    const auto via_op = forward_step(op, BasisState{2, 3, s});
    REQUIRE(via_op);
    CHECK(via_op->term_id == kWeightedTerm);
}

TEST_CASE("apply_T on basis states") {
    const auto op = build_counting_T(0.5);
    const auto s7 = markers({7});

    WaveFunction psi;
    psi.add(BasisState{0, -3, s7}, {0.0, 1.0});
    const auto img = apply_T(op, psi);
    CHECK(img.size() == 1);
    CHECK(img.amplitude(BasisState{0, -2, s7}) == Amplitude{0.0, 1.0});

    QubitConfig one;
    one.set(4, 1);
    WaveFunction dead;
    dead.add(BasisState{0, 4, one}, 1.0);
    CHECK(apply_T(op, dead).empty());

    WaveFunction weighted;
    weighted.add(BasisState{2, 4, one}, 1.0);
    const auto w = apply_T(op, weighted);
    CHECK(w.size() == 1);
    CHECK(w.norm2() == 0.25);
}

TEST_CASE("adjoint") {
    const auto op = build_counting_T(0.5);
    const auto s7 = markers({7});

    WaveFunction psi;
    psi.add(BasisState{1, 7, s7}, 1.0);
    const auto back = apply_T_adjoint(op, apply_T(op, psi));
    CHECK(back.size() == 1);
    CHECK(back.amplitude(BasisState{1, 7, s7}) == Amplitude{1.0});

    // Head state 2 is entered only by moving left off a marker or off a
    // freshly cleared 1; a 1 to the right of the head rules out both.
    QubitConfig right_one;
    right_one.set(41, 1);
    WaveFunction orphan;
    orphan.add(BasisState{2, 40, right_one}, 1.0);
    CHECK(apply_T_adjoint(op, orphan).empty());

    const auto states = reachable_states(3, 0.5);
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
    std::normal_distribution<double> amp;
    for (int trial = 0; trial < 50; ++trial) {
        WaveFunction phi, chi;
        for (int i = 0; i < 20; ++i) {
            phi.add(states[pick(rng)], {amp(rng), amp(rng)});
            chi.add(states[pick(rng)], {amp(rng), amp(rng)});
        }
        const Amplitude lhs = apply_T_adjoint(op, phi).inner(chi);
        const Amplitude rhs = phi.inner(apply_T(op, chi));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("U D decomposition") {
    const auto unit = build_counting_T(1.0);
    const auto ud1 = decompose_UD(unit);
    const auto s7 = markers({7});
    CHECK(ud1.diagonal(BasisState{2, 3, s7}) == 1.0);

    const auto op = build_counting_T(0.5);
    const auto ud = decompose_UD(op);
    for (std::size_t i = 0; i < op.terms().size(); ++i) CHECK(ud.shift.terms()[i].weight == 1.0);

    auto states = reachable_states(8, 0.5);
    std::mt19937 rng(7);
    std::shuffle(states.begin(), states.end(), rng);
    states.resize(std::min<std::size_t>(states.size(), 1000));
    REQUIRE(states.size() == 1000);
    for (const auto& s : states) {
        const double d = ud.diagonal(s);
        const bool weighted = s.head_state == kIncrement && s.qubits.get(s.head_site) == 1;
        CHECK(d == (weighted ? 0.5 : 1.0));
        WaveFunction psi;
        psi.add(s, 1.0);
        const auto lhs = apply_T(op, psi);
        const auto rhs = apply_T(ud.shift, psi);
        REQUIRE(lhs.size() == rhs.size());
        for (const auto& [state, a] : rhs.amplitudes()) CHECK(lhs.amplitude(state) == d * a);
    }
}

TEST_CASE("deterministic forward and reversible backward") {
    const auto op = build_counting_T(0.5);
    for (const auto& s : reachable_states(4, 0.5)) {
        CHECK(count_images(op, s) <= 1);
        CHECK(count_preimages(op, s) <= 1);
        CHECK(backward_steps(op, s).size() == count_preimages(op, s));
    }
}

TEST_CASE("path classification") {
    const auto op = build_counting_T(0.5);
    const Site s3[] = {3};
    const BasisState packet{kSeek, -4, make_marker_lattice(s3)};
    CHECK(classify_path(op, packet, 10000).kind == PathClass::Kind::bi_infinite_at_horizon);

    std::vector<StepTerm> lone = {{1, 0, 0, QubitTransform::identity, Move::right, 1.0}};
    const StepOperator sparse(lone, 2, 2);
    const auto c = classify_path(sparse, BasisState{0, 0, {}}, 100);
    CHECK(c == PathClass{PathClass::Kind::finite, 0});
    CHECK(to_string(c) == "finite(0)");

    const auto cyc = classify_path(four_cycle(), BasisState{0, 0, {}}, 100);
    CHECK(cyc == PathClass{PathClass::Kind::cyclic, 4});
    CHECK(to_string(cyc) == "cyclic(4)");

    CHECK_THROWS_AS(classify_path(op, packet, 0), Error);
}

TEST_CASE("distinct paths") {
    const auto op = build_counting_T(0.5);
    const std::vector<BasisState> seeds = {units_marker_seed(2), units_marker_seed(3)};
    const auto report = verify_distinct_paths(op, seeds, 10000);
    CHECK(report.pass);
    CHECK(report.violations.empty());
    CHECK(report.seeds.size() == 2);

    // (0, read 0) and (0, read 1) both leave a blank cell behind: a join.
    std::vector<StepTerm> joining = {{0, 0, 0, QubitTransform::identity, Move::right, 1.0},
                                     {0, 1, 0, QubitTransform::exchange01, Move::right, 1.0}};
    const StepOperator bad(joining, 1, 2);
    QubitConfig one;
    one.set(0, 1);
    const std::vector<BasisState> bad_seed = {BasisState{0, 0, one}};
    const auto fail_report = verify_distinct_paths(bad, bad_seed, 100);
    CHECK_FALSE(fail_report.pass);
    REQUIRE_FALSE(fail_report.violations.empty());
    CHECK(fail_report.violations.front().kind == PathViolation::Kind::join);
    CHECK(count_preimages(bad, fail_report.violations.front().witness) == 2);

    const std::vector<BasisState> cyc_seed = {BasisState{0, 0, {}}};
    const auto cyc = verify_distinct_paths(four_cycle(), cyc_seed, 100);
    CHECK(cyc.pass);
    CHECK(cyc.seeds[0].path_class == PathClass{PathClass::Kind::cyclic, 4});

    // Two seeds on one path are consistent; they see each other.
    const auto path = unfold_path(op, units_marker_seed(2), 0, 6);
    const std::vector<BasisState> pair = {path.states[0], path.states[6]};
    const auto shared = verify_distinct_paths(op, pair, 1000);
    CHECK(shared.pass);
}
