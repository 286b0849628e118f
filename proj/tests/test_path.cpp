#include "gqtm/counting.hpp"
#include "gqtm/error.hpp"
#include "gqtm/path.hpp"
#include "gqtm/substitution.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace gqtm;

namespace {

std::string sim_string(std::vector<int> ns, double gamma = 0.5, Site translation = 0) {
    std::size_t bound = 0;
    for (int n : ns) bound += safe_step_bound(n) + 64;
    return bits_to_string(simulate_counting_word(ns, gamma, bound, translation).bits);
}

std::string stripped(const std::string& s) { return s.substr(0, s.find_last_of('1') + 1); }

} // namespace

TEST_CASE("counting word for two digits") {
    CHECK(sim_string({2}) == "000100000110000");

    const auto op = build_counting_T(0.5);
    const auto path = unfold_path(op, units_marker_seed(2), 0, 15);
    CHECK(path.steps.size() == 15);
    CHECK(bits_to_string(potential_word(path).bits) == "000100000110000");
    CHECK(path.seed_position == 0);
    CHECK(path.states.size() == 16);
}

TEST_CASE("simulated word matches a wave-function oracle") {
    for (int n = 1; n <= 7; ++n) {
        const auto op = build_counting_T(0.5);
        const auto expected = oracle::word_by_apply_T(op, units_marker_seed(n), n + 1, 1u << 20);
        CHECK(sim_string({n}) == expected);
    }
}

TEST_CASE("simulated word matches the expansion of trailing ones") {
    for (int n = 1; n <= 12; ++n) {
        const auto sim = sim_string({n});
        CHECK(stripped(sim) == stripped(oracle::expanded_string(n)));
        CHECK(sim == oracle::expanded_string(n) + "0");
    }
}

TEST_CASE("width-three potential") {
    const auto sim = sim_string({4});
    const auto sub = bits_to_string(expand(r_prefix(4)).bits);
    std::size_t offset = 0;
    for (std::uint64_t j = 0; j < 7; ++j) offset += 2 * oracle::trailing_ones(j) + 2;
    CHECK(sim.substr(offset, 8) == "01110000");
    CHECK(sub.substr(offset, 8) == "01110000");
}

TEST_CASE("unit weights give an empty potential") {
    const auto sim = sim_string({5}, 1.0);
    CHECK(sim.find('1') == std::string::npos);
    CHECK(sim.size() == sim_string({5}).size());
}

TEST_CASE("annihilated seed") {
    std::vector<StepTerm> lone = {{1, 0, 0, QubitTransform::identity, Move::right, 1.0}};
    const StepOperator op(lone, 2, 2);
    const auto path = unfold_path(op, BasisState{0, 0, {}}, 10, 10);
    CHECK(path.states.size() == 1);
    CHECK(potential_word(path).bits.empty());
}

TEST_CASE("path joins and branches are rejected") {
    std::vector<StepTerm> joining = {{0, 0, 0, QubitTransform::identity, Move::right, 1.0},
                                     {0, 1, 0, QubitTransform::exchange01, Move::right, 1.0}};
    const StepOperator op(joining, 1, 2);
    QubitConfig one;
    one.set(0, 1);
    CHECK_THROWS_AS(unfold_path(op, BasisState{0, 0, one}, 5, 0), Error);
}

TEST_CASE("translation invariance") {
    const auto op = build_counting_T(0.5);
    const auto base = trace_steps(op, units_marker_seed(4), 200);
    for (Site d : {-5, -1, 1, 5}) {
        CHECK(trace_steps(op, units_marker_seed(4).translated(d), 200) == base);
        CHECK(sim_string({4}, 0.5, d) == sim_string({4}));
        CHECK(sim_string({2, 3}, 0.5, d) == sim_string({2, 3}));
    }
}

TEST_CASE("run profiles") {
    const auto p = run_profile(bits_from_string("000100000110000"));
    CHECK(p.runs == std::vector<std::pair<std::size_t, std::size_t>>{{3, 1}, {5, 2}});
    CHECK(p.trailing_gap == 4);

    const auto z = run_profile(bits_from_string("00000"));
    CHECK(z.runs.empty());
    CHECK(z.trailing_gap == 5);

    const auto q = run_profile(bits_from_string("101"));
    CHECK(q.runs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 1}});
    CHECK(q.trailing_gap == 0);

    CHECK(run_profile({}).runs.empty());
    const auto word = bits_from_string("0110100");
    CHECK(strip_trailing_zeros(word).size() == 5);
}

TEST_CASE("multi-marker words") {
    const int three[] = {3, 3};
    const auto c = construct_multi_marker(three, 4096);
    REQUIRE(c.word.gaps.size() == 1);
    const auto block = expand(r_prefix(3)).bits;
    const auto& w = c.word.bits;
    CHECK(std::equal(block.begin(), block.end(), w.begin()));
    CHECK(std::equal(block.begin(), block.end(), w.begin() + static_cast<std::ptrdiff_t>(block.size() + c.word.gaps[0])));
    CHECK(run_profile(block).runs.size() == 4);

    const int mixed[] = {2, 3};
    const auto m = construct_multi_marker(mixed, 4096);
    REQUIRE(m.word.gaps.size() == 1);
    CHECK(m.word.gaps[0] == 1 + 3);
    const auto sim = sim_string({2, 3});
    auto constructed = bits_to_string(m.word.bits);
    constructed.append(m.trailing_gap, '0');
    CHECK(constructed == sim);

    const int single[] = {4};
    const auto s = construct_multi_marker(single, 4096);
    CHECK(s.word.bits == expand(r_prefix(4)).bits);
    CHECK(s.word.gaps.empty());

    const int zero[] = {0};
    CHECK_THROWS_AS(construct_multi_marker(zero, 4096), Error);
}

TEST_CASE("single marker word is the infinite expansion") {
    const auto sim = simulate_single_marker_word(1u << 14, 0.5).bits;
    const auto stream = stream_word(1u << 14).bits;
    CHECK(sim == stream);
    CHECK(bits_to_string(simulate_single_marker_word(14, 0.5).bits) == "00010000011000");
}

TEST_CASE("horizon is reported") {
    const int ns[] = {6};
    CHECK_THROWS_AS(simulate_counting_word(ns, 0.5, 50), Error);
}
