#include "gqtm/error.hpp"
#include "gqtm/substitution.hpp"
#include "gqtm/tight_binding.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace gqtm;

namespace {

std::vector<Complex> delta(std::size_t n, std::size_t at) {
    std::vector<Complex> v(n);
    v[at] = 1.0;
    return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("hamiltonian construction") {
    const auto e = build_hamiltonian({}, 1.0, 0.5);
    CHECK(e.sites() == 1);
    CHECK(e.diagonal[0] == 2.0);

    const auto h = build_hamiltonian(bits_from_string("010"), 1.0, 0.5);
    CHECK(h.diagonal == std::vector<double>{2, 2, 2, 2});
    CHECK(h.hoppings == std::vector<double>{1, 0.5, 1});
    CHECK(h.potential_height() == 1.0);

    const auto u = build_hamiltonian(bits_from_string("0110"), 2.0, 1.0);
    for (double x : u.hoppings) CHECK(x == 2.0);

    const auto d = h.dense();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(d[i * 4 + j] == d[j * 4 + i]);

    CHECK_THROWS_AS(build_hamiltonian({}, 0.0, 0.5), Error);
    CHECK_THROWS_AS(build_hamiltonian({}, 1.0, 0.0), Error);
}

TEST_CASE("spectrum") {
    const auto two = spectrum(uniform_chain(2, 1.0));
    CHECK(two[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(two[1] == doctest::Approx(3.0).epsilon(1e-14));

    for (double g : {0.5, 0.1, 1e-3}) {
        const auto s = spectrum(build_hamiltonian(bits_from_string("1"), 1.0, g));
        CHECK(std::abs(s[0] - (2.0 - g)) <= 1e-12);
        CHECK(std::abs(s[1] - (2.0 + g)) <= 1e-12);
    }

    for (std::size_t n : {1u, 7u, 64u, 300u}) {
        const auto s = spectrum(uniform_chain(n, 1.0));
        for (std::size_t m = 1; m <= n; ++m)
            CHECK(std::abs(s[m - 1] - (2.0 - 2.0 * std::cos(std::numbers::pi * m / (n + 1.0)))) <= 1e-9 * 4.0);
    }

    const auto H = build_hamiltonian(expand(r_prefix(7)).bits, 1.0, 0.3);
    const auto ours = spectrum(H);
    const auto ref = oracle::dense_eigenvalues(H);
    REQUIRE(ours.size() == ref.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ours.size(); ++i) worst = std::max(worst, std::abs(ours[i] - ref[i]));
    CHECK(worst <= 1e-9 * 4.0);
    for (std::size_t i = 1; i < ours.size(); ++i) CHECK(ours[i - 1] <= ours[i]);

    CHECK_THROWS_AS(spectrum(uniform_chain(20, 1.0), 10), Error);
}

TEST_CASE("sturm counts") {
    const auto H = uniform_chain(10, 1.0);
    CHECK(sturm_count(H, -1.0) == 0);
    CHECK(sturm_count(H, 5.0) == 10);
    CHECK(sturm_count(H, 2.0 + 1e-9) == 5);
}

TEST_CASE("evolution") {
    const auto H3 = uniform_chain(3, 1.0);
    const auto psi0 = delta(3, 1);
    CHECK(evolve(H3, psi0, 0.0, EvolveMethod::exact_diag) == psi0);
    CHECK(evolve(H3, psi0, 0.0, EvolveMethod::checked_stepper) == psi0);
    const auto ref = oracle::dense_evolve(H3, psi0, 1.0);
    CHECK(max_diff(evolve(H3, psi0, 1.0, EvolveMethod::exact_diag), ref) <= 1e-10);
    CHECK(max_diff(evolve(H3, psi0, 1.0, EvolveMethod::checked_stepper), ref) <= 1e-10);

    const auto H = build_hamiltonian(stream_word(199).bits, 1.0, 0.5);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    std::vector<Complex> psi(H.sites());
    for (auto& a : psi) a = {nd(rng), nd(rng)};
    const double nrm = std::sqrt(norm2(psi));
    for (auto& a : psi) a /= nrm;
    const double e0 = expectation(H, psi);
    for (double t : {0.5, 10.0, 100.0}) {
        const auto ex = evolve(H, psi, t, EvolveMethod::exact_diag);
        const auto st = evolve(H, psi, t, EvolveMethod::checked_stepper);
        CHECK(std::abs(norm2(ex) - 1.0) <= 1e-10);
        CHECK(std::abs(expectation(H, ex) - e0) <= 1e-10);
        CHECK(max_diff(ex, st) <= 1e-8);
        CHECK(max_diff(ex, oracle::dense_evolve(H, psi, t)) <= 1e-8);
    }

    CHECK_THROWS_AS(evolve(H3, delta(4, 0), 1.0, EvolveMethod::exact_diag), Error);
    std::vector<Complex> unnormalized(3, 1.0);
    CHECK_THROWS_AS(evolve(H3, unnormalized, 1.0, EvolveMethod::exact_diag), Error);
}

TEST_CASE("transmission") {
    const auto empty = bits_from_string("000000");
    for (double E : {0.01, 0.7, 2.0, 3.99}) CHECK(std::abs(transmission(empty, E, 1.0, 0.5) - 1.0) <= 1e-10);
    const auto word = stream_word(40).bits;
    for (double E : {0.01, 0.7, 2.0, 3.99}) CHECK(std::abs(transmission(word, E, 1.0, 1.0) - 1.0) <= 1e-10);

    for (double g : {0.9, 0.5, 0.2}) {
        const double closed = 4.0 * g * g / ((1.0 + g * g) * (1.0 + g * g));
        CHECK(std::abs(transmission(bits_from_string("1"), 2.0, 1.0, g) - closed) <= 1e-12);

        // Single weak bond in the middle of a 50-site chain.
        std::vector<Bit> w(49, 0);
        w[24] = 1;
        const auto H = build_hamiltonian(w, 1.0, g);
        CHECK(std::abs(oracle::green_transmission(H, 2.0) - closed) <= 1e-10);
        CHECK(std::abs(transmission(w, 2.0, 1.0, g) - closed) <= 1e-10);
    }

    const auto r = stream_word(300).bits;
    const auto Hr = build_hamiltonian(r, 1.5, 0.4);
    for (double E : {0.05, 1.1, 2.9, 4.4, 5.95}) {
        const auto s = scatter(r, E, 1.5, 0.4);
        CHECK(std::abs(s.transmission - oracle::green_transmission(Hr, E)) <= 1e-8);
        CHECK(std::abs(s.transmission + s.reflection - 1.0) <= 1e-10);
    }

    auto pre = bits_from_string("01");
    pre.resize(30, 0);
    CHECK(std::abs(total_transfer(pre, 1.3, 1.0, 0.5).det() - 1.0) <= 1e-12);

    CHECK_THROWS_AS(transmission(word, 0.0, 1.0, 0.5), Error);
    CHECK_THROWS_AS(transmission(word, 4.0, 1.0, 0.5), Error);
    CHECK_THROWS_AS(transmission(word, -1.0, 1.0, 0.5), Error);
}
