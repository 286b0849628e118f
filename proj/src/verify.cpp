#include "gqtm/verify.hpp"

#include "gqtm/counting.hpp"
#include "gqtm/error.hpp"
#include "gqtm/path.hpp"
#include "gqtm/substitution.hpp"
#include "gqtm/tight_binding.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace gqtm {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (ok || !pass) {
            pass = pass && ok;
            return;
        }
        pass = false;
        detail << what;
    }
};

CheckResult timed(const std::string& name, const std::function<void(Outcome&)>& body) {
    const auto start = Clock::now();
    Outcome out;
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail << "exception: " << e.what();
    }
    CheckResult r{name, out.pass, out.detail.str(), 0.0};
    if (r.pass && r.detail.empty()) r.detail = "ok";
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

std::size_t first_mismatch(std::span<const Bit> a, std::span<const Bit> b) {
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return i;
    return n;
}

std::size_t count_runs(std::span<const Bit> bits) { return run_profile(bits).runs.size(); }

} // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    if (options.n_max < 1) fail(ErrorCode::invalid_argument, "n_max must be >= 1");
    if (options.n_max > 20) fail(ErrorCode::invalid_argument, "n_max above 20 is not supported");
    const int n_max = options.n_max;
    const auto start = Clock::now();
    VerifyReport report;
    report.n_max = n_max;

    report.checks.push_back(timed("simulation_equals_substitution", [&](Outcome& out) {
        for (int n = 1; n <= n_max && out.pass; ++n) {
            const int ns[] = {n};
            const auto sim = simulate_counting_word(ns, 0.5, safe_step_bound(n));
            auto sub = expand(r_prefix(n)).bits;
            if (options.inject_fault && n == n_max) sub[sub.size() / 2] ^= 1;
            const auto a = strip_trailing_zeros(sim.bits);
            const auto b = strip_trailing_zeros(sub);
            const bool same = std::equal(a.begin(), a.end(), b.begin(), b.end());
            out.require(same, "n=" + std::to_string(n) + ": words differ at index " +
                                  std::to_string(first_mismatch(a, b)));
        }
    }));

    report.checks.push_back(timed("counting_enumeration", [&](Outcome& out) {
        for (int n = 1; n <= n_max && out.pass; ++n) {
            const auto trace = enumeration_trace(n, 0.5, safe_step_bound(n));
            bool ordered = trace.size() == (std::size_t{1} << n);
            for (std::size_t j = 0; ordered && j < trace.size(); ++j) ordered = trace[j].counter == j;
            out.require(ordered, "n=" + std::to_string(n) + ": counter sequence is not 0..2^n-1");
        }
    }));

    report.checks.push_back(timed("r_oracle_triangle", [&](Outcome& out) {
        const int order = std::min(16, n_max + 6);
        const auto prefix = r_prefix(order);
        RSequence iterated{{0}};
        for (int k = 0; k < order; ++k) iterated = substitution_step(iterated);
        out.require(iterated == prefix, "iterated substitution differs from prefix recursion");
        for (std::size_t j = 0; j < prefix.entries.size() && out.pass; ++j)
            out.require(prefix.entries[j] == r_direct(j), "R mismatch at j=" + std::to_string(j));
        for (int n = 0; n < std::min(14, order) && out.pass; ++n)
            out.require(substitution_step(r_prefix(n)) == r_prefix(n + 1),
                        "fixed point fails at n=" + std::to_string(n));
    }));

    report.checks.push_back(timed("potential_counts", [&](Outcome& out) {
        const int order = std::min(16, n_max + 6);
        for (int n = 1; n <= order && out.pass; ++n) {
            const auto word = expand(r_prefix(n)).bits;
            const auto ones = static_cast<std::size_t>(std::count(word.begin(), word.end(), Bit{1}));
            out.require(ones == (std::size_t{1} << n) - 1, "ones count wrong at n=" + std::to_string(n));
            out.require(count_runs(word) == (std::size_t{1} << (n - 1)),
                        "one-run count wrong at n=" + std::to_string(n));
        }
    }));

    report.checks.push_back(timed("multi_marker_periodicity", [&](Outcome& out) {
        const int p = std::min(3, n_max);
        const int ns[] = {p, p, p};
        const auto sim = simulate_counting_word(ns, 0.5, 3 * safe_step_bound(p) + 64);
        const auto built = measure_marker_gaps(sim.bits, ns);
        out.require(built.word.gaps.size() == 2 && built.word.gaps[0] == built.word.gaps[1],
                    "inter-block gaps differ");
        const auto block = expand(r_prefix(p)).bits;
        out.require(count_runs(block) == (std::size_t{1} << (p - 1)), "block has wrong number of potentials");
        auto rebuilt = built.word.bits;
        rebuilt.insert(rebuilt.end(), built.trailing_gap, Bit{0});
        out.require(rebuilt == sim.bits, "simulated and constructed words differ");
    }));

    report.checks.push_back(timed("translation_invariance", [&](Outcome& out) {
        for (int n = 1; n <= n_max && out.pass; ++n) {
            const int ns[] = {n};
            const auto base = simulate_counting_word(ns, 0.5, safe_step_bound(n));
            for (Site shift : {-5, -1, 1, 5})
                out.require(simulate_counting_word(ns, 0.5, safe_step_bound(n), shift) == base,
                            "n=" + std::to_string(n) + " shift " + std::to_string(shift) + " changes the word");
        }
    }));

    report.checks.push_back(timed("distinct_paths", [&](Outcome& out) {
        const auto op = build_counting_T(0.5);
        std::vector<BasisState> seeds;
        for (int n = 1; n <= n_max; ++n) {
            const auto seed = units_marker_seed(n);
            for (Site shift : {0, -5, -1, 1, 5}) seeds.push_back(seed.translated(shift));
        }
        const auto rep = verify_distinct_paths(op, seeds, options.path_horizon);
        out.require(rep.pass, "counting machine failed: " +
                                  (rep.violations.empty() ? std::string{} : to_string(rep.violations[0].kind)));
        // join: (0, read 0) and (1, read 0) both land in head state 0
        auto terms = std::vector<StepTerm>(op.terms().begin(), op.terms().end());
        terms[2].head_shift = -1;
        const StepOperator broken(terms, 3, 3);
        const auto bad = verify_distinct_paths(broken, seeds, 1000);
        out.require(!bad.pass, "corrupted operator was not rejected");
    }));

    report.checks.push_back(timed("numerics_sanity", [&](Outcome& out) {
        const std::size_t n_sites = 256;
        const auto H = uniform_chain(n_sites, 1.0);
        const auto ev = spectrum(H);
        for (std::size_t m = 1; m <= n_sites && out.pass; ++m) {
            const double exact = 2.0 * (1.0 - std::cos(std::numbers::pi * m / (n_sites + 1.0)));
            out.require(std::abs(ev[m - 1] - exact) <= 1e-9, "uniform spectrum off at m=" + std::to_string(m));
        }
        const int ns[] = {std::min(n_max, 6)};
        const auto word = simulate_counting_word(ns, 0.5, safe_step_bound(ns[0]));
        const auto W = build_hamiltonian(word.bits, 1.0, 0.5);
        std::vector<Complex> psi(W.sites());
        psi[0] = 1.0;
        const double e0 = expectation(W, psi);
        const auto psi_t = evolve(W, psi, 100.0, EvolveMethod::exact_diag);
        out.require(std::abs(norm2(psi_t) - 1.0) <= 1e-10, "norm drift above 1e-10");
        out.require(std::abs(expectation(W, psi_t) - e0) <= 1e-10, "energy drift above 1e-10");
        for (int i = 1; i <= 1000 && out.pass; ++i) {
            const double E = 4.0 * i / 1001.0;
            const auto s = scatter(word.bits, E, 1.0, 0.5);
            out.require(std::abs(s.transmission + s.reflection - 1.0) <= 1e-10,
                        "flux not conserved at E=" + std::to_string(E));
        }
        const double det = total_transfer(word.bits, 1.3, 1.0, 0.5).det();
        out.require(std::abs(det - 1.0) <= 1e-12, "transfer determinant does not telescope to 1");
    }));

    report.checks.push_back(timed("aperiodicity_proxy", [&](Outcome& out) {
        const auto word = stream_word(std::size_t{1} << 16).bits;
        const auto period = is_eventually_periodic(word, 1024, word.size() / 2);
        out.require(!period, "prefix is eventually periodic");
        const auto factors = factor_recurrence(word, 32, 0.25);
        out.require(factors.all_recur(), "singleton factor of length " +
                                             (factors.singletons.empty() ? std::string{"?"}
                                                                         : std::to_string(factors.singletons[0].length)));
    }));

    report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.pass; });
    report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["n_max"] = n_max;
    j["pass"] = pass;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
    j["seconds"] = seconds;
    return j.dump(2);
}

} // namespace gqtm
