#pragma once

// Independent reference computations. Nothing here calls into the library
// code paths it is compared against.

#include "gqtm/counting.hpp"
#include "gqtm/step.hpp"
#include "gqtm/substitution.hpp"
#include "gqtm/tight_binding.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// Trailing ones read off a printed binary string.
inline std::uint64_t trailing_ones(std::uint64_t j) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('0' + (j & 1)));
        j >>= 1;
    } while (j);
    std::uint64_t n = 0;
    for (auto it = s.rbegin(); it != s.rend() && *it == '1'; ++it) ++n;
    return n;
}

// Sum of trailing ones over 0 .. 2^n - 1.
inline std::uint64_t trailing_ones_total(int n) {
    std::uint64_t total = 0;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) total += trailing_ones(j);
    return total;
}

// Word from the expansion rule applied to trailing-ones values directly.
inline std::string expanded_string(int n) {
    std::string out;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
        const auto r = trailing_ones(j);
        if (r == 0) {
            out += "00";
            continue;
        }
        out += '0';
        out.append(r, '1');
        out.append(r + 1, '0');
    }
    return out;
}

// Counter bits after `count` binary increments of an n-digit register,
// most significant digit first.
inline std::vector<int> increment_register(int n, std::uint64_t count) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::uint64_t c = 0; c < count; ++c) {
        for (int i = n - 1; i >= 0; --i) {
            auto& d = digits[static_cast<std::size_t>(i)];
            d ^= 1;
            if (d == 1) break;
        }
    }
    return digits;
}

// Word obtained by repeated application of T to a wave function, reading the
// weight from the amplitude ratio. Stops once the head is in state 1 beyond
// `stop_site` or the state is annihilated.
inline std::string word_by_apply_T(const gqtm::StepOperator& op, const gqtm::BasisState& seed,
                                   gqtm::Site stop_site, std::size_t max_steps) {
    gqtm::WaveFunction psi;
    psi.add(seed, 1.0);
    std::string out;
    for (std::size_t k = 0; k < max_steps; ++k) {
        const auto& [state, amp] = *psi.amplitudes().begin();
        if (state.head_state == gqtm::kReturn && state.head_site > stop_site) break;
        const auto next = gqtm::apply_T(op, psi);
        if (next.empty()) break;
        const double ratio = std::abs(next.amplitudes().begin()->second) / std::abs(amp);
        out += ratio < 1.0 ? '1' : '0';
        gqtm::WaveFunction renorm;
        renorm.add(next.amplitudes().begin()->first, 1.0);
        psi = renorm;
    }
    return out;
}

inline Eigen::MatrixXd dense_matrix(const gqtm::TightBindingMatrix& H) {
    const auto n = static_cast<Eigen::Index>(H.sites());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) M(i, i) = 2.0 * H.K;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double h = H.weighted[static_cast<std::size_t>(i)] ? H.K * H.gamma : H.K;
        M(i, i + 1) = M(i + 1, i) = -h;
    }
    return M;
}

inline std::vector<double> dense_eigenvalues(const gqtm::TightBindingMatrix& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(H), Eigen::EigenvaluesOnly);
    const auto& v = solver.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

// exp(-i H t) psi from a dense eigendecomposition.
inline std::vector<std::complex<double>> dense_evolve(const gqtm::TightBindingMatrix& H,
                                                      const std::vector<std::complex<double>>& psi0,
                                                      double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(H));
    const Eigen::MatrixXcd V = solver.eigenvectors().cast<std::complex<double>>();
    Eigen::VectorXcd psi = Eigen::Map<const Eigen::VectorXcd>(psi0.data(), static_cast<Eigen::Index>(psi0.size()));
    Eigen::VectorXcd c = V.adjoint() * psi;
    for (Eigen::Index m = 0; m < c.size(); ++m) c[m] *= std::polar(1.0, -solver.eigenvalues()[m] * t);
    const Eigen::VectorXcd out = V * c;
    return {out.data(), out.data() + out.size()};
}

// Transmission from the retarded Green's function of the scatterer with the
// leads folded into self-energies: T = Gamma^2 |G_{1N}|^2.
inline double green_transmission(const gqtm::TightBindingMatrix& H, double E) {
    const double K = H.K;
    const double k = std::acos(1.0 - E / (2.0 * K));
    const std::complex<double> sigma = -K * std::polar(1.0, k);
    const double gamma_lead = 2.0 * K * std::sin(k);
    const auto n = static_cast<Eigen::Index>(H.sites());
    Eigen::MatrixXcd A = -dense_matrix(H).cast<std::complex<double>>();
    A.diagonal().array() += E;
    A(0, 0) -= sigma;
    A(n - 1, n - 1) -= sigma;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs[n - 1] = 1.0;
    const Eigen::VectorXcd col = A.partialPivLu().solve(rhs);
    return gamma_lead * gamma_lead * std::norm(col[0]);
}

} // namespace oracle
