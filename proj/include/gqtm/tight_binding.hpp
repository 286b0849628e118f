#pragma once

// Tight-binding chains H = K(2 - U - U^dagger) + V on an unfolded path, where
// the off-diagonal potential V lowers the hopping of every weighted bond from
// K to K gamma. Spectrum, time evolution and two-lead transmission.

#include "gqtm/substitution.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gqtm {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultSpectrumCap = 8192;

/// Real symmetric tridiagonal matrix with diagonal 2K and off-diagonal
/// entries -hoppings[b] between sites b and b+1. Open boundaries.
struct TightBindingMatrix {
    double K = 1.0;
    double gamma = 1.0;
    std::vector<double> diagonal;
    std::vector<double> hoppings;
    std::vector<Bit> weighted;

    std::size_t sites() const noexcept { return diagonal.size(); }
    /// Height 2K(1 - gamma) attributed to each weighted bond.
    double potential_height() const noexcept { return 2.0 * K * (1.0 - gamma); }
    /// Dense row-major copy, for small checks.
    std::vector<double> dense() const;
};

/// N = word.size() + 1 sites.
TightBindingMatrix build_hamiltonian(std::span<const Bit> word, double K, double gamma);

/// Uniform chain of `sites` sites with hopping K.
TightBindingMatrix uniform_chain(std::size_t sites, double K);

/// All eigenvalues in ascending order, by Sturm-count bisection.
std::vector<double> spectrum(const TightBindingMatrix& H, std::size_t max_sites = kDefaultSpectrumCap);

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const TightBindingMatrix& H, double x) noexcept;

std::vector<Complex> apply_hamiltonian(const TightBindingMatrix& H, std::span<const Complex> psi);
double expectation(const TightBindingMatrix& H, std::span<const Complex> psi);
double norm2(std::span<const Complex> psi) noexcept;

enum class EvolveMethod { exact_diag, checked_stepper };

/// exp(-i H t) psi0 with hbar = 1. `exact_diag` uses the spectral
/// decomposition; `checked_stepper` a Chebyshev expansion in time slices,
/// independent of the eigenvectors. Throws dimension_mismatch or
/// not_normalized (|norm^2 - 1| > 1e-12).
std::vector<Complex> evolve(const TightBindingMatrix& H, std::span<const Complex> psi0, double t,
                            EvolveMethod method);

/// Propagates (psi_n, psi_{n-1}) to (psi_{n+1}, psi_n) across site n.
struct TransferMatrix {
    std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

    double det() const noexcept { return m[0] * m[3] - m[1] * m[2]; }
    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) noexcept;
};

/// Site with on-site energy `diagonal`, left bond `h_left`, right bond `h_right`.
TransferMatrix site_transfer(double energy, double diagonal, double h_left, double h_right);

/// Product over all N scatterer sites, bonds to the leads having hopping K.
TransferMatrix total_transfer(std::span<const Bit> word, double energy, double K, double gamma);

struct Scattering {
    double transmission = 0.0;
    double reflection = 0.0;
};

/// Scatterer of word.size() + 1 sites between two uniform hopping-K leads.
/// Throws out_of_band unless 0 < energy < 4K.
Scattering scatter(std::span<const Bit> word, double energy, double K, double gamma);

inline double transmission(std::span<const Bit> word, double energy, double K, double gamma) {
    return scatter(word, energy, K, gamma).transmission;
}

} // namespace gqtm
