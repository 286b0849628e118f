#include "gqtm/tight_binding.hpp"

#include "gqtm/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gqtm {

namespace {

void check_parameters(double K, double gamma) {
    if (!(K > 0.0) || !std::isfinite(K)) fail(ErrorCode::invalid_argument, "K must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0)) fail(ErrorCode::invalid_argument, "gamma must lie in (0, 1]");
}

// Gershgorin interval enclosing the spectrum.
std::pair<double, double> gershgorin(const TightBindingMatrix& H) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = H.sites();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(H.hoppings[i - 1]);
        if (i + 1 < n) r += std::abs(H.hoppings[i]);
        lo = std::min(lo, H.diagonal[i] - r);
        hi = std::max(hi, H.diagonal[i] + r);
    }
    return {lo, hi};
}

void check_state(const TightBindingMatrix& H, std::span<const Complex> psi) {
    if (psi.size() != H.sites())
        fail(ErrorCode::dimension_mismatch, "state has " + std::to_string(psi.size()) +
                                                " components, chain has " + std::to_string(H.sites()));
}

} // namespace

std::vector<double> TightBindingMatrix::dense() const {
    const std::size_t n = sites();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i * n + i] = diagonal[i];
    for (std::size_t b = 0; b + 1 < n; ++b) {
        out[b * n + b + 1] = -hoppings[b];
        out[(b + 1) * n + b] = -hoppings[b];
    }
    return out;
}

TightBindingMatrix build_hamiltonian(std::span<const Bit> word, double K, double gamma) {
    check_parameters(K, gamma);
    TightBindingMatrix H;
    H.K = K;
    H.gamma = gamma;
    H.diagonal.assign(word.size() + 1, 2.0 * K);
    H.hoppings.reserve(word.size());
    for (Bit b : word) H.hoppings.push_back(b ? K * gamma : K);
    H.weighted.assign(word.begin(), word.end());
    return H;
}

TightBindingMatrix uniform_chain(std::size_t sites, double K) {
    if (sites < 1) fail(ErrorCode::invalid_argument, "chain needs at least one site");
    const std::vector<Bit> word(sites - 1, 0);
    return build_hamiltonian(word, K, 1.0);
}

std::size_t sturm_count(const TightBindingMatrix& H, double x) noexcept {
    constexpr double pivmin = std::numeric_limits<double>::min() * 16.0;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < H.sites(); ++i) {
        const double off = i > 0 ? H.hoppings[i - 1] : 0.0;
        q = H.diagonal[i] - x - (i > 0 ? off * off / q : 0.0);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> spectrum(const TightBindingMatrix& H, std::size_t max_sites) {
    const std::size_t n = H.sites();
    if (n > max_sites)
        fail(ErrorCode::resource_exhausted, "spectrum of " + std::to_string(n) +
                                                " sites exceeds cap " + std::to_string(max_sites));
    if (n == 0) return {};
    auto [lo0, hi0] = gershgorin(H);
    const double scale = std::max(std::abs(lo0), std::abs(hi0));
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * scale;
    lo0 -= tol;
    hi0 += tol;

    std::vector<double> values(n);
    double floor = lo0;
    for (std::size_t k = 0; k < n; ++k) {
        double lo = floor;
        double hi = hi0;
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count(H, mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        // Clustered eigenvalues can straddle by an ulp; keep the output sorted.
        values[k] = k > 0 ? std::max(values[k - 1], 0.5 * (lo + hi)) : 0.5 * (lo + hi);
        floor = lo;
    }
    return values;
}

std::vector<Complex> apply_hamiltonian(const TightBindingMatrix& H, std::span<const Complex> psi) {
    check_state(H, psi);
    const std::size_t n = H.sites();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex v = H.diagonal[i] * psi[i];
        if (i > 0) v -= H.hoppings[i - 1] * psi[i - 1];
        if (i + 1 < n) v -= H.hoppings[i] * psi[i + 1];
        out[i] = v;
    }
    return out;
}

double norm2(std::span<const Complex> psi) noexcept {
    double s = 0.0;
    for (const auto& a : psi) s += std::norm(a);
    return s;
}

double expectation(const TightBindingMatrix& H, std::span<const Complex> psi) {
    const auto h_psi = apply_hamiltonian(H, psi);
    Complex s{};
    for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * h_psi[i];
    return s.real();
}

namespace {

std::vector<Complex> evolve_exact(const TightBindingMatrix& H, std::span<const Complex> psi0, double t) {
    const auto n = static_cast<Eigen::Index>(H.sites());
    Eigen::VectorXd diag(n), sub(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index i = 0; i < n; ++i) diag[i] = H.diagonal[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = -H.hoppings[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& V = solver.eigenvectors();
    const Eigen::VectorXd& lambda = solver.eigenvalues();

    Eigen::VectorXcd psi(n);
    for (Eigen::Index i = 0; i < n; ++i) psi[i] = psi0[static_cast<std::size_t>(i)];
    Eigen::VectorXcd coeff = V.transpose().cast<Complex>() * psi;
    for (Eigen::Index m = 0; m < n; ++m) coeff[m] *= std::polar(1.0, -lambda[m] * t);
    const Eigen::VectorXcd out = V.cast<Complex>() * coeff;
    return {out.data(), out.data() + n};
}

double bessel_j(std::size_t k, double x) {
    const double v = std::cyl_bessel_j(static_cast<double>(k), std::abs(x));
    return (x < 0.0 && (k % 2 == 1)) ? -v : v;
}

// One Chebyshev slice: exp(-i H dt) psi with H = a Ht + b, spec(Ht) in [-1, 1].
std::vector<Complex> chebyshev_slice(const TightBindingMatrix& H, std::vector<Complex> psi, double a,
                                     double b, double dt) {
    const std::size_t n = psi.size();
    const double x = a * dt;
    auto scaled = [&](const std::vector<Complex>& v) {
        auto hv = apply_hamiltonian(H, v);
        for (std::size_t i = 0; i < n; ++i) hv[i] = (hv[i] - b * v[i]) / a;
        return hv;
    };
    std::vector<Complex> prev = psi;
    std::vector<Complex> curr = scaled(psi);
    std::vector<Complex> out(n);
    const double j0 = bessel_j(0, x);
    for (std::size_t i = 0; i < n; ++i) out[i] = j0 * prev[i];
    Complex phase{0.0, -1.0}; // (-i)^k
    const std::size_t k_min = static_cast<std::size_t>(std::abs(x)) + 8;
    for (std::size_t k = 1;; ++k) {
        const double jk = bessel_j(k, x);
        const Complex c = 2.0 * phase * jk;
        for (std::size_t i = 0; i < n; ++i) out[i] += c * curr[i];
        if (k > k_min && std::abs(jk) < 1e-18) break;
        auto next = scaled(curr);
        for (std::size_t i = 0; i < n; ++i) next[i] = 2.0 * next[i] - prev[i];
        prev = std::move(curr);
        curr = std::move(next);
        phase *= Complex{0.0, -1.0};
    }
    const Complex global = std::polar(1.0, -b * dt);
    for (auto& v : out) v *= global;
    return out;
}

std::vector<Complex> evolve_chebyshev(const TightBindingMatrix& H, std::span<const Complex> psi0, double t) {
    auto [lo, hi] = gershgorin(H);
    const double b = 0.5 * (lo + hi);
    const double a = 0.5 * (hi - lo) * (1.0 + 1e-6) + 1e-12;
    constexpr double kSliceWidth = 10.0;
    const auto slices = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(a * std::abs(t) / kSliceWidth)));
    const double dt = t / static_cast<double>(slices);
    std::vector<Complex> psi(psi0.begin(), psi0.end());
    for (std::size_t s = 0; s < slices; ++s) psi = chebyshev_slice(H, std::move(psi), a, b, dt);
    return psi;
}

} // namespace

std::vector<Complex> evolve(const TightBindingMatrix& H, std::span<const Complex> psi0, double t,
                            EvolveMethod method) {
    check_state(H, psi0);
    if (std::abs(norm2(psi0) - 1.0) > 1e-12) fail(ErrorCode::not_normalized, "initial state is not normalized");
    if (!std::isfinite(t)) fail(ErrorCode::invalid_argument, "time must be finite");
    if (t == 0.0) return {psi0.begin(), psi0.end()};
    return method == EvolveMethod::exact_diag ? evolve_exact(H, psi0, t) : evolve_chebyshev(H, psi0, t);
}

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) noexcept {
    const auto& x = a.m;
    const auto& y = b.m;
    return {{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
             x[2] * y[1] + x[3] * y[3]}};
}

TransferMatrix site_transfer(double energy, double diagonal, double h_left, double h_right) {
    return {{(diagonal - energy) / h_right, -h_left / h_right, 1.0, 0.0}};
}

TransferMatrix total_transfer(std::span<const Bit> word, double energy, double K, double gamma) {
    check_parameters(K, gamma);
    TransferMatrix total;
    double h_left = K;
    for (std::size_t site = 0; site <= word.size(); ++site) {
        const double h_right = site < word.size() ? (word[site] ? K * gamma : K) : K;
        total = site_transfer(energy, 2.0 * K, h_left, h_right) * total;
        h_left = h_right;
    }
    return total;
}

Scattering scatter(std::span<const Bit> word, double energy, double K, double gamma) {
    check_parameters(K, gamma);
    if (!(energy > 0.0 && energy < 4.0 * K))
        fail(ErrorCode::out_of_band, "energy " + std::to_string(energy) + " outside the open lead band (0, 4K)");
    const double k = std::acos(1.0 - energy / (2.0 * K));
    const auto P = total_transfer(word, energy, K, gamma);
    const auto n = static_cast<double>(word.size() + 1);

    // left lead psi_m = e^{ikm} + r e^{-ikm}, right lead psi_m = t e^{ikm}
    const Complex eik = std::polar(1.0, k);
    const Complex emik = std::conj(eik);
    auto mul = [&P](Complex u, Complex v) {
        return std::pair<Complex, Complex>{P.m[0] * u + P.m[1] * v, P.m[2] * u + P.m[3] * v};
    };
    const auto [a1, a2] = mul(eik, 1.0);
    const auto [b1, b2] = mul(emik, 1.0);
    const Complex w1 = std::polar(1.0, k * (n + 1.0));
    const Complex w2 = std::polar(1.0, k * n);
    const Complex det = -w1 * b2 + w2 * b1;
    // a2 b1 - a1 b2 = det(P) (e^{-ik} - e^{ik}) with det(P) = 1; the closed form
    // avoids cancellation near the band edges.
    const double sin_k = std::sqrt(energy * (4.0 * K - energy)) / (2.0 * K);
    const Complex t = Complex{0.0, -2.0 * sin_k} / det;
    const Complex r = (w1 * a2 - w2 * a1) / det;
    return {std::norm(t), std::norm(r)};
}

} // namespace gqtm
