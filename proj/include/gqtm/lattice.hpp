#pragma once

// Computation-basis states |l, j, S> of a head moving over a qubit lattice,
// and finite superpositions over them.

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace gqtm {

using Site = std::int64_t;
using Symbol = std::uint8_t;
using HeadState = std::uint8_t;
using Amplitude = std::complex<double>;

inline constexpr Symbol kBlank = 0;
inline constexpr Symbol kMarker = 2;

/// Finite-support assignment of qubit symbols to lattice sites. Sites not
/// stored read as the blank symbol 0; symbol 0 is never stored, so two
/// configurations are equal iff they describe the same lattice.
class QubitConfig {
public:
    using Entry = std::pair<Site, Symbol>;

    QubitConfig() = default;

    Symbol get(Site site) const noexcept;
    void set(Site site, Symbol symbol);

    /// Every stored site moved by `offset`.
    QubitConfig translated(Site offset) const;

    /// Nonblank entries in ascending site order.
    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }

    friend bool operator==(const QubitConfig&, const QubitConfig&) = default;
    friend auto operator<=>(const QubitConfig&, const QubitConfig&) = default;

private:
    std::vector<Entry> entries_;
};

struct BasisState {
    HeadState head_state = 0;
    Site head_site = 0;
    QubitConfig qubits;

    BasisState translated(Site offset) const {
        return {head_state, head_site + offset, qubits.translated(offset)};
    }

    friend bool operator==(const BasisState&, const BasisState&) = default;
    friend auto operator<=>(const BasisState&, const BasisState&) = default;
};

struct BasisStateHash {
    std::size_t operator()(const BasisState& state) const noexcept;
};

/// Finite superposition of basis states.
class WaveFunction {
public:
    using Map = std::map<BasisState, Amplitude>;

    WaveFunction() = default;
    explicit WaveFunction(double prune_threshold) : prune_threshold_(prune_threshold) {}

    /// Adds `amplitude` to the coefficient of `state` (amplitudes sum).
    void add(const BasisState& state, Amplitude amplitude);
    Amplitude amplitude(const BasisState& state) const;

    const Map& amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    bool empty() const noexcept { return amplitudes_.empty(); }

    double norm2() const noexcept;
    double prune_threshold() const noexcept { return prune_threshold_; }

    /// <this, other>, antilinear in `this`.
    Amplitude inner(const WaveFunction& other) const;

private:
    Map amplitudes_;
    double prune_threshold_ = 0.0;
};

/// Places markers at site 0 and then cumulatively at previous + spacing.
/// Throws invalid_argument for an empty list or a spacing < 1.
QubitConfig make_marker_lattice(std::span<const Site> spacings);

/// The unbounded enumeration lattice: one marker at site 0.
QubitConfig make_single_marker_lattice();

/// Reads the binary counter strictly between two markers; the site just left
/// of `right_marker` carries the least significant bit.
std::uint64_t decode_between_markers(const QubitConfig& config, Site left_marker,
                                     Site right_marker);

/// Normalized superposition of the given components.
WaveFunction wave_packet(std::span<const std::pair<BasisState, Amplitude>> components);

/// Gaussian envelope exp(-(x - center)^2 / (4 width^2)) over the given head
/// sites, all with the same head state and lattice, normalized.
WaveFunction gaussian_packet(HeadState head_state, std::span<const Site> head_sites,
                             const QubitConfig& qubits, double center, double width);

} // namespace gqtm
