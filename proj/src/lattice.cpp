#include "gqtm/lattice.hpp"

#include "gqtm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gqtm {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::malformed_counter: return "malformed-counter";
    case ErrorCode::degenerate_state: return "degenerate-state";
    case ErrorCode::horizon_exhausted: return "horizon-exhausted";
    case ErrorCode::corrupted_operator: return "corrupted-operator";
    case ErrorCode::resource_exhausted: return "resource-exhausted";
    case ErrorCode::out_of_band: return "out-of-band";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::not_normalized: return "not-normalized";
    }
    return "unknown";
}

namespace {

template <class Entries>
auto find_site(Entries& entries, Site site) {
    return std::lower_bound(entries.begin(), entries.end(), site,
                            [](const QubitConfig::Entry& e, Site s) { return e.first < s; });
}

} // namespace

Symbol QubitConfig::get(Site site) const noexcept {
    auto it = find_site(entries_, site);
    return (it != entries_.end() && it->first == site) ? it->second : kBlank;
}

void QubitConfig::set(Site site, Symbol symbol) {
    auto it = find_site(entries_, site);
    const bool present = it != entries_.end() && it->first == site;
    if (symbol == kBlank) {
        if (present) entries_.erase(it);
    } else if (present) {
        it->second = symbol;
    } else {
        entries_.insert(it, {site, symbol});
    }
}

QubitConfig QubitConfig::translated(Site offset) const {
    QubitConfig out = *this;
    for (auto& [site, symbol] : out.entries_) site += offset;
    return out;
}

std::size_t BasisStateHash::operator()(const BasisState& state) const noexcept {
    // boost-style hash_combine
    std::size_t h = std::hash<int>{}(state.head_state);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<Site>{}(state.head_site));
    for (const auto& [site, symbol] : state.qubits.entries()) {
        mix(std::hash<Site>{}(site));
        mix(symbol);
    }
    return h;
}

void WaveFunction::add(const BasisState& state, Amplitude amplitude) {
    auto [it, inserted] = amplitudes_.try_emplace(state, amplitude);
    if (!inserted) it->second += amplitude;
    if (std::abs(it->second) <= prune_threshold_) amplitudes_.erase(it);
}

Amplitude WaveFunction::amplitude(const BasisState& state) const {
    auto it = amplitudes_.find(state);
    return it == amplitudes_.end() ? Amplitude{} : it->second;
}

double WaveFunction::norm2() const noexcept {
    double sum = 0.0;
    for (const auto& [state, a] : amplitudes_) sum += std::norm(a);
    return sum;
}

Amplitude WaveFunction::inner(const WaveFunction& other) const {
    const auto& small = size() <= other.size() ? amplitudes_ : other.amplitudes_;
    const auto& large = size() <= other.size() ? other.amplitudes_ : amplitudes_;
    Amplitude sum{};
    for (const auto& [state, a] : small) {
        auto it = large.find(state);
        if (it == large.end()) continue;
        sum += (&small == &amplitudes_) ? std::conj(a) * it->second : std::conj(it->second) * a;
    }
    return sum;
}

QubitConfig make_marker_lattice(std::span<const Site> spacings) {
    if (spacings.empty()) fail(ErrorCode::invalid_argument, "marker spacings must be nonempty");
    QubitConfig config;
    Site site = 0;
    config.set(site, kMarker);
    for (Site spacing : spacings) {
        if (spacing < 1)
            fail(ErrorCode::invalid_argument,
                 "marker spacing must be >= 1, got " + std::to_string(spacing));
        site += spacing;
        config.set(site, kMarker);
    }
    return config;
}

QubitConfig make_single_marker_lattice() {
    QubitConfig config;
    config.set(0, kMarker);
    return config;
}

std::uint64_t decode_between_markers(const QubitConfig& config, Site left_marker,
                                     Site right_marker) {
    if (right_marker <= left_marker)
        fail(ErrorCode::invalid_argument, "right marker must lie right of left marker");
    if (config.get(left_marker) != kMarker || config.get(right_marker) != kMarker)
        fail(ErrorCode::malformed_counter, "counter bounds do not hold markers");
    if (right_marker - left_marker - 1 > 64)
        fail(ErrorCode::invalid_argument, "counter wider than 64 bits");
    std::uint64_t value = 0;
    for (Site site = left_marker + 1; site < right_marker; ++site) {
        const Symbol s = config.get(site);
        if (s == kMarker)
            fail(ErrorCode::malformed_counter,
                 "marker inside counter at site " + std::to_string(site));
        if (s > 1)
            fail(ErrorCode::malformed_counter,
                 "non-binary symbol inside counter at site " + std::to_string(site));
        value = (value << 1) | s;
    }
    return value;
}

WaveFunction wave_packet(std::span<const std::pair<BasisState, Amplitude>> components) {
    if (components.empty()) fail(ErrorCode::degenerate_state, "wave packet has no components");
    WaveFunction raw;
    for (const auto& [state, a] : components) raw.add(state, a);
    const double n2 = raw.norm2();
    if (!(n2 > 0.0)) fail(ErrorCode::degenerate_state, "wave packet amplitudes are all zero");
    const double scale = 1.0 / std::sqrt(n2);
    WaveFunction out;
    for (const auto& [state, a] : raw.amplitudes())
        if (a != Amplitude{}) out.add(state, a * scale);
    return out;
}

WaveFunction gaussian_packet(HeadState head_state, std::span<const Site> head_sites,
                             const QubitConfig& qubits, double center, double width) {
    if (!(width > 0.0)) fail(ErrorCode::invalid_argument, "packet width must be positive");
    std::vector<std::pair<BasisState, Amplitude>> components;
    components.reserve(head_sites.size());
    for (Site site : head_sites) {
        const double x = static_cast<double>(site) - center;
        components.push_back({BasisState{head_state, site, qubits},
                              Amplitude{std::exp(-x * x / (4.0 * width * width)), 0.0}});
    }
    return wave_packet(components);
}

} // namespace gqtm
