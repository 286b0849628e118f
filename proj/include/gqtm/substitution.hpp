#pragma once

// Machine-free construction of the potential distribution.
//
// R(j) is the number of trailing one bits of j. Its prefixes obey
//   R_n = S_{n-1} n,   S_n = R_n S_{n-1},   S_0 = (0),
// and R is the fixed point of the substitution n -> (0, n+1). The binary word
// is obtained blockwise by 0 -> 00 and n -> 0 1^n 0^(n+1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gqtm {

using Bit = std::uint8_t;

inline constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 24;

std::uint64_t r_direct(std::uint64_t j) noexcept;

struct RSequence {
    std::vector<std::uint64_t> entries;

    friend bool operator==(const RSequence&, const RSequence&) = default;
};

/// First 2^n entries of R via the prefix recursion. Throws resource_exhausted
/// if 2^n exceeds `max_entries`.
RSequence r_prefix(int n, std::size_t max_entries = kDefaultMaxEntries);

/// Every entry k replaced by the pair (0, k+1).
RSequence substitution_step(const RSequence& seq);

struct ExpandedWord {
    std::vector<Bit> bits;
    std::string provenance;
    /// Zero runs inserted between concatenated blocks (multi-marker words).
    std::vector<std::size_t> gaps;
};

/// Blockwise expansion 0 -> 00, k -> 0 1^k 0^(k+1).
ExpandedWord expand(const RSequence& seq);

/// Concatenates expand(r_prefix(n_i)) with `gaps[i]` zeros between block i
/// and block i+1. Requires gaps.size() == n_values.size() - 1.
ExpandedWord multi_marker_word(std::span<const int> n_values, std::span<const std::size_t> gaps);

/// Lazy R(0), R(1), ... generated from the prefix recursion: after R_k has
/// been emitted, R_{k+1} continues with S_{k-1} followed by k+1.
class RStream {
public:
    std::uint64_t next();

private:
    struct Frame {
        std::uint64_t level;
        bool left_done;
    };
    std::uint64_t emitted_ = 0;
    std::uint64_t next_level_ = 2;
    std::vector<Frame> stack_;
};

/// Lazy bits of the expanded word.
class WordStream {
public:
    Bit next();

private:
    RStream entries_;
    std::uint64_t ones_ = 0;
    std::uint64_t zeros_ = 0;
    bool lead_ = false;
};

ExpandedWord stream_word(std::size_t limit);

struct PeriodWitness {
    std::size_t period = 0;
    std::size_t offset = 0;
};

/// Smallest period p <= max_period for which bits[i] == bits[i+p] holds for
/// every i >= offset, with offset <= offset_budget and the periodic tail
/// covering at least two periods. Empty if none exists.
std::optional<PeriodWitness> is_eventually_periodic(std::span<const Bit> bits, std::size_t max_period,
                                                    std::size_t offset_budget);

struct SingletonFactor {
    std::size_t length = 0;
    std::size_t position = 0;
    std::string factor;
};

struct FactorReport {
    std::size_t max_len = 0;
    std::size_t window = 0;
    /// First singleton found per factor length.
    std::vector<SingletonFactor> singletons;

    bool all_recur() const noexcept { return singletons.empty(); }
};

/// For every length L <= max_len, checks that each factor lying entirely in
/// the first `window_fraction` of the word occurs at least twice in the
/// whole word. Requires max_len <= 64.
FactorReport factor_recurrence(std::span<const Bit> bits, std::size_t max_len,
                               double window_fraction = 0.5);

std::string bits_to_string(std::span<const Bit> bits);
std::vector<Bit> bits_from_string(const std::string& text);

} // namespace gqtm
