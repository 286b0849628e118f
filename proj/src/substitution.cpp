#include "gqtm/substitution.hpp"

#include "gqtm/error.hpp"

#include <bit>
#include <unordered_map>

namespace gqtm {

std::uint64_t r_direct(std::uint64_t j) noexcept { return static_cast<std::uint64_t>(std::countr_one(j)); }

RSequence r_prefix(int n, std::size_t max_entries) {
    if (n < 0) fail(ErrorCode::invalid_argument, "prefix order n must be >= 0");
    if (n >= 63 || (std::size_t{1} << n) > max_entries)
        fail(ErrorCode::resource_exhausted,
             "R prefix of order " + std::to_string(n) + " exceeds the budget of " +
                 std::to_string(max_entries) + " entries");
    std::vector<std::uint64_t> s{0}; // S_0
    std::vector<std::uint64_t> r{0}; // R_0
    for (int k = 1; k <= n; ++k) {
        r = s;                       // R_k = S_{k-1} k
        r.push_back(static_cast<std::uint64_t>(k));
        if (k == n) break;
        std::vector<std::uint64_t> next = r; // S_k = R_k S_{k-1}
        next.insert(next.end(), s.begin(), s.end());
        s = std::move(next);
    }
    return {std::move(r)};
}

RSequence substitution_step(const RSequence& seq) {
    RSequence out;
    out.entries.reserve(2 * seq.entries.size());
    for (auto k : seq.entries) {
        out.entries.push_back(0);
        out.entries.push_back(k + 1);
    }
    return out;
}

namespace {

void append_block(std::vector<Bit>& bits, std::uint64_t k) {
    bits.push_back(0);
    bits.insert(bits.end(), k, Bit{1});
    bits.insert(bits.end(), k + 1, Bit{0});
}

} // namespace

ExpandedWord expand(const RSequence& seq) {
    ExpandedWord out;
    out.provenance = "expand";
    for (auto k : seq.entries) append_block(out.bits, k);
    return out;
}

ExpandedWord multi_marker_word(std::span<const int> n_values, std::span<const std::size_t> gaps) {
    if (n_values.empty()) fail(ErrorCode::invalid_argument, "multi-marker word needs at least one block");
    if (gaps.size() + 1 != n_values.size())
        fail(ErrorCode::invalid_argument, "need exactly one gap between consecutive blocks");
    ExpandedWord out;
    out.provenance = "multi_marker";
    out.gaps.assign(gaps.begin(), gaps.end());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (i > 0) out.bits.insert(out.bits.end(), gaps[i - 1], Bit{0});
        for (auto k : r_prefix(n_values[i]).entries) append_block(out.bits, k);
    }
    return out;
}

std::uint64_t RStream::next() {
    if (emitted_ < 2) {
        ++emitted_;
        if (emitted_ == 2) stack_.push_back({0, false});
        return emitted_ - 1;
    }
    ++emitted_;
    // in-order walk of S_m = S_{m-1} m S_{m-1}
    while (!stack_.empty()) {
        const Frame top = stack_.back();
        if (top.level == 0) {
            stack_.pop_back();
            return 0;
        }
        if (!top.left_done) {
            stack_.back().left_done = true;
            stack_.push_back({top.level - 1, false});
            continue;
        }
        stack_.back() = {top.level - 1, false};
        return top.level;
    }
    const std::uint64_t level = next_level_++;
    stack_.push_back({level - 1, false});
    return level;
}

Bit WordStream::next() {
    if (!lead_ && ones_ == 0 && zeros_ == 0) {
        const std::uint64_t k = entries_.next();
        lead_ = true;
        ones_ = k;
        zeros_ = k + 1;
    }
    if (lead_) {
        lead_ = false;
        return 0;
    }
    if (ones_ > 0) {
        --ones_;
        return 1;
    }
    --zeros_;
    return 0;
}

ExpandedWord stream_word(std::size_t limit) {
    if (limit < 1) fail(ErrorCode::invalid_argument, "stream limit must be >= 1");
    ExpandedWord out;
    out.provenance = "stream";
    out.bits.reserve(limit);
    WordStream stream;
    for (std::size_t i = 0; i < limit; ++i) out.bits.push_back(stream.next());
    return out;
}

std::optional<PeriodWitness> is_eventually_periodic(std::span<const Bit> bits, std::size_t max_period,
                                                    std::size_t offset_budget) {
    const std::size_t n = bits.size();
    for (std::size_t p = 1; p <= max_period && 2 * p <= n; ++p) {
        std::size_t offset = 0;
        for (std::size_t i = n - p; i-- > 0;) {
            if (bits[i] != bits[i + p]) {
                offset = i + 1;
                break;
            }
        }
        if (offset <= offset_budget && n - offset >= 2 * p) return PeriodWitness{p, offset};
    }
    return std::nullopt;
}

FactorReport factor_recurrence(std::span<const Bit> bits, std::size_t max_len, double window_fraction) {
    if (max_len > 64) fail(ErrorCode::invalid_argument, "factor length is limited to 64");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        fail(ErrorCode::invalid_argument, "window fraction must lie in (0, 1]");
    FactorReport report;
    report.max_len = max_len;
    report.window = static_cast<std::size_t>(static_cast<double>(bits.size()) * window_fraction);
    const std::size_t n = bits.size();

    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    std::vector<std::uint64_t> keys;
    for (std::size_t len = 1; len <= max_len && len <= n; ++len) {
        const std::uint64_t mask = len == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
        counts.clear();
        keys.assign(n - len + 1, 0);
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i) {
            key = ((key << 1) | bits[i]) & mask;
            if (i + 1 >= len) {
                keys[i + 1 - len] = key;
                ++counts[key];
            }
        }
        for (std::size_t pos = 0; pos + len <= report.window; ++pos) {
            if (counts[keys[pos]] < 2) {
                report.singletons.push_back(
                    {len, pos, bits_to_string(bits.subspan(pos, len))});
                break;
            }
        }
    }
    return report;
}

std::string bits_to_string(std::span<const Bit> bits) {
    std::string out;
    out.reserve(bits.size());
    for (Bit b : bits) out.push_back(b ? '1' : '0');
    return out;
}

std::vector<Bit> bits_from_string(const std::string& text) {
    std::vector<Bit> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') fail(ErrorCode::invalid_argument, "word must contain only 0 and 1");
        out.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

} // namespace gqtm
