#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuspidal/picard.hpp"

namespace cuspidal {

/// Outcome of the proximity test on a candidate multiplicity sequence.
struct SequenceViolation {
    std::size_t index;
    std::string message;
};

/// Proximity test on a compact sequence (entries with trailing 1s
/// omitted). The sequence must be non-increasing with entries >= 2,
/// and for every index i the following entries (reading 1 past the
/// end) must sum up to m_i exactly, without overshooting.
inline std::optional<SequenceViolation> check_sequence(const std::vector<Int>& entries) {
    if (entries.empty())
        return SequenceViolation{0, "empty sequence"};
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] < 2)
            return SequenceViolation{i, "compact entries must be >= 2"};
        if (i + 1 < entries.size() && entries[i + 1] > entries[i])
            return SequenceViolation{i + 1, "sequence must be non-increasing"};
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Int target = entries[i];
        Int sum = 0;
        std::size_t j = i + 1;
        while (sum < target) {
            sum += (j < entries.size()) ? entries[j] : 1;
            ++j;
        }
        if (sum != target)
            return SequenceViolation{i, "proximity equality fails: following entries sum to " +
                                            std::to_string(sum) + " != " + std::to_string(target)};
    }
    return std::nullopt;
}

/// Compact multiplicity sequence of a cusp, e.g. [6_2,3_3,2] for
/// [6,6,3,3,3,2,1,1]. Always valid after construction.
class MultiplicitySequence {
  public:
    explicit MultiplicitySequence(std::vector<Int> entries) : entries_(std::move(entries)) {
        if (auto v = check_sequence(entries_))
            throw std::invalid_argument("invalid multiplicity sequence at index " +
                                        std::to_string(v->index) + ": " + v->message);
    }

    const std::vector<Int>& entries() const { return entries_; }
    Int head() const { return entries_.front(); }
    std::size_t size() const { return entries_.size(); }

    /// Canonical compact text, run-length form: [4_2,2_3].
    std::string format() const {
        std::string out = "[";
        for (std::size_t i = 0; i < entries_.size();) {
            std::size_t j = i;
            while (j < entries_.size() && entries_[j] == entries_[i]) ++j;
            if (i > 0) out += ',';
            out += std::to_string(entries_[i]);
            if (j - i > 1) out += '_' + std::to_string(j - i);
            i = j;
        }
        return out + "]";
    }

    static MultiplicitySequence parse(std::string_view text);

    friend bool operator==(const MultiplicitySequence&, const MultiplicitySequence&) = default;
    friend auto operator<=>(const MultiplicitySequence& x, const MultiplicitySequence& y) {
        return x.entries_ <=> y.entries_;
    }

  private:
    std::vector<Int> entries_;
};

/// Grammar: [v(_k)?(,v(_k)?)*] with v >= 2, k >= 1. No whitespace.
inline MultiplicitySequence MultiplicitySequence::parse(std::string_view text) {
    auto fail = [&](const std::string& what) -> void {
        throw std::invalid_argument("sequence syntax error in '" + std::string(text) + "': " + what);
    };
    std::size_t pos = 0;
    auto read_int = [&]() -> Int {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) fail("expected a number");
        return std::stoll(std::string(text.substr(start, pos - start)));
    };
    if (text.empty() || text.front() != '[') fail("expected '['");
    pos = 1;
    std::vector<Int> entries;
    while (true) {
        Int v = read_int();
        if (v < 2) fail("compact entries must be >= 2");
        Int reps = 1;
        if (pos < text.size() && text[pos] == '_') {
            ++pos;
            reps = read_int();
            if (reps < 1) fail("repeat count must be >= 1");
        }
        entries.insert(entries.end(), static_cast<std::size_t>(reps), v);
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
    if (pos + 1 != text.size()) fail("trailing characters");
    return MultiplicitySequence(std::move(entries));
}

/// Parses a cuspidal configuration: comma-separated sequences, e.g.
/// "[4_2,2_3],[2],[2],[2]". Empty text means no cusps.
inline std::vector<MultiplicitySequence> parse_config(std::string_view text) {
    std::vector<MultiplicitySequence> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '[')
            throw std::invalid_argument("configuration syntax error: expected '[' at position " +
                                        std::to_string(pos));
        std::size_t end = text.find(']', pos);
        if (end == std::string_view::npos)
            throw std::invalid_argument("configuration syntax error: unterminated sequence");
        out.push_back(MultiplicitySequence::parse(text.substr(pos, end - pos + 1)));
        pos = end + 1;
        if (pos < text.size()) {
            if (text[pos] != ',')
                throw std::invalid_argument("configuration syntax error: expected ',' between sequences");
            ++pos;
        }
    }
    return out;
}

inline std::string format_config(const std::vector<MultiplicitySequence>& config) {
    std::string out;
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (i > 0) out += ',';
        out += config[i].format();
    }
    return out;
}

/// Delta invariant: sum of m_i(m_i-1)/2 over the sequence (trailing 1s
/// contribute nothing).
inline Int delta(const MultiplicitySequence& seq) {
    Int d = 0;
    for (Int m : seq.entries()) d += m * (m - 1) / 2;
    return d;
}

/// Milnor number of the (irreducible) germ: mu = 2*delta.
inline Int milnor(const MultiplicitySequence& seq) { return 2 * delta(seq); }

/// M-number via the closed formula, evaluated on the sequence extended
/// with one trailing 1. The result is insensitive to appending further
/// 1s; without the first one the formula undercounts ([2] would give 0).
inline Int m_number(const MultiplicitySequence& seq) {
    std::vector<Int> ext = seq.entries();
    ext.push_back(1);
    Int m = -1;
    for (std::size_t i = 0; i < ext.size(); ++i) {
        m += ext[i] - 1;
        if (i > 0) m += (ext[i - 1] + ext[i] - 1) / ext[i] - 1;  // ceil(m_{i-1}/m_i) - 1
    }
    return m;
}

/// eta = sum(m_i - 1); omega recovered from M = eta + omega - 1.
inline std::pair<Int, Int> eta_omega(const MultiplicitySequence& seq) {
    Int eta = 0;
    for (Int m : seq.entries()) eta += m - 1;
    Int omega = m_number(seq) - eta + 1;
    return {eta, omega};
}

/// Number of monoidal transformations in the local minimal embedded
/// resolution: the full sequence is the compact one plus two 1s.
inline Int resolution_length(const MultiplicitySequence& seq) {
    return static_cast<Int>(seq.size()) + 2;
}

namespace detail {
inline void enumerate_rec(std::vector<Int>& cur, Int delta_used, Int budget, Int max_entry,
                          std::vector<MultiplicitySequence>& out) {
    if (!cur.empty() && !check_sequence(cur)) out.emplace_back(cur);
    Int cap = cur.empty() ? max_entry : std::min(max_entry, cur.back());
    for (Int v = 2; v <= cap; ++v) {
        Int cost = v * (v - 1) / 2;
        if (delta_used + cost > budget) break;
        // a proximity overshoot inside the existing entries can never be
        // repaired by appending more, so prune on it
        cur.push_back(v);
        bool overshoot = false;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            Int sum = 0;
            bool hit = false;
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                sum += cur[j];
                if (sum >= cur[i]) {
                    hit = true;
                    if (sum > cur[i]) overshoot = true;
                    break;
                }
            }
            (void)hit;
            if (overshoot) break;
        }
        if (!overshoot) enumerate_rec(cur, delta_used + cost, budget, max_entry, out);
        cur.pop_back();
    }
}
}  // namespace detail

/// All valid sequences with delta <= budget, ordered by (delta,
/// entries) and duplicate-free. max_entry optionally caps the leading
/// multiplicity (callers with a type (a,b) pass b).
inline std::vector<MultiplicitySequence> enumerate_valid(Int budget, Int max_entry = -1) {
    if (budget < 0) throw std::invalid_argument("delta budget must be >= 0");
    if (budget == 0) return {};
    if (max_entry < 0) max_entry = budget + 1;  // delta([m]) = m(m-1)/2 <= budget bounds m anyway
    std::vector<MultiplicitySequence> out;
    std::vector<Int> cur;
    detail::enumerate_rec(cur, 0, budget, max_entry, out);
    std::sort(out.begin(), out.end(), [](const MultiplicitySequence& x, const MultiplicitySequence& y) {
        Int dx = delta(x), dy = delta(y);
        if (dx != dy) return dx < dy;
        return x.entries() < y.entries();
    });
    return out;
}

}  // namespace cuspidal
