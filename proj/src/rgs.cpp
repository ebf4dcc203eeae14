#include "hirsch/rgs.hpp"

#include <algorithm>
#include <stdexcept>

namespace hirsch {

std::string RestrictedGrowthString::str() const {
    std::string out;
    out.reserve(symbols.size());
    for (int s : symbols) {
        if (s >= 1 && s <= 9) {
            out.push_back(static_cast<char>('0' + s));
        } else {
            out.push_back('(');
            out += std::to_string(s);
            out.push_back(')');
        }
    }
    return out;
}

bool is_valid_rgs(const RestrictedGrowthString& s) {
    if (s.symbols.empty()) return s.alphabet_size == 0;
    if (s.alphabet_size < 1) return false;
    int running_max = 0;
    int seen_max = 0;
    for (size_t i = 0; i < s.symbols.size(); ++i) {
        int v = s.symbols[i];
        if (v < 1 || v > running_max + 1) return false;
        running_max = std::max(running_max, v);
        seen_max = std::max(seen_max, v);
    }
    return seen_max == s.alphabet_size;
}

void for_each_rgs(int length, int alphabet_size,
                  const std::function<void(const RestrictedGrowthString&)>& fn) {
    if (length < alphabet_size || alphabet_size < 1) return;
    RestrictedGrowthString cur;
    cur.symbols.assign(static_cast<size_t>(length), 0);
    cur.alphabet_size = alphabet_size;
    // depth-first in symbol order = lexicographic output order
    auto rec = [&](auto&& self, int pos, int running_max) -> void {
        if (pos == length) {
            if (running_max == alphabet_size) fn(cur);
            return;
        }
        // cannot reach alphabet_size any more -> prune
        if (running_max + (length - pos) < alphabet_size) return;
        int hi = std::min(running_max + 1, alphabet_size);
        for (int v = 1; v <= hi; ++v) {
            cur.symbols[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, std::max(running_max, v));
        }
    };
    rec(rec, 0, 0);
}

std::vector<RestrictedGrowthString> enumerate_rgs(int length, int alphabet_size) {
    std::vector<RestrictedGrowthString> out;
    for_each_rgs(length, alphabet_size,
                 [&](const RestrictedGrowthString& s) { out.push_back(s); });
    return out;
}

bool is_canonical_column_sequence(const ColumnPivotSequence& p) {
    int max_seen = 0;
    for (size_t j = 0; j < p.columns.size(); ++j) {
        int c = p.columns[j];
        if (c < 1 || c > p.d) return false;
        if (j > 0 && c == p.columns[j - 1]) return false;
        if (c > max_seen + 1) return false;  // first occurrences must appear in order
        max_seen = std::max(max_seen, c);
    }
    return true;
}

ColumnPivotSequence rgs_to_pivot_columns(const RestrictedGrowthString& s, int d) {
    if (!is_valid_rgs(s)) throw std::invalid_argument("rgs_to_pivot_columns: ill-formed RGS");
    if (s.alphabet_size > d - 1)
        throw std::invalid_argument("rgs_to_pivot_columns: alphabet too large for dimension");
    ColumnPivotSequence p;
    p.d = d;
    p.columns.reserve(s.symbols.size() + 1);
    p.columns.push_back(1);
    if (!s.symbols.empty()) p.columns.push_back(2);
    for (size_t j = 1; j < s.symbols.size(); ++j) {
        int rank = s.symbols[j];
        int prev = p.columns.back();
        // rank-th smallest element of {1..d} \ {prev}
        int col = (rank < prev) ? rank : rank + 1;
        p.columns.push_back(col);
    }
    return p;
}

RestrictedGrowthString pivot_columns_to_rgs(const ColumnPivotSequence& p) {
    if (!is_canonical_column_sequence(p))
        throw std::invalid_argument("pivot_columns_to_rgs: sequence not canonical");
    if (p.columns.empty() || p.columns[0] != 1)
        throw std::invalid_argument("pivot_columns_to_rgs: sequence must start at column 1");
    RestrictedGrowthString s;
    if (p.columns.size() == 1) {
        s.alphabet_size = 0;
        return s;
    }
    s.symbols.reserve(p.columns.size() - 1);
    s.symbols.push_back(1);
    int alphabet = 1;
    for (size_t j = 2; j < p.columns.size(); ++j) {
        int col = p.columns[j];
        int prev = p.columns[j - 1];
        int rank = (col < prev) ? col : col - 1;
        s.symbols.push_back(rank);
        alphabet = std::max(alphabet, rank);
    }
    s.alphabet_size = alphabet;
    return s;
}

}  // namespace hirsch
