#include "hirsch/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hirsch {

bool loop_passes_lemma_4243(const std::vector<int>& columns, const Loop& loop) {
    std::set<int> distinct(columns.begin() + (loop.start - 1), columns.begin() + loop.end);
    if (distinct.size() < 3) return false;
    const int first = columns[static_cast<size_t>(loop.start - 1)];
    const int last = columns[static_cast<size_t>(loop.end - 1)];
    for (int j = 0; j < loop.start - 1; ++j)
        if (columns[static_cast<size_t>(j)] == first) return true;
    for (size_t j = static_cast<size_t>(loop.end); j < columns.size(); ++j)
        if (columns[j] == last) return true;
    return false;
}

bool filter_lemma_4243(const PivotSequence& p) {
    for (const Loop& l : p.loops)
        if (!loop_passes_lemma_4243(p.columns, l)) return false;
    return true;
}

bool filter_late_revisit(const PivotSequence& p) {
    if (p.loops.size() != 1)
        throw std::invalid_argument("filter_late_revisit: expects a single-revisit sequence");
    const int revisiting = p.pivots[static_cast<size_t>(p.loops[0].end - 1)].enter;
    return revisiting > p.d;
}

bool filter_not_uniq(const PivotSequence& p, std::optional<int> delta_d1n1_upper) {
    if (!delta_d1n1_upper.has_value()) return true;
    if (*delta_d1n1_upper >= p.length() - 1) return true;
    int count1 = 0, countd = 0;
    for (int c : p.columns) {
        if (c == 1) ++count1;
        if (c == p.d) ++countd;
    }
    if (count1 == 1) return false;
    if (countd == 1 && p.columns.back() == p.d) return false;
    return true;
}

void for_each_directed_nonrevisiting(int d, int length,
                                     const std::function<void(const ColumnPivotSequence&)>& fn) {
    if (d < 2 || length < 1) return;
    for_each_rgs(length - 1, d - 1,
                 [&](const RestrictedGrowthString& s) { fn(rgs_to_pivot_columns(s, d)); });
}

std::vector<PivotSequence> enumerate_nonrevisiting(int d, int length) {
    std::vector<PivotSequence> out;
    for_each_directed_nonrevisiting(d, length, [&](const ColumnPivotSequence& cols) {
        ColumnPivotSequence rev = reversed_canonical_columns(cols);
        if (rev.columns < cols.columns) return;  // the reversal is the representative
        out.push_back(build_pivot_sequence(cols, {}));
    });
    return out;
}

namespace {

// Walks one canonical column sequence and fills in entering vertices: fresh
// labels or re-entries of currently absent vertices. Each re-entry is one
// revisit. Re-entry options come before the fresh option, so single-revisit
// output is ordered by re-entry position.
struct RevisitWalker {
    const ColumnPivotSequence& cols;
    int revisits;
    const std::function<void(PivotSequence&)>& emit;

    int d, k;
    std::vector<int> occupant;   // column -> vertex
    std::vector<int> last_left;  // vertex -> pivot position where it last left (0 = none)
    int fresh_used = 0;
    PivotSequence seq;

    RevisitWalker(const ColumnPivotSequence& c, int r,
                  const std::function<void(PivotSequence&)>& fn)
        : cols(c), revisits(r), emit(fn), d(c.d), k(static_cast<int>(c.columns.size())) {
        occupant.resize(static_cast<size_t>(d) + 1);
        for (int i = 1; i <= d; ++i) occupant[static_cast<size_t>(i)] = i;
        last_left.assign(static_cast<size_t>(d + k) + 1, 0);
        seq.d = d;
        seq.columns = c.columns;
    }

    void step(int j, int idents) {
        if (j > k) {
            if (idents == revisits) emit(seq);
            return;
        }
        if (idents + (k - j + 1) < revisits) return;  // cannot reach the revisit count
        const int c = cols.columns[static_cast<size_t>(j - 1)];
        const int leave = occupant[static_cast<size_t>(c)];

        auto apply = [&](int enter, bool reentry) {
            const int saved_left = last_left[static_cast<size_t>(enter)];
            occupant[static_cast<size_t>(c)] = enter;
            seq.pivots.push_back({leave, enter});
            if (reentry) seq.loops.push_back({saved_left, j});
            last_left[static_cast<size_t>(leave)] = j;
            last_left[static_cast<size_t>(enter)] = 0;

            step(j + 1, idents + (reentry ? 1 : 0));

            last_left[static_cast<size_t>(enter)] = saved_left;
            last_left[static_cast<size_t>(leave)] = 0;
            if (reentry) seq.loops.pop_back();
            seq.pivots.pop_back();
            occupant[static_cast<size_t>(c)] = leave;
        };

        if (idents < revisits) {
            const int seen = d + fresh_used;
            for (int v = 1; v <= seen; ++v)
                if (last_left[static_cast<size_t>(v)] != 0) apply(v, true);
        }
        const int fresh = d + fresh_used + 1;
        ++fresh_used;
        apply(fresh, false);
        --fresh_used;
    }
};

}  // namespace

std::vector<PivotSequence> enumerate_with_revisits(int d, int length, int revisits,
                                                   EnumerationStats* stats) {
    if (revisits < 0 || revisits > 3)
        throw std::invalid_argument("enumerate_with_revisits: revisits must be in 0..3");
    EnumerationStats local;
    std::vector<PivotSequence> out;

    if (revisits == 0) {
        for_each_directed_nonrevisiting(d, length, [&](const ColumnPivotSequence& cols) {
            ++local.sequences;
            ++local.loop_placements;
            ++local.after_4243;
            ColumnPivotSequence rev = reversed_canonical_columns(cols);
            if (rev.columns < cols.columns) return;
            ++local.after_symmetry;
            PivotSequence seq = build_pivot_sequence(cols, {});
            PathComplex pc = facets_of_pivots(seq, seq.vertex_count());
            if (check_path_property(pc) || !pc.end_disjoint()) return;
            ++local.after_validity;
            out.push_back(std::move(seq));
        });
    } else {
        for_each_directed_nonrevisiting(d, length, [&](const ColumnPivotSequence& cols) {
            ++local.sequences;
            std::function<void(PivotSequence&)> sink = [&](PivotSequence& seq) {
                ++local.loop_placements;
                if (!filter_lemma_4243(seq)) return;
                ++local.after_4243;
                if (revisits == 1 && !filter_late_revisit(seq)) return;
                ++local.after_symmetry;
                PathComplex pc = facets_of_pivots(seq, seq.vertex_count());
                if (check_path_property(pc) || !pc.end_disjoint()) return;
                ++local.after_validity;
                out.push_back(seq);
            };
            RevisitWalker walker(cols, revisits, sink);
            walker.step(1, 0);
        });
    }
    local.emitted = static_cast<int64_t>(out.size());
    if (stats) *stats = local;
    return out;
}

std::vector<PivotSequence> enumerate_candidates(int d, int n, int length, int revisits,
                                                std::optional<int> delta_d1n1_upper,
                                                EnumerationStats* stats) {
    EnumerationStats local;
    std::vector<PivotSequence> out;
    if (d + length - revisits <= n) {
        std::vector<PivotSequence> all = enumerate_with_revisits(d, length, revisits, &local);
        local.emitted = 0;
        for (PivotSequence& seq : all) {
            // the not-uniq pruning is applied to the non-revisiting class only
            if (revisits == 0 && !filter_not_uniq(seq, delta_d1n1_upper)) continue;
            ++local.emitted;
            out.push_back(std::move(seq));
        }
    }
    if (stats) *stats = local;
    return out;
}

}  // namespace hirsch
