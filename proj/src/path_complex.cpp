#include "hirsch/path_complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hirsch {

std::string PivotSequence::str() const {
    std::string out;
    for (size_t j = 0; j < pivots.size(); ++j) {
        if (j) out.push_back(' ');
        out += "(" + std::to_string(pivots[j].leave) + "," + std::to_string(pivots[j].enter) + ")";
    }
    return out;
}

PivotSequence build_pivot_sequence(const ColumnPivotSequence& cols,
                                   const std::vector<Loop>& loops) {
    const int d = cols.d;
    const int k = static_cast<int>(cols.columns.size());
    for (size_t i = 0; i < loops.size(); ++i) {
        const Loop& l = loops[i];
        if (l.start < 1 || l.end > k || l.start + 1 > l.end)
            throw std::invalid_argument("build_pivot_sequence: bad loop interval");
        if (i > 0 && loops[i - 1].end >= l.start)
            throw std::invalid_argument("build_pivot_sequence: loops must be disjoint and ordered");
    }

    PivotSequence seq;
    seq.d = d;
    seq.columns = cols.columns;
    seq.loops = loops;
    seq.pivots.reserve(static_cast<size_t>(k));

    std::vector<int> occupant(static_cast<size_t>(d) + 1);
    for (int c = 1; c <= d; ++c) occupant[static_cast<size_t>(c)] = c;
    std::vector<int> leaver(static_cast<size_t>(k) + 1, 0);

    size_t loop_idx = 0;
    int next_label = d + 1;
    for (int j = 1; j <= k; ++j) {
        const int c = cols.columns[static_cast<size_t>(j - 1)];
        if (c < 1 || c > d) throw std::invalid_argument("build_pivot_sequence: column out of range");
        const int leave = occupant[static_cast<size_t>(c)];
        int enter;
        if (loop_idx < loops.size() && loops[loop_idx].end == j) {
            enter = leaver[static_cast<size_t>(loops[loop_idx].start)];
            ++loop_idx;
        } else {
            enter = next_label++;
        }
        leaver[static_cast<size_t>(j)] = leave;
        occupant[static_cast<size_t>(c)] = enter;
        seq.pivots.push_back({leave, enter});
    }
    return seq;
}

PivotSequence parse_pivot_sequence(const std::string& line, int d) {
    PivotSequence seq;
    seq.d = d;
    std::string cleaned;
    cleaned.reserve(line.size());
    for (char ch : line) cleaned.push_back((ch == '(' || ch == ')' || ch == ',') ? ' ' : ch);
    std::istringstream in(cleaned);
    int a, b;
    while (in >> a >> b) seq.pivots.push_back({a, b});
    if (seq.pivots.empty()) throw std::invalid_argument("parse_pivot_sequence: no pivots in line");
    // reconstruct columns and loops from the labels
    std::vector<int> col_of(static_cast<size_t>(d) + 1);
    std::map<int, int> column_of_vertex;
    for (int c = 1; c <= d; ++c) column_of_vertex[c] = c;
    std::map<int, int> left_at;  // vertex -> pivot position where it last left
    for (int j = 1; j <= seq.length(); ++j) {
        const Pivot& p = seq.pivots[static_cast<size_t>(j - 1)];
        auto it = column_of_vertex.find(p.leave);
        if (it == column_of_vertex.end())
            throw std::invalid_argument("parse_pivot_sequence: leaving vertex not in facet");
        int c = it->second;
        seq.columns.push_back(c);
        column_of_vertex.erase(it);
        if (auto back = left_at.find(p.enter); back != left_at.end()) {
            seq.loops.push_back({back->second, j});
            left_at.erase(back);
        }
        left_at[p.leave] = j;
        column_of_vertex[p.enter] = c;
    }
    std::sort(seq.loops.begin(), seq.loops.end());
    return seq;
}

PathComplex facets_of_pivots(const PivotSequence& p, int n) {
    if (p.d < 1 || n < p.d || n > kMaxGroundSet)
        throw std::invalid_argument("facets_of_pivots: bad dimensions");
    PathComplex pc;
    pc.d = p.d;
    pc.n = n;
    VertexSet cur = full_set(p.d);
    pc.facets.push_back(cur);
    for (size_t j = 0; j < p.pivots.size(); ++j) {
        const Pivot& piv = p.pivots[j];
        if (piv.leave < 1 || piv.leave > n || piv.enter < 1 || piv.enter > n)
            throw std::invalid_argument("facets_of_pivots: vertex label out of range");
        if (!set_contains(cur, piv.leave))
            throw std::invalid_argument("facets_of_pivots: leaving vertex " +
                                        std::to_string(piv.leave) + " absent from facet " +
                                        std::to_string(j));
        if (set_contains(cur, piv.enter))
            throw std::invalid_argument("facets_of_pivots: entering vertex " +
                                        std::to_string(piv.enter) + " already in facet " +
                                        std::to_string(j));
        cur = set_add(set_remove(cur, piv.leave), piv.enter);
        pc.facets.push_back(cur);
    }
    return pc;
}

std::optional<PathViolation> check_path_property(const PathComplex& pc) {
    const int m = static_cast<int>(pc.facets.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int shared = set_size(pc.facets[static_cast<size_t>(i)] & pc.facets[static_cast<size_t>(j)]);
            if (j == i + 1) {
                if (shared != pc.d - 1)
                    return PathViolation{i, j, "consecutive facets do not share a ridge"};
            } else if (shared > pc.d - 2) {
                return PathViolation{i, j, "non-consecutive facets share a ridge"};
            }
        }
    }
    return std::nullopt;
}

PathComplex expand_to_facets(const PivotSequence& p, int n) {
    PathComplex pc = facets_of_pivots(p, n);
    if (auto v = check_path_property(pc)) {
        throw std::invalid_argument("expand_to_facets: " + v->what + " (facets " +
                                    std::to_string(v->i) + "," + std::to_string(v->j) + ")");
    }
    return pc;
}

PivotSequence canonical_encoding(const PathComplex& pc) {
    const int k = pc.length();
    // raw pivots in original labels
    std::vector<Pivot> raw(static_cast<size_t>(k));
    for (int j = 1; j <= k; ++j) {
        VertexSet prev = pc.facets[static_cast<size_t>(j - 1)];
        VertexSet cur = pc.facets[static_cast<size_t>(j)];
        VertexSet gone = prev & ~cur, fresh = cur & ~prev;
        if (set_size(gone) != 1 || set_size(fresh) != 1)
            throw std::invalid_argument("canonical_encoding: consecutive facets are not a pivot apart");
        raw[static_cast<size_t>(j - 1)] = {set_elements(gone)[0], set_elements(fresh)[0]};
    }
    // relabel: initial facet vertices get 1..d ordered by leave time; vertices
    // that never leave come last in ascending label order
    std::vector<int> first = set_elements(pc.facets.front());
    std::vector<int> relabel_order;
    for (const Pivot& p : raw) {
        if (set_contains(pc.facets.front(), p.leave) &&
            std::find(relabel_order.begin(), relabel_order.end(), p.leave) == relabel_order.end())
            relabel_order.push_back(p.leave);
    }
    for (int v : first)
        if (std::find(relabel_order.begin(), relabel_order.end(), v) == relabel_order.end())
            relabel_order.push_back(v);
    std::map<int, int> relabel;
    for (size_t i = 0; i < relabel_order.size(); ++i)
        relabel[relabel_order[i]] = static_cast<int>(i) + 1;

    PivotSequence seq;
    seq.d = pc.d;
    int next_label = pc.d + 1;
    std::map<int, int> left_at;  // relabelled vertex -> position where it last left
    std::vector<int> column_of(static_cast<size_t>(pc.n) + 1, 0);
    for (int c = 1; c <= pc.d; ++c) column_of[static_cast<size_t>(relabel_order[static_cast<size_t>(c - 1)])] = c;

    for (int j = 1; j <= k; ++j) {
        Pivot p = raw[static_cast<size_t>(j - 1)];
        int leave_new = relabel.count(p.leave) ? relabel[p.leave] : 0;
        int enter_new;
        if (relabel.count(p.enter)) {
            enter_new = relabel[p.enter];
        } else {
            enter_new = next_label++;
            relabel[p.enter] = enter_new;
        }
        if (leave_new == 0) throw std::logic_error("canonical_encoding: pivot leaves unseen vertex");
        int c = column_of[static_cast<size_t>(p.leave)];
        column_of[static_cast<size_t>(p.enter)] = c;
        seq.columns.push_back(c);
        if (auto back = left_at.find(enter_new); back != left_at.end()) {
            seq.loops.push_back({back->second, j});
            left_at.erase(back);
        }
        left_at[leave_new] = j;
        seq.pivots.push_back({leave_new, enter_new});
    }
    std::sort(seq.loops.begin(), seq.loops.end());
    return seq;
}

PathComplex reversed(const PathComplex& pc) {
    PathComplex out = pc;
    std::reverse(out.facets.begin(), out.facets.end());
    return out;
}

ColumnPivotSequence reversed_canonical_columns(const ColumnPivotSequence& p) {
    ColumnPivotSequence out;
    out.d = p.d;
    out.columns.assign(p.columns.rbegin(), p.columns.rend());
    std::vector<int> relabel(static_cast<size_t>(p.d) + 1, 0);
    int next = 1;
    for (int& c : out.columns) {
        if (relabel[static_cast<size_t>(c)] == 0) relabel[static_cast<size_t>(c)] = next++;
        c = relabel[static_cast<size_t>(c)];
    }
    return out;
}

}  // namespace hirsch
