#include "hirsch/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace hirsch {

const DiameterBound& BoundsTable::at(int d, int n) const {
    auto it = entries_.find({d, n});
    if (it == entries_.end()) throw std::out_of_range("BoundsTable: no entry for this (d,n)");
    return it->second;
}

bool BoundsTable::contains(int d, int n) const { return entries_.count({d, n}) != 0; }

std::optional<int> BoundsTable::upper(int d, int n) const {
    if (!contains(d, n)) return std::nullopt;
    return at(d, n).hi;
}

int BoundsTable::lower(int d, int n) const { return contains(d, n) ? at(d, n).lo : 1; }

std::vector<DiameterFact> standard_base_facts() {
    // Klee-Walkup small exact values (d-step for d <= 5 and the (4,9) case)
    // plus Goodey's values and the literature lower bounds for slack 7.
    return {
        {4, 8, 4, 4, "klee-walkup"},
        {4, 9, 5, 5, "klee-walkup"},
        {5, 10, 5, 5, "klee-walkup"},
        {4, 10, 5, 5, "goodey"},
        {5, 11, 6, 6, "goodey"},
        {6, 13, std::nullopt, 9, "goodey"},
        {7, 14, std::nullopt, 10, "goodey"},
        {4, 11, 6, std::nullopt, "klee-walkup"},
        {5, 12, 7, std::nullopt, "klee-walkup"},
        {6, 13, 7, std::nullopt, "klee-walkup"},
    };
}

namespace {

struct Grid {
    int d_max, slack_max;
    std::map<std::pair<int, int>, DiameterBound>* cells;

    bool in_grid(int d, int n) const {
        return d >= 2 && d <= d_max && n > d && n - d <= slack_max;
    }
    DiameterBound& cell(int d, int n) { return (*cells)[{d, n}]; }
};

// returns true if anything tightened; throws on lo > hi
bool tighten_lo(Grid& g, int d, int n, int lo, const std::string& src) {
    if (!g.in_grid(d, n)) return false;
    DiameterBound& b = g.cell(d, n);
    if (lo <= b.lo) return false;
    b.lo = lo;
    b.lo_src = src;
    if (b.hi && b.lo > *b.hi)
        throw std::runtime_error("bounds contradiction at Delta(" + std::to_string(d) + "," +
                                 std::to_string(n) + "): lower " + std::to_string(b.lo) + " from " +
                                 b.lo_src + " exceeds upper " + std::to_string(*b.hi) + " from " +
                                 b.hi_src);
    return true;
}

bool tighten_hi(Grid& g, int d, int n, int hi, const std::string& src) {
    if (!g.in_grid(d, n)) return false;
    DiameterBound& b = g.cell(d, n);
    if (b.hi && *b.hi <= hi) return false;
    b.hi = hi;
    b.hi_src = src;
    if (b.lo > *b.hi)
        throw std::runtime_error("bounds contradiction at Delta(" + std::to_string(d) + "," +
                                 std::to_string(n) + "): lower " + std::to_string(b.lo) + " from " +
                                 b.lo_src + " exceeds upper " + std::to_string(*b.hi) + " from " +
                                 b.hi_src);
    return true;
}

}  // namespace

BoundsTable propagate(const std::vector<DiameterFact>& base_facts,
                      const std::vector<DiameterFact>& computed_facts, int d_max, int slack_max) {
    BoundsTable table;
    // the grid internally covers everything rules may reference
    int span_d = std::max(d_max, slack_max) + 1;
    Grid g{span_d, std::max(slack_max, span_d), &table.entries()};

    for (int d = 2; d <= g.d_max; ++d)
        for (int s = 1; s <= g.slack_max; ++s) g.cell(d, d + s);

    auto apply_fact = [&](const DiameterFact& f, const char* kind) {
        std::string src = f.source.empty() ? std::string(kind) : f.source;
        if (f.lo) tighten_lo(g, f.d, f.n, *f.lo, src);
        if (f.hi) tighten_hi(g, f.d, f.n, *f.hi, src);
    };
    for (const DiameterFact& f : base_facts) apply_fact(f, "base");
    for (const DiameterFact& f : computed_facts) apply_fact(f, "computed");

    bool changed = true;
    while (changed) {
        changed = false;
        for (int d = 2; d <= g.d_max; ++d) {
            for (int s = 1; s <= g.slack_max; ++s) {
                int n = d + s;
                if (d == 3) {  // rule (1)
                    int v = (2 * n) / 3 - 1;
                    changed |= tighten_lo(g, d, n, v, "rule1");
                    changed |= tighten_hi(g, d, n, v, "rule1");
                }
                // rule (2): n = 2d+k, k in 0..3
                int k = n - 2 * d;
                if (k >= 0 && k <= 3 && g.in_grid(d - 1, n - 1)) {
                    const DiameterBound& src = g.cell(d - 1, n - 1);
                    if (src.hi)
                        changed |= tighten_hi(g, d, n, *src.hi + k / 2 + 1, "rule2");
                }
                // rules (3), (4): the d-step diagonal
                int dd = n - d;
                if (g.in_grid(dd, 2 * dd)) {
                    const DiameterBound& diag = g.cell(dd, 2 * dd);
                    if (diag.hi) changed |= tighten_hi(g, d, n, *diag.hi, n <= 2 * d ? "rule4" : "rule3");
                    if (n <= 2 * d) {
                        changed |= tighten_lo(g, d, n, diag.lo, "rule4");
                        const DiameterBound& here = g.cell(d, n);
                        changed |= tighten_lo(g, dd, 2 * dd, here.lo, "rule4");
                        if (here.hi) changed |= tighten_hi(g, dd, 2 * dd, *here.hi, "rule4");
                    }
                }
                // rule (5): Holt lower bound
                if (d >= 7 && n > d) changed |= tighten_lo(g, d, n, n - d, "rule5");
                // rule (6): products of simplices
                if (n <= 2 * d) changed |= tighten_lo(g, d, n, n - d, "products");
            }
        }
    }

    // restrict to the requested grid
    BoundsTable out;
    for (auto& [key, bound] : table.entries())
        if (key.first <= d_max && key.second - key.first <= slack_max) out.entries()[key] = bound;
    return out;
}

std::string format_bound(const DiameterBound& b) {
    if (!b.hi) return std::to_string(b.lo) + "+";
    if (b.lo == *b.hi) return std::to_string(b.lo);
    if (*b.hi - b.lo == 1) return "{" + std::to_string(b.lo) + "," + std::to_string(*b.hi) + "}";
    return "[" + std::to_string(b.lo) + "," + std::to_string(*b.hi) + "]";
}

std::string render_table(const BoundsTable& t, int d_min, int d_max, int slack_min, int slack_max) {
    std::ostringstream out;
    out << "d\\n-d";
    for (int s = slack_min; s <= slack_max; ++s) out << '\t' << s;
    out << '\n';
    for (int d = d_min; d <= d_max; ++d) {
        out << d;
        for (int s = slack_min; s <= slack_max; ++s) {
            out << '\t';
            if (t.contains(d, d + s)) out << format_bound(t.at(d, d + s));
            else out << '-';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hirsch
