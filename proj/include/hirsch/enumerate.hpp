#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "hirsch/path_complex.hpp"

namespace hirsch {

// Necessary conditions on one revisit loop: the loop must contain at least
// three distinct column symbols, and its first symbol must occur before the
// loop or its last symbol after it.
bool loop_passes_lemma_4243(const std::vector<int>& columns, const Loop& loop);

// All loops of `p` pass the loop conditions.
bool filter_lemma_4243(const PivotSequence& p);

// Single-revisit symmetry rule: keep only encodings whose identified vertex
// is not a vertex of the first facet.
bool filter_late_revisit(const PivotSequence& p);

// Prunes sequences that cannot embed geodesically when the diameter of the
// (d-1, n-1) case is already known to be short: rejects iff
// delta_d1n1_upper < length-1 and column 1 occurs exactly once or column d
// occurs exactly once, at the last position. A missing bound keeps the
// candidate.
bool filter_not_uniq(const PivotSequence& p, std::optional<int> delta_d1n1_upper);

// All canonical column sequences of directed non-revisiting paths of the
// given length that use every column (lexicographic order).
void for_each_directed_nonrevisiting(int d, int length,
                                     const std::function<void(const ColumnPivotSequence&)>& fn);

// One representative per undirected combinatorial type: the lexicographically
// smaller of the forward and reversed canonical column sequences.
std::vector<PivotSequence> enumerate_nonrevisiting(int d, int length);

struct EnumerationStats {
    int64_t sequences = 0;       // directed canonical column sequences
    int64_t loop_placements = 0; // (sequence, loops) combinations considered
    int64_t after_4243 = 0;
    int64_t after_symmetry = 0;  // after late-revisit (r=1) or direction reduction (r=0)
    int64_t after_validity = 0;  // valid end-disjoint path complexes
    int64_t emitted = 0;         // after the not-uniq pruning, when applied
};

// Candidate path complexes with the given number of revisit loops, after the
// loop conditions, the applicable symmetry rule and the path-complex validity
// check. No not-uniq pruning here (it needs bounds data).
std::vector<PivotSequence> enumerate_with_revisits(int d, int length, int revisits,
                                                   EnumerationStats* stats = nullptr);

// Full enumeration front end: additionally checks the label budget
// (d + length - revisits <= n) and applies the not-uniq pruning.
std::vector<PivotSequence> enumerate_candidates(int d, int n, int length, int revisits,
                                                std::optional<int> delta_d1n1_upper,
                                                EnumerationStats* stats = nullptr);

}  // namespace hirsch
