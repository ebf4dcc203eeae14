// Temporary exploration driver; not part of the deliverable.
#include <cstdio>
#include <set>
#include "hirsch/enumerate.hpp"
using namespace hirsch;
int main() {
    for (int r = 1; r <= 3; ++r) {
        auto c = enumerate_candidates(4, 11, 7, r, 5);
        std::set<std::vector<Pivot>> distinct;
        std::set<std::vector<VertexSet>> complexes;
        for (auto& s : c) {
            distinct.insert(s.pivots);
            complexes.insert(facets_of_pivots(s, s.vertex_count()).facets);
        }
        printf("r=%d: emitted=%zu distinct-encodings=%zu distinct-complexes=%zu\n", r, c.size(),
               distinct.size(), complexes.size());
    }
    return 0;
}
