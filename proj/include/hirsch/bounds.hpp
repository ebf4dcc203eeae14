#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hirsch {

// Interval bound on the maximal dual-graph diameter Delta(d, n) with the
// provenance of each endpoint.
struct DiameterBound {
    int lo = 1;
    std::optional<int> hi;
    std::string lo_src = "default";
    std::string hi_src;
};

struct DiameterFact {
    int d = 0, n = 0;
    std::optional<int> lo, hi;
    std::string source;
};

// Known relations and small exact values; propagated to a fixpoint together
// with any computed facts.
class BoundsTable {
  public:
    const DiameterBound& at(int d, int n) const;
    bool contains(int d, int n) const;
    std::optional<int> upper(int d, int n) const;
    int lower(int d, int n) const;

    std::map<std::pair<int, int>, DiameterBound>& entries() { return entries_; }
    const std::map<std::pair<int, int>, DiameterBound>& entries() const { return entries_; }

  private:
    std::map<std::pair<int, int>, DiameterBound> entries_;
};

// The literature base facts: the dimension-3 formula is handled as a rule;
// these are the point facts with their sources.
std::vector<DiameterFact> standard_base_facts();

// Fixpoint propagation of:
//   (1) Delta(3,n) = floor(2n/3) - 1
//   (2) Delta(d,2d+k) <= Delta(d-1,2d+k-1) + floor(k/2) + 1   (k = 0..3)
//   (3) Delta(d,n)   <= Delta(n-d,2(n-d))
//   (4) Delta(d,n)    = Delta(n-d,2(n-d))                     (n <= 2d)
//   (5) Delta(d,n)   >= n-d                                   (n > d >= 7)
//   (6) Delta(d,n)   >= n-d                                   (n <= 2d, products)
// over the grid d <= d_max, 0 < n-d <= slack_max. Throws on contradictory
// facts, naming the entry and the sources involved.
BoundsTable propagate(const std::vector<DiameterFact>& base_facts,
                      const std::vector<DiameterFact>& computed_facts, int d_max, int slack_max);

// Rendering in the style used for the summary tables: exact values plain,
// width-one intervals as {lo,hi}, wider ones as [lo,hi].
std::string format_bound(const DiameterBound& b);
std::string render_table(const BoundsTable& t, int d_min, int d_max, int slack_min, int slack_max);

}  // namespace hirsch
