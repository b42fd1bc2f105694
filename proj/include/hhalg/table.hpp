#pragma once

// Ext/Tor/Hochschild/homology values indexed by (s, t).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhalg/linalg.hpp"

namespace hhalg {

class BigradedTable {
public:
    BigradedTable() = default;
    // period > 0 means t is a residue mod period.
    explicit BigradedTable(GroundRing ground, int period = 0) : ground_(ground), period_(period) {}

    const GroundRing& ground() const { return ground_; }
    int period() const { return period_; }

    // Zero entries are not stored.
    void set(int s, int t, SubquotientPresentation value);
    SubquotientPresentation at(int s, int t) const;
    std::size_t rank(int s, int t) const { return at(s, t).free_rank; }
    // Sum of free ranks over all t for fixed s.
    std::size_t total_rank(int s) const;
    const std::map<std::pair<int, int>, SubquotientPresentation>& entries() const { return entries_; }

    std::vector<std::string> notes;
    std::map<std::pair<int, int>, std::string> labels;

    std::string to_tsv() const;
    std::string to_json() const;
    static BigradedTable from_json(const std::string& text);

    // Same ground, period and nonzero entries; notes and labels are ignored.
    friend bool operator==(const BigradedTable& a, const BigradedTable& b) {
        return a.ground_ == b.ground_ && a.period_ == b.period_ && a.entries_ == b.entries_;
    }

private:
    GroundRing ground_ = GroundRing::rationals();
    int period_ = 0;
    std::map<std::pair<int, int>, SubquotientPresentation> entries_;
};

} // namespace hhalg
