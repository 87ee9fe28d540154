#pragma once

// Hand transcription of the published list of smooth quadruples, kept as
// printed (including its slips) so that the enumerator can be diffed against it.

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fixture {

struct Entry {
    int beta;
    std::set<int> r;
    std::string item;
};

// part one: the n = 1 list; part two: the "R empty or ..." list
std::vector<Entry> appendix_list(char family, int rank, bool part_one);

// canonical form under diagram automorphisms (independent of the library)
Entry canonical(char family, int rank, const Entry& e);

struct Mismatch {
    Entry entry;
    bool enumerator_only = false;  // else only in the printed list
    std::string slip;              // non-empty: a known slip of the printed list
};

// set difference of the canonicalized lists, in a fixed order
std::vector<Mismatch> compare(char family, int rank, bool part_one,
                              const std::vector<std::pair<int, std::set<int>>>& enumerated);

}  // namespace fixture
