#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arimat::subsets {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

std::vector<int> to_indices(Mask m);
Mask to_mask(const std::vector<int>& idx);

// All k-subsets of {0,..,n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

// Lexicographic rank of a sorted k-subset among all k-subsets of {0,..,n-1}.
int comb_rank(const std::vector<int>& c, int n);

std::uint64_t binomial(int n, int k);

// "1,3,4" (1-based) <-> sorted 0-based indices; "" is the empty set.
std::string indices_to_string(const std::vector<int>& idx);
std::vector<int> string_to_indices(const std::string& s);

}  // namespace arimat::subsets
