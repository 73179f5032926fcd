#include "arimat/subsets.hpp"

#include <sstream>
#include <stdexcept>

namespace arimat::subsets {

std::vector<int> to_indices(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

Mask to_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << i;
  return m;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  if (k == 0) out = {{}};
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * std::uint64_t(n - i) / std::uint64_t(i + 1);
  return r;
}

int comb_rank(const std::vector<int>& c, int n) {
  int k = int(c.size());
  std::uint64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < c[i]; ++v) rank += binomial(n - v - 1, k - i - 1);
    prev = c[i];
  }
  return int(rank);
}

std::string indices_to_string(const std::vector<int>& idx) {
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ',';
    os << idx[i] + 1;
  }
  return os.str();
}

std::vector<int> string_to_indices(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty index in subset string");
    out.push_back(std::stoi(tok) - 1);
  }
  return out;
}

}  // namespace arimat::subsets
