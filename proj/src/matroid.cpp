#include "arimat/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "arimat/subsets.hpp"

namespace arimat::matroid {

using exactmat::Field;


MatroidView::MatroidView(Matrix source, std::vector<int> contracted,
                         std::optional<std::vector<int>> ground)
    : source_(std::move(source)), contracted_(std::move(contracted)) {
  std::sort(contracted_.begin(), contracted_.end());
  for (int c : contracted_)
    if (c < 0 || c >= source_.cols()) throw Error(errc::out_of_ground_set, "contracted column out of range");
  if (ground) {
    ground_ = std::move(*ground);
    std::sort(ground_.begin(), ground_.end());
  } else {
    for (int c = 0; c < source_.cols(); ++c)
      if (!std::binary_search(contracted_.begin(), contracted_.end(), c)) ground_.push_back(c);
  }
  for (int g : ground_) {
    if (g < 0 || g >= source_.cols()) throw Error(errc::out_of_ground_set, "ground column out of range");
    if (std::binary_search(contracted_.begin(), contracted_.end(), g))
      throw Error(errc::out_of_ground_set, "ground and contracted sets overlap");
  }
  contracted_rank_ = contracted_.empty() ? 0 : exactmat::rank(source_.columns(contracted_));
}

int MatroidView::rank_of(const std::vector<int>& s) const {
  std::vector<int> cols = contracted_;
  for (int e : s) {
    if (!std::binary_search(ground_.begin(), ground_.end(), e))
      throw Error(errc::out_of_ground_set, "element not in the ground set");
    cols.push_back(e);
  }
  if (cols.empty()) return 0;
  return exactmat::rank(source_.columns(cols)) - contracted_rank_;
}

std::vector<std::vector<int>> bases(const MatroidView& v) {
  const auto& g = v.ground();
  if (int(g.size()) > caps().ground)
    throw Error(errc::too_large, "ground set exceeds the enumeration cap");
  int r = v.rank();
  std::vector<std::vector<int>> out;
  for (const auto& pick : subsets::combinations(int(g.size()), r)) {
    std::vector<int> b;
    for (int i : pick) b.push_back(g[i]);
    if (v.rank_of(b) == r) out.push_back(b);
  }
  return out;
}

ExchangeGraph basis_exchange_graph(const MatroidView& v) {
  ExchangeGraph eg;
  eg.bases = bases(v);
  int n = int(eg.bases.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<int> diff;
      std::set_symmetric_difference(eg.bases[a].begin(), eg.bases[a].end(), eg.bases[b].begin(),
                                    eg.bases[b].end(), std::back_inserter(diff));
      if (diff.size() == 2) eg.edges.emplace_back(a, b);
    }
  std::vector<int> seen(n, 0);
  std::vector<int> stack;
  if (n > 0) {
    stack.push_back(0);
    seen[0] = 1;
  }
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : eg.edges) {
      int next = a == cur ? b : b == cur ? a : -1;
      if (next >= 0 && !seen[next]) {
        seen[next] = 1;
        stack.push_back(next);
      }
    }
  }
  eg.connected = n > 0 && std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
  return eg;
}

namespace {

// The six pair-minors of J u {i,j} as honest determinants: rows R are chosen
// so that the source restricted to (R, K u I) has full rank, where K is a
// maximal independent sublist of the contracted context. Projection onto R is
// then injective on the column span, so a pair is independent exactly when
// its determinant is nonzero.
std::optional<U24Witness> try_witness(const MatroidView& v, const std::vector<int>& context,
                                      const std::vector<int>& inner) {
  int rj = v.rank_of(context);
  std::vector<int> ji = context;
  ji.insert(ji.end(), inner.begin(), inner.end());
  if (v.rank_of(ji) != rj + 2) return std::nullopt;
  for (const auto& pick : subsets::combinations(4, 2)) {
    std::vector<int> pair = context;
    pair.push_back(inner[pick[0]]);
    pair.push_back(inner[pick[1]]);
    if (v.rank_of(pair) != rj + 2) return std::nullopt;
  }

  const Matrix& src = v.source();
  std::vector<int> full = v.contracted();
  for (int e : context) full.push_back(e);
  std::sort(full.begin(), full.end());
  std::vector<int> k_cols;  // maximal independent sublist, greedy
  for (int c : full) {
    std::vector<int> probe = k_cols;
    probe.push_back(c);
    if (exactmat::rank(src.columns(probe)) == int(probe.size())) k_cols = probe;
  }
  std::vector<int> span_cols = k_cols;
  for (int e : inner) span_cols.push_back(e);
  int r = int(k_cols.size()) + 2;

  std::vector<int> row_set;
  for (const auto& rows : subsets::combinations(src.rows(), r)) {
    if (exactmat::rank(src.submatrix(rows, span_cols)) == r) {
      row_set = rows;
      break;
    }
  }
  if (row_set.empty() && r > 0) throw Error(errc::internal, "no full-rank row selection");

  U24Witness w;
  w.inner = inner;
  w.context = context;
  for (const auto& pick : subsets::combinations(4, 2)) {
    std::vector<int> cols = k_cols;
    cols.push_back(inner[pick[0]]);
    cols.push_back(inner[pick[1]]);
    std::sort(cols.begin(), cols.end());
    w.certificate.push_back(exactmat::det(src.submatrix(row_set, cols)));
  }
  return w;
}

}  // namespace

std::optional<U24Witness> find_u24(const MatroidView& v) {
  if (v.source().field().characteristic() == 2)
    throw Error(errc::unsupported_field, "U24 search decides regularity only away from characteristic 2");
  const auto& g = v.ground();
  int n = int(g.size());
  if (n > caps().ground) throw Error(errc::too_large, "ground set exceeds the enumeration cap");
  int r = v.rank();
  if (r < 2 || n < 4) return std::nullopt;

  // Every U24 minor appears with an independent context of size <= rank-2,
  // so scanning contexts by increasing size and lexicographic order is a
  // complete search with a canonical first witness.
  for (int js = 0; js <= r - 2; ++js) {
    for (const auto& jpick : subsets::combinations(n, js)) {
      std::vector<int> context;
      for (int i : jpick) context.push_back(g[i]);
      if (v.rank_of(context) != js) continue;
      std::vector<int> rest;
      for (int e : g)
        if (!std::binary_search(context.begin(), context.end(), e)) rest.push_back(e);
      for (const auto& ipick : subsets::combinations(int(rest.size()), 4)) {
        std::vector<int> inner;
        for (int i : ipick) inner.push_back(rest[i]);
        if (auto w = try_witness(v, context, inner)) return w;
      }
    }
  }
  return std::nullopt;
}

bool is_regular(const MatroidView& v) { return !find_u24(v).has_value(); }

}  // namespace arimat::matroid
