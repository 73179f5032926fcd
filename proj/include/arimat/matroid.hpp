#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arimat/caps.hpp"
#include "arimat/exactmat.hpp"

namespace arimat::matroid {

using exactmat::Matrix;
using exactmat::Scalar;

// The matroid of a minor (X / contracted)|_ground of a represented matroid.
// Ground elements are column indices of the source matrix; rank_of uses the
// contraction formula rank(S u J) - rank(J).
class MatroidView {
public:
  explicit MatroidView(Matrix source, std::vector<int> contracted = {},
                       std::optional<std::vector<int>> ground = std::nullopt);

  const Matrix& source() const { return source_; }
  const std::vector<int>& contracted() const { return contracted_; }
  const std::vector<int>& ground() const { return ground_; }

  int rank_of(const std::vector<int>& s) const;  // s: ground elements
  int rank() const { return rank_of(ground_); }

private:
  Matrix source_;
  std::vector<int> contracted_;
  std::vector<int> ground_;
  int contracted_rank_;
};

struct U24Witness {
  std::vector<int> inner;        // the 4-set I
  std::vector<int> context;      // independent J with the six pair-extensions independent
  std::vector<Scalar> certificate;  // the six minors, pair order lexicographic
};

struct ExchangeGraph {
  std::vector<std::vector<int>> bases;       // lexicographic
  std::vector<std::pair<int, int>> edges;    // indices into bases
  bool connected = false;
};

std::vector<std::vector<int>> bases(const MatroidView& v);
ExchangeGraph basis_exchange_graph(const MatroidView& v);
std::optional<U24Witness> find_u24(const MatroidView& v);
bool is_regular(const MatroidView& v);

}  // namespace arimat::matroid
