#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arimat/caps.hpp"
#include "arimat/exactmat.hpp"

namespace arimat::plucker {

using exactmat::PluckerVector;
using exactmat::Scalar;

// A quadratic bracket relation: sum of signed products of two bracket
// monomials, indices sorted, evaluating to zero on every Plucker vector.
struct GPRelation {
  struct Term {
    int coef;                // +-1 after normalization
    std::vector<int> left;   // sorted d-subset
    std::vector<int> right;  // sorted d-subset, left <= right
    auto operator<=>(const Term&) const = default;
  };
  std::vector<Term> terms;

  Scalar evaluate(const PluckerVector& pv) const;
  std::string str() const;  // bracket-polynomial form in variables m_{...}
  bool operator==(const GPRelation&) const = default;
};

struct IdealGenerators {
  std::vector<std::string> quadrics;   // the GP relations
  std::vector<std::string> monomials;  // the degree-6 regularity monomials
};

struct SignAssignment {
  std::vector<int> signs;    // +-1 per coordinate, lexicographic coordinate order
  bool certifies_decomposable;  // true over characteristic zero
};

std::vector<GPRelation> gp_relations(int d, int n);
std::vector<GPRelation> gp_verify(const PluckerVector& pv);  // violated relations
PluckerVector power_pv(const PluckerVector& pv, unsigned long k);  // 0^0 = 0
std::optional<SignAssignment> sign_decomposable(const PluckerVector& pv);
IdealGenerators rgr_generators(int d, int n);

}  // namespace arimat::plucker
