#pragma once

#include <optional>
#include <vector>

#include "arimat/arimat.hpp"

namespace arimat::gpcheck {

using ari::GroupList;
using ari::MultiplicityTable;
using exactmat::Int;
using subsets::Mask;

// One instance of the r-th Grassmann-Plucker condition: a rank-r minor on
// 2r elements, a partition of it, and the multiplicity products that some
// sign vector has to annihilate.
struct GPrWitness {
  int r = 0;
  std::vector<int> inner;    // I, |I| = 2r
  std::vector<int> context;  // J
  std::vector<int> s_part;   // S, r-1 elements of I
  std::vector<int> t_part;   // T, the other r+1 elements
  std::vector<int> eligible; // calT: t with T\{t} and S u {t} independent in M/J
  std::vector<Int> products; // m(S u {t} u J) * m((T\{t}) u J) over calT
  bool satisfiable = false;
  std::optional<std::vector<int>> sigma;  // signs over calT when satisfiable
};

struct GPrReport {
  int r = 0;
  bool pass = false;
  std::vector<GPrWitness> failures;
};

class NonRegularError : public Error {
public:
  explicit NonRegularError(GPrWitness certificate)
      : Error(errc::non_regular, "the powered multiplicity function violates a GP_2 instance"),
        certificate_(std::move(certificate)) {}
  const GPrWitness& certificate() const { return certificate_; }

private:
  GPrWitness certificate_;
};

GPrReport gp_r_check(const MultiplicityTable& t, int r);

// Constructive non-representability certificate for powered lists with a
// non-regular underlying matroid; nullopt for k = 1 or a regular list.
std::optional<GPrWitness> power_nonrep_certificate(const GroupList& gl, unsigned long k);

}  // namespace arimat::gpcheck
