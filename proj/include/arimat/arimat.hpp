#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arimat/exactmat.hpp"
#include "arimat/subsets.hpp"

namespace arimat::ari {

using exactmat::Int;
using exactmat::Matrix;
using subsets::Mask;

// A list of N elements of Z^d + Z_q1 + ... + Z_qn: an integer matrix for the
// free part plus one representative row per torsion summand. Torsion entries
// are arbitrary representatives of their residue classes.
struct GroupList {
  Matrix free;                           // d x N over Q, integer entries
  std::vector<std::vector<Int>> torsion; // n rows of N representatives
  std::vector<Int> moduli;               // q_1..q_n, each >= 1

  int elements() const { return free.cols(); }
  int free_rank_rows() const { return free.rows(); }
  int torsion_rows() const { return int(moduli.size()); }
  bool torsion_free() const { return moduli.empty(); }

  static GroupList from_matrix(Matrix m);
  void validate() const;
};

struct MultiplicityTable {
  int n = 0;                // ground set size; subsets are bitmasks over it
  std::vector<int> rank;    // indexed by mask
  std::vector<Int> m;       // indexed by mask

  int rank_of(Mask s) const { return rank[s]; }
  const Int& m_of(Mask s) const { return m[s]; }
  std::size_t size() const { return m.size(); }
};

struct LabelledGraph {
  struct Edge {
    int tail = 0;  // 0-based vertices, tail != head
    int head = 0;
    Int label;     // >= 1
    bool dotted = false;
  };
  int vertices = 0;
  std::vector<Edge> edges;
};

struct MoleculeCheck {  // axiom (P) on one molecule
  Mask r, s, f, t;
  Int rho;
  bool pass;  // rho >= 0
};

struct A1Check {
  Mask a;
  int e;
  bool pass;
};

struct A2Check {  // the product identity on one molecule
  Mask r, s;
  bool pass;
};

struct AxiomReport {
  std::vector<MoleculeCheck> molecule_checks;
  std::vector<A1Check> a1_checks;
  std::vector<A2Check> a2_checks;
  bool pass = false;
};

struct GcdViolation {
  Mask subset;
  Int stored;
  Int expected;
};

struct Classification {
  bool regular = false;
  bool weakly_multiplicative = false;
  bool strongly_multiplicative = false;
};

Int multiplicity(const GroupList& gl, const std::vector<int>& s);
MultiplicityTable full_table(const GroupList& gl);

// Canonical lifting: block matrix [[free, 0], [torsion, diag(moduli)]];
// the second component lists the appended column indices.
std::pair<Matrix, std::vector<int>> lift(const GroupList& gl);

std::optional<std::vector<int>> find_multiplicative_basis(const GroupList& gl);
Classification classify(const GroupList& gl);
GroupList arith_power(const GroupList& gl, unsigned long k);

std::vector<GcdViolation> gcd_consistency(const MultiplicityTable& t);
AxiomReport verify_axioms(const MultiplicityTable& t);

GroupList labelled_to_list(const LabelledGraph& g);
GroupList labelled_power(const LabelledGraph& g, unsigned long k);

}  // namespace arimat::ari
