#include "arimat/errors.hpp"

#include "arimat/caps.hpp"

namespace arimat {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_square: return "NonSquare";
    case errc::non_integer_entries: return "NonIntegerEntries";
    case errc::rank_deficient: return "RankDeficient";
    case errc::bad_shape: return "BadShape";
    case errc::all_zero: return "AllZero";
    case errc::out_of_ground_set: return "OutOfGroundSet";
    case errc::too_large: return "TooLarge";
    case errc::not_regular: return "NotRegular";
    case errc::inconsistent_ratios: return "InconsistentRatios";
    case errc::even_k_for_odd_exact: return "EvenKForOddExact";
    case errc::labelled_matroid_mismatch: return "LabelledMatroidMismatch";
    case errc::has_torsion: return "HasTorsion";
    case errc::no_multiplicative_basis: return "NoMultiplicativeBasis";
    case errc::non_regular: return "NonRegular";
    case errc::loop_edge: return "LoopEdge";
    case errc::unsupported_field: return "UnsupportedField";
    case errc::parse_error: return "ParseError";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

Caps& caps() {
  static Caps c;
  return c;
}

void set_all_caps(int n) {
  Caps& c = caps();
  c.ground = n;
  c.sign_coords = n;
  c.table = n;
  c.axioms = n;
  c.gp_ground = n;
  c.gp_r = n;
  c.tu_cols = n;
}

}  // namespace arimat
