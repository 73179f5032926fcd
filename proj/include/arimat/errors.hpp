#pragma once

#include <stdexcept>
#include <string>

namespace arimat {

enum class errc {
  non_square,
  non_integer_entries,
  rank_deficient,
  bad_shape,
  all_zero,
  out_of_ground_set,
  too_large,
  not_regular,
  inconsistent_ratios,
  even_k_for_odd_exact,
  labelled_matroid_mismatch,
  has_torsion,
  no_multiplicative_basis,
  non_regular,
  loop_edge,
  unsupported_field,
  parse_error,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

}  // namespace arimat
