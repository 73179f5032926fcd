#pragma once

namespace arimat {

// Enumeration limits for the exhaustive searches. All searches refuse
// (errc::too_large) instead of approximating when a limit is exceeded.
struct Caps {
  int ground = 20;        // bases / exchange-graph enumeration, elements
  int sign_coords = 16;   // sign search, number of Plucker coordinates
  int table = 16;         // full multiplicity table, ground elements
  int axioms = 10;        // axiom verification, ground elements
  int gp_ground = 10;     // GP_r check, ground elements
  int gp_r = 4;           // GP_r check, maximal r
  int tu_cols = 12;       // exhaustive total-unimodularity check, columns
};

Caps& caps();

// Sets every limit to n (used by the CLI for the ARIMAT_CAP override).
void set_all_caps(int n);

}  // namespace arimat
