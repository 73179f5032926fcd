#include "arimat/gpcheck.hpp"

#include <algorithm>

#include "arimat/caps.hpp"
#include "arimat/matroid.hpp"

namespace arimat::gpcheck {

namespace {

// sigma and -sigma are identified, so the first sign stays positive.
// Returns the lexicographically first satisfying assignment (+ before -).
std::optional<std::vector<int>> sign_split(const std::vector<Int>& products) {
  int n = int(products.size());
  if (n == 0) return std::vector<int>{};
  std::uint64_t half = std::uint64_t(1) << (n - 1);
  for (std::uint64_t bits = 0; bits < half; ++bits) {
    Int acc = products[0];
    for (int i = 1; i < n; ++i)
      acc += (bits >> (i - 1)) & 1 ? -products[i] : products[i];
    if (acc == 0) {
      std::vector<int> sigma(n, 1);
      for (int i = 1; i < n; ++i) sigma[i] = (bits >> (i - 1)) & 1 ? -1 : 1;
      return sigma;
    }
  }
  return std::nullopt;
}

GPrWitness make_witness(const MultiplicityTable& tab, int r, const std::vector<int>& inner,
                        const std::vector<int>& context, const std::vector<int>& s_part,
                        const std::vector<int>& t_part) {
  Mask jm = subsets::to_mask(context);
  Mask sm = subsets::to_mask(s_part);
  Mask tm = subsets::to_mask(t_part);
  int rank_j = tab.rank_of(jm);

  GPrWitness w;
  w.r = r;
  w.inner = inner;
  w.context = context;
  w.s_part = s_part;
  w.t_part = t_part;
  for (int t : t_part) {
    Mask tb = Mask(1) << t;
    bool t_minus_ok = tab.rank_of((tm & ~tb) | jm) - rank_j == r;
    bool s_plus_ok = tab.rank_of(sm | tb | jm) - rank_j == r;
    if (!t_minus_ok || !s_plus_ok) continue;
    w.eligible.push_back(t);
    w.products.push_back(tab.m_of(sm | tb | jm) * tab.m_of((tm & ~tb) | jm));
  }
  w.sigma = sign_split(w.products);
  w.satisfiable = w.sigma.has_value();
  return w;
}

}  // namespace

GPrReport gp_r_check(const MultiplicityTable& tab, int r) {
  if (r < 2) throw Error(errc::bad_shape, "GP_r is defined for r >= 2");
  if (tab.n > caps().gp_ground) throw Error(errc::too_large, "GP check exceeds the ground cap");
  if (r > caps().gp_r) throw Error(errc::too_large, "GP check exceeds the r cap");
  GPrReport rep;
  rep.r = r;
  rep.pass = true;
  if (2 * r > tab.n) return rep;

  // J by size then lexicographic, I lexicographic, S lexicographic; the
  // first failure in this order is the canonical certificate.
  for (int js = 0; js + 2 * r <= tab.n; ++js) {
    for (const auto& context : subsets::combinations(tab.n, js)) {
      Mask jm = subsets::to_mask(context);
      std::vector<int> rest;
      for (int e = 0; e < tab.n; ++e)
        if (!(jm & (Mask(1) << e))) rest.push_back(e);
      for (const auto& ipick : subsets::combinations(int(rest.size()), 2 * r)) {
        std::vector<int> inner;
        for (int i : ipick) inner.push_back(rest[i]);
        Mask im = subsets::to_mask(inner);
        if (tab.rank_of(im | jm) - tab.rank_of(jm) != r) continue;
        for (const auto& spick : subsets::combinations(2 * r, r - 1)) {
          std::vector<int> s_part, t_part;
          std::vector<bool> in_s(2 * r, false);
          for (int i : spick) in_s[i] = true;
          for (int i = 0; i < 2 * r; ++i) (in_s[i] ? s_part : t_part).push_back(inner[i]);
          GPrWitness w = make_witness(tab, r, inner, context, s_part, t_part);
          if (!w.satisfiable) {
            rep.pass = false;
            rep.failures.push_back(std::move(w));
          }
        }
      }
    }
  }
  return rep;
}

std::optional<GPrWitness> power_nonrep_certificate(const GroupList& gl, unsigned long k) {
  if (k == 1) return std::nullopt;
  matroid::MatroidView underlying(gl.free);
  auto u24 = matroid::find_u24(underlying);
  if (!u24) return std::nullopt;

  // GP_2 on the powered multiplicities of the U24 minor: the three pair
  // products annihilate under signs before powering but never after.
  const std::vector<int>& inner = u24->inner;
  const std::vector<int>& context = u24->context;
  std::vector<int> s_part{inner[0]};
  std::vector<int> t_part{inner[1], inner[2], inner[3]};

  GPrWitness w;
  w.r = 2;
  w.inner = inner;
  w.context = context;
  w.s_part = s_part;
  w.t_part = t_part;
  for (int t : t_part) {
    std::vector<int> left = context;
    left.push_back(inner[0]);
    left.push_back(t);
    std::vector<int> right = context;
    for (int other : t_part)
      if (other != t) right.push_back(other);
    Int prod = ari::multiplicity(gl, left) * ari::multiplicity(gl, right);
    Int powered;
    mpz_pow_ui(powered.get_mpz_t(), prod.get_mpz_t(), k);
    w.eligible.push_back(t);
    w.products.push_back(powered);
  }
  w.sigma = sign_split(w.products);
  w.satisfiable = w.sigma.has_value();
  if (w.satisfiable)
    throw Error(errc::internal, "powered U24 products unexpectedly admit a sign assignment");
  return w;
}

}  // namespace arimat::gpcheck
