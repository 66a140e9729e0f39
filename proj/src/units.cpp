#include "angles/units.hpp"

#include <cmath>
#include <numbers>

#include "angles/error.hpp"
#include "angles/hnf.hpp"

namespace angles {

std::uint32_t sign_mask(const AlgElem& a, const FieldSpec& F) {
  const Embedding e = embed(a, F);
  std::uint32_t mask = 0;
  for (std::size_t v = 0; v < e.real_places.size(); ++v) {
    if (e.real_places[v] < 0) mask |= 1u << v;
  }
  return mask;
}

UnitGroup UnitGroup::build(const FieldSpec& F) {
  UnitGroup G;
  const int r1 = F.r1();
  const int rank = F.unit_rank();
  if (r1 > 20) throw UnsupportedField("too many real places for sign bookkeeping");
  if (rank > 20) throw UnsupportedField("unit rank too large for sign bookkeeping");

  const std::uint32_t all_negative = r1 == 0 ? 0 : ((1u << r1) - 1);
  std::vector<std::uint32_t> unit_signs;
  for (const auto& u : F.units()) unit_signs.push_back(sign_mask(u, F));

  // Exponent lattice of U+ inside Z^rank: a is admissible when the sign
  // pattern of ε^a is all-positive or all-negative (the latter fixed by -1).
  IntMatrix generators;
  for (int i = 0; i < rank; ++i) {
    std::vector<i64> row(rank, 0);
    row[i] = r1 == 0 ? 1 : 2;
    generators.push_back(row);
  }
  if (r1 > 0) {
    for (std::uint32_t bits = 1; bits < (1u << rank); ++bits) {
      std::uint32_t s = 0;
      for (int i = 0; i < rank; ++i) {
        if (bits & (1u << i)) s ^= unit_signs[i];
      }
      if (s != 0 && s != all_negative) continue;
      std::vector<i64> row(rank, 0);
      for (int i = 0; i < rank; ++i) row[i] = (bits >> i) & 1u;
      generators.push_back(row);
    }
  }
  const IntMatrix basis = rank == 0 ? IntMatrix{} : hermite_normal_form(generators);
  for (const auto& a : basis) {
    AlgElem u = unit_product(a, F);
    std::vector<i64> exps;
    exps.push_back(0);
    exps.insert(exps.end(), a.begin(), a.end());
    if (r1 > 0 && sign_mask(u, F) == all_negative) {
      u = neg(u);
      exps[0] = 1;
    }
    if (sign_mask(u, F) != 0) throw UnsupportedField("positive unit construction failed");
    std::vector<i64> inverse_exps(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) inverse_exps[i] = -a[i];
    AlgElem inv = unit_product(inverse_exps, F);
    if (exps[0] == 1) inv = neg(inv);
    G.positive_basis.push_back(u);
    G.positive_inverses.push_back(inv);
    G.positive_exponents.push_back(exps);
  }

  // Sign fixers by closure over {-1, ε_i}.
  const std::size_t patterns = std::size_t{1} << r1;
  G.sign_fixers.assign(patterns, AlgElem{});
  std::vector<bool> seen(patterns, false);
  seen[0] = true;
  G.sign_fixers[0] = F.one();
  std::vector<std::uint32_t> frontier{0};
  std::vector<AlgElem> moves{F.from_integer(-1)};
  moves.insert(moves.end(), F.units().begin(), F.units().end());
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t mask : frontier) {
      for (const auto& m : moves) {
        const std::uint32_t target = mask ^ sign_mask(m, F);
        if (seen[target]) continue;
        seen[target] = true;
        G.sign_fixers[target] = mul(G.sign_fixers[mask], m, F);
        next.push_back(target);
      }
    }
    frontier = std::move(next);
  }
  for (bool s : seen) {
    if (!s) {
      throw UnsupportedField(
          "unit signs do not reach every sign pattern; the angle group is disconnected",
          {{"field", F.name()}});
    }
  }

  const int places = r1 + F.r2();
  G.log_matrix.assign(places, std::vector<real>(G.positive_basis.size()));
  for (std::size_t j = 0; j < G.positive_basis.size(); ++j) {
    const Embedding e = embed(G.positive_basis[j], F);
    for (int v = 0; v < r1; ++v) G.log_matrix[v][j] = std::log(std::abs(e.real_places[v]));
    for (int v = 0; v < F.r2(); ++v) G.log_matrix[r1 + v][j] = std::log(std::abs(e.complex_places[v]));
  }

  if (F.r2() > 0) {
    const unsigned w = static_cast<unsigned>(F.roots_of_unity());
    const real two_pi = 2 * std::numbers::pi_v<real>;
    bool found = false;
    for (unsigned k = 1; k <= w; ++k) {
      const complex z = embed(pow(F.torsion_generator(), k, F), F).complex_places[0];
      real a = std::arg(z);
      if (a < 0) a += two_pi;
      const long step = std::lround(a * w / two_pi);
      if (((step % static_cast<long>(w)) + w) % w == 1) {
        G.rotation_power = k;
        found = true;
        break;
      }
    }
    if (!found) throw FieldConfigError("could not locate a rotation by 2π/w among torsion powers");
  }
  return G;
}

}  // namespace angles
