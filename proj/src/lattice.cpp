#include "angles/lattice.hpp"

#include <cmath>

#include "angles/error.hpp"

namespace angles {

namespace {

real dot(const std::vector<real>& a, const std::vector<real>& b) {
  real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void gram_schmidt(const RealMatrix& b, RealMatrix& mu, std::vector<real>& norms) {
  const std::size_t n = b.size();
  RealMatrix star = b;
  mu.assign(n, std::vector<real>(n, 0));
  norms.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(b[i], star[j]) / norms[j];
      for (std::size_t k = 0; k < star[i].size(); ++k) star[i][k] -= mu[i][j] * star[j][k];
    }
    norms[i] = dot(star[i], star[i]);
    if (!(norms[i] > 0)) throw SingularLattice("lattice basis is linearly dependent");
  }
}

void enumerate(std::size_t level, const RealMatrix& mu, const std::vector<real>& norms, real remaining,
               std::vector<i64>& x, std::vector<std::vector<i64>>& out) {
  const std::size_t n = norms.size();
  real center = 0;
  for (std::size_t j = level + 1; j < n; ++j) center -= mu[j][level] * static_cast<real>(x[j]);
  const real span = std::sqrt(std::max<real>(remaining, 0) / norms[level]);
  const i64 lo = static_cast<i64>(std::ceil(center - span - 1e-12L));
  const i64 hi = static_cast<i64>(std::floor(center + span + 1e-12L));
  for (i64 v = lo; v <= hi; ++v) {
    const real d = static_cast<real>(v) - center;
    const real used = norms[level] * d * d;
    if (used > remaining * (1 + 1e-12L) + 1e-18L) continue;
    x[level] = v;
    if (level == 0) {
      std::size_t top = n;
      while (top > 0 && x[top - 1] == 0) --top;
      if (top > 0 && x[top - 1] > 0) out.push_back(x);
    } else {
      enumerate(level - 1, mu, norms, remaining - used, x, out);
    }
  }
  x[level] = 0;
}

}  // namespace

void lll_reduce(RealMatrix& b, IntMatrix& transform, real delta) {
  const std::size_t n = b.size();
  if (n < 2) return;
  RealMatrix mu;
  std::vector<real> norms;
  gram_schmidt(b, mu, norms);
  std::size_t k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 100000) throw SingularLattice("LLL failed to terminate");
    for (std::size_t j = k; j-- > 0;) {
      const real q = std::nearbyint(mu[k][j]);
      if (q == 0) continue;
      const i64 qi = static_cast<i64>(q);
      for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
      for (std::size_t c = 0; c < transform[k].size(); ++c) transform[k][c] -= qi * transform[j][c];
      gram_schmidt(b, mu, norms);
    }
    if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(transform[k], transform[k - 1]);
      gram_schmidt(b, mu, norms);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

std::vector<std::vector<i64>> short_vectors(const RealMatrix& basis, real radius2) {
  RealMatrix mu;
  std::vector<real> norms;
  gram_schmidt(basis, mu, norms);
  std::vector<i64> x(basis.size(), 0);
  std::vector<std::vector<i64>> out;
  enumerate(basis.size() - 1, mu, norms, radius2, x, out);
  return out;
}

}  // namespace angles
