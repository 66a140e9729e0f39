#include "angles/poly_fp.hpp"

#include <algorithm>
#include <random>

#include "angles/error.hpp"

namespace angles {
namespace fp {

void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const PolyFp& a) { return static_cast<int>(a.size()) - 1; }

PolyFp from_integers(std::span<const i64> coeffs, u64 p) {
  PolyFp out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = reduce_signed(coeffs[i], p);
  trim(out);
  return out;
}

PolyFp add(const PolyFp& a, const PolyFp& b, u64 p) {
  PolyFp out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = addmod(out[i], b[i], p);
  trim(out);
  return out;
}

PolyFp sub(const PolyFp& a, const PolyFp& b, u64 p) {
  PolyFp out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = submod(out[i], b[i], p);
  trim(out);
  return out;
}

PolyFp mul(const PolyFp& a, const PolyFp& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PolyFp out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = addmod(out[i + j], angles::mulmod(a[i], b[j], p), p);
    }
  }
  trim(out);
  return out;
}

PolyFp scale(const PolyFp& a, u64 c, u64 p) {
  PolyFp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = angles::mulmod(a[i], c, p);
  trim(out);
  return out;
}

void divmod(const PolyFp& a, const PolyFp& b, u64 p, PolyFp& q, PolyFp& r) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  r = a;
  const int db = degree(b);
  const int da = degree(a);
  if (da < db) {
    q.clear();
    return;
  }
  q.assign(da - db + 1, 0);
  const u64 lead_inv = invmod(b.back(), p);
  for (int i = da; i >= db; --i) {
    const u64 c = angles::mulmod(r[i], lead_inv, p);
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      r[i - db + j] = submod(r[i - db + j], angles::mulmod(c, b[j], p), p);
    }
  }
  trim(q);
  trim(r);
}

PolyFp mod(const PolyFp& a, const PolyFp& b, u64 p) {
  PolyFp q, r;
  divmod(a, b, p, q, r);
  return r;
}

PolyFp div(const PolyFp& a, const PolyFp& b, u64 p) {
  PolyFp q, r;
  divmod(a, b, p, q, r);
  return q;
}

PolyFp monic(const PolyFp& a, u64 p) {
  if (a.empty()) return a;
  return scale(a, invmod(a.back(), p), p);
}

PolyFp gcd(PolyFp a, PolyFp b, u64 p) {
  while (!b.empty()) {
    PolyFp r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

PolyFp derivative(const PolyFp& a, u64 p) {
  if (a.size() <= 1) return {};
  PolyFp out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = angles::mulmod(a[i], i % p, p);
  trim(out);
  return out;
}

PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, u64 p) {
  return mod(mul(a, b, p), m, p);
}

PolyFp powmod(const PolyFp& base, u64 exp, const PolyFp& m, u64 p) {
  PolyFp result = mod(PolyFp{1}, m, p);
  PolyFp b = mod(base, m, p);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, b, m, p);
    exp >>= 1;
    if (exp > 0) b = mulmod(b, b, m, p);
  }
  return result;
}

}  // namespace fp

namespace {

// p-th root of a polynomial whose derivative vanishes: coefficients live on
// multiples of p and a^(1/p) = a over a prime field.
PolyFp pth_root(const PolyFp& a, u64 p) {
  PolyFp out;
  for (std::size_t i = 0; i < a.size(); i += p) out.push_back(a[i]);
  fp::trim(out);
  return out;
}

void squarefree(const PolyFp& f, u64 p, int scale, std::vector<FactorFp>& out) {
  if (fp::degree(f) < 1) return;
  PolyFp c = fp::gcd(f, fp::derivative(f, p), p);
  PolyFp w = fp::div(f, c, p);
  int i = 1;
  while (fp::degree(w) > 0) {
    PolyFp y = fp::gcd(w, c, p);
    PolyFp fac = fp::div(w, y, p);
    if (fp::degree(fac) > 0) out.push_back({fp::monic(fac, p), i * scale});
    w = std::move(y);
    c = fp::div(c, w, p);
    ++i;
  }
  if (fp::degree(c) > 0) squarefree(pth_root(c, p), p, scale * static_cast<int>(p), out);
}

struct DegreeBlock {
  PolyFp product;  // product of all irreducible factors of degree `degree`
  int degree;
};

std::vector<DegreeBlock> distinct_degree(PolyFp g, u64 p) {
  std::vector<DegreeBlock> out;
  const PolyFp x{0, 1};
  PolyFp h = x;
  for (int d = 1; 2 * d <= fp::degree(g); ++d) {
    h = fp::powmod(h, p, g, p);
    PolyFp fd = fp::gcd(g, fp::sub(h, x, p), p);
    if (fp::degree(fd) > 0) {
      out.push_back({fd, d});
      g = fp::div(g, fd, p);
      h = fp::mod(h, g, p);
    }
  }
  if (fp::degree(g) > 0) out.push_back({fp::monic(g, p), fp::degree(g)});
  return out;
}

// Splitting polynomial for equal-degree factorization: a^((p^d-1)/2) - 1 for
// odd p, the absolute trace a + a^2 + ... + a^(2^(d-1)) for p = 2.
PolyFp splitter(const PolyFp& a, int d, const PolyFp& m, u64 p) {
  if (p == 2) {
    PolyFp t = a, acc = a;
    for (int i = 1; i < d; ++i) {
      t = fp::mulmod(t, t, m, p);
      acc = fp::add(acc, t, p);
    }
    return acc;
  }
  // (p^d - 1)/2 = ((p - 1)/2) * (1 + p + ... + p^(d-1))
  PolyFp conj = a, prod = a;
  for (int i = 1; i < d; ++i) {
    conj = fp::powmod(conj, p, m, p);
    prod = fp::mulmod(prod, conj, m, p);
  }
  PolyFp powered = fp::powmod(prod, (p - 1) / 2, m, p);
  return fp::sub(powered, PolyFp{1}, p);
}

void equal_degree(const PolyFp& f, int d, u64 p, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  const int n = fp::degree(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  for (;;) {
    PolyFp a(n);
    for (auto& c : a) c = rng() % p;
    fp::trim(a);
    if (fp::degree(a) < 1) continue;
    PolyFp g = fp::gcd(f, a, p);
    if (fp::degree(g) > 0 && fp::degree(g) < n) {
      equal_degree(g, d, p, rng, out);
      equal_degree(fp::div(f, g, p), d, p, rng, out);
      return;
    }
    g = fp::gcd(f, splitter(a, d, f, p), p);
    if (fp::degree(g) > 0 && fp::degree(g) < n) {
      equal_degree(g, d, p, rng, out);
      equal_degree(fp::div(f, g, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

bool factor_less(const PolyFp& a, const PolyFp& b, u64 p) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.size() == 2) return linear_root(a, p) < linear_root(b, p);
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::vector<FactorFp> factor_poly_mod_p(std::span<const i64> f, u64 p, u64 seed) {
  if (!is_prime(p)) throw DomainError("factor_poly_mod_p requires a prime modulus");
  PolyFp g = fp::from_integers(f, p);
  if (g.empty()) throw DomainError("polynomial vanishes modulo p");
  g = fp::monic(g, p);

  std::vector<FactorFp> sqfree;
  squarefree(g, p, 1, sqfree);

  std::mt19937_64 rng(seed);
  std::vector<FactorFp> out;
  for (const auto& part : sqfree) {
    for (const auto& block : distinct_degree(part.factor, p)) {
      std::vector<PolyFp> pieces;
      equal_degree(block.product, block.degree, p, rng, pieces);
      for (auto& piece : pieces) out.push_back({fp::monic(piece, p), part.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [p](const FactorFp& a, const FactorFp& b) {
    if (a.factor != b.factor) return factor_less(a.factor, b.factor, p);
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

}  // namespace angles
