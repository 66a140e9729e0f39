#include "angles/modarith.hpp"

#include <algorithm>
#include <cmath>

#include "angles/error.hpp"

namespace angles {

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    i128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw DomainError("element not invertible modulo m");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  lo = std::max<u64>(lo, 2);
  if (hi <= lo) return out;
  const u64 root = integer_root(hi - 1, 2);
  std::vector<bool> small_composite(root + 1, false);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (small_composite[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small_composite[j] = true;
  }
  constexpr u64 kSegment = 1u << 18;
  std::vector<bool> composite;
  for (u64 start = lo; start < hi; start += kSegment) {
    const u64 end = std::min(hi, start + kSegment);
    composite.assign(end - start, false);
    for (u64 p : base) {
      if (p * p >= end) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 j = first; j < end; j += p) composite[j - start] = true;
    }
    for (u64 i = start; i < end; ++i) {
      if (!composite[i - start]) out.push_back(i);
    }
  }
  return out;
}

int mobius(u64 n) {
  int sign = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

i64 ipow(i64 base, unsigned exp) {
  i64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw ArithmeticOverflow("integer power overflows int64");
    }
  }
  return result;
}

u64 integer_root(u64 n, unsigned k) {
  if (k == 1 || n < 2) return n;
  u64 r = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
  auto fits = [&](u64 c) {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < k; ++i) {
      v *= c;
      if (v > n) return false;
    }
    return true;
  };
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

}  // namespace angles
