#pragma once

#include <cstdint>
#include <vector>

namespace angles {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 powmod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo a prime m; a must be nonzero mod m.
u64 invmod(u64 a, u64 m);

/// Reduce a signed value into [0, m).
inline u64 reduce_signed(i64 v, u64 m) {
  i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// All primes in [lo, hi) by a segmented sieve.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// All primes <= limit.
inline std::vector<u64> primes_up_to(u64 limit) { return primes_in_range(2, limit + 1); }

/// Mobius function by trial division.
int mobius(u64 n);

/// Exact integer power; throws ArithmeticOverflow when it leaves int64.
i64 ipow(i64 base, unsigned exp);

/// Largest r with r^k <= n.
u64 integer_root(u64 n, unsigned k);

}  // namespace angles
