#include "angles/function_field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "angles/error.hpp"

namespace angles {

namespace {

constexpr std::uint64_t kSieveLimit = std::uint64_t{1} << 27;

std::uint64_t checked_pow(std::uint64_t q, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > UINT64_MAX / q) throw ArithmeticOverflow("q^n does not fit in 64 bits");
    r *= q;
  }
  return r;
}

}  // namespace

Fq::Fq(std::uint32_t q) : q_(q), p_(q), prime_(true) {
  if (q >= 2 && is_prime(q)) return;
  prime_ = false;
  std::vector<std::uint32_t> modulus;  // x^k + ..., low-to-high over F_p
  switch (q) {
    case 4: p_ = 2; modulus = {1, 1, 1}; break;
    case 8: p_ = 2; modulus = {1, 1, 0, 1}; break;
    case 9: p_ = 3; modulus = {1, 0, 1}; break;
    default: throw InputError("q must be prime or one of 4, 8, 9", {{"q", std::to_string(q)}});
  }
  const std::size_t k = modulus.size() - 1;
  auto digits = [&](std::uint32_t a) {
    std::vector<std::uint32_t> d(k);
    for (auto& x : d) {
      x = a % p_;
      a /= p_;
    }
    return d;
  };
  auto undigits = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
    return a;
  };
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    const auto da = digits(a);
    std::vector<std::uint32_t> dn(k);
    for (std::size_t i = 0; i < k; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = undigits(dn);
    for (std::uint32_t b = 0; b < q; ++b) {
      const auto db = digits(b);
      std::vector<std::uint32_t> s(k);
      for (std::size_t i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = undigits(s);
      std::vector<std::uint32_t> prod(2 * k - 1, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (std::size_t t = prod.size(); t-- > k;) {
        const std::uint32_t c = prod[t];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= k; ++i) prod[t - k + i] = (prod[t - k + i] + (p_ - c) * modulus[i]) % p_;
      }
      prod.resize(k);
      mul_[a * q + b] = undigits(prod);
    }
  }
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = b;
}

std::uint32_t Fq::add(std::uint32_t a, std::uint32_t b) const {
  if (prime_) return static_cast<std::uint32_t>((static_cast<u64>(a) + b) % q_);
  return add_[a * q_ + b];
}

std::uint32_t Fq::neg(std::uint32_t a) const {
  if (prime_) return a == 0 ? 0 : q_ - a;
  return neg_[a];
}

std::uint32_t Fq::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Fq::mul(std::uint32_t a, std::uint32_t b) const {
  if (prime_) return static_cast<std::uint32_t>(static_cast<u64>(a) * b % q_);
  return mul_[a * q_ + b];
}

std::uint32_t Fq::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("zero has no inverse");
  if (prime_) return static_cast<std::uint32_t>(invmod(a, q_));
  return inv_[a];
}

namespace fq {

void trim(PolyFq& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const PolyFq& a) { return static_cast<int>(a.size()) - 1; }

PolyFq add(const PolyFq& a, const PolyFq& b, const Fq& F) {
  PolyFq r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

PolyFq sub(const PolyFq& a, const PolyFq& b, const Fq& F) {
  PolyFq r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

PolyFq mul(const PolyFq& a, const PolyFq& b, const Fq& F) {
  if (a.empty() || b.empty()) return {};
  PolyFq r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

PolyFq mod(const PolyFq& a, const PolyFq& b, const Fq& F) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  PolyFq r = a;
  trim(r);
  const std::uint32_t lead_inv = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  while (r.size() > db) {
    const std::uint32_t c = F.mul(r.back(), lead_inv);
    const std::size_t shift = r.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
    trim(r);
  }
  return r;
}

PolyFq monic(const PolyFq& a, const Fq& F) {
  if (a.empty()) return a;
  const std::uint32_t s = F.inv(a.back());
  PolyFq r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  return r;
}

PolyFq gcd(PolyFq a, PolyFq b, const Fq& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFq r = mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

PolyFq powmod(const PolyFq& base, std::uint64_t e, const PolyFq& m, const Fq& F) {
  PolyFq result = mod(PolyFq{1}, m, F);
  PolyFq b = mod(base, m, F);
  while (e > 0) {
    if (e & 1) result = mod(mul(result, b, F), m, F);
    e >>= 1;
    if (e) b = mod(mul(b, b, F), m, F);
  }
  return result;
}

PolyFq decode_monic(std::uint64_t code, int n, const Fq& F) {
  PolyFq r(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    r[i] = static_cast<std::uint32_t>(code % F.q());
    code /= F.q();
  }
  r[n] = 1;
  return r;
}

std::uint64_t encode_lower(const PolyFq& a, int n, const Fq& F) {
  std::uint64_t code = 0;
  for (int i = n; i-- > 0;) code = code * F.q() + (static_cast<std::size_t>(i) < a.size() ? a[i] : 0);
  return code;
}

}  // namespace fq

bool is_irreducible(const PolyFq& input, const Fq& F) {
  PolyFq f = input;
  fq::trim(f);
  const int n = fq::degree(f);
  if (n < 1) return false;
  f = fq::monic(f, F);
  if (n == 1) return true;
  const PolyFq T{0, 1};
  std::vector<PolyFq> frob{fq::mod(T, f, F)};  // T^(q^i) mod f
  for (int i = 1; i <= n; ++i) frob.push_back(fq::powmod(frob.back(), F.q(), f, F));
  if (fq::sub(frob[n], frob[0], F) != PolyFq{}) return false;
  for (u64 r = 2; r <= static_cast<u64>(n); ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    const PolyFq g = fq::gcd(f, fq::sub(frob[n / r], frob[0], F), F);
    if (g != PolyFq{1}) return false;
  }
  return true;
}

u64 necklace_count(u64 q, int n) {
  if (n < 1) throw DomainError("degree must be positive");
  i128 s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(static_cast<u64>(d));
    if (mu != 0) s += mu * static_cast<i128>(checked_pow(q, n / d));
  }
  return static_cast<u64>(s / n);
}

IrreducibleTable::IrreducibleTable(const Fq& F, int n_max, unsigned workers) : F_(F), codes_(std::max(n_max, 0) + 1) {
  const std::uint32_t q = F.q();
  auto fill = [&](int n) {
    const std::uint64_t size = checked_pow(q, n);
    auto& out = codes_[n];
    if (size > kSieveLimit) {
      for (std::uint64_t c = 0; c < size; ++c)
        if (is_irreducible(fq::decode_monic(c, n, F_), F_)) out.push_back(c);
      return;
    }
    std::vector<std::uint8_t> composite(size, 0);
    std::vector<std::uint64_t> qpow(n + 1, 1);
    for (int i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;
    std::vector<std::uint32_t> h, prod(n + 1);
    for (int d = 1; 2 * d <= n; ++d) {
      const int e = n - d;
      for (std::uint64_t gc : codes_[d]) {
        const PolyFq g = fq::decode_monic(gc, d, F_);
        h.assign(e + 1, 0);
        h[e] = 1;
        for (std::uint64_t hc = 0; hc < qpow[e]; ++hc) {
          std::fill(prod.begin(), prod.end(), 0);
          for (int i = 0; i <= d; ++i) {
            if (g[i] == 0) continue;
            for (int j = 0; j <= e; ++j) prod[i + j] = F_.add(prod[i + j], F_.mul(g[i], h[j]));
          }
          std::uint64_t code = 0;
          for (int k = n; k-- > 0;) code = code * q + prod[k];
          composite[code] = 1;
          for (int j = 0; j < e; ++j) {  // odometer over the lower coefficients of h
            if (++h[j] < q) break;
            h[j] = 0;
          }
        }
      }
    }
    for (std::uint64_t c = 0; c < size; ++c)
      if (!composite[c]) out.push_back(c);
  };
  const int half = n_max / 2;
  for (int n = 1; n <= half; ++n) fill(n);
  std::atomic<int> next{half + 1};
  auto run = [&] {
    for (int n = next++; n <= n_max; n = next++) fill(n);
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
}

std::vector<PolyFq> irreducibles(std::uint32_t q, int n) {
  const IrreducibleTable t(Fq(q), n);
  std::vector<PolyFq> out;
  for (std::size_t i = 0; i < t.count(n); ++i) out.push_back(t.poly(n, i));
  return out;
}

bool ClassRow::sums_ok() const {
  u64 s = ramified;
  for (u64 c : counts) s += c;
  return s == total && total == necklace;
}

double ClassCountReport::max_normalized() const {
  double m = 0;
  for (const auto& r : rows)
    for (double v : r.normalized) m = std::max(m, std::abs(v));
  return m;
}

bool ClassCountReport::sums_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ClassRow& r) { return r.sums_ok(); });
}

ClassCountReport class_counts(const IrreducibleTable& table, const PolyFq& modulus_in) {
  const Fq& F = table.field();
  PolyFq m = modulus_in;
  fq::trim(m);
  if (m.empty()) throw InputError("modulus must be nonzero");
  for (auto c : m)
    if (c >= F.q()) throw InputError("modulus coefficient outside F_q", {{"value", std::to_string(c)}});
  m = fq::monic(m, F);
  const int dm = fq::degree(m);

  ClassCountReport rep;
  rep.q = F.q();
  rep.modulus = m;
  const std::uint64_t residues = checked_pow(F.q(), dm);
  if (residues > kSieveLimit) throw InputError("modulus degree too large");
  std::vector<long> class_of(residues, -1);
  for (std::uint64_t c = 0; c < residues; ++c) {
    PolyFq r(static_cast<std::size_t>(dm));
    std::uint64_t t = c;
    for (auto& x : r) {
      x = static_cast<std::uint32_t>(t % F.q());
      t /= F.q();
    }
    fq::trim(r);
    const bool unit = dm == 0 || (!r.empty() && fq::gcd(r, m, F) == PolyFq{1});
    if (!unit) continue;
    class_of[c] = static_cast<long>(rep.classes.size());
    rep.classes.push_back(r);
  }
  rep.phi = rep.classes.size();

  for (int n = 1; n <= table.max_degree(); ++n) {
    ClassRow row;
    row.n = n;
    row.total = table.count(n);
    row.necklace = necklace_count(F.q(), n);
    row.counts.assign(rep.phi, 0);
    for (std::size_t i = 0; i < table.count(n); ++i) {
      const PolyFq p = table.poly(n, i);
      const std::uint64_t c = dm == 0 ? 0 : fq::encode_lower(fq::mod(p, m, F), dm, F);
      if (class_of[c] < 0) {
        ++row.ramified;
      } else {
        ++row.counts[class_of[c]];
      }
    }
    const double qn = std::pow(static_cast<double>(F.q()), n);
    const double scale = std::pow(static_cast<double>(F.q()), n / 2.0);
    row.predicted = qn / (n * static_cast<double>(rep.phi));
    for (u64 c : row.counts) {
      row.residual.push_back(static_cast<double>(c) - row.predicted);
      row.normalized.push_back(row.residual.back() / scale);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ClassCountReport class_counts(std::uint32_t q, const PolyFq& modulus, int n_max) {
  return class_counts(IrreducibleTable(Fq(q), n_max), modulus);
}

u64 NongeometricReport::outside_gamma() const {
  u64 s = 0;
  for (const auto& c : cells)
    if (!c.in_gamma) s += c.count;
  return s;
}

double NongeometricReport::max_normalized_inside() const {
  double m = 0;
  for (const auto& c : cells)
    if (c.in_gamma) m = std::max(m, std::abs(c.normalized));
  return m;
}

NongeometricReport nongeometric_image(const IrreducibleTable& table, std::uint32_t M) {
  if (M < 1) throw InputError("constant-field degree must be positive");
  const Fq& F = table.field();
  NongeometricReport rep;
  rep.q = F.q();
  rep.M = M;
  for (int n = 1; n <= table.max_degree(); ++n) {
    std::vector<u64> counts(M, 0);
    // the residue field of 𝔭 is F_{q^n}; Frobenius acts on F_{q^M} as x -> x^(q^n)
    for (std::size_t i = 0; i < table.count(n); ++i) ++counts[static_cast<std::uint32_t>(n) % M];
    const double qn = std::pow(static_cast<double>(F.q()), n);
    const double scale = std::pow(static_cast<double>(F.q()), n / 2.0);
    for (std::uint32_t g = 0; g < M; ++g) {
      FrobeniusCell cell;
      cell.n = n;
      cell.g = g;
      cell.in_gamma = g == static_cast<std::uint32_t>(n) % M;
      cell.count = counts[g];
      cell.predicted = cell.in_gamma ? qn / n : 0.0;
      cell.normalized = (static_cast<double>(cell.count) - cell.predicted) / scale;
      rep.cells.push_back(cell);
    }
  }
  return rep;
}

}  // namespace angles
