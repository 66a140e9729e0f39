#include "angles/primes.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <queue>
#include <thread>

#include "angles/error.hpp"

namespace angles {

std::string PrimeIdealRec::root_label() const {
  if (is_linear()) return std::to_string(root());
  std::string out;
  for (std::size_t i = 0; i < factor.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(factor[i]);
  }
  return out;
}

bool prime_less(const PrimeIdealRec& a, const PrimeIdealRec& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  if (a.p != b.p) return a.p < b.p;
  return factor_less(a.factor, b.factor, a.p);
}

std::vector<PrimeIdealRec> primes_above(const FieldSpec& F, u64 p) {
  const bool ramified = F.discriminant() % static_cast<i128>(p) == 0;
  std::vector<PrimeIdealRec> out;
  for (auto& fac : factor_poly_mod_p(F.poly(), p)) {
    PrimeIdealRec rec;
    rec.p = p;
    rec.res_degree = fp::degree(fac.factor);
    rec.multiplicity = fac.multiplicity;
    rec.factor = std::move(fac.factor);
    unsigned __int128 norm = 1;
    for (int i = 0; i < rec.res_degree; ++i) {
      norm *= p;
      if (norm > UINT64_MAX) throw ArithmeticOverflow("prime ideal norm exceeds 64 bits");
    }
    rec.norm = static_cast<u64>(norm);
    rec.ramified = ramified;
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

constexpr u64 kBlock = u64{1} << 16;

std::vector<PrimeIdealRec> factor_block(const FieldSpec& F, u64 lo, u64 hi, u64 max_norm) {
  std::vector<PrimeIdealRec> out;
  for (u64 p : primes_in_range(lo, hi)) {
    for (auto& rec : primes_above(F, p)) {
      if (rec.norm <= max_norm) out.push_back(std::move(rec));
    }
  }
  std::sort(out.begin(), out.end(), prime_less);
  return out;
}

}  // namespace

std::vector<PrimeIdealRec> enumerate_prime_ideals(const FieldSpec& F, u64 max_norm, unsigned workers) {
  if (max_norm < 2) return {};
  const u64 limit = max_norm + 1;
  const u64 blocks = (limit + kBlock - 1) / kBlock;
  std::vector<std::vector<PrimeIdealRec>> parts(blocks);

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  std::atomic<u64> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (u64 b = next++; b < blocks; b = next++) {
      try {
        parts[b] = factor_block(F, b * kBlock, std::min(limit, (b + 1) * kBlock), max_norm);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);

  // k-way merge of the sorted blocks
  using Cursor = std::pair<std::size_t, std::size_t>;  // (block, index)
  auto greater = [&](const Cursor& a, const Cursor& b) {
    return prime_less(parts[b.first][b.second], parts[a.first][a.second]);
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
  std::size_t total = 0;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    total += parts[b].size();
    if (!parts[b].empty()) heap.push({b, 0});
  }
  std::vector<PrimeIdealRec> out;
  out.reserve(total);
  while (!heap.empty()) {
    auto [b, i] = heap.top();
    heap.pop();
    out.push_back(std::move(parts[b][i]));
    if (i + 1 < parts[b].size()) heap.push({b, i + 1});
  }
  return out;
}

}  // namespace angles
