#include "angles/cocycle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "angles/error.hpp"

namespace angles {

namespace {

BigInt big_pow(u64 base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_point(const TailPoint& x, const ProductSpace& S) {
  for (const auto& [i, v] : x.entries) {
    if (i >= S.size()) throw NotEquivalent("point has a coordinate outside the product space", {{"index", std::to_string(i)}});
    if (v < 0) throw DomainError("coordinates are nonnegative", {{"index", std::to_string(i)}});
    if (v >= S.coord(i).level) {
      throw DomainError("point sits on the truncation level", {{"index", std::to_string(i)}, {"value", std::to_string(v)}});
    }
  }
}

// Σ over the union of supports of f(i, x_i, y_i)
template <class F>
void merge_supports(const TailPoint& x, const TailPoint& y, F&& f) {
  std::size_t a = 0, b = 0;
  while (a < x.entries.size() || b < y.entries.size()) {
    const std::uint32_t ia = a < x.entries.size() ? x.entries[a].first : UINT32_MAX;
    const std::uint32_t ib = b < y.entries.size() ? y.entries[b].first : UINT32_MAX;
    if (ia == ib) {
      f(ia, x.entries[a++].second, y.entries[b++].second);
    } else if (ia < ib) {
      f(ia, x.entries[a++].second, 0);
    } else {
      f(ib, 0, y.entries[b++].second);
    }
  }
}

double uniform53(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProductSpace::ProductSpace(std::vector<CoordSpec> coords) : coords_(std::move(coords)) {
  for (const auto& c : coords_) {
    if (c.norm < 2) throw InputError("coordinate norm must be at least 2", {{"label", c.label}});
    if (c.level < 1) throw InputError("truncation level must be positive", {{"label", c.label}});
  }
}

Rational ProductSpace::mass(std::size_t i, int j) const {
  const CoordSpec& c = coords_.at(i);
  if (j < 0 || j > c.level) return 0;
  if (j == c.level) return Rational(BigInt(1), big_pow(c.norm, j));
  return Rational(BigInt(c.norm - 1), big_pow(c.norm, j + 1));
}

Rational ProductSpace::total_mass(std::size_t i) const {
  Rational s = 0;
  for (int j = 0; j <= coords_.at(i).level; ++j) s += mass(i, j);
  return s;
}

int TailPoint::at(std::size_t i) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i, [](const auto& e, std::size_t k) { return e.first < k; });
  return it != entries.end() && it->first == i ? it->second : 0;
}

void TailPoint::set(std::size_t i, int v) {
  auto it = std::lower_bound(entries.begin(), entries.end(), i, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != entries.end() && it->first == i) {
    if (v == 0) {
      entries.erase(it);
    } else {
      it->second = v;
    }
  } else if (v != 0) {
    entries.insert(it, {static_cast<std::uint32_t>(i), v});
  }
}

CocycleValue CocycleValue::operator*(const CocycleValue& o) const { return {ratio * o.ratio, angle + o.angle}; }

CocycleValue CocycleValue::inverse() const { return {1 / ratio, -angle}; }

Rational rn_cocycle(const TailPoint& x, const TailPoint& y, const ProductSpace& S) {
  check_point(x, S);
  check_point(y, S);
  BigInt num = 1, den = 1;
  merge_supports(x, y, [&](std::uint32_t i, int xi, int yi) {
    const int e = xi - yi;
    if (e > 0) num *= big_pow(S.coord(i).norm, e);
    if (e < 0) den *= big_pow(S.coord(i).norm, -e);
  });
  return Rational(num, den);
}

CocycleValue product_cocycle(const TailPoint& x, const TailPoint& y, const ProductSpace& S) {
  CocycleValue c;
  c.ratio = 1 / rn_cocycle(x, y, S);
  const std::size_t dim = S.torus_dim();
  std::vector<long double> acc(dim, 0);
  merge_supports(x, y, [&](std::uint32_t i, int xi, int yi) {
    const auto& rho = S.coord(i).rho.coords;
    for (std::size_t d = 0; d < dim; ++d) acc[d] += static_cast<long double>(yi - xi) * rho[d];
  });
  c.angle = TorusPoint::zero(dim);
  for (std::size_t d = 0; d < dim; ++d) c.angle.coords[d] = wrap01(acc[d]);
  return c;
}

Rational project_ratio(const CocycleValue& c) { return 1 / c.ratio; }

PartialMap::PartialMap(std::vector<Block> blocks, const ProductSpace& S)
    : blocks_(std::move(blocks)), space_(S), owner_(S.size(), -1) {
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    const Block& b = blocks_[n];
    const auto ctx = std::map<std::string, std::string>{{"block", std::to_string(n)}};
    for (std::size_t i : b.I) {
      if (i >= S.size()) throw InputError("block coordinate outside the product space", ctx);
      if (owner_[i] != -1) throw OverlapError("block coordinate sets intersect", {{"block", std::to_string(n)}, {"coordinate", std::to_string(i)}});
      owner_[i] = static_cast<long>(n);
    }
    if (b.K.size() != b.L.size() || b.K.empty()) throw ParamViolation("T_n must be a bijection K_n -> L_n", ctx);
    const std::set<std::vector<int>> ks(b.K.begin(), b.K.end()), ls(b.L.begin(), b.L.end());
    if (ks.size() != b.K.size() || ls.size() != b.L.size()) throw ParamViolation("T_n must be a bijection K_n -> L_n", ctx);
    for (const auto* tuples : {&b.K, &b.L}) {
      for (const auto& t : *tuples) {
        if (t.size() != b.I.size()) throw ParamViolation("tuple length differs from |I_n|", ctx);
        for (std::size_t k = 0; k < t.size(); ++k)
          if (t[k] < 0 || t[k] > S.coord(b.I[k]).level) throw ParamViolation("tuple value outside Z+ truncation", ctx);
      }
    }
    const std::vector<int> zero(b.I.size(), 0);
    if (ks.count(zero) || ls.count(zero)) zero_hits_.push_back(n);
  }
  survival_.assign(blocks_.size() + 1, 1);
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    std::set<std::vector<int>> hit(blocks_[n].K.begin(), blocks_[n].K.end());
    hit.insert(blocks_[n].L.begin(), blocks_[n].L.end());
    Rational m = 0;
    for (const auto& t : hit) m += cylinder_mass(n, t);
    survival_[n + 1] = survival_[n] * static_cast<long double>(to_double(1 - m));
  }
}

Rational PartialMap::cylinder_mass(std::size_t n, const std::vector<int>& tuple) const {
  Rational m = 1;
  const Block& b = blocks_.at(n);
  for (std::size_t k = 0; k < b.I.size(); ++k) m *= space_.mass(b.I[k], tuple[k]);
  return m;
}

long double PartialMap::survival(std::size_t n) const { return survival_.at(n); }

std::optional<std::pair<std::size_t, TailPoint>> PartialMap::apply(const TailPoint& x) const {
  // Only blocks touching the support of x, or holding the zero tuple, can
  // contain x; visit those in order.
  std::vector<std::size_t> visit;
  for (const auto& [i, v] : x.entries) {
    if (i >= owner_.size()) throw NotEquivalent("point has a coordinate outside the product space");
    if (owner_[i] >= 0) visit.push_back(static_cast<std::size_t>(owner_[i]));
  }
  visit.insert(visit.end(), zero_hits_.begin(), zero_hits_.end());
  std::sort(visit.begin(), visit.end());
  visit.erase(std::unique(visit.begin(), visit.end()), visit.end());
  for (std::size_t n : visit) {
    const Block& b = blocks_[n];
    std::vector<int> tuple;
    for (std::size_t i : b.I) tuple.push_back(x.at(i));
    for (std::size_t r = 0; r < b.K.size(); ++r) {
      if (b.K[r] == tuple) {
        TailPoint y = x;
        for (std::size_t k = 0; k < b.I.size(); ++k) y.set(b.I[k], b.L[r][k]);
        return std::make_pair(n, std::move(y));
      }
    }
    if (std::find(b.L.begin(), b.L.end(), tuple) != b.L.end()) return std::nullopt;
  }
  return std::nullopt;
}

PartialMap build_T(std::vector<Block> blocks, const ProductSpace& S) { return PartialMap(std::move(blocks), S); }

std::vector<TailPoint> sample(const ProductSpace& S, std::uint64_t seed, std::size_t count, unsigned workers) {
  // per coordinate: (sample index, value) for the nonzero draws
  std::vector<std::vector<std::pair<std::size_t, int>>> hits(S.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < S.size(); i = next++) {
      std::uint64_t state = seed ^ (0x632be59bd9b4e019ULL * (i + 1));
      std::mt19937_64 gen(splitmix64(state));
      const CoordSpec& c = S.coord(i);
      const double p = 1.0 / static_cast<double>(c.norm);
      const double log_q = std::log1p(-p);
      // gaps between nonzero draws are geometric with success probability 1/N
      std::size_t pos = 0;
      bool started = false;
      for (;;) {
        const double u = uniform53(gen);
        const double gap = std::floor(std::log1p(-u) / log_q);
        if (gap >= static_cast<double>(count)) break;
        const std::size_t step = static_cast<std::size_t>(gap) + (started ? 1 : 0);
        started = true;
        if (step >= count - pos) break;
        pos += step;
        int j = 1;
        while (j < c.level && uniform53(gen) < p) ++j;
        hits[i].push_back({pos, j});
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  std::vector<TailPoint> out(count);
  for (std::size_t i = 0; i < S.size(); ++i)
    for (const auto& [s, v] : hits[i]) out[s].entries.push_back({static_cast<std::uint32_t>(i), v});
  return out;
}

double TransportReport::max_abs_z() const {
  double m = std::abs(total.z);
  for (const auto& r : rows) m = std::max(m, std::abs(r.z));
  return m;
}

TransportReport transport_check(const PartialMap& T, const ProductSpace& S, const std::vector<TailPoint>& points,
                                double min_expected) {
  const std::size_t nb = T.blocks().size();
  std::vector<std::size_t> hits(nb, 0);
  std::vector<long double> sum(nb, 0), sum2(nb, 0);
  TransportReport rep;
  rep.samples = points.size();
  for (const auto& x : points) {
    const auto r = T.apply(x);
    if (!r) continue;
    ++rep.in_domain;
    // c_μ(x, Tx) = μ(Tx)/μ(x) only involves the rewritten coordinates
    long double w = 1;
    const Block& b = T.blocks()[r->first];
    for (std::size_t i : b.I) {
      w *= static_cast<long double>(to_double(S.mass(i, r->second.at(i))));
      w /= static_cast<long double>(to_double(S.mass(i, x.at(i))));
    }
    ++hits[r->first];
    sum[r->first] += w;
    sum2[r->first] += w * w;
  }
  const long double n = static_cast<long double>(points.size());
  auto make_row = [&](std::size_t block, std::size_t h, long double s, long double s2, long double pred) {
    TransportRow row;
    row.block = block;
    row.hits = h;
    const long double mean = n > 0 ? s / n : 0;
    const long double var = n > 1 ? std::max<long double>(0, s2 / n - mean * mean) : 0;
    row.weighted = static_cast<double>(mean);
    row.predicted = static_cast<double>(pred);
    row.std_error = static_cast<double>(std::sqrt(var / std::max<long double>(n, 1)));
    if (row.std_error > 0) {
      row.z = (row.weighted - row.predicted) / row.std_error;
    } else {
      row.z = row.weighted == row.predicted ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return row;
  };
  long double all_s = 0, all_s2 = 0, all_pred = 0;
  std::size_t all_h = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    Rational image = 0;
    for (const auto& t : T.blocks()[b].L) image += T.cylinder_mass(b, t);
    const long double pred = static_cast<long double>(to_double(image)) * T.survival(b);
    all_s += sum[b];
    all_s2 += sum2[b];
    all_pred += pred;
    all_h += hits[b];
    if (pred * n >= min_expected) rep.rows.push_back(make_row(b, hits[b], sum[b], sum2[b], pred));
  }
  // blocks are disjoint events, so Σ w² over all of them is the second moment
  rep.total = make_row(nb, all_h, all_s, all_s2, all_pred);
  return rep;
}

WindowReport window_check(const PartialMap& T, const ProductSpace& S, const std::vector<TailPoint>& points,
                          const Rational& s, const Rational& t, const TorusPoint& y0, const BoxSpec& V) {
  WindowReport rep;
  rep.s = s;
  rep.t = t;
  for (const auto& x : points) {
    const auto r = T.apply(x);
    if (!r) continue;
    ++rep.in_domain;
    const CocycleValue c = product_cocycle(x, r->second, S);
    if (c.ratio >= s && c.ratio <= t && in_difference_box(c.angle, y0, V)) ++rep.in_window;
  }
  return rep;
}

ProductSpace witness_space(const PairWitness& w, int level) {
  std::vector<CoordSpec> coords;
  for (const auto& pr : w.pairs) {
    for (const AngleRecord* r : {&pr.p, &pr.q}) {
      coords.push_back({std::to_string(r->ideal.norm) + ":" + std::to_string(r->ideal.p) + ":" + r->ideal.root_label(),
                        r->ideal.norm, level, r->rho});
    }
  }
  return ProductSpace(std::move(coords));
}

std::vector<Block> witness_blocks(const PairWitness& w) {
  std::vector<Block> blocks;
  for (std::size_t n = 0; n < w.pairs.size(); ++n) blocks.push_back({{2 * n, 2 * n + 1}, {{1, 0}}, {{0, 1}}});
  return blocks;
}

}  // namespace angles
