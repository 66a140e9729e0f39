#include "angles/equidist.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "angles/error.hpp"

namespace angles {

namespace {

constexpr std::size_t kChunk = 4096;

std::complex<long double> chunk_sum(const std::vector<i64>& k, std::span<const AngleRecord> part) {
  long double re = 0, im = 0;
  for (const auto& r : part) {
    const auto c = grossenchar(k, r.rho);
    re += c.real();
    im += c.imag();
  }
  return {re, im};
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad box coordinate", {{"value", item}});
    }
    if (used != item.size()) throw InputError("bad box coordinate", {{"value", item}});
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<AngleRecord> compute_angles(const AngleMap& map, const std::vector<GeneratorRec>& gens) {
  std::vector<AngleRecord> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back({g.ideal, g.alpha, map.rho_of_generator(g.alpha, g.ideal.norm)});
  return out;
}

std::vector<AngleRecord> compute_angles(const AngleMap& map, u64 max_norm, unsigned workers) {
  const auto ideals = enumerate_prime_ideals(map.field(), max_norm, workers);
  return compute_angles(map, find_generators(ideals, map.field(), map.units(), workers));
}

u64 prime_count(std::span<const AngleRecord> angles, u64 x) {
  return static_cast<u64>(std::upper_bound(angles.begin(), angles.end(), x,
                                           [](u64 v, const AngleRecord& r) { return v < r.ideal.norm; }) -
                          angles.begin());
}

WeylReport weyl_sum(const std::vector<i64>& k, std::span<const AngleRecord> angles, std::vector<u64> checkpoints,
                    unsigned workers) {
  std::sort(checkpoints.begin(), checkpoints.end());
  const std::size_t chunks = (angles.size() + kChunk - 1) / kChunk;
  std::vector<std::complex<long double>> partial(chunks);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      partial[c] = chunk_sum(k, angles.subspan(c * kChunk, std::min(kChunk, angles.size() - c * kChunk)));
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }

  WeylReport rep{k, {}};
  for (u64 x : checkpoints) {
    const std::size_t upto = prime_count(angles, x);
    std::complex<long double> s = 0;
    std::size_t c = 0;
    for (; (c + 1) * kChunk <= upto; ++c) s += partial[c];
    s += chunk_sum(k, angles.subspan(c * kChunk, upto - c * kChunk));
    WeylCheckpoint cp;
    cp.x = x;
    cp.count = upto;
    cp.sum = {static_cast<double>(s.real()), static_cast<double>(s.imag())};
    cp.normalized = upto ? static_cast<double>(std::abs(s) / upto) : 0.0;
    rep.checkpoints.push_back(cp);
  }
  return rep;
}

double BoxSpec::side(std::size_t i) const {
  double len = hi[i] - lo[i];
  if (len <= 0) len += 1;
  return len;
}

double BoxSpec::measure() const {
  double m = 1;
  for (std::size_t i = 0; i < dim(); ++i) m *= side(i);
  return m;
}

bool BoxSpec::contains(const TorusPoint& t) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (lo[i] == hi[i]) continue;
    if (lo[i] < hi[i]) {
      if (!(t.coords[i] >= lo[i] && t.coords[i] < hi[i])) return false;
    } else if (!(t.coords[i] >= lo[i] || t.coords[i] < hi[i])) {
      return false;
    }
  }
  return true;
}

BoxSpec BoxSpec::shifted(const TorusPoint& y) const {
  BoxSpec b = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (lo[i] == hi[i]) continue;
    b.lo[i] = wrap01(static_cast<long double>(lo[i]) + y.coords[i]);
    b.hi[i] = wrap01(static_cast<long double>(hi[i]) + y.coords[i]);
  }
  return b;
}

BoxSpec BoxSpec::parse(const std::string& text, std::size_t dim) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("box must look like lo1,lo2:hi1,hi2", {{"value", text}});
  BoxSpec b{split_doubles(text.substr(0, colon)), split_doubles(text.substr(colon + 1))};
  if (b.lo.size() != dim || b.hi.size() != dim) {
    throw InputError("box has the wrong dimension", {{"value", text}, {"dim", std::to_string(dim)}});
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (b.lo[i] < 0 || b.lo[i] >= 1 || b.hi[i] < 0 || b.hi[i] > 1) {
      throw InputError("box corners must lie in [0, 1]", {{"value", text}});
    }
    if (b.hi[i] == 1) b.hi[i] = 0;
  }
  return b;
}

std::string BoxSpec::str() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << lo[i];
  os << ':';
  for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << hi[i];
  return os.str();
}

double log_integral(double x) {
  if (x <= 1) throw DomainError("li(x) needs x > 1");
  return boost::math::expint(std::log(x));
}

BoxCount box_count(const BoxSpec& box, std::span<const AngleRecord> angles, u64 x) {
  BoxCount bc;
  bc.box = box;
  bc.x = x;
  bc.total = prime_count(angles, x);
  for (std::size_t i = 0; i < bc.total; ++i)
    if (box.contains(angles[i].rho)) ++bc.count;
  const double lambda = box.measure();
  bc.expected = lambda * static_cast<double>(bc.total);
  if (x > 1) {
    bc.expected_li = lambda * log_integral(static_cast<double>(x));
    bc.expected_xlog = lambda * static_cast<double>(x) / std::log(static_cast<double>(x));
  }
  bc.deviation = static_cast<double>(bc.count) - bc.expected;
  return bc;
}

std::vector<BoxSpec> grid_boxes(std::size_t dim, unsigned g) {
  if (g == 0) throw InputError("grid size must be positive");
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dim; ++i) cells *= g;
  std::vector<BoxSpec> out;
  for (std::size_t c = 0; c < cells; ++c) {
    BoxSpec b{std::vector<double>(dim), std::vector<double>(dim)};
    std::size_t rest = c;
    for (std::size_t i = dim; i-- > 0;) {
      const unsigned j = rest % g;
      rest /= g;
      b.lo[i] = static_cast<double>(j) / g;
      b.hi[i] = j + 1 == g ? 0.0 : static_cast<double>(j + 1) / g;
    }
    if (g == 1) b = BoxSpec::full(dim);
    out.push_back(b);
  }
  return out;
}

std::vector<BoxCount> grid_counts(std::size_t dim, unsigned g, std::span<const AngleRecord> angles, u64 x) {
  const auto boxes = grid_boxes(dim, g);
  std::vector<u64> counts(boxes.size(), 0);
  const u64 total = prime_count(angles, x);
  for (std::size_t r = 0; r < total; ++r) {
    // cell index from floor(t·g), then nudged so that it agrees with contains()
    std::size_t cell = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double t = angles[r].rho.coords[i];
      long j = std::clamp<long>(static_cast<long>(std::floor(t * g)), 0, static_cast<long>(g) - 1);
      if (j > 0 && t < static_cast<double>(j) / g) --j;
      if (j + 1 < static_cast<long>(g) && t >= static_cast<double>(j + 1) / g) ++j;
      cell = cell * g + static_cast<std::size_t>(j);
    }
    ++counts[cell];
  }
  std::vector<BoxCount> out;
  for (std::size_t c = 0; c < boxes.size(); ++c) {
    BoxCount bc;
    bc.box = boxes[c];
    bc.x = x;
    bc.total = total;
    bc.count = counts[c];
    const double lambda = boxes[c].measure();
    bc.expected = lambda * static_cast<double>(total);
    if (x > 1) {
      bc.expected_li = lambda * log_integral(static_cast<double>(x));
      bc.expected_xlog = lambda * static_cast<double>(x) / std::log(static_cast<double>(x));
    }
    bc.deviation = static_cast<double>(bc.count) - bc.expected;
    out.push_back(bc);
  }
  return out;
}

WindowCount window_count(const BoxSpec& box, const Rational& delta, const Rational& x,
                         std::span<const AngleRecord> angles) {
  if (delta <= 0) throw DomainError("window needs delta > 0", {{"delta", to_string(delta)}});
  if (x <= 1) throw DomainError("window needs x > 1", {{"x", to_string(x)}});
  WindowCount w;
  w.x = x;
  w.delta = delta;
  const Rational top = (1 + delta) * x;
  // norms are integers, so x < N <= top  <=>  floor(x) < N <= floor(top)
  const BigInt lo_int = numerator(x) / denominator(x);
  const BigInt hi_int = numerator(top) / denominator(top);
  const u64 lo = lo_int.convert_to<u64>();
  const u64 hi = hi_int > std::numeric_limits<u64>::max() ? std::numeric_limits<u64>::max() : hi_int.convert_to<u64>();
  const std::size_t begin = prime_count(angles, lo);
  const std::size_t end = prime_count(angles, hi);
  for (std::size_t i = begin; i < end; ++i)
    if (box.contains(angles[i].rho)) ++w.count;
  const double xd = to_double(x), dd = to_double(delta), lambda = box.measure();
  w.predicted = lambda * dd * xd / std::log(xd);
  w.predicted_li = lambda * (log_integral(xd * (1 + dd)) - log_integral(xd));
  return w;
}

std::vector<u64> class_counts(std::span<const AngleRecord> angles, u64 x, std::size_t num_classes,
                              const std::function<std::size_t(const AngleRecord&)>& classes) {
  std::vector<u64> out(num_classes, 0);
  const u64 total = prime_count(angles, x);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t c = classes(angles[i]);
    if (c >= num_classes) throw DomainError("class index out of range", {{"class", std::to_string(c)}});
    ++out[c];
  }
  return out;
}

}  // namespace angles
