#include "angles/generator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "angles/error.hpp"
#include "angles/lattice.hpp"

namespace angles {

namespace {

std::vector<real> minkowski(const std::vector<i64>& coords, const FieldSpec& F) {
  const Embedding e = embed(AlgElem{coords}, F);
  std::vector<real> out;
  out.reserve(F.degree());
  for (real v : e.real_places) out.push_back(v);
  for (const complex& z : e.complex_places) {
    out.push_back(std::numbers::sqrt2_v<real> * z.real());
    out.push_back(std::numbers::sqrt2_v<real> * z.imag());
  }
  return out;
}

real squared_length(const std::vector<real>& v) {
  real s = 0;
  for (real x : v) s += x * x;
  return s;
}

struct Candidate {
  real length;
  std::vector<i64> coords;
};

std::vector<i64> combine(const std::vector<i64>& x, const IntMatrix& rows) {
  std::vector<i128> acc(rows.front().size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += static_cast<i128>(x[i]) * rows[i][c];
  }
  std::vector<i64> out(acc.size());
  for (std::size_t c = 0; c < acc.size(); ++c) {
    if (acc[c] > INT64_MAX || acc[c] < INT64_MIN) throw ArithmeticOverflow("lattice vector leaves int64");
    out[c] = static_cast<i64>(acc[c]);
  }
  return out;
}

}  // namespace

IntMatrix ideal_basis(const PrimeIdealRec& ideal, const FieldSpec& F) {
  const int n = F.degree();
  const int d = ideal.res_degree;
  IntMatrix rows;
  for (int i = 0; i + d < n; ++i) {
    std::vector<i64> row(n, 0);
    for (int k = 0; k <= d; ++k) row[i + k] = static_cast<i64>(ideal.factor[k]);
    rows.push_back(row);
  }
  for (int j = 0; j < d; ++j) {
    std::vector<i64> row(n, 0);
    row[j] = static_cast<i64>(ideal.p);
    rows.push_back(row);
  }
  return rows;
}

bool in_ideal(const AlgElem& a, const PrimeIdealRec& ideal, const FieldSpec&) {
  const PolyFp reduced = fp::from_integers(a.coords, ideal.p);
  if (reduced.empty()) return true;
  return fp::mod(reduced, ideal.factor, ideal.p).empty();
}

bool is_generator(const AlgElem& alpha, const PrimeIdealRec& ideal, const FieldSpec& F) {
  const i128 N = norm(alpha, F);
  const i128 target = static_cast<i128>(ideal.norm);
  return (N == target || N == -target) && in_ideal(alpha, ideal, F);
}

real generator_search_bound(const PrimeIdealRec& ideal, const FieldSpec& F) {
  const real n = F.degree();
  const real disc = std::abs(static_cast<real>(F.discriminant()));
  return 4 * n * std::pow(static_cast<real>(ideal.norm), 2 / n) * std::pow(disc, 1 / n);
}

GeneratorRec find_generator(const PrimeIdealRec& ideal, const FieldSpec& F) {
  if (!F.class_number_one()) {
    throw UnsupportedField("generator search needs a field flagged class_number_one", {{"field", F.name()}});
  }
  const int n = F.degree();
  const real scale = std::pow(static_cast<real>(ideal.norm), -1.0L / n);
  const IntMatrix rows = ideal_basis(ideal, F);

  RealMatrix basis;
  for (const auto& row : rows) {
    auto v = minkowski(row, F);
    for (auto& x : v) x *= scale;
    basis.push_back(std::move(v));
  }
  IntMatrix transform(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) transform[i][i] = 1;
  lll_reduce(basis, transform, 0.99L);
  IntMatrix reduced;
  for (const auto& t : transform) reduced.push_back(combine(t, rows));

  const real bound = generator_search_bound(ideal, F) * scale * scale;
  real radius = std::min(bound, squared_length(basis.front()) * (1 + 1e-9L));
  real previous = -1;
  for (;;) {
    std::vector<Candidate> candidates;
    for (const auto& x : short_vectors(basis, radius * (1 + 1e-9L))) {
      std::vector<i64> coords = combine(x, reduced);
      const real len = squared_length(minkowski(coords, F)) * scale * scale;
      if (len <= previous || len > radius) continue;
      candidates.push_back({len, std::move(coords)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.length != b.length ? a.length < b.length : a.coords < b.coords;
    });
    for (const auto& c : candidates) {
      AlgElem alpha{c.coords};
      if (is_generator(alpha, ideal, F)) return GeneratorRec{ideal, alpha, false};
    }
    if (radius >= bound) break;
    previous = radius;
    radius = std::min(bound, radius * 2);
  }
  throw GeneratorNotFound("no generator within the search bound",
                          {{"p", std::to_string(ideal.p)},
                           {"norm", std::to_string(ideal.norm)},
                           {"root", ideal.root_label()},
                           {"bound", std::to_string(static_cast<double>(generator_search_bound(ideal, F)))}});
}

AlgElem normalize_element(const AlgElem& input, const FieldSpec& F, const UnitGroup& units) {
  if (input.is_zero()) throw ZeroElement("cannot normalize zero");
  AlgElem alpha = input;
  if (F.r1() > 0) alpha = mul(alpha, units.sign_fixers[sign_mask(alpha, F)], F);

  const std::size_t rank = units.positive_basis.size();
  if (rank > 0) {
    const Embedding e = embed(alpha, F);
    const int places = F.r1() + F.r2();
    const real log_norm = std::log(std::abs(static_cast<real>(norm(alpha, F))));
    Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic> A(places, rank);
    Eigen::Matrix<real, Eigen::Dynamic, 1> rhs(places);
    for (int v = 0; v < places; ++v) {
      for (std::size_t j = 0; j < rank; ++j) A(v, j) = units.log_matrix[v][j];
      const real mag = v < F.r1() ? std::abs(e.real_places[v]) : std::abs(e.complex_places[v - F.r1()]);
      rhs(v) = std::log(mag) - log_norm / F.degree();
    }
    const Eigen::Matrix<real, Eigen::Dynamic, 1> c = A.colPivHouseholderQr().solve(rhs);
    for (std::size_t j = 0; j < rank; ++j) {
      const i64 k = static_cast<i64>(std::floor(c(j) + 1e-9L));
      if (k == 0) continue;
      const AlgElem& step = k > 0 ? units.positive_inverses[j] : units.positive_basis[j];
      alpha = mul(alpha, pow(step, static_cast<unsigned>(k > 0 ? k : -k), F), F);
    }
  }

  if (F.r1() == 0) {
    const unsigned w = static_cast<unsigned>(F.roots_of_unity());
    const real two_pi = 2 * std::numbers::pi_v<real>;
    real a = std::arg(embed(alpha, F).complex_places[0]);
    if (a < 0) a += two_pi;
    const unsigned j = static_cast<unsigned>(std::floor(a * w / two_pi + 1e-9L)) % w;
    if (j != 0) {
      const unsigned power = (units.rotation_power * (w - j)) % w;
      alpha = mul(alpha, pow(F.torsion_generator(), power, F), F);
    }
  }
  return alpha;
}

GeneratorRec normalize_generator(GeneratorRec g, const FieldSpec& F, const UnitGroup& units) {
  g.alpha = normalize_element(g.alpha, F, units);
  g.normalized = true;
  return g;
}

std::vector<GeneratorRec> find_generators(const std::vector<PrimeIdealRec>& ideals, const FieldSpec& F,
                                          const UnitGroup& units, unsigned workers) {
  std::vector<GeneratorRec> out(ideals.size());
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (ideals.size() + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        for (std::size_t i = c * kChunk; i < std::min(ideals.size(), (c + 1) * kChunk); ++i) {
          out[i] = normalize_generator(find_generator(ideals[i], F), F, units);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
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
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace angles
