#include "angles/torus.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "angles/error.hpp"

namespace angles {

namespace {

using MatX = Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic>;

constexpr real kTwoPi = 2 * std::numbers::pi_v<real>;

real arg0(const complex& z) {
  real a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

real dot(const std::vector<real>& a, const std::vector<real>& b) {
  real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Columns of [rows; section]^{-1} except the last.
RealMatrix dual_basis(const RealMatrix& rows, const std::vector<real>& section) {
  const std::size_t n = section.size();
  MatX A(n, n);
  real scale = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A(i, j) = rows[i][j];
    scale *= std::sqrt(dot(rows[i], rows[i]));
  }
  for (std::size_t j = 0; j < n; ++j) A(n - 1, j) = section[j];
  scale *= std::sqrt(dot(section, section));
  const Eigen::FullPivLU<MatX> lu(A);
  if (!(std::abs(lu.determinant()) > 1e-9L * scale)) {
    throw SingularLattice("lattice basis is numerically rank deficient",
                          {{"det", std::to_string(static_cast<double>(lu.determinant()))}});
  }
  const MatX inv = lu.inverse();
  RealMatrix out(n - 1, std::vector<real>(n));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = inv(j, i);
  return out;
}

// rows_i = (1/den) Σ_j H_ij base_j
RealMatrix combine_rows(const IntMatrix& H, const RealMatrix& base, i64 den) {
  RealMatrix out;
  for (const auto& h : H) {
    std::vector<real> v(base.front().size(), 0);
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (h[j] == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] += static_cast<real>(h[j]) * base[j][c];
    }
    for (auto& x : v) x /= static_cast<real>(den);
    out.push_back(std::move(v));
  }
  return out;
}

i64 nearest_integer(real v, real tol, const char* what) {
  const real r = std::nearbyint(v);
  if (std::abs(v - r) > tol) throw SingularLattice(std::string(what) + " is not integral", {{"value", std::to_string(static_cast<double>(v))}});
  return static_cast<i64>(r);
}

}  // namespace

double wrap01(long double t) {
  long double f = t - std::floor(t);
  double d = static_cast<double>(f);
  // exact integers come out as ~1e-20 after the log/pairing round trip
  if (d < 1e-15 || d > 1.0 - 1e-15) d = 0.0;
  return d;
}

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
  TorusPoint out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = wrap01(static_cast<long double>(a.coords[i]) + b.coords[i]);
  return out;
}

TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) {
  TorusPoint out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = wrap01(static_cast<long double>(a.coords[i]) - b.coords[i]);
  return out;
}

TorusPoint operator-(const TorusPoint& a) { return TorusPoint::zero(a.dim()) - a; }

TorusPoint scaled(const TorusPoint& a, i64 k) {
  TorusPoint out = a;
  for (auto& c : out.coords) c = wrap01(static_cast<long double>(c) * static_cast<long double>(k));
  return out;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const long double d = static_cast<long double>(a.coords[i]) - b.coords[i];
    worst = std::max(worst, static_cast<double>(std::abs(d - std::nearbyint(d))));
  }
  return worst;
}

std::vector<real> log_vector(const AlgElem& alpha, const FieldSpec& F) {
  if (alpha.is_zero()) throw ZeroElement("log vector of zero");
  const Embedding e = embed(alpha, F);
  std::vector<real> out;
  out.reserve(F.degree());
  for (real v : e.real_places) out.push_back(std::log(std::abs(v)));
  for (const complex& z : e.complex_places) {
    out.push_back(std::log(std::abs(z)));
    out.push_back(arg0(z));
  }
  return out;
}

std::vector<real> log_vector(const AlgElem& alpha, u64 ideal_norm, const FieldSpec& F) {
  std::vector<real> x = log_vector(alpha, F);
  real total = 0;
  for (int v = 0; v < F.r1(); ++v) total += x[v];
  for (int j = 0; j < F.r2(); ++j) total += 2 * x[F.r1() + 2 * j];
  const real expected = std::log(static_cast<real>(ideal_norm));
  if (std::abs(total - expected) > 1e-9L * std::max<real>(1, expected)) {
    throw DomainError("log vector does not match the ideal norm",
                      {{"norm", std::to_string(ideal_norm)}, {"sum", std::to_string(static_cast<double>(total))}});
  }
  return x;
}

std::vector<real> dual_pairings(const std::vector<real>& x, const RealMatrix& dual) {
  std::vector<real> out(dual.size());
  for (std::size_t i = 0; i < dual.size(); ++i) out[i] = dot(dual[i], x);
  return out;
}

TorusPoint torus_coords(const std::vector<real>& x, const LogLattice& L) {
  TorusPoint t;
  for (real v : dual_pairings(x, L.dual)) t.coords.push_back(wrap01(v));
  return t;
}

LogLattice build_lattice(const FieldSpec& F, const UnitGroup& units) {
  LogLattice L;
  L.r1 = F.r1();
  L.r2 = F.r2();
  L.dim_ambient = F.degree();
  const int n = F.degree();
  if (n < 2) throw UnsupportedField("angle torus needs degree >= 2");
  L.section.assign(n, 0);
  for (int v = 0; v < L.r1; ++v) L.section[v] = 1;
  for (int j = 0; j < L.r2; ++j) L.section[L.r1 + 2 * j] = 1;

  RealMatrix base;
  for (const auto& u : units.positive_basis) base.push_back(log_vector(u, F));
  for (int j = 0; j < L.r2; ++j) {
    std::vector<real> v(n, 0);
    v[L.r1 + 2 * j + 1] = kTwoPi;
    base.push_back(std::move(v));
  }
  if (static_cast<int>(base.size()) != n - 1) throw SingularLattice("wrong number of lattice generators");

  if (L.r1 == 0) {
    const i64 w = F.roots_of_unity();
    IntMatrix gens;
    for (int i = 0; i < n - 1; ++i) {
      std::vector<i64> row(n - 1, 0);
      row[i] = w;
      gens.push_back(row);
    }
    const std::vector<real> z = log_vector(F.torsion_generator(), F);
    std::vector<i64> row(n - 1, 0);
    const std::size_t off = units.positive_basis.size();
    for (int j = 0; j < L.r2; ++j) {
      row[off + j] = nearest_integer(z[2 * j + 1] * static_cast<real>(w) / kTwoPi, 1e-9L, "torsion argument");
    }
    gens.push_back(row);
    L.basis = combine_rows(hermite_normal_form(gens), base, w);
  } else {
    L.basis = base;
  }
  L.dual = dual_basis(L.basis, L.section);

  // θ-lattice: all units (with torsion) modulo 2π, expressed over L.basis
  // with denominator 2.
  constexpr i64 D = 2;
  IntMatrix gens;
  for (int i = 0; i < n - 1; ++i) {
    std::vector<i64> row(n - 1, 0);
    row[i] = D;
    gens.push_back(row);
  }
  std::vector<AlgElem> all_units = F.units();
  all_units.push_back(F.torsion_generator());
  for (const auto& u : all_units) {
    std::vector<i64> row;
    for (real c : dual_pairings(log_vector(u, F), L.dual)) row.push_back(nearest_integer(c * D, 1e-6L, "unit coordinate"));
    gens.push_back(row);
  }
  const IntMatrix H = hermite_normal_form(gens);
  L.theta_basis = combine_rows(H, L.basis, D);
  L.theta_dual = dual_basis(L.theta_basis, L.section);

  // basis = D·H^{-1}·theta_basis
  MatX Hm(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) Hm(i, j) = static_cast<real>(H[i][j]);
  const MatX K = static_cast<real>(D) * Hm.inverse();
  L.theta_matrix.assign(n - 1, std::vector<i64>(n - 1));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) L.theta_matrix[i][j] = nearest_integer(K(i, j), 1e-6L, "theta matrix entry");
  return L;
}

ArchimedeanPoint archimedean_point(const AlgElem& alpha, const FieldSpec& F) {
  ArchimedeanPoint pt;
  const Embedding e = embed(alpha, F);
  for (real v : e.real_places) pt.real_signs.push_back(v < 0 ? -1 : 1);
  pt.logs = log_vector(alpha, F);
  return pt;
}

ArchimedeanPoint theta_projection(const ArchimedeanPoint& x) {
  ArchimedeanPoint out = x;
  for (auto& s : out.real_signs) s = 1;
  return out;
}

TorusPoint theta_projection(const TorusPoint& t, const LogLattice& L) {
  TorusPoint out;
  for (std::size_t j = 0; j < L.theta_matrix.size(); ++j) {
    long double s = 0;
    for (std::size_t i = 0; i < t.coords.size(); ++i) s += static_cast<long double>(t.coords[i]) * L.theta_matrix[i][j];
    out.coords.push_back(wrap01(s));
  }
  return out;
}

TorusPoint theta_coords(const std::vector<real>& x, const LogLattice& L) {
  TorusPoint t;
  for (real v : dual_pairings(x, L.theta_dual)) t.coords.push_back(wrap01(v));
  return t;
}

AngleMap::AngleMap(FieldSpec F)
    : field_(std::move(F)), units_(UnitGroup::build(field_)), lattice_(build_lattice(field_, units_)) {}

AlgElem AngleMap::positive_representative(const AlgElem& alpha) const {
  if (alpha.is_zero()) throw ZeroElement("zero has no angle");
  if (field_.r1() == 0) return alpha;
  return mul(alpha, units_.sign_fixers[sign_mask(alpha, field_)], field_);
}

std::vector<real> AngleMap::angle_log_vector(const AlgElem& alpha, u64 ideal_norm) const {
  return log_vector(positive_representative(alpha), ideal_norm, field_);
}

TorusPoint AngleMap::rho_of_generator(const AlgElem& alpha, u64 ideal_norm) const {
  return torus_coords(angle_log_vector(alpha, ideal_norm), lattice_);
}

TorusPoint AngleMap::rho(const std::vector<std::pair<GeneratorRec, i64>>& factors) const {
  TorusPoint acc = TorusPoint::zero(dim());
  for (const auto& [g, e] : factors) {
    if (!is_generator(g.alpha, g.ideal, field_)) throw DomainError("element does not generate the ideal", {{"p", std::to_string(g.ideal.p)}});
    acc = acc + scaled(rho_of_generator(g.alpha, g.ideal.norm), e);
  }
  return acc;
}

TorusPoint AngleMap::rho(const std::vector<std::pair<PrimeIdealRec, i64>>& factors) const {
  std::vector<std::pair<GeneratorRec, i64>> gens;
  for (const auto& [p, e] : factors) gens.emplace_back(find_generator(p, field_), e);
  return rho(gens);
}

std::complex<double> grossenchar(const std::vector<i64>& k, const TorusPoint& t) {
  long double s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<long double>(k[i]) * t.coords[i];
  s -= std::floor(s);
  const long double a = -kTwoPi * s;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

std::complex<double> grossenchar_direct(const std::vector<i64>& k, const std::vector<real>& x, const LogLattice& L) {
  const std::vector<real> p = dual_pairings(x, L.dual);
  long double s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<long double>(k[i]) * p[i];
  const long double a = -kTwoPi * s;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

bool GoldenReport::ok(real tol) const {
  return v1_residual <= tol && w1_residual <= tol && w2_residual <= tol && modulus_residual <= tol;
}

GoldenReport cubic_golden_report(const AngleMap& map) {
  const FieldSpec& F = map.field();
  if (F.poly() != std::vector<i64>{-1, -1, 0, 1}) {
    throw UnsupportedField("closed forms are specific to X^3 - X - 1", {{"field", F.name()}});
  }
  GoldenReport g;
  g.theta = F.real_roots().at(0);
  const complex z = F.complex_roots().at(0);
  g.phi = arg0(z) / kTwoPi;
  const real lt = std::log(g.theta);
  g.v1 = map.lattice().basis.at(0);
  g.w1 = map.lattice().dual.at(0);
  g.w2 = map.lattice().dual.at(1);
  const std::vector<real> v1{lt, -lt / 2, kTwoPi * g.phi};
  const std::vector<real> w1{2 / (3 * lt), -2 / (3 * lt), 0};
  const std::vector<real> w2{-2 * g.phi / (3 * lt), 2 * g.phi / (3 * lt), 1 / kTwoPi};
  auto residual = [](const std::vector<real>& a, const std::vector<real>& b) {
    real r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
  };
  g.v1_residual = residual(g.v1, v1);
  g.w1_residual = residual(g.w1, w1);
  g.w2_residual = residual(g.w2, w2);
  g.modulus_residual = std::abs(std::abs(z) - 1 / std::sqrt(g.theta));
  return g;
}

}  // namespace angles
