#include "angles/field.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "angles/error.hpp"
#include "angles/poly_fp.hpp"

namespace angles {

namespace {

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit multiplication overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit addition overflow");
  return r;
}

i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("element coordinate leaves int64");
  return static_cast<i64>(v);
}

// Reduce a coefficient vector of any length modulo the monic polynomial.
AlgElem reduce(std::vector<i128> prod, const std::vector<i64>& f) {
  const std::size_t n = f.size() - 1;
  for (std::size_t k = prod.size(); k-- > n;) {
    const i128 c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      prod[k - n + i] = checked_add(prod[k - n + i], -checked_mul(c, f[i]));
    }
  }
  AlgElem out;
  out.coords.resize(n);
  for (std::size_t i = 0; i < n && i < prod.size(); ++i) out.coords[i] = narrow(prod[i]);
  return out;
}

complex horner(const std::vector<i64>& coeffs, complex z) {
  complex acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + static_cast<real>(coeffs[i]);
  return acc;
}

std::vector<complex> polish_roots(const std::vector<i64>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic> companion =
      Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -static_cast<real>(f[i]);
  Eigen::EigenSolver<decltype(companion)> solver(companion, false);
  if (solver.info() != Eigen::Success) throw FieldConfigError("root finding failed");

  std::vector<i64> deriv(n);
  for (int i = 1; i <= n; ++i) deriv[i - 1] = f[i] * i;

  std::vector<complex> roots;
  for (int i = 0; i < n; ++i) {
    complex z = solver.eigenvalues()[i];
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      const complex value = horner(f, z);
      real scale = 0;
      for (int k = 0; k <= n; ++k) scale += std::abs(static_cast<real>(f[k])) * std::pow(std::abs(z), k);
      if (std::abs(value) < 1e-14L * scale) {
        converged = true;
        break;
      }
      const complex slope = horner(deriv, z);
      if (slope == complex(0)) break;
      z -= value / slope;
    }
    if (!converged) throw FieldConfigError("Newton refinement of a root did not converge");
    roots.push_back(z);
  }
  return roots;
}

// Irreducibility over Q: the degrees of any rational factor must be a subset
// sum of the factor degrees modulo every good prime. If no degree in [1, n-1]
// survives the intersection the polynomial is irreducible. Rational roots are
// ruled out directly as well.
void check_irreducible(const std::vector<i64>& f, i128 disc) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n == 1) return;
  if (disc == 0) throw FieldConfigError("defining polynomial is not squarefree");
  std::vector<bool> possible(n, true);
  possible[0] = false;
  for (u64 p : primes_up_to(3000)) {
    if (disc % static_cast<i128>(p) == 0) continue;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (const auto& fac : factor_poly_mod_p(f, p)) {
      const int d = fp::degree(fac.factor);
      for (int s = n; s >= d; --s) sums[s] = sums[s] || sums[s - d];
    }
    bool any = false;
    for (int d = 1; d < n; ++d) {
      possible[d] = possible[d] && sums[d];
      any = any || possible[d];
    }
    if (!any) return;
  }
  throw FieldConfigError("could not certify irreducibility of the defining polynomial");
}

AlgElem unit_inverse(const AlgElem& u, const FieldSpec& F) {
  const auto m = multiplication_matrix(u, F);
  const int n = F.degree();
  const i128 det = bareiss_determinant(m);
  AlgElem inv;
  inv.coords.resize(n);
  // column 0 of adj(M) / det: cofactors of row 0
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<i128>> minor;
    for (int r = 1; r < n; ++r) {
      std::vector<i128> row;
      for (int c = 0; c < n; ++c) {
        if (c != i) row.push_back(m[r][c]);
      }
      minor.push_back(row);
    }
    i128 cof = n == 1 ? 1 : bareiss_determinant(minor);
    if (i % 2 == 1) cof = -cof;
    inv.coords[i] = narrow(cof * det);  // det = ±1, so 1/det = det
  }
  return inv;
}

}  // namespace

bool AlgElem::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](i64 c) { return c == 0; });
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 bareiss_determinant(std::vector<std::vector<i128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  i128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const i128 t = checked_add(checked_mul(m[i][j], m[k][k]), -checked_mul(m[i][k], m[k][j]));
        m[i][j] = t / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

AlgElem add(const AlgElem& a, const AlgElem& b) {
  AlgElem out = a;
  for (std::size_t i = 0; i < b.coords.size(); ++i) {
    if (__builtin_add_overflow(out.coords[i], b.coords[i], &out.coords[i])) {
      throw ArithmeticOverflow("element addition overflow");
    }
  }
  return out;
}

AlgElem neg(const AlgElem& a) {
  AlgElem out = a;
  for (auto& c : out.coords) c = -c;
  return out;
}

AlgElem sub(const AlgElem& a, const AlgElem& b) { return add(a, neg(b)); }

AlgElem mul(const AlgElem& a, const AlgElem& b, const FieldSpec& F) {
  const std::size_t n = static_cast<std::size_t>(F.degree());
  std::vector<i128> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      prod[i + j] = checked_add(prod[i + j], checked_mul(a.coords[i], b.coords[j]));
    }
  }
  return reduce(std::move(prod), F.poly());
}

AlgElem pow(const AlgElem& a, unsigned k, const FieldSpec& F) {
  AlgElem result = F.one();
  AlgElem base = a;
  while (k > 0) {
    if (k & 1u) result = mul(result, base, F);
    k >>= 1;
    if (k > 0) base = mul(base, base, F);
  }
  return result;
}

AlgElem unit_product(const std::vector<i64>& exponents, const FieldSpec& F) {
  AlgElem out = F.one();
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const i64 e = exponents[i];
    if (e == 0) continue;
    const AlgElem& base = e > 0 ? F.units()[i] : F.unit_inverses()[i];
    out = mul(out, pow(base, static_cast<unsigned>(e > 0 ? e : -e), F), F);
  }
  return out;
}

std::vector<std::vector<i128>> multiplication_matrix(const AlgElem& a, const FieldSpec& F) {
  const int n = F.degree();
  std::vector<std::vector<i128>> m(n, std::vector<i128>(n));
  AlgElem column = a;
  const AlgElem theta = F.theta();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[i][j] = column.coords[i];
    if (j + 1 < n) column = mul(column, theta, F);
  }
  return m;
}

i128 norm(const AlgElem& a, const FieldSpec& F) {
  return bareiss_determinant(multiplication_matrix(a, F));
}

Embedding embed(const AlgElem& a, const FieldSpec& F) {
  Embedding out;
  out.real_places.reserve(F.real_roots().size());
  for (real r : F.real_roots()) out.real_places.push_back(horner(a.coords, complex(r, 0)).real());
  out.complex_places.reserve(F.complex_roots().size());
  for (const complex& z : F.complex_roots()) out.complex_places.push_back(horner(a.coords, z));
  return out;
}

i128 poly_discriminant(const std::vector<i64>& poly) {
  // disc(f) = (-1)^(n(n-1)/2) Res(f, f') and Res(f, g) = det of the
  // multiplication-by-g(θ) matrix when f is monic.
  const std::size_t n = poly.size() - 1;
  std::vector<i128> deriv(2 * n - 1, 0);
  for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = static_cast<i128>(poly[i]) * static_cast<i128>(i);
  std::vector<std::vector<i128>> m(n, std::vector<i128>(n));
  std::vector<i128> column(deriv.begin(), deriv.begin() + n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = column[i];
    // multiply column by θ
    std::vector<i128> shifted(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) shifted[i + 1] = column[i];
    const i128 top = shifted[n];
    for (std::size_t i = 0; i < n; ++i) shifted[i] = checked_add(shifted[i], -checked_mul(top, poly[i]));
    column.assign(shifted.begin(), shifted.begin() + n);
  }
  const i128 res = bareiss_determinant(m);
  return ((n * (n - 1) / 2) % 2 == 1) ? -res : res;
}

AlgElem FieldSpec::one() const { return from_integer(1); }

AlgElem FieldSpec::theta() const {
  AlgElem out;
  out.coords.assign(degree(), 0);
  if (degree() > 1) {
    out.coords[1] = 1;
  } else {
    out.coords[0] = -poly_[0];
  }
  return out;
}

AlgElem FieldSpec::from_integer(i64 v) const {
  AlgElem out;
  out.coords.assign(degree(), 0);
  out.coords[0] = v;
  return out;
}

AlgElem FieldSpec::element(std::vector<i64> coords) const {
  if (coords.size() > static_cast<std::size_t>(degree())) {
    throw FieldConfigError("element has more coordinates than the field degree");
  }
  coords.resize(degree(), 0);
  return AlgElem{std::move(coords)};
}

FieldSpec FieldSpec::create(const FieldConfig& cfg) {
  FieldSpec F;
  F.config_ = cfg;
  F.name_ = cfg.name;
  F.poly_ = cfg.poly;
  F.class_number_one_ = cfg.class_number_one;
  if (F.poly_.size() < 2) throw FieldConfigError("defining polynomial must have degree >= 1");
  if (F.poly_.back() != 1) throw FieldConfigError("defining polynomial must be monic");
  const int n = F.degree();

  F.discriminant_ = poly_discriminant(F.poly_);
  check_irreducible(F.poly_, F.discriminant_);

  for (const complex& z : polish_roots(F.poly_)) {
    const real tol = 1e-9L * std::max<real>(1, std::abs(z));
    if (std::abs(z.imag()) <= tol) {
      F.real_roots_.push_back(z.real());
    } else if (z.imag() > 0) {
      F.complex_roots_.push_back(z);
    }
  }
  std::sort(F.real_roots_.begin(), F.real_roots_.end());
  std::sort(F.complex_roots_.begin(), F.complex_roots_.end(), [](const complex& a, const complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  if (F.r1() + 2 * F.r2() != n) throw FieldConfigError("root classification does not give r1 + 2 r2 = n");

  if (static_cast<int>(cfg.units.size()) != F.unit_rank()) {
    throw FieldConfigError("expected r1 + r2 - 1 fundamental units",
                           {{"expected", std::to_string(F.unit_rank())},
                            {"given", std::to_string(cfg.units.size())}});
  }
  for (const auto& coords : cfg.units) {
    AlgElem u = F.element(coords);
    const i128 N = norm(u, F);
    if (N != 1 && N != -1) {
      throw FieldConfigError("configured unit does not have norm +-1", {{"norm", to_string(N)}});
    }
    F.units_.push_back(u);
  }
  for (const auto& u : F.units_) {
    AlgElem inv = unit_inverse(u, F);
    if (mul(u, inv, F) != F.one()) throw FieldConfigError("unit inverse check failed");
    F.unit_inverses_.push_back(std::move(inv));
  }

  F.roots_of_unity_ = cfg.roots_of_unity;
  if (F.roots_of_unity_ < 2 || F.roots_of_unity_ % 2 != 0) {
    throw FieldConfigError("number of roots of unity must be even and >= 2");
  }
  if (F.r1() > 0 && F.roots_of_unity_ != 2) {
    throw FieldConfigError("a field with a real place has only +-1 as roots of unity");
  }
  F.torsion_generator_ = cfg.torsion_generator.empty() ? F.from_integer(-1) : F.element(cfg.torsion_generator);
  const unsigned w = static_cast<unsigned>(F.roots_of_unity_);
  if (pow(F.torsion_generator_, w, F) != F.one()) {
    throw FieldConfigError("torsion generator is not a w-th root of unity");
  }
  for (u64 l = 2; l <= w; ++l) {
    if (w % l == 0 && is_prime(l) && pow(F.torsion_generator_, static_cast<unsigned>(w / l), F) == F.one()) {
      throw FieldConfigError("torsion generator is not primitive");
    }
  }
  return F;
}

FieldConfig parse_field_config(const std::string& json_text) {
  FieldConfig cfg;
  try {
    const auto j = nlohmann::json::parse(json_text);
    cfg.name = j.value("name", std::string("unnamed"));
    cfg.poly = j.at("poly").get<std::vector<i64>>();
    if (j.contains("units")) cfg.units = j.at("units").get<std::vector<std::vector<i64>>>();
    cfg.roots_of_unity = j.value("roots_of_unity", 2);
    if (j.contains("torsion_generator")) cfg.torsion_generator = j.at("torsion_generator").get<std::vector<i64>>();
    cfg.class_number_one = j.value("class_number_one", true);
  } catch (const nlohmann::json::exception& e) {
    throw FieldConfigError(std::string("malformed field config: ") + e.what());
  }
  return cfg;
}

FieldConfig load_field_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FieldConfigError("cannot open field config", {{"path", path.string()}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_field_config(buffer.str());
}

}  // namespace angles
