#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "angles/cocycle.hpp"
#include "angles/error.hpp"
#include "angles/function_field.hpp"
#include "angles/ratio_pairs.hpp"

namespace py = pybind11;
using namespace angles;

namespace {

py::dict prime_dict(const PrimeIdealRec& r) {
  py::dict d;
  d["norm"] = r.norm;
  d["p"] = r.p;
  d["root"] = r.root_label();
  d["deg"] = r.res_degree;
  d["ramified"] = r.ramified;
  return d;
}

PrimeIdealRec find_prime(const FieldSpec& F, u64 p, const std::string& root) {
  for (const auto& r : primes_above(F, p))
    if (r.root_label() == root) return r;
  throw InputError("no prime ideal with this root", {{"p", std::to_string(p)}, {"root", root}});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized angles of prime ideals";

  // AnglesError(code, message, context)
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "AnglesError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::dict ctx;
      for (const auto& [k, v] : e.context()) ctx[py::str(k)] = v;
      const py::object& type = error.get_stored();
      PyErr_SetObject(type.ptr(), type(e.code(), e.what(), ctx).ptr());
    }
  });

  py::class_<AngleMap>(m, "Field")
      .def(py::init([](const std::string& path) { return AngleMap(load_field(path)); }), py::arg("path"))
      .def_property_readonly("name", [](const AngleMap& a) { return a.field().name(); })
      .def_property_readonly("degree", [](const AngleMap& a) { return a.field().degree(); })
      .def_property_readonly("signature", [](const AngleMap& a) { return py::make_tuple(a.field().r1(), a.field().r2()); })
      .def_property_readonly("discriminant", [](const AngleMap& a) { return std::stoll(to_string(a.field().discriminant())); })
      .def_property_readonly("dim", &AngleMap::dim)
      .def("norm", [](const AngleMap& a, std::vector<i64> c) { return std::stoll(to_string(norm(a.field().element(std::move(c)), a.field()))); },
           py::arg("alpha"))
      .def("mul",
           [](const AngleMap& a, std::vector<i64> x, std::vector<i64> y) {
             return mul(a.field().element(std::move(x)), a.field().element(std::move(y)), a.field()).coords;
           })
      .def("embed",
           [](const AngleMap& a, std::vector<i64> c) {
             const Embedding e = embed(a.field().element(std::move(c)), a.field());
             std::vector<double> re;
             std::vector<std::complex<double>> cx;
             for (real v : e.real_places) re.push_back(static_cast<double>(v));
             for (const auto& z : e.complex_places) cx.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
             return py::make_tuple(re, cx);
           })
      .def("prime_ideals",
           [](const AngleMap& a, u64 max_norm, unsigned workers) {
             py::list out;
             for (const auto& r : enumerate_prime_ideals(a.field(), max_norm, workers)) out.append(prime_dict(r));
             return out;
           },
           py::arg("max_norm"), py::arg("workers") = 1)
      .def("generator",
           [](const AngleMap& a, u64 p, const std::string& root) {
             const auto g = normalize_generator(find_generator(find_prime(a.field(), p, root), a.field()), a.field(), a.units());
             return g.alpha.coords;
           },
           py::arg("p"), py::arg("root"))
      .def("rho",
           [](const AngleMap& a, std::vector<i64> alpha, u64 norm) {
             return a.rho_of_generator(a.field().element(std::move(alpha)), norm).coords;
           },
           py::arg("alpha"), py::arg("norm"))
      .def("angles",
           [](const AngleMap& a, u64 max_norm, unsigned workers) {
             std::vector<u64> norms;
             std::vector<std::vector<double>> pts;
             for (const auto& r : compute_angles(a, max_norm, workers)) {
               norms.push_back(r.ideal.norm);
               pts.push_back(r.rho.coords);
             }
             return py::make_tuple(norms, pts);
           },
           py::arg("max_norm"), py::arg("workers") = 1)
      .def("weyl",
           [](const AngleMap& a, std::vector<i64> k, std::vector<u64> checkpoints, unsigned workers) {
             const u64 X = checkpoints.empty() ? 0 : *std::max_element(checkpoints.begin(), checkpoints.end());
             const auto angles = compute_angles(a, X, workers);
             py::list out;
             for (const auto& c : weyl_sum(k, angles, checkpoints, workers).checkpoints)
               out.append(py::make_tuple(c.x, c.count, c.sum, c.normalized));
             return out;
           },
           py::arg("k"), py::arg("checkpoints"), py::arg("workers") = 1)
      .def("golden",
           [](const AngleMap& a) {
             const GoldenReport g = cubic_golden_report(a);
             py::dict d;
             d["theta"] = static_cast<double>(g.theta);
             d["phi"] = static_cast<double>(g.phi);
             d["v1_residual"] = static_cast<double>(g.v1_residual);
             d["w1_residual"] = static_cast<double>(g.w1_residual);
             d["w2_residual"] = static_cast<double>(g.w2_residual);
             d["ok"] = g.ok();
             return d;
           });

  m.def("log_integral", &log_integral, py::arg("x"));

  m.def("irreducible_count", [](std::uint32_t q, int n) { return IrreducibleTable(Fq(q), n).count(n); }, py::arg("q"),
        py::arg("n"));
  m.def("necklace_count", &necklace_count, py::arg("q"), py::arg("n"));
  m.def("irreducibles", &irreducibles, py::arg("q"), py::arg("n"));
  m.def("class_counts",
        [](std::uint32_t q, const PolyFq& modulus, int n_max) {
          const auto rep = class_counts(q, modulus, n_max);
          py::dict d;
          d["phi"] = rep.phi;
          d["classes"] = rep.classes;
          py::list rows;
          for (const auto& r : rep.rows) {
            py::dict row;
            row["n"] = r.n;
            row["counts"] = r.counts;
            row["ramified"] = r.ramified;
            row["total"] = r.total;
            row["normalized"] = r.normalized;
            rows.append(row);
          }
          d["rows"] = rows;
          d["sums_ok"] = rep.sums_ok();
          d["max_normalized"] = rep.max_normalized();
          return d;
        },
        py::arg("q"), py::arg("modulus"), py::arg("n_max"));

  m.def("rn_cocycle",
        [](const std::vector<u64>& norms, const std::vector<int>& x, const std::vector<int>& y) {
          std::vector<CoordSpec> coords;
          for (u64 n : norms) coords.push_back({std::to_string(n), n, 8, TorusPoint::zero(1)});
          const ProductSpace S(std::move(coords));
          TailPoint a, b;
          for (std::size_t i = 0; i < x.size(); ++i) a.set(i, x[i]);
          for (std::size_t i = 0; i < y.size(); ++i) b.set(i, y[i]);
          const Rational r = rn_cocycle(a, b, S);
          return py::make_tuple(py::int_(py::str(numerator(r).str())), py::int_(py::str(denominator(r).str())));
        },
        py::arg("norms"), py::arg("x"), py::arg("y"),
        "c_mu(x, y) as (numerator, denominator); coordinates must stay below 8");
}
