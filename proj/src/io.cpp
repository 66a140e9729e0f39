#include "angles/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>

#include "angles/error.hpp"
#include "angles/rational.hpp"

namespace angles {

namespace {

std::vector<std::vector<std::string>> read_rows(std::istream& is, const std::string& expected_header_prefix) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind(expected_header_prefix, 0) != 0) {
    throw InputError("unexpected CSV header", {{"header", line}, {"expected", expected_header_prefix}});
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split(line, ','));
  }
  return rows;
}

class PrimeLookup {
 public:
  explicit PrimeLookup(const FieldSpec& F) : F_(F) {}

  PrimeIdealRec find(const std::string& norm, const std::string& p, const std::string& root) {
    const u64 pv = parse_count(p);
    if (!is_prime(pv)) throw InputError("p is not prime", {{"p", p}});
    auto it = cache_.find(pv);
    if (it == cache_.end()) it = cache_.emplace(pv, primes_above(F_, pv)).first;
    for (const auto& rec : it->second) {
      if (rec.root_label() == root) {
        if (std::to_string(rec.norm) != norm) throw InputError("norm does not match the prime", {{"p", p}, {"root", root}});
        return rec;
      }
    }
    throw InputError("no prime ideal with this root", {{"p", p}, {"root", root}});
  }

 private:
  const FieldSpec& F_;
  std::map<u64, std::vector<PrimeIdealRec>> cache_;
};

}  // namespace

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

u64 parse_count(const std::string& text) {
  const Rational r = parse_rational(text);
  if (r < 0 || denominator(r) != 1 || numerator(r) > std::numeric_limits<u64>::max()) {
    throw InputError("expected a nonnegative integer", {{"value", text}});
  }
  return numerator(r).convert_to<u64>();
}

void write_primes_csv(std::ostream& os, const std::vector<PrimeIdealRec>& primes) {
  os << "norm,p,root,deg,ramified\n";
  for (const auto& r : primes) {
    os << r.norm << ',' << r.p << ',' << r.root_label() << ',' << r.res_degree << ',' << (r.ramified ? 1 : 0) << '\n';
  }
}

void write_generators_csv(std::ostream& os, const std::vector<GeneratorRec>& gens) {
  os << "norm,p,root,alpha_coords\n";
  for (const auto& g : gens) {
    std::vector<std::string> c;
    for (i64 v : g.alpha.coords) c.push_back(std::to_string(v));
    os << g.ideal.norm << ',' << g.ideal.p << ',' << g.ideal.root_label() << ',' << join(c, ';') << '\n';
  }
}

void write_angles_csv(std::ostream& os, const std::vector<AngleRecord>& angles, std::size_t dim) {
  os << "norm,p,root";
  for (std::size_t i = 1; i <= dim; ++i) os << ",t" << i;
  os << '\n';
  for (const auto& a : angles) {
    os << a.ideal.norm << ',' << a.ideal.p << ',' << a.ideal.root_label();
    for (double t : a.rho.coords) {
      const std::string v = fixed(t);
      os << ',' << (v == "1.000000000" ? "0.000000000" : v);
    }
    os << '\n';
  }
}

std::vector<PrimeIdealRec> read_primes_csv(std::istream& is, const FieldSpec& F) {
  PrimeLookup lookup(F);
  std::vector<PrimeIdealRec> out;
  for (const auto& row : read_rows(is, "norm,p,root,deg,ramified")) {
    if (row.size() != 5) throw InputError("primes row needs 5 fields", {{"row", join(row, ',')}});
    out.push_back(lookup.find(row[0], row[1], row[2]));
    if (std::to_string(out.back().res_degree) != row[3]) throw InputError("degree does not match the prime", {{"row", join(row, ',')}});
  }
  return out;
}

std::vector<GeneratorRec> read_generators_csv(std::istream& is, const FieldSpec& F) {
  PrimeLookup lookup(F);
  std::vector<GeneratorRec> out;
  for (const auto& row : read_rows(is, "norm,p,root,alpha_coords")) {
    if (row.size() != 4) throw InputError("generators row needs 4 fields", {{"row", join(row, ',')}});
    GeneratorRec g;
    g.ideal = lookup.find(row[0], row[1], row[2]);
    for (const auto& c : split(row[3], ';')) {
      try {
        std::size_t used = 0;
        g.alpha.coords.push_back(std::stoll(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw InputError("bad generator coordinate", {{"value", c}});
      }
    }
    if (static_cast<int>(g.alpha.coords.size()) != F.degree()) throw InputError("generator has the wrong length", {{"row", join(row, ',')}});
    if (!is_generator(g.alpha, g.ideal, F)) throw InputError("element does not generate the ideal", {{"row", join(row, ',')}});
    g.normalized = true;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<AngleRecord> read_angles_csv(std::istream& is, const FieldSpec& F) {
  PrimeLookup lookup(F);
  const std::size_t dim = static_cast<std::size_t>(F.degree() - 1);
  std::vector<AngleRecord> out;
  for (const auto& row : read_rows(is, "norm,p,root,t1")) {
    if (row.size() != 3 + dim) throw InputError("angles row has the wrong width", {{"row", join(row, ',')}});
    AngleRecord a;
    a.ideal = lookup.find(row[0], row[1], row[2]);
    for (std::size_t i = 0; i < dim; ++i) {
      char* end = nullptr;
      const double t = std::strtod(row[3 + i].c_str(), &end);
      if (row[3 + i].empty() || *end != '\0' || !(t >= 0 && t < 1)) throw InputError("torus coordinate outside [0, 1)", {{"value", row[3 + i]}});
      a.rho.coords.push_back(t);
    }
    if (!out.empty() && prime_less(a.ideal, out.back().ideal)) throw InputError("angles are not sorted by norm");
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace angles
