// Command-line front end: one subcommand per pipeline stage, CSV between
// stages, and a <out>.manifest.json next to every artifact.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "angles/cocycle.hpp"
#include "angles/error.hpp"
#include "angles/function_field.hpp"
#include "angles/io.hpp"
#include "angles/ratio_pairs.hpp"

#ifndef ANGLES_VERSION
#define ANGLES_VERSION "0.0.0"
#endif

namespace {

using namespace angles;
using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file", {{"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file", {{"path", path}});
  return in;
}

std::vector<i64> parse_ints(const std::string& text) {
  std::vector<i64> out;
  for (const auto& s : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated integer list", {{"value", text}});
    }
  }
  return out;
}

std::vector<u64> parse_counts(const std::string& text) {
  std::vector<u64> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_count(s));
  return out;
}

TorusPoint parse_point(const std::string& text, std::size_t dim) {
  TorusPoint t;
  for (const auto& s : split(text, ',')) {
    const double v = to_double(parse_rational(s));
    if (!(v >= 0 && v < 1)) throw InputError("torus coordinates lie in [0, 1)", {{"value", text}});
    t.coords.push_back(v);
  }
  if (t.dim() != dim) throw InputError("point has the wrong dimension", {{"value", text}, {"dim", std::to_string(dim)}});
  return t;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string box_field(const std::vector<double>& v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(num(x));
  return join(parts, ';');
}

// Collects outputs so the manifest can record their checksums.
struct Run {
  std::string subcommand;
  std::vector<std::string> argv;
  std::string out = "-";
  std::string field_path;
  std::string field_sha;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  bool has_seed = false;
  json params = json::object();
  json summary = json::object();
  json outputs = json::object();

  void emit(const std::string& path, const std::string& content) {
    if (path == "-") {
      std::cout << content;
      std::cout.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write file", {{"path", path}});
    f << content;
    if (!f) throw InputError("write failed", {{"path", path}});
    outputs[path] = sha256_hex(content);
  }

  void write_manifest() const {
    if (out == "-") return;
    json m;
    m["subcommand"] = subcommand;
    m["argv"] = argv;
    m["params"] = params;
    m["field"] = field_path;
    m["field_sha256"] = field_sha;
    if (has_seed) {
      m["seed"] = seed;
    } else {
      m["seed"] = nullptr;
    }
    m["tool_version"] = ANGLES_VERSION;
    m["summary"] = summary;
    m["outputs"] = outputs;
    std::ofstream f(out + ".manifest.json", std::ios::binary);
    if (!f) throw InputError("cannot write manifest", {{"path", out + ".manifest.json"}});
    f << m.dump(2) << '\n';
  }

  FieldSpec field() {
    if (field_path.empty()) throw InputError("--field is required");
    field_sha = sha256_hex(read_file(field_path));
    return load_field(field_path);
  }
};

void record_params(Run& run, CLI::App* sub) {
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    while (!name.empty() && name[0] == '-') name.erase(0, 1);
    const auto& res = opt->results();
    if (res.size() == 1) {
      run.params[name] = res[0];
    } else {
      run.params[name] = res;
    }
  }
}

std::vector<AngleRecord> load_or_compute_angles(Run& run, const AngleMap& map, const std::string& angles_path,
                                                u64 max_norm) {
  if (!angles_path.empty()) {
    auto in = open_in(angles_path);
    return read_angles_csv(in, map.field());
  }
  if (max_norm == 0) throw InputError("need --max-norm or --angles");
  return compute_angles(map, max_norm, run.workers);
}

int cmd_primes(Run& run, const std::string& max_norm) {
  const FieldSpec F = run.field();
  const auto primes = enumerate_prime_ideals(F, parse_count(max_norm), run.workers);
  std::ostringstream os;
  write_primes_csv(os, primes);
  run.summary["count"] = primes.size();
  run.emit(run.out, os.str());
  return 0;
}

int cmd_generators(Run& run, const std::string& max_norm, const std::string& primes_path) {
  const FieldSpec F = run.field();
  std::vector<PrimeIdealRec> ideals;
  if (!primes_path.empty()) {
    auto in = open_in(primes_path);
    ideals = read_primes_csv(in, F);
  } else {
    if (max_norm.empty()) throw InputError("need --max-norm or --primes");
    ideals = enumerate_prime_ideals(F, parse_count(max_norm), run.workers);
  }
  const auto gens = find_generators(ideals, F, UnitGroup::build(F), run.workers);
  std::ostringstream os;
  write_generators_csv(os, gens);
  run.summary["count"] = gens.size();
  run.emit(run.out, os.str());
  return 0;
}

int cmd_angles(Run& run, const std::string& max_norm, const std::string& gens_path) {
  const AngleMap map(run.field());
  std::vector<AngleRecord> angles;
  if (!gens_path.empty()) {
    auto in = open_in(gens_path);
    angles = compute_angles(map, read_generators_csv(in, map.field()));
  } else {
    if (max_norm.empty()) throw InputError("need --max-norm or --generators");
    angles = compute_angles(map, parse_count(max_norm), run.workers);
  }
  std::ostringstream os;
  write_angles_csv(os, angles, map.dim());
  run.summary["count"] = angles.size();
  run.emit(run.out, os.str());
  return 0;
}

int cmd_weyl(Run& run, const std::string& max_norm, const std::string& angles_path, const std::vector<std::string>& ks,
             const std::string& checkpoints) {
  const AngleMap map(run.field());
  std::vector<u64> cps;
  u64 X = max_norm.empty() ? 0 : parse_count(max_norm);
  if (!checkpoints.empty()) {
    cps = parse_counts(checkpoints);
  } else {
    for (u64 c = 10000; c <= std::max<u64>(X, 10000) && c <= 1000000; c *= 10) cps.push_back(c);
    if (X && std::find(cps.begin(), cps.end(), X) == cps.end()) cps.push_back(X);
  }
  if (X == 0 && angles_path.empty()) X = *std::max_element(cps.begin(), cps.end());
  const auto angles = load_or_compute_angles(run, map, angles_path, X);
  std::ostringstream os;
  os << "k,x,count,re,im,normalized\n";
  json reps = json::array();
  for (const auto& kt : ks.empty() ? std::vector<std::string>{"1,0"} : ks) {
    const auto k = parse_ints(kt);
    if (k.size() != map.dim()) throw InputError("character index has the wrong length", {{"k", kt}});
    const auto rep = weyl_sum(k, angles, cps, run.workers);
    std::vector<std::string> kparts;
    for (i64 v : k) kparts.push_back(std::to_string(v));
    for (const auto& c : rep.checkpoints) {
      os << join(kparts, ';') << ',' << c.x << ',' << c.count << ',' << num(c.sum.real()) << ',' << num(c.sum.imag())
         << ',' << num(c.normalized) << '\n';
    }
  }
  run.emit(run.out, os.str());
  return 0;
}

int cmd_boxes(Run& run, const std::string& max_norm, const std::string& angles_path, unsigned grid,
              const std::string& box_text, const std::string& at) {
  const AngleMap map(run.field());
  std::vector<u64> xs = at.empty() ? std::vector<u64>{} : parse_counts(at);
  u64 X = max_norm.empty() ? 0 : parse_count(max_norm);
  if (xs.empty()) {
    if (X == 0) throw InputError("need --max-norm or --at");
    xs.push_back(X);
  }
  if (X == 0) X = *std::max_element(xs.begin(), xs.end());
  const auto angles = load_or_compute_angles(run, map, angles_path, X);
  std::vector<BoxSpec> boxes;
  if (!box_text.empty()) {
    boxes.push_back(BoxSpec::parse(box_text, map.dim()));
  } else {
    boxes = grid_boxes(map.dim(), grid);
  }
  std::ostringstream os;
  os << "x,cell,lo,hi,count,total,expected,expected_li,expected_xlog,frequency,deviation\n";
  double worst = 0;
  for (u64 x : xs) {
    std::vector<BoxCount> counts;
    if (box_text.empty()) {
      counts = grid_counts(map.dim(), grid, angles, x);
    } else {
      counts.push_back(box_count(boxes.front(), angles, x));
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const auto& b = counts[c];
      os << x << ',' << c << ',' << box_field(b.box.lo) << ',' << box_field(b.box.hi) << ',' << b.count << ','
         << b.total << ',' << num(b.expected) << ',' << num(b.expected_li) << ',' << num(b.expected_xlog) << ','
         << num(b.frequency()) << ',' << num(b.deviation) << '\n';
      worst = std::max(worst, std::abs(b.frequency() - b.box.measure()));
    }
  }
  run.summary["max_abs_frequency_deviation"] = worst;
  run.emit(run.out, os.str());
  return 0;
}

int cmd_window(Run& run, const std::string& angles_path, const std::string& box_text, const std::string& delta_text,
               const std::string& x_text) {
  const AngleMap map(run.field());
  const Rational delta = parse_rational(delta_text), x = parse_rational(x_text);
  if (delta <= 0 || x <= 1) throw InputError("need --delta > 0 and --x > 1");
  const Rational top = (1 + delta) * x;
  const u64 X = (numerator(top) / denominator(top)).convert_to<u64>();
  const auto angles = load_or_compute_angles(run, map, angles_path, X);
  const BoxSpec box = box_text.empty() ? BoxSpec::full(map.dim()) : BoxSpec::parse(box_text, map.dim());
  const auto w = window_count(box, delta, x, angles);
  std::ostringstream os;
  os << "x,delta,lo,hi,count,predicted,predicted_li\n";
  os << to_string(x) << ',' << to_string(delta) << ',' << box_field(box.lo) << ',' << box_field(box.hi) << ',' << w.count
     << ',' << num(w.predicted) << ',' << num(w.predicted_li) << '\n';
  run.emit(run.out, os.str());
  return 0;
}

int cmd_ratioset(Run& run, const std::string& max_norm, const std::string& angles_path, const std::string& x0,
                 const std::string& y0, const std::string& eps, const std::string& delta, const std::string& box) {
  const AngleMap map(run.field());
  RatioParams P;
  P.x0 = parse_rational(x0);
  P.y0 = parse_point(y0, map.dim());
  P.eps = parse_rational(eps);
  P.delta = parse_rational(delta);
  P.V = BoxSpec::parse(box, map.dim());
  P.max_norm = parse_count(max_norm);
  validate(P, map.dim());
  const auto angles = load_or_compute_angles(run, map, angles_path, P.max_norm);
  const PairWitness w = build_pairs(P, angles);
  const WitnessCheck check = verify_witness(w);

  std::ostringstream os;
  os << "n,k,p_norm,p_p,p_root,q_norm,q_p,q_root,ratio";
  for (std::size_t i = 1; i <= map.dim(); ++i) os << ",p_t" << i;
  for (std::size_t i = 1; i <= map.dim(); ++i) os << ",q_t" << i;
  os << '\n';
  for (const auto& pr : w.pairs) {
    os << pr.n << ',' << pr.k << ',' << pr.p.ideal.norm << ',' << pr.p.ideal.p << ',' << pr.p.ideal.root_label() << ','
       << pr.q.ideal.norm << ',' << pr.q.ideal.p << ',' << pr.q.ideal.root_label() << ','
       << fixed(static_cast<double>(pr.q.ideal.norm) / static_cast<double>(pr.p.ideal.norm));
    for (double t : pr.p.rho.coords) os << ',' << fixed(t);
    for (double t : pr.q.rho.coords) os << ',' << fixed(t);
    os << '\n';
  }
  run.emit(run.out, os.str());

  std::ostringstream bs;
  bs << "n,lower,size,expected,relative_error\n";
  for (const auto& b : w.blocks) {
    bs << b.n << ',' << num(b.lower) << ',' << b.size << ',' << num(b.expected) << ',' << num(b.relative_error()) << '\n';
  }
  if (run.out != "-") run.emit(run.out + ".blocks.csv", bs.str());

  run.summary["K"] = w.K;
  run.summary["k0"] = w.k0;
  run.summary["empty"] = w.empty;
  run.summary["pairs"] = w.pairs.size();
  run.summary["ratio_ok"] = check.ratio_ok;
  run.summary["angle_ok"] = check.angle_ok;
  run.summary["aligned"] = check.aligned;
  run.summary["harmonic_sum"] = w.harmonic_sum.empty() ? 0.0 : w.harmonic_sum.back();
  run.summary["harmonic_bound"] = w.harmonic_bound;
  run.summary["harmonic_exact"] = w.harmonic_exact;
  run.summary["s"] = w.pairs.empty() ? "" : to_string(w.ratio_min);
  run.summary["t"] = w.pairs.empty() ? "" : to_string(w.ratio_max);
  return check.all_ok() ? 0 : 1;
}

int cmd_cocycle(Run& run, const std::string& pairs_path, const std::string& samples, std::uint64_t seed, int level) {
  const AngleMap map(run.field());
  run.seed = seed;
  run.has_seed = true;
  const json pm = json::parse(read_file(pairs_path + ".manifest.json"));
  if (pm.value("subcommand", "") != "ratioset") throw InputError("pairs manifest is not from ratioset");
  const auto& pp = pm.at("params");
  const TorusPoint y0 = parse_point(pp.at("y0").get<std::string>(), map.dim());
  const BoxSpec V = BoxSpec::parse(pp.at("box").get<std::string>(), map.dim());

  // rebuild the witness pairs, recomputing every angle from the field
  auto in = open_in(pairs_path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("n,k,p_norm,p_p,p_root,q_norm,q_p,q_root,ratio", 0) != 0) throw InputError("not a pairs CSV");
  PairWitness w;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9 + 2 * map.dim()) throw InputError("pairs row has the wrong width", {{"row", line}});
    PairRec pr;
    pr.n = parse_count(f[0]);
    pr.k = static_cast<int>(parse_count(f[1]));
    for (int side = 0; side < 2; ++side) {
      const u64 p = parse_count(f[3 + 3 * side]);
      AngleRecord& rec = side == 0 ? pr.p : pr.q;
      bool found = false;
      for (const auto& cand : primes_above(map.field(), p)) {
        if (cand.root_label() == f[4 + 3 * side] && std::to_string(cand.norm) == f[2 + 3 * side]) {
          rec.ideal = cand;
          found = true;
        }
      }
      if (!found) throw InputError("pairs row names no prime ideal", {{"row", line}});
      const GeneratorRec g = find_generator(rec.ideal, map.field());
      rec.alpha = g.alpha;
      rec.rho = map.rho_of_generator(g.alpha, rec.ideal.norm);
      for (std::size_t i = 0; i < map.dim(); ++i) {
        const double stored = std::strtod(f[9 + side * map.dim() + i].c_str(), nullptr);
        if (std::abs(stored - rec.rho.coords[i]) > 1e-9 && std::abs(std::abs(stored - rec.rho.coords[i]) - 1) > 1e-9) {
          throw InputError("stored angle disagrees with the field", {{"row", line}});
        }
      }
    }
    const Rational ratio(BigInt(pr.q.ideal.norm), BigInt(pr.p.ideal.norm));
    if (first || ratio < w.ratio_min) w.ratio_min = ratio;
    if (first || ratio > w.ratio_max) w.ratio_max = ratio;
    first = false;
    w.pairs.push_back(std::move(pr));
  }

  const ProductSpace S = witness_space(w, level);
  const PartialMap T = build_T(witness_blocks(w), S);
  const auto points = sample(S, seed, parse_count(samples), run.workers);
  const auto rep = transport_check(T, S, points);
  const auto win = window_check(T, S, points, w.ratio_min, w.ratio_max, y0, V);

  std::ostringstream os;
  os << "block,hits,weighted,predicted,std_error,z\n";
  for (const auto& r : rep.rows) {
    os << r.block << ',' << r.hits << ',' << num(r.weighted) << ',' << num(r.predicted) << ',' << num(r.std_error) << ','
       << num(r.z) << '\n';
  }
  os << "all," << rep.total.hits << ',' << num(rep.total.weighted) << ',' << num(rep.total.predicted) << ','
     << num(rep.total.std_error) << ',' << num(rep.total.z) << '\n';
  run.emit(run.out, os.str());
  run.summary["samples"] = rep.samples;
  run.summary["in_domain"] = rep.in_domain;
  run.summary["in_window"] = win.in_window;
  run.summary["s"] = w.pairs.empty() ? "" : to_string(w.ratio_min);
  run.summary["t"] = w.pairs.empty() ? "" : to_string(w.ratio_max);
  run.summary["max_abs_z"] = rep.max_abs_z();
  return win.in_window == win.in_domain ? 0 : 1;
}

int cmd_ffcount(Run& run, std::uint32_t q, const std::string& modulus, int max_deg, std::uint32_t const_ext) {
  const IrreducibleTable table(Fq(q), max_deg, run.workers);
  std::ostringstream os;
  if (const_ext > 0) {
    const auto rep = nongeometric_image(table, const_ext);
    os << "n,g,in_gamma,count,predicted,normalized\n";
    for (const auto& c : rep.cells) {
      os << c.n << ',' << c.g << ',' << (c.in_gamma ? 1 : 0) << ',' << c.count << ',' << num(c.predicted) << ','
         << num(c.normalized) << '\n';
    }
    run.summary["outside_gamma"] = rep.outside_gamma();
    run.summary["max_normalized_inside"] = rep.max_normalized_inside();
  } else {
    PolyFq m;
    for (i64 c : parse_ints(modulus)) {
      if (c < 0 || c >= static_cast<i64>(q)) throw InputError("modulus coefficient outside F_q", {{"value", std::to_string(c)}});
      m.push_back(static_cast<std::uint32_t>(c));
    }
    const auto rep = class_counts(table, m);
    os << "n,class,count,predicted,residual,normalized\n";
    for (const auto& row : rep.rows) {
      for (std::size_t c = 0; c < rep.classes.size(); ++c) {
        std::vector<std::string> coeffs;
        for (auto v : rep.classes[c]) coeffs.push_back(std::to_string(v));
        os << row.n << ',' << (coeffs.empty() ? "0" : join(coeffs, ';')) << ',' << row.counts[c] << ','
           << num(row.predicted) << ',' << num(row.residual[c]) << ',' << num(row.normalized[c]) << '\n';
      }
      os << row.n << ",ramified," << row.ramified << ",,,\n";
    }
    run.summary["phi"] = rep.phi;
    run.summary["row_sums_ok"] = rep.sums_ok();
    run.summary["max_normalized"] = rep.max_normalized();
  }
  run.emit(run.out, os.str());
  return 0;
}

int cmd_verify_golden(Run& run) {
  const AngleMap map(run.field());
  const GoldenReport g = cubic_golden_report(map);
  json j;
  j["theta"] = static_cast<double>(g.theta);
  j["phi"] = static_cast<double>(g.phi);
  j["v1_residual"] = static_cast<double>(g.v1_residual);
  j["w1_residual"] = static_cast<double>(g.w1_residual);
  j["w2_residual"] = static_cast<double>(g.w2_residual);
  j["modulus_residual"] = static_cast<double>(g.modulus_residual);
  const bool theta_ok = std::abs(static_cast<double>(g.theta) - 1.3247) < 5e-5;
  j["ok"] = g.ok() && theta_ok;
  run.summary = j;
  run.emit(run.out, j.dump(2) + "\n");
  if (!(g.ok() && theta_ok)) {
    json err{{"code", "GoldenMismatch"}, {"message", "computed constants differ from the closed forms"}, {"context", j}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}

int dispatch(const std::vector<std::string>& args);

int cmd_replay(const std::string& manifest_path, unsigned workers_override) {
  const json m = json::parse(read_file(manifest_path));
  std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
  if (workers_override > 0) {
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
      if (argv[i] == "--workers") argv.erase(argv.begin() + i, argv.begin() + i + 2);
    }
    argv.insert(argv.begin(), {"--workers", std::to_string(workers_override)});
  }
  const int rc = dispatch(argv);
  if (rc != 0) return rc;
  for (const auto& [path, sum] : m.at("outputs").items()) {
    const std::string now = sha256_hex(read_file(path));
    if (now != sum.get<std::string>()) {
      json err{{"code", "ReplayMismatch"}, {"message", "output differs from the manifest"}, {"context", {{"path", path}}}};
      std::cerr << err.dump() << '\n';
      return 1;
    }
  }
  return 0;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Generalized angles of prime ideals: enumeration, statistics and cocycle checks", "angles"};
  app.set_version_flag("--version", ANGLES_VERSION);
  app.require_subcommand(1);
  Run run;
  run.argv = args;
  app.add_option("--workers", run.workers, "worker threads (outputs do not depend on it)")->check(CLI::Range(1u, 256u));

  auto add_common = [&](CLI::App* sub, bool needs_field = true) {
    if (needs_field) sub->add_option("--field", run.field_path, "field config JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", run.out, "output path, - for stdout")->capture_default_str();
  };

  std::string max_norm, primes_path, gens_path, angles_path, checkpoints, box, at, delta, x, x0, y0, eps, pairs, samples = "1e5",
                                                                                                  modulus = "1", manifest;
  std::vector<std::string> ks;
  unsigned grid = 4, replay_workers = 0;
  std::uint64_t seed = 42;
  int level = 8, max_deg = 14;
  std::uint32_t q = 2, const_ext = 0;

  auto* primes = app.add_subcommand("primes", "prime ideals of norm <= X");
  add_common(primes);
  primes->add_option("--max-norm", max_norm, "X")->required();

  auto* gens = app.add_subcommand("generators", "normalized generators of the prime ideals");
  add_common(gens);
  gens->add_option("--max-norm", max_norm, "X");
  gens->add_option("--primes", primes_path, "primes CSV from the primes stage")->check(CLI::ExistingFile);

  auto* angles = app.add_subcommand("angles", "torus coordinates of the prime ideals");
  add_common(angles);
  angles->add_option("--max-norm", max_norm, "X");
  angles->add_option("--generators", gens_path, "generators CSV")->check(CLI::ExistingFile);

  auto* weyl = app.add_subcommand("weyl", "Weyl sums of Grössencharacters");
  add_common(weyl);
  weyl->add_option("--max-norm", max_norm, "X");
  weyl->add_option("--angles", angles_path, "angles CSV")->check(CLI::ExistingFile);
  weyl->add_option("--k", ks, "character index, e.g. 1,0 (repeatable)");
  weyl->add_option("--checkpoints", checkpoints, "comma-separated X values");

  auto* boxes = app.add_subcommand("boxes", "box counts against Haar measure");
  add_common(boxes);
  boxes->add_option("--max-norm", max_norm, "X");
  boxes->add_option("--angles", angles_path, "angles CSV")->check(CLI::ExistingFile);
  boxes->add_option("--grid", grid, "g for the g^(n-1) grid")->check(CLI::Range(1u, 1000u));
  boxes->add_option("--box", box, "single box lo1,lo2:hi1,hi2");
  boxes->add_option("--at", at, "comma-separated X values");

  auto* window = app.add_subcommand("window", "primes with x < N <= (1+delta)x in a box");
  add_common(window);
  window->add_option("--angles", angles_path, "angles CSV")->check(CLI::ExistingFile);
  window->add_option("--box", box, "lo1,lo2:hi1,hi2 (default: whole torus)");
  window->add_option("--delta", delta, "delta")->required();
  window->add_option("--x", x, "x")->required();

  auto* ratioset = app.add_subcommand("ratioset", "paired primes witnessing (x0, y0) in the ratio set");
  add_common(ratioset);
  ratioset->add_option("--max-norm", max_norm, "X_max")->required();
  ratioset->add_option("--angles", angles_path, "angles CSV")->check(CLI::ExistingFile);
  ratioset->add_option("--x0", x0, "x0 > 1")->required();
  ratioset->add_option("--y0", y0, "torus point")->required();
  ratioset->add_option("--eps", eps, "epsilon")->required();
  ratioset->add_option("--delta", delta, "delta")->required();
  ratioset->add_option("--box", box, "V as lo1,lo2:hi1,hi2")->required();

  auto* cocycle = app.add_subcommand("cocycle-sim", "Monte Carlo checks of the T-map built from a pairs CSV");
  add_common(cocycle);
  cocycle->add_option("--pairs", pairs, "pairs CSV from ratioset")->required()->check(CLI::ExistingFile);
  cocycle->add_option("--samples", samples, "sample count")->capture_default_str();
  cocycle->add_option("--seed", seed, "seed")->capture_default_str();
  cocycle->add_option("--level", level, "truncation level")->check(CLI::Range(1, 60))->capture_default_str();

  auto* ff = app.add_subcommand("ffcount", "irreducibles over F_q by residue class or Frobenius");
  add_common(ff, false);
  ff->add_option("--q", q, "q (prime, or 4, 8, 9)")->required();
  ff->add_option("--modulus", modulus, "m(T) coefficients low-to-high")->capture_default_str();
  ff->add_option("--max-deg", max_deg, "largest degree")->check(CLI::Range(1, 40))->capture_default_str();
  ff->add_option("--const-ext", const_ext, "degree M of a constant-field extension (nongeometric run)");

  auto* golden = app.add_subcommand("verify-golden", "check the cubic-field constants against their closed forms");
  add_common(golden);

  auto* replay = app.add_subcommand("replay", "rerun a manifest and compare checksums");
  replay->add_option("manifest", manifest, "manifest JSON")->required()->check(CLI::ExistingFile);
  replay->add_option("--workers", replay_workers, "override the worker count");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  run.subcommand = sub->get_name();
  if (sub == replay) return cmd_replay(manifest, replay_workers);
  record_params(run, sub);

  int rc = 0;
  if (sub == primes) {
    rc = cmd_primes(run, max_norm);
  } else if (sub == gens) {
    rc = cmd_generators(run, max_norm, primes_path);
  } else if (sub == angles) {
    rc = cmd_angles(run, max_norm, gens_path);
  } else if (sub == weyl) {
    rc = cmd_weyl(run, max_norm, angles_path, ks, checkpoints);
  } else if (sub == boxes) {
    rc = cmd_boxes(run, max_norm, angles_path, grid, box, at);
  } else if (sub == window) {
    rc = cmd_window(run, angles_path, box, delta, x);
  } else if (sub == ratioset) {
    rc = cmd_ratioset(run, max_norm, angles_path, x0, y0, eps, delta, box);
  } else if (sub == cocycle) {
    rc = cmd_cocycle(run, pairs, samples, seed, level);
  } else if (sub == ff) {
    rc = cmd_ffcount(run, q, modulus, max_deg, const_ext);
  } else if (sub == golden) {
    rc = cmd_verify_golden(run);
  }
  run.write_manifest();
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const angles::Error& e) {
    json err{{"code", e.code()}, {"message", e.what()}, {"context", e.context()}};
    std::cerr << err.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    json err{{"code", "InternalError"}, {"message", e.what()}, {"context", json::object()}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
}
