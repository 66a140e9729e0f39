#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "angles/equidist.hpp"
#include "angles/generator.hpp"
#include "angles/primes.hpp"

namespace angles {

/// Fixed-point with `digits` decimals; "-0.000…" is printed without the sign.
std::string fixed(double v, int digits = 9);
std::string join(const std::vector<std::string>& parts, char sep);
std::vector<std::string> split(const std::string& s, char sep);

/// norm,p,root,deg,ramified
void write_primes_csv(std::ostream& os, const std::vector<PrimeIdealRec>& primes);
/// norm,p,root,alpha_coords (coordinates joined by ';')
void write_generators_csv(std::ostream& os, const std::vector<GeneratorRec>& gens);
/// norm,p,root,t1,...,t_{n-1}
void write_angles_csv(std::ostream& os, const std::vector<AngleRecord>& angles, std::size_t dim);

/// Readers re-derive every prime from (p, root) against F and reject rows
/// that do not describe a prime ideal of F (InputError).
std::vector<PrimeIdealRec> read_primes_csv(std::istream& is, const FieldSpec& F);
std::vector<GeneratorRec> read_generators_csv(std::istream& is, const FieldSpec& F);
/// Angles are read back as written (9 decimals).
std::vector<AngleRecord> read_angles_csv(std::istream& is, const FieldSpec& F);

/// Strict integer parse accepting forms like "1e6" and "1000000".
u64 parse_count(const std::string& text);

}  // namespace angles
