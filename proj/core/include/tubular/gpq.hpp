#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tubular/graph.hpp"
#include "tubular/lattice.hpp"
#include "tubular/permutation.hpp"
#include "tubular/words.hpp"

namespace tubular {

// G_{p,q} = <a, b, s, t | [a,b], s^-1 a^q s = a^p b, t^-1 a^q t = a^p b^-1>
struct GpqSpec {
  Int p;
  Int q;
};

// Throws InputError on a zero parameter.
void validate(const GpqSpec& spec);
GpqSpec parse_gpq_spec(const std::string& text);  // "p,q"

struct GpqGroup {
  TubularGraph graph;
  HnnPresentation presentation;
};

GpqGroup make_gpq(const GpqSpec& spec);

// <x, y, t | x^2 = y^2, t^-1 x^2q t = x^(2p-1) y>, recorded as data only.
struct RpqPresentation {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
};

RpqPresentation make_rpq(const GpqSpec& spec);

bool is_residually_finite(const GpqSpec& spec);

// [s^-1 a^h s, a^p b^-1] with h = gcd(2p, q). Throws InputError when q | 2p
// and InternalError if the word reduces.
GroupWord rf_obstruction_witness(const GpqSpec& spec);

struct NonHopfWitness {
  Endomorphism theta;
  GroupWord kernel_word;
  EndoReport well_defined;
  bool kernel_word_nontrivial = false;
  bool image_trivial = false;
  std::string surjectivity;  // cited, not computed

  bool ok() const { return well_defined.ok && kernel_word_nontrivial && image_trivial; }
};

// Requires p = 1 and odd q >= 3.
NonHopfWitness non_hopf_witness(const GpqSpec& spec);

struct InclusionPrimitivity {
  std::string name;
  LatticeVector vector;
  std::pair<Int, Int> coordinates;
  bool primitive = false;
};

struct CqQuotientReport {
  Int modulus;  // |q|
  Int beta;     // image of b; a maps to 1, s and t to 0
  std::vector<std::pair<std::string, Int>> relation_residues;
  SublatticeBasis kernel_lattice;
  std::vector<InclusionPrimitivity> inclusions;

  bool relations_hold() const;
  bool all_primitive() const;
};

// Requires q | 2p.
CqQuotientReport cq_quotient(const GpqSpec& spec);

struct FiniteQuotient {
  std::size_t degree = 0;
  Permutation a, b, s, t;
  std::optional<bool> witness_identity;
};

struct QuotientSearch {
  std::size_t n_max = 0;
  std::vector<std::size_t> counts;  // homomorphisms per degree 1..n_max
  std::size_t total = 0;
  std::optional<GroupWord> witness;
  std::size_t witness_nonidentity = 0;
  std::vector<FiniteQuotient> quotients;  // first `keep`, in search order
  bool truncated = false;
};

inline constexpr std::size_t kMaxQuotientDegree = 7;

// Every homomorphism G_{p,q} -> S_n for 1 <= n <= n_max, in lexicographic
// order of the images of (a, b, s, t).
QuotientSearch finite_quotient_search(const GpqSpec& spec, std::size_t n_max, std::size_t keep = 64);

// The three G_{p,q} relators evaluated in S_n.
bool relations_hold(const GpqSpec& spec, const FiniteQuotient& f);

enum class Tri { True, False, Unknown };
std::string_view to_string(Tri t);

struct Transfer {
  std::string property;
  std::string direction;
};

struct GpqClassification {
  GpqSpec spec;
  bool rf = false;
  Tri hopfian = Tri::Unknown;  // of G_{p,q}
  Tri cat0 = Tri::Unknown;     // of R_{p,q}
  CubulationScreen screen;
  std::vector<std::string> notes;
  std::vector<std::string> citations;
  std::vector<Transfer> transfers;
};

GpqClassification classify(const GpqSpec& spec);

nlohmann::json to_json(const NonHopfWitness& w);
nlohmann::json to_json(const CqQuotientReport& r);
nlohmann::json to_json(const FiniteQuotient& f);
nlohmann::json to_json(const QuotientSearch& s);
nlohmann::json to_json(const GpqClassification& c);

// {p, q, rf, hopfian, cat0, witness, quotients, ...}
nlohmann::json gpq_report(const GpqSpec& spec, std::size_t n_max);

}  // namespace tubular
