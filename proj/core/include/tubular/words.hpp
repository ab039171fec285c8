#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tubular/graph.hpp"
#include "tubular/lattice.hpp"

namespace tubular {

struct StableLetter {
  std::string name;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const StableLetter&, const StableLetter&) = default;
};

// A vertex-group element (i, j) = a^i b^j, or a stable letter.
using Letter = std::variant<LatticeVector, StableLetter>;

struct GroupWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t stable_letter_count() const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

GroupWord vertex_word(const LatticeVector& v);
GroupWord stable_word(const std::string& name, int exponent = 1);
GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord inverse(const GroupWord& w);
GroupWord power(const GroupWord& w, long n);
// x y x^-1 y^-1
GroupWord commutator(const GroupWord& x, const GroupWord& y);

// A multiple HNN extension of Z^2 = <a, b> with one stable letter per loop:
//   s^-1 (n z_minus) s = n z_plus   for every integer n.
class HnnPresentation {
 public:
  struct Stable {
    std::string name;
    LatticeVector z_minus;
    LatticeVector z_plus;
  };

  HnnPresentation() = default;
  explicit HnnPresentation(std::vector<Stable> stables);

  // One stable letter per edge, named by edge id. Every edge must be a loop
  // at the single vertex.
  static HnnPresentation from_graph(const TubularGraph& g);

  const std::vector<Stable>& stables() const { return stables_; }
  const Stable* find(std::string_view name) const;

  // [a,b] followed by s^-1 z_minus s z_plus^-1 for each stable letter.
  std::vector<std::pair<std::string, GroupWord>> relators() const;

 private:
  std::vector<Stable> stables_;
};

// Adjacent vertex elements summed, zero elements dropped.
GroupWord normalize(const GroupWord& w);

// Multiplier n with v = n * z, if v lies in the cyclic subgroup <z>.
std::optional<Int> cyclic_multiplier(const LatticeVector& v, const LatticeVector& z);

// Position of the first pinch (index of its opening stable letter), if any.
std::optional<std::size_t> find_pinch(const GroupWord& w, const HnnPresentation& p);

// Removes pinches until none remain; the result is normalized. Each
// replacement deletes two stable letters, so this terminates.
GroupWord britton_reduce(const GroupWord& w, const HnnPresentation& p);

// By Britton's lemma a reduced word with a stable letter is nontrivial.
bool is_trivial(const GroupWord& w, const HnnPresentation& p);

// Images of the generators "a", "b" and each stable letter.
using Endomorphism = std::map<std::string, GroupWord>;

Endomorphism identity_endomorphism(const HnnPresentation& p);
// a -> a^k, b -> b^k, stable letters fixed.
Endomorphism scaling_endomorphism(const HnnPresentation& p, const Int& k);

// Letterwise substitution, then normalize. (i, j) maps to i*A + j*B when the
// images A, B of a, b are single vertex elements; otherwise to
// image(a)^i image(b)^j. Throws InputError on an undefined generator.
GroupWord apply_endo(const Endomorphism& endo, const GroupWord& w);

struct RelationVerdict {
  std::string name;
  GroupWord image;  // reduced image of the relator
  bool trivial = false;
};

struct EndoReport {
  bool ok = true;
  std::vector<RelationVerdict> relations;
};

EndoReport check_endo_well_defined(const Endomorphism& endo, const HnnPresentation& p,
                                   const std::vector<std::pair<std::string, GroupWord>>& relations);

// Text syntax: generators a, b and the stable letter names, each with an
// optional ^n exponent; ( ... )^n groups and [x, y] commutators; "1" is the
// identity. Letters are kept unnormalized.
GroupWord parse_word(std::string_view text, const HnnPresentation& p);
std::string format_word(const GroupWord& w);

}  // namespace tubular
