#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "tubular/integer.hpp"

namespace tubular {

/// An element of a Z^2 vertex group, written additively: (i, j) is a^i b^j.
struct LatticeVector {
  Int x;
  Int y;

  LatticeVector() = default;
  LatticeVector(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}

  bool is_zero() const { return x == 0 && y == 0; }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.x == b.x && a.y == b.y;
  }
  // Lexicographic on (x, y); used as the canonical key order.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }

  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend LatticeVector operator-(const LatticeVector& a) { return {-a.x, -a.y}; }
  friend LatticeVector operator*(const Int& n, const LatticeVector& a) {
    return {n * a.x, n * a.y};
  }
  LatticeVector& operator+=(const LatticeVector& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

std::string to_string(const LatticeVector& v);

nlohmann::json to_json(const LatticeVector& v);
LatticeVector vector_from_json(const nlohmann::json& j, const std::string& where);

struct PrimitiveDecomposition {
  LatticeVector primitive;
  Int multiplicity;
};

// v = multiplicity * primitive, with primitive sign-normalized (first nonzero
// coordinate positive). Throws InputError("zero inclusion vector") on zero.
PrimitiveDecomposition primitive_decompose(const LatticeVector& v);

// Canonical representative of the parallelism class of v.
LatticeVector canonical_class(const LatticeVector& v);

bool is_primitive(const LatticeVector& v);
bool is_canonical_primitive(const LatticeVector& v);

// Geometric intersection number of the two torus curves: |det(c, z)|.
Int intersection_number(const LatticeVector& c, const LatticeVector& z);
bool is_parallel(const LatticeVector& c, const LatticeVector& z);

// Full-rank sublattice of Z^2 in Hermite normal form. Rows
//   first  = (a, 0)
//   second = (c, d)
// with a > 0, d > 0 and 0 <= c < a; index = a * d.
class SublatticeBasis {
 public:
  // Z^2 itself.
  SublatticeBasis() : SublatticeBasis({1, 0}, {0, 1}) {}
  static SublatticeBasis from_generators(std::span<const LatticeVector> generators);

  const LatticeVector& first() const { return first_; }
  const LatticeVector& second() const { return second_; }
  const Int& index() const { return index_; }

  // (i, j) with v = i * first + j * second, or nullopt if v is not a member.
  std::optional<std::pair<Int, Int>> coordinates(const LatticeVector& v) const;
  bool contains(const LatticeVector& v) const { return coordinates(v).has_value(); }

  friend bool operator==(const SublatticeBasis&, const SublatticeBasis&) = default;

 private:
  SublatticeBasis(LatticeVector first, LatticeVector second);

  LatticeVector first_;
  LatticeVector second_;
  Int index_;
};

inline SublatticeBasis sublattice_basis(std::span<const LatticeVector> generators) {
  return SublatticeBasis::from_generators(generators);
}

SublatticeBasis standard_lattice();

// True iff v's coordinates in L are coprime. Throws InputError("not a lattice
// member") when v is outside L.
bool is_primitive_in(const LatticeVector& v, const SublatticeBasis& lattice);

}  // namespace tubular
