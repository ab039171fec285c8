#include "tubular/lattice.hpp"

#include <vector>

#include "tubular/error.hpp"

namespace tubular {

std::string to_string(const LatticeVector& v) {
  return "(" + v.x.str() + "," + v.y.str() + ")";
}

nlohmann::json to_json(const LatticeVector& v) {
  return nlohmann::json::array({int_to_json(v.x), int_to_json(v.y)});
}

LatticeVector vector_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw InputError(where + ": expected a two-element integer array");
  return {int_from_json(j[0], where + "[0]"), int_from_json(j[1], where + "[1]")};
}

PrimitiveDecomposition primitive_decompose(const LatticeVector& v) {
  if (v.is_zero()) throw InputError("zero inclusion vector");
  Int g = gcd(abs(v.x), abs(v.y));
  LatticeVector p{v.x / g, v.y / g};
  if (p.x < 0 || (p.x == 0 && p.y < 0)) p = -p;
  return {std::move(p), std::move(g)};
}

LatticeVector canonical_class(const LatticeVector& v) {
  return primitive_decompose(v).primitive;
}

bool is_primitive(const LatticeVector& v) {
  return !v.is_zero() && gcd(abs(v.x), abs(v.y)) == 1;
}

bool is_canonical_primitive(const LatticeVector& v) {
  return is_primitive(v) && (v.x > 0 || (v.x == 0 && v.y > 0));
}

Int intersection_number(const LatticeVector& c, const LatticeVector& z) {
  if (c.is_zero() || z.is_zero()) throw InputError("zero inclusion vector");
  return abs(c.x * z.y - c.y * z.x);
}

bool is_parallel(const LatticeVector& c, const LatticeVector& z) {
  return intersection_number(c, z) == 0;
}

SublatticeBasis::SublatticeBasis(LatticeVector first, LatticeVector second)
    : first_(std::move(first)), second_(std::move(second)) {
  index_ = first_.x * second_.y;
}

SublatticeBasis SublatticeBasis::from_generators(
    std::span<const LatticeVector> generators) {
  std::vector<LatticeVector> rows(generators.begin(), generators.end());

  // Euclid on the second column until at most one row has a nonzero y.
  std::size_t pivot = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].y == 0) continue;
    if (pivot == rows.size()) {
      pivot = i;
      continue;
    }
    LatticeVector* a = &rows[pivot];
    LatticeVector* b = &rows[i];
    while (b->y != 0) {
      Int q = a->y / b->y;
      *a = *a - q * *b;
      std::swap(*a, *b);
    }
    // rows[pivot] now holds the gcd row and rows[i] has y == 0.
  }
  if (pivot == rows.size()) throw InputError("degenerate sublattice");

  LatticeVector second = rows[pivot];
  if (second.y < 0) second = -second;

  Int a = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == pivot) continue;
    a = gcd(a, abs(rows[i].x));
  }
  if (a == 0) throw InputError("degenerate sublattice");

  Int c = second.x % a;
  if (c < 0) c += a;
  return SublatticeBasis({a, 0}, {c, second.y});
}

std::optional<std::pair<Int, Int>> SublatticeBasis::coordinates(
    const LatticeVector& v) const {
  if (v.y % second_.y != 0) return std::nullopt;
  Int j = v.y / second_.y;
  Int rest = v.x - j * second_.x;
  if (rest % first_.x != 0) return std::nullopt;
  return std::make_pair(Int(rest / first_.x), std::move(j));
}

SublatticeBasis standard_lattice() {
  const LatticeVector gens[] = {{1, 0}, {0, 1}};
  return SublatticeBasis::from_generators(gens);
}

bool is_primitive_in(const LatticeVector& v, const SublatticeBasis& lattice) {
  auto coords = lattice.coordinates(v);
  if (!coords) throw InputError("not a lattice member: " + to_string(v));
  return gcd(abs(coords->first), abs(coords->second)) == 1;
}

}  // namespace tubular
