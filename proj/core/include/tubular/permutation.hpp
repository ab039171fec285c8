#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubular/words.hpp"

namespace tubular {

// A permutation of {0..n-1}. Products act on the right: (x * y)(i) = y(x(i)),
// so a word evaluates left to right.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> images);
  static Permutation identity(std::size_t n);

  std::size_t degree() const { return img_.size(); }
  std::uint8_t operator()(std::size_t i) const { return img_[i]; }
  const std::vector<std::uint8_t>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(Int n) const;

  friend Permutation operator*(const Permutation& x, const Permutation& y);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> img_;
};

// One-line notation on 1..n, e.g. "[2,1,3]".
std::string to_string(const Permutation& p);

// All permutations of degree n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

// Some g with g^-1 x g = y, if x and y are conjugate.
std::optional<Permutation> conjugator(const Permutation& x, const Permutation& y);

// Images of "a", "b" (which must commute) and the stable letters.
using PermutationImages = std::map<std::string, Permutation>;

Permutation evaluate(const GroupWord& w, const PermutationImages& images, std::size_t degree);

}  // namespace tubular
