#include "tubular/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "tubular/error.hpp"

namespace tubular {

Permutation::Permutation(std::vector<std::uint8_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v]) throw InputError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation out = *this;
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return out;
}

Permutation operator*(const Permutation& x, const Permutation& y) {
  Permutation out = x;
  for (std::size_t i = 0; i < x.img_.size(); ++i) out.img_[i] = y.img_[x.img_[i]];
  return out;
}

Permutation Permutation::pow(Int n) const {
  Permutation base = n < 0 ? inverse() : *this;
  if (n < 0) n = -n;
  Permutation out = identity(img_.size());
  while (n > 0) {
    if ((n & 1) != 0) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

std::string to_string(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(p(i) + 1);
  }
  return out + "]";
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

namespace {

std::vector<std::vector<std::uint8_t>> cycles(const Permutation& p) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::vector<std::uint8_t> c;
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      c.push_back(static_cast<std::uint8_t>(j));
    }
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace

std::optional<Permutation> conjugator(const Permutation& x, const Permutation& y) {
  if (x.degree() != y.degree()) return std::nullopt;
  // g^-1 x g = y means g(x(j)) = y(g(j)): g carries cycles of x onto cycles of y.
  auto cx = cycles(x);
  auto cy = cycles(y);
  if (cx.size() != cy.size()) return std::nullopt;
  std::vector<std::uint8_t> g(x.degree());
  for (std::size_t c = 0; c < cx.size(); ++c) {
    if (cx[c].size() != cy[c].size()) return std::nullopt;
    for (std::size_t r = 0; r < cx[c].size(); ++r) g[cx[c][r]] = cy[c][r];
  }
  return Permutation(std::move(g));
}

Permutation evaluate(const GroupWord& w, const PermutationImages& images, std::size_t degree) {
  auto image = [&](const std::string& name) -> const Permutation& {
    auto it = images.find(name);
    if (it == images.end()) throw InputError("no permutation image for \"" + name + "\"");
    return it->second;
  };
  Permutation out = Permutation::identity(degree);
  for (const auto& letter : w.letters) {
    if (const auto* v = std::get_if<LatticeVector>(&letter)) {
      out = out * image("a").pow(v->x) * image("b").pow(v->y);
    } else {
      const auto& s = std::get<StableLetter>(letter);
      out = out * (s.exponent > 0 ? image(s.name) : image(s.name).inverse());
    }
  }
  return out;
}

}  // namespace tubular
