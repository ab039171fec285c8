#include "tubular/words.hpp"

#include <cctype>

#include "tubular/error.hpp"

namespace tubular {

std::size_t GroupWord::stable_letter_count() const {
  std::size_t n = 0;
  for (const auto& l : letters) n += std::holds_alternative<StableLetter>(l);
  return n;
}

GroupWord vertex_word(const LatticeVector& v) { return GroupWord{{Letter(v)}}; }

GroupWord stable_word(const std::string& name, int exponent) {
  return GroupWord{{Letter(StableLetter{name, exponent})}};
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

GroupWord inverse(const GroupWord& w) {
  GroupWord out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (const auto* v = std::get_if<LatticeVector>(&*it)) {
      out.letters.emplace_back(-*v);
    } else {
      const auto& s = std::get<StableLetter>(*it);
      out.letters.emplace_back(StableLetter{s.name, -s.exponent});
    }
  }
  return out;
}

GroupWord power(const GroupWord& w, long n) {
  const GroupWord base = n < 0 ? inverse(w) : w;
  GroupWord out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = concat(out, base);
  return out;
}

GroupWord commutator(const GroupWord& x, const GroupWord& y) {
  return concat(concat(x, y), concat(inverse(x), inverse(y)));
}

HnnPresentation::HnnPresentation(std::vector<Stable> stables) : stables_(std::move(stables)) {
  for (std::size_t i = 0; i < stables_.size(); ++i) {
    const auto& s = stables_[i];
    if (s.name == "a" || s.name == "b")
      throw InputError("stable letter may not be named \"" + s.name + "\"");
    if (s.z_minus.is_zero() || s.z_plus.is_zero())
      throw InputError("stable letter \"" + s.name + "\": zero inclusion vector");
    for (std::size_t j = 0; j < i; ++j)
      if (stables_[j].name == s.name)
        throw InputError("duplicate stable letter \"" + s.name + "\"");
  }
}

HnnPresentation HnnPresentation::from_graph(const TubularGraph& g) {
  if (g.vertices().size() != 1)
    throw InputError("word problem needs a single-vertex graph (all edges loops)");
  std::vector<Stable> stables;
  for (const auto& e : g.edges()) stables.push_back({e.id, e.z_minus, e.z_plus});
  return HnnPresentation(std::move(stables));
}

const HnnPresentation::Stable* HnnPresentation::find(std::string_view name) const {
  for (const auto& s : stables_)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<std::pair<std::string, GroupWord>> HnnPresentation::relators() const {
  std::vector<std::pair<std::string, GroupWord>> out;
  out.emplace_back("[a,b]", commutator(vertex_word({1, 0}), vertex_word({0, 1})));
  for (const auto& s : stables_) {
    GroupWord r = stable_word(s.name, -1);
    r = concat(r, vertex_word(s.z_minus));
    r = concat(r, stable_word(s.name, 1));
    r = concat(r, vertex_word(-s.z_plus));
    out.emplace_back(s.name, std::move(r));
  }
  return out;
}

namespace {

// Appends a vertex element, merging with a trailing one and dropping zeros.
void push_vertex(std::vector<Letter>& out, const LatticeVector& v) {
  if (!out.empty()) {
    if (auto* top = std::get_if<LatticeVector>(&out.back())) {
      *top += v;
      if (top->is_zero()) out.pop_back();
      return;
    }
  }
  if (!v.is_zero()) out.emplace_back(v);
}

}  // namespace

GroupWord normalize(const GroupWord& w) {
  GroupWord out;
  for (const auto& l : w.letters) {
    if (const auto* v = std::get_if<LatticeVector>(&l)) {
      push_vertex(out.letters, *v);
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

std::optional<Int> cyclic_multiplier(const LatticeVector& v, const LatticeVector& z) {
  if (z.is_zero()) return std::nullopt;
  if (v.is_zero()) return Int(0);
  // v must be parallel to z with a common integer quotient.
  if (v.x * z.y != v.y * z.x) return std::nullopt;
  const Int& num = z.x != 0 ? v.x : v.y;
  const Int& den = z.x != 0 ? z.x : z.y;
  if (num % den != 0) return std::nullopt;
  return Int(num / den);
}

namespace {

// Image of the middle element when t^{opening} v t^{-opening} is a pinch.
std::optional<LatticeVector> pinch_image(const HnnPresentation::Stable& s, int opening,
                                         const LatticeVector& middle) {
  // t^-1 (n z_minus) t = n z_plus   and   t (n z_plus) t^-1 = n z_minus.
  const auto& from = opening < 0 ? s.z_minus : s.z_plus;
  const auto& to = opening < 0 ? s.z_plus : s.z_minus;
  auto n = cyclic_multiplier(middle, from);
  if (!n) return std::nullopt;
  return *n * to;
}

const HnnPresentation::Stable& stable_of(const HnnPresentation& p, const std::string& name) {
  const auto* s = p.find(name);
  if (s == nullptr) throw InputError("unknown stable letter \"" + name + "\"");
  return *s;
}

}  // namespace

std::optional<std::size_t> find_pinch(const GroupWord& w, const HnnPresentation& p) {
  const auto& L = w.letters;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const auto* open = std::get_if<StableLetter>(&L[i]);
    if (open == nullptr) continue;
    std::size_t j = i + 1;
    LatticeVector middle{0, 0};
    while (j < L.size() && std::holds_alternative<LatticeVector>(L[j])) {
      middle += std::get<LatticeVector>(L[j]);
      ++j;
    }
    if (j == L.size()) break;
    const auto& close = std::get<StableLetter>(L[j]);
    if (close.name != open->name || close.exponent != -open->exponent) continue;
    if (pinch_image(stable_of(p, open->name), open->exponent, middle)) return i;
  }
  return std::nullopt;
}

GroupWord britton_reduce(const GroupWord& w, const HnnPresentation& p) {
  // The output stack never contains a pinch: one can only be completed by
  // the letter being pushed.
  std::vector<Letter> out;
  for (const auto& letter : normalize(w).letters) {
    if (const auto* v = std::get_if<LatticeVector>(&letter)) {
      push_vertex(out, *v);
      continue;
    }
    const auto& incoming = std::get<StableLetter>(letter);
    const auto& stable = stable_of(p, incoming.name);

    LatticeVector middle{0, 0};
    std::size_t open_at = out.size();
    if (open_at > 0 && std::holds_alternative<LatticeVector>(out[open_at - 1])) {
      middle = std::get<LatticeVector>(out[open_at - 1]);
      --open_at;
    }
    if (open_at > 0) {
      const auto* open = std::get_if<StableLetter>(&out[open_at - 1]);
      if (open != nullptr && open->name == incoming.name && open->exponent == -incoming.exponent) {
        if (auto image = pinch_image(stable, open->exponent, middle)) {
          out.resize(open_at - 1);
          push_vertex(out, *image);
          continue;
        }
      }
    }
    out.push_back(incoming);
  }
  return GroupWord{std::move(out)};
}

bool is_trivial(const GroupWord& w, const HnnPresentation& p) {
  GroupWord r = britton_reduce(w, p);
  // Reduced words are normalized, so the identity is the empty word.
  return r.empty();
}

Endomorphism identity_endomorphism(const HnnPresentation& p) {
  return scaling_endomorphism(p, 1);
}

Endomorphism scaling_endomorphism(const HnnPresentation& p, const Int& k) {
  Endomorphism endo;
  endo["a"] = vertex_word({k, 0});
  endo["b"] = vertex_word({0, k});
  for (const auto& s : p.stables()) endo[s.name] = stable_word(s.name);
  return endo;
}

namespace {

const GroupWord& image_of(const Endomorphism& endo, const std::string& name) {
  auto it = endo.find(name);
  if (it == endo.end()) throw InputError("undefined generator \"" + name + "\" in endomorphism");
  return it->second;
}

std::optional<LatticeVector> single_vertex(const GroupWord& w) {
  GroupWord n = normalize(w);
  if (n.empty()) return LatticeVector{0, 0};
  if (n.letters.size() == 1)
    if (const auto* v = std::get_if<LatticeVector>(&n.letters[0])) return *v;
  return std::nullopt;
}

GroupWord word_power(const GroupWord& w, const Int& n) {
  if (n > 1'000'000 || n < -1'000'000)
    throw InputError("endomorphism image power too large: " + n.str());
  return power(w, n.convert_to<long>());
}

}  // namespace

GroupWord apply_endo(const Endomorphism& endo, const GroupWord& w) {
  const GroupWord& image_a = image_of(endo, "a");
  const GroupWord& image_b = image_of(endo, "b");
  const auto va = single_vertex(image_a);
  const auto vb = single_vertex(image_b);

  GroupWord out;
  for (const auto& letter : w.letters) {
    if (const auto* v = std::get_if<LatticeVector>(&letter)) {
      if (va && vb) {
        out.letters.emplace_back(v->x * *va + v->y * *vb);
      } else {
        out = concat(out, word_power(image_a, v->x));
        out = concat(out, word_power(image_b, v->y));
      }
    } else {
      const auto& s = std::get<StableLetter>(letter);
      const GroupWord& image = image_of(endo, s.name);
      out = concat(out, s.exponent > 0 ? image : inverse(image));
    }
  }
  return normalize(out);
}

EndoReport check_endo_well_defined(const Endomorphism& endo, const HnnPresentation& p,
                                   const std::vector<std::pair<std::string, GroupWord>>& relations) {
  EndoReport report;
  for (const auto& [name, relator] : relations) {
    RelationVerdict verdict;
    verdict.name = name;
    verdict.image = britton_reduce(apply_endo(endo, relator), p);
    verdict.trivial = verdict.image.empty();
    report.ok = report.ok && verdict.trivial;
    report.relations.push_back(std::move(verdict));
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const HnnPresentation& p) : text_(text), p_(p) {}

  GroupWord parse() {
    GroupWord w = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("word syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '*' || text_[pos_] == '.'))
      ++pos_;
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  GroupWord sequence() {
    GroupWord w;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')' || text_[pos_] == ']' || text_[pos_] == ',')
        return w;
      w = concat(w, item());
    }
  }

  Int exponent() {
    if (!at('^')) return 1;
    ++pos_;
    skip_space();
    bool braced = pos_ < text_.size() && text_[pos_] == '{';
    if (braced) ++pos_;
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer exponent");
    std::string num(text_.substr(start, pos_ - start));
    if (num[0] == '+') num.erase(0, 1);
    if (braced) {
      if (pos_ >= text_.size() || text_[pos_] != '}') fail("expected '}'");
      ++pos_;
    }
    return Int(num);
  }

  GroupWord item() {
    skip_space();
    char c = text_[pos_];
    GroupWord base;
    if (c == '(') {
      ++pos_;
      base = sequence();
      if (!at(')')) fail("expected ')'");
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      GroupWord x = sequence();
      if (!at(',')) fail("expected ',' in commutator");
      ++pos_;
      GroupWord y = sequence();
      if (!at(']')) fail("expected ']'");
      ++pos_;
      base = commutator(x, y);
    } else if (c == '1') {
      ++pos_;
      base = GroupWord{};
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      Int n = exponent();
      if (name == "a") return vertex_word({n, 0});
      if (name == "b") return vertex_word({0, n});
      if (p_.find(name) == nullptr) fail("unknown generator \"" + name + "\"");
      return word_power(stable_word(name), n);
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    return word_power(base, exponent());
  }

  std::string_view text_;
  const HnnPresentation& p_;
  std::size_t pos_ = 0;
};

std::string power_text(const std::string& name, const Int& n) {
  if (n == 1) return name;
  return name + "^" + n.str();
}

}  // namespace

GroupWord parse_word(std::string_view text, const HnnPresentation& p) {
  return WordParser(text, p).parse();
}

std::string format_word(const GroupWord& w) {
  std::vector<std::string> parts;
  const auto& L = w.letters;
  for (std::size_t i = 0; i < L.size();) {
    if (const auto* v = std::get_if<LatticeVector>(&L[i])) {
      if (v->x != 0) parts.push_back(power_text("a", v->x));
      if (v->y != 0) parts.push_back(power_text("b", v->y));
      ++i;
      continue;
    }
    const auto& s = std::get<StableLetter>(L[i]);
    std::size_t j = i;
    while (j < L.size()) {
      const auto* t = std::get_if<StableLetter>(&L[j]);
      if (t == nullptr || !(*t == s)) break;
      ++j;
    }
    parts.push_back(power_text(s.name, Int(s.exponent) * Int(j - i)));
    i = j;
  }
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " " + parts[i];
  return out;
}

}  // namespace tubular
