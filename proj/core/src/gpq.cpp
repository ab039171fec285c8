#include "tubular/gpq.hpp"

#include <algorithm>

#include "tubular/error.hpp"

namespace tubular {

void validate(const GpqSpec& spec) {
  if (spec.p == 0 || spec.q == 0)
    throw InputError("G_{p,q} needs nonzero p and q (got p=" + spec.p.str() + ", q=" + spec.q.str() + ")");
}

GpqSpec parse_gpq_spec(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("expected \"p,q\", got \"" + text + "\"");
  auto number = [&](std::string s) {
    s.erase(0, s.find_first_not_of(' '));
    s.erase(s.find_last_not_of(' ') + 1);
    const std::size_t digits = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == digits ||
        !std::all_of(s.begin() + digits, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InputError("expected \"p,q\", got \"" + text + "\"");
    if (s[0] == '+') s.erase(0, 1);
    return Int(s);
  };
  GpqSpec spec{number(text.substr(0, comma)), number(text.substr(comma + 1))};
  validate(spec);
  return spec;
}

GpqGroup make_gpq(const GpqSpec& spec) {
  validate(spec);
  const LatticeVector aq{spec.q, 0};
  TubularGraph g({"v"}, {TubularEdge{"s", "v", "v", aq, {spec.p, 1}},
                         TubularEdge{"t", "v", "v", aq, {spec.p, -1}}});
  auto pres = HnnPresentation::from_graph(g);
  return {std::move(g), std::move(pres)};
}

RpqPresentation make_rpq(const GpqSpec& spec) {
  validate(spec);
  const Int two_q = 2 * spec.q;
  const Int x_exp = 2 * spec.p - 1;
  return {{"x", "y", "t"},
          {"x^2 y^-2", "t^-1 x^" + two_q.str() + " t (x^" + x_exp.str() + " y)^-1"}};
}

bool is_residually_finite(const GpqSpec& spec) {
  validate(spec);
  return (2 * abs(spec.p)) % abs(spec.q) == 0;
}

namespace {

GroupWord witness_word(const Int& h, const Int& p) {
  GroupWord conj = concat(concat(stable_word("s", -1), vertex_word({h, 0})), stable_word("s", 1));
  return normalize(commutator(conj, vertex_word({p, -1})));
}

}  // namespace

GroupWord rf_obstruction_witness(const GpqSpec& spec) {
  if (is_residually_finite(spec)) throw InputError("group is residually finite; no witness");
  const Int h = gcd(2 * spec.p, spec.q);
  GroupWord x = witness_word(h, spec.p);
  if (is_trivial(x, make_gpq(spec).presentation))
    throw InternalError("obstruction witness reduced to the identity");
  return x;
}

NonHopfWitness non_hopf_witness(const GpqSpec& spec) {
  validate(spec);
  const Int q = spec.q;
  if (spec.p != 1 || q < 3 || q % 2 == 0)
    throw InputError("non-Hopfian witness needs p = 1 and odd q >= 3");
  const auto pres = make_gpq(spec).presentation;

  NonHopfWitness w;
  w.theta = scaling_endomorphism(pres, q);
  w.kernel_word = witness_word(1, 1);
  w.well_defined = check_endo_well_defined(w.theta, pres, pres.relators());
  w.kernel_word_nontrivial = !is_trivial(w.kernel_word, pres);
  w.image_trivial = is_trivial(apply_endo(w.theta, w.kernel_word), pres);
  w.surjectivity =
      "cited: s, t, a^q, b^q lie in the image, hence so do ab and ab^-1, and since q is odd "
      "also a and b";
  return w;
}

bool CqQuotientReport::relations_hold() const {
  return std::all_of(relation_residues.begin(), relation_residues.end(),
                     [](const auto& r) { return r.second == 0; });
}

bool CqQuotientReport::all_primitive() const {
  return std::all_of(inclusions.begin(), inclusions.end(),
                     [](const auto& i) { return i.primitive; });
}

CqQuotientReport cq_quotient(const GpqSpec& spec) {
  if (!is_residually_finite(spec)) throw InputError("q does not divide 2p; no C_q quotient");
  CqQuotientReport r;
  r.modulus = abs(spec.q);
  // q | p: b -> 0. Otherwise q = 2m with m | p: b -> p.
  r.beta = spec.p % r.modulus == 0 ? Int(0) : spec.p;

  auto mod = [&](const Int& v) {
    Int m = v % r.modulus;
    return m < 0 ? Int(m + r.modulus) : m;
  };
  auto phi = [&](const LatticeVector& v) { return v.x + r.beta * v.y; };
  r.relation_residues.emplace_back("[a,b]", Int(0));
  r.relation_residues.emplace_back("s", mod(phi({spec.q, 0}) - phi({spec.p, 1})));
  r.relation_residues.emplace_back("t", mod(phi({spec.q, 0}) - phi({spec.p, -1})));

  const LatticeVector gens[] = {{r.modulus, 0}, {-r.beta, 1}};
  r.kernel_lattice = sublattice_basis(gens);
  const std::pair<std::string, LatticeVector> incl[] = {
      {"a^q", {spec.q, 0}}, {"a^p b", {spec.p, 1}}, {"a^p b^-1", {spec.p, -1}}};
  for (const auto& [name, v] : incl) {
    auto coords = r.kernel_lattice.coordinates(v);
    if (!coords) throw InternalError("edge inclusion " + name + " outside the kernel lattice");
    r.inclusions.push_back({name, v, *coords, is_primitive_in(v, r.kernel_lattice)});
  }
  return r;
}

// ---------------------------------------------------------------------------

QuotientSearch finite_quotient_search(const GpqSpec& spec, std::size_t n_max, std::size_t keep) {
  validate(spec);
  if (n_max < 1) throw InputError("n_max must be at least 1");
  if (n_max > kMaxQuotientDegree)
    throw InputError("n_max above " + std::to_string(kMaxQuotientDegree) + " is not supported");

  QuotientSearch out;
  out.n_max = n_max;
  const bool rf = is_residually_finite(spec);
  const Int h = rf ? Int(0) : gcd(2 * spec.p, spec.q);
  if (!rf) out.witness = rf_obstruction_witness(spec);

  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto perms = all_permutations(n);
    std::size_t count = 0;
    for (const auto& A : perms) {
      const Permutation Aq = A.pow(spec.q);
      const Permutation Ap = A.pow(spec.p);
      const Permutation Ah = A.pow(h);
      std::vector<Permutation> centralizer;  // of a^q, in lexicographic order
      for (const auto& c : perms)
        if (c * Aq == Aq * c) centralizer.push_back(c);

      // All g with g^-1 a^q g = target, sorted.
      auto conjugators = [&](const Permutation& target) {
        std::vector<Permutation> gs;
        if (auto g0 = conjugator(Aq, target)) {
          for (const auto& c : centralizer) gs.push_back(c * *g0);
          std::sort(gs.begin(), gs.end());
        }
        return gs;
      };

      for (const auto& B : perms) {
        if (!(A * B == B * A)) continue;
        const auto Ss = conjugators(Ap * B);
        if (Ss.empty()) continue;
        const Permutation Binv = B.inverse();
        const auto Ts = conjugators(Ap * Binv);
        if (Ts.empty()) continue;

        const Permutation y = Ap * Binv;
        for (const auto& S : Ss) {
          std::optional<bool> identity;
          if (!rf) {
            // [x, y] is trivial iff x and y commute.
            const Permutation x = S.inverse() * Ah * S;
            identity = x * y == y * x;
            if (!*identity) out.witness_nonidentity += Ts.size();
          }
          for (const auto& T : Ts) {
            ++count;
            if (out.quotients.size() < keep) {
              out.quotients.push_back({n, A, B, S, T, identity});
            } else {
              out.truncated = true;
            }
          }
        }
      }
    }
    out.counts.push_back(count);
    out.total += count;
  }
  return out;
}

bool relations_hold(const GpqSpec& spec, const FiniteQuotient& f) {
  const auto pres = make_gpq(spec).presentation;
  const PermutationImages images{{"a", f.a}, {"b", f.b}, {"s", f.s}, {"t", f.t}};
  if (!(f.a * f.b == f.b * f.a)) return false;
  for (const auto& [name, relator] : pres.relators())
    if (!evaluate(relator, images, f.degree).is_identity()) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

GpqClassification classify(const GpqSpec& spec) {
  validate(spec);
  GpqClassification c;
  c.spec = spec;
  c.rf = is_residually_finite(spec);
  c.screen = cubulation_screen(make_gpq(spec).graph);

  const Int& p = spec.p;
  const Int& q = spec.q;
  const bool non_hopf_theorem = p == 1 && q >= 3 && q % 2 != 0;
  if (non_hopf_theorem) {
    c.hopfian = Tri::False;
    c.notes.push_back("non-Hopfian: theta a->a^q, b->b^q kills [s^-1 a s, a b^-1]");
  } else if (c.rf) {
    c.hopfian = Tri::True;
    c.notes.push_back("Hopfian: finitely generated and residually finite");
  }

  if (p >= 1 && q >= 1) {
    c.cat0 = q > p ? Tri::True : Tri::False;
  } else {
    c.notes.push_back("CAT(0) status only known for positive parameters");
  }
  if (p == 1 && q == 1) c.notes.push_back("Gersten's group");
  if (p > q && q >= 1) c.notes.push_back("snowflake group");
  if (c.rf) {
    c.notes.push_back("residually finite: the C_q kernel has primitive edge inclusions");
  } else {
    c.notes.push_back("not residually finite: [s^-1 a^h s, a^p b^-1] dies in every finite quotient");
  }

  c.citations = {
      "Gardam-Woodhouse: G_{p,q} is an index 2 subgroup of the 1-relator group R_{p,q}",
      "Gardam (thesis): R_{p,q} with p,q >= 1 is CAT(0) exactly when q > p",
      "Brady-Bridson: snowflake groups (p > q >= 1) have Dehn function above quadratic",
      "Kim, Theorem 3.7: primitive edge inclusions give residual finiteness",
      "Mal'cev: finitely generated residually finite groups are Hopfian",
      "Wise: cubulated tubular groups have at most two parallelism classes per vertex",
  };
  c.transfers = {
      {"rf", "G_{p,q} <-> R_{p,q} (finite index, both directions)"},
      {"hopfian", "G_{p,q} only; non-Hopfian G_{p,q} gives non-residually-finite R_{p,q}"},
      {"cat0", "R_{p,q} -> G_{p,q} when CAT(0); G_{p,q} -> R_{p,q} for non-CAT(0) snowflakes"},
  };
  return c;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json perm_json(const Permutation& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < p.degree(); ++i) arr.push_back(p(i) + 1);
  return arr;
}

}  // namespace

nlohmann::json to_json(const NonHopfWitness& w) {
  nlohmann::json theta = nlohmann::json::object();
  for (const auto& [name, image] : w.theta) theta[name] = format_word(image);
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& r : w.well_defined.relations)
    relations.push_back({{"relation", r.name}, {"image", format_word(r.image)}, {"trivial", r.trivial}});
  return {{"theta", std::move(theta)},
          {"kernel_word", format_word(w.kernel_word)},
          {"well_defined", w.well_defined.ok},
          {"relations", std::move(relations)},
          {"kernel_word_nontrivial", w.kernel_word_nontrivial},
          {"image_trivial", w.image_trivial},
          {"surjectivity", w.surjectivity}};
}

nlohmann::json to_json(const CqQuotientReport& r) {
  nlohmann::json residues = nlohmann::json::object();
  for (const auto& [name, v] : r.relation_residues) residues[name] = int_to_json(v);
  nlohmann::json incl = nlohmann::json::array();
  for (const auto& i : r.inclusions) {
    incl.push_back({{"name", i.name},
                    {"vector", to_json(i.vector)},
                    {"coordinates", {int_to_json(i.coordinates.first), int_to_json(i.coordinates.second)}},
                    {"primitive", i.primitive}});
  }
  return {{"modulus", int_to_json(r.modulus)},
          {"beta", int_to_json(r.beta)},
          {"relation_residues", std::move(residues)},
          {"kernel_lattice", {to_json(r.kernel_lattice.first()), to_json(r.kernel_lattice.second())}},
          {"inclusions", std::move(incl)},
          {"all_primitive", r.all_primitive()}};
}

nlohmann::json to_json(const FiniteQuotient& f) {
  nlohmann::json out = {{"degree", f.degree},
                        {"a", perm_json(f.a)},
                        {"b", perm_json(f.b)},
                        {"s", perm_json(f.s)},
                        {"t", perm_json(f.t)}};
  out["witness_identity"] = f.witness_identity ? nlohmann::json(*f.witness_identity) : nlohmann::json(nullptr);
  return out;
}

nlohmann::json to_json(const QuotientSearch& s) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : s.quotients) list.push_back(to_json(f));
  nlohmann::json out = {{"n_max", s.n_max},
                        {"counts", s.counts},
                        {"total", s.total},
                        {"witness_nonidentity", s.witness_nonidentity},
                        {"quotients", std::move(list)},
                        {"truncated", s.truncated}};
  out["witness"] = s.witness ? nlohmann::json(format_word(*s.witness)) : nlohmann::json(nullptr);
  return out;
}

nlohmann::json to_json(const GpqClassification& c) {
  nlohmann::json transfers = nlohmann::json::array();
  for (const auto& t : c.transfers) transfers.push_back({{"property", t.property}, {"direction", t.direction}});
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [v, n] : c.screen.class_counts) classes[v] = n;
  return {{"p", int_to_json(c.spec.p)},
          {"q", int_to_json(c.spec.q)},
          {"rf", c.rf},
          {"hopfian", std::string(to_string(c.hopfian))},
          {"cat0", std::string(to_string(c.cat0))},
          {"cubulation_screen", {{"verdict", std::string(to_string(c.screen.verdict))},
                                 {"class_counts", std::move(classes)}}},
          {"notes", c.notes},
          {"citations", c.citations},
          {"transfers", std::move(transfers)}};
}

nlohmann::json gpq_report(const GpqSpec& spec, std::size_t n_max) {
  const auto c = classify(spec);
  nlohmann::json out = to_json(c);
  if (c.rf) {
    out["witness"] = nullptr;
    out["cq_quotient"] = to_json(cq_quotient(spec));
  } else {
    out["witness"] = format_word(rf_obstruction_witness(spec));
  }
  if (c.hopfian == Tri::False) out["non_hopf"] = to_json(non_hopf_witness(spec));
  if (n_max > 0) {
    out["quotients"] = to_json(finite_quotient_search(spec, n_max));
  } else {
    out["quotients"] = nullptr;
  }
  return out;
}

}  // namespace tubular
