#include "hfd/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace hfd {

namespace {

bool is_power_of(long n, long p) {
  if (n < 1 || p < 2) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

Word single_letter(long edge, int exp = 1) { return Word{0, {Letter{edge, exp}}}; }

/// Net crossing count of each edge along a word.
std::map<long, long> crossing_counts(const Word& w) {
  std::map<long, long> c;
  for (const auto& l : w.letters) c[l.edge] += l.exp;
  for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  return c;
}

long mod(long x, long d) { return ((x % d) + d) % d; }

/// edge -> (record index, net count), over all records.
std::map<long, std::vector<std::pair<std::size_t, long>>> edge_occurrences(const std::vector<LoopLiftRecord>& recs) {
  std::map<long, std::vector<std::pair<std::size_t, long>>> occ;
  for (std::size_t j = 0; j < recs.size(); ++j)
    for (const auto& [e, c] : crossing_counts(recs[j].lifted_word)) occ[e].push_back({j, c});
  return occ;
}

/// Caches [lambda_r(A, zeta_d^v)] - [lambda_r(A, 1)] by (r, v).
class TermCache {
 public:
  TermCache(const SeifertMatrix& a, long d) : a_(a), d_(d) {}
  const WittClass& get(long r, long v) {
    auto key = std::make_pair(r, v);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, knot_cover_defect(a_, r, v, d_)).first;
    return it->second;
  }

 private:
  const SeifertMatrix& a_;
  long d_;
  std::map<std::pair<long, long>, WittClass> cache_;
};

WittClass sum_terms(const std::vector<LiftTerm>& terms, TermCache& cache, WittClass acc) {
  for (const auto& t : terms)
    if (t.value != 0) acc = acc + cache.get(t.r, t.value);
  return acc;
}

Rational rational_discriminant(const WittClass& x) {
  auto v = witt_invariants(x).discriminant_raw.rational_value();
  if (!v) throw std::logic_error("discriminant is not rational");
  return *v;
}

std::optional<BigInt> dual_prime_of(const BigInt& f) {
  const Factorization fac = factor(f);
  for (const auto& [p, e] : fac.primes)
    if (e % 2 == 1 && p % 4 == 3) return p;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- infection

InfectionResult evaluate_infection(const InfectionScenario& s) {
  if (!s.base) throw std::invalid_argument("scenario has no base graph");
  if (s.d < 1) throw std::invalid_argument("d must be positive");
  const auto& target = s.top_character.target();
  if (target.rank() != 1 || target.order() != s.d)
    throw InvalidCharacter("top character must take values in Z_d");

  Tower tower(s.base);
  for (const auto& chi : s.tower_characters) tower.push(chi);
  if (s.top_character.edge_count() != tower.top().edge_count())
    throw InvalidCharacter("top character does not live on the top of the tower");
  if (!kills_relators(tower.top(), s.top_character)) throw InvalidCharacter("top character does not kill the relators");

  InfectionResult res;
  res.height = tower.height();
  res.total_degree = tower.degree();
  res.invariance_claim = is_power_of(s.d, s.prime);
  for (const auto& l : tower.levels())
    if (!is_power_of(l.deck().order(), s.prime)) res.invariance_claim = false;

  for (const auto& rec : loop_lift_collection(s.alpha, tower)) {
    const auto v = evaluate_character(tower.top(), s.top_character, rec.lifted_word);
    res.terms.push_back(LiftTerm{rec.start, rec.r, v[0]});
  }

  WittClass seed = s.seed_defect;
  if (seed.is_structurally_zero()) seed = WittClass::zero(s.d);
  else if (seed.conductor() != s.d) throw std::invalid_argument("seed defect has the wrong conductor");
  TermCache cache(s.seifert, s.d);
  res.defect = sum_terms(res.terms, cache, seed);
  return res;
}

WittClass infection_defect(const InfectionScenario& s) { return evaluate_infection(s).defect; }

CrossPathCheck cross_path_check(const SeifertMatrix& a, const std::vector<LiftTerm>& terms, long d,
                                const WittClass& defect) {
  CrossPathCheck out;
  if (d != 4 || defect.conductor() != 4) return out;
  for (const auto& t : terms)
    if (t.r > 2) return out;
  out.applicable = true;
  Rational product = 1;
  for (const auto& t : terms) {
    if (t.value == 0) continue;
    const Cyclotomic num = dis_formula(a, zeta_power(d, t.value), t.r);
    const Cyclotomic den = dis_formula(a, Cyclotomic(d, Rational(1)), t.r);
    auto q = (num / den).rational_value();
    if (!q) throw std::logic_error("discriminant formula is not rational over Q(i)");
    product *= *q;
  }
  out.formula_discriminant = product;
  out.witt_discriminant = rational_discriminant(defect);
  out.agree = norm_class_equal(out.witt_discriminant, out.formula_discriminant);
  return out;
}

ObstructionReport obstruction_report(const WittClass& x) {
  ObstructionReport rep;
  rep.witt_class = x;
  rep.invariants = witt_invariants(x);
  const long d = x.conductor();
  if (rep.invariants.discriminant_class) {
    rep.certificates.push_back(rep.invariants.discriminant_class->certificate);
  } else if (d % 4 == 0 && rep.invariants.discriminant_raw.is_real()) {
    try {
      rep.certificates.push_back(symbol_certificate(real_subfield_norm(rep.invariants.discriminant_raw)));
    } catch (const BudgetExhausted&) {
      rep.notes.push_back("norm-down certificate: factorisation budget exhausted");
    }
  }

  const WittComparison cmp = witt_compare(x, WittClass::zero(d));
  if (cmp == WittComparison::distinct) rep.verdict = ObstructionReport::Verdict::obstructed;
  if (cmp == WittComparison::undecided) rep.notes.push_back("triviality undecided by the available invariants");
  if (rep.invariants.signature != 0)
    rep.notes.push_back("signature " + std::to_string(rep.invariants.signature) + " is nonzero");
  if (rep.invariants.rank_mod2 != 0) rep.notes.push_back("odd rank");
  for (const auto& c : rep.certificates)
    for (const auto& [p, sym] : c.symbols)
      if (sym == -1) {
        std::ostringstream os;
        os << "(" << c.value.str() << ", -1)_" << p.get_str() << " = -1";
        rep.notes.push_back(os.str());
      }
  return rep;
}

// ---------------------------------------------------------------- Bing doubles

BingDoubleTower bing_double_tower(long n) {
  if (n < 1 || n > 4) throw std::invalid_argument("Bing double height must be in [1, 4]");
  BingDoubleTower bd;
  bd.n = n;
  const long m = 1L << n;
  bd.base = std::make_shared<const VoltageGraph>(VoltageGraph::wedge(m));

  std::vector<Word> x;
  for (long i = 0; i < m; ++i) x.push_back(single_letter(i));
  while (x.size() > 1) {
    std::vector<Word> next;
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) next.push_back(commutator(x[i], x[i + 1]));
    x = std::move(next);
  }
  bd.alpha = x[0];

  long edges = m;
  for (long k = 0; k <= n; ++k) {
    const long rank = 1L << (n - k);
    FiniteAbelianGroup g = FiniteAbelianGroup::elementary(2, rank);
    std::map<long, FiniteAbelianGroup::Element> assign;
    for (long i = 0; i < rank; ++i) assign[(1L << k) * i] = g.basis(i);
    bd.characters.emplace_back(g, edges, assign);
    edges *= g.order();
  }
  return bd;
}

Tower build_tower(const BingDoubleTower& bd, long height) {
  if (height < 0 || height > static_cast<long>(bd.characters.size()))
    throw std::invalid_argument("tower height out of range");
  Tower t(bd.base);
  for (long k = 0; k < height; ++k) t.push(bd.characters[static_cast<std::size_t>(k)]);
  return t;
}

namespace {

/// First single-edge Z_d character on the tower top whose nonzero lift values
/// satisfy `accept`; edges ascending, values ascending.
template <class Accept>
LiftStructure single_edge_search(const Tower& t, const Word& alpha, long d, Accept accept) {
  LiftStructure out{Character(FiniteAbelianGroup::cyclic(d), t.top().edge_count()), {}, {}, {}, {}, 0, 0, 0};
  out.records = loop_lift_collection(alpha, t);
  out.total_degree = t.degree();
  for (const auto& r : out.records) out.sum_r += r.r;
  const auto occ = edge_occurrences(out.records);
  for (const auto& [e, list] : occ) {
    for (long v = 1; v < d; ++v) {
      ++out.candidates_tried;
      std::vector<std::pair<std::size_t, long>> nonzero;
      for (const auto& [j, c] : list)
        if (mod(c * v, d) != 0) nonzero.push_back({j, mod(c * v, d)});
      auto hit = accept(out.records, nonzero);
      if (!hit) continue;
      out.character.set(e, {v});
      out.values.assign(out.records.size(), 0);
      for (const auto& [j, val] : nonzero) out.values[j] = val;
      out.first = hit->first;
      out.second = hit->second;
      return out;
    }
  }
  throw SearchFailed("no single-edge character with the required lift values");
}

using Hit = std::optional<std::pair<std::size_t, std::size_t>>;

}  // namespace

LiftStructure bd_lift_structure_check(long n, long d, long s) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  s = mod(s, d);
  const BingDoubleTower bd = bing_double_tower(n);
  const Tower t = build_tower(bd, n + 1);
  if (s == 0) {
    LiftStructure out{Character(FiniteAbelianGroup::cyclic(d), t.top().edge_count()), {}, {}, {}, {}, 0, 0, 0};
    out.records = loop_lift_collection(bd.alpha, t);
    out.values.assign(out.records.size(), 0);
    out.total_degree = t.degree();
    for (const auto& r : out.records) out.sum_r += r.r;
    return out;
  }
  return single_edge_search(t, bd.alpha, d, [&](const std::vector<LoopLiftRecord>& recs,
                                                const std::vector<std::pair<std::size_t, long>>& nz) -> Hit {
    if (nz.size() != 2) return std::nullopt;
    for (int o = 0; o < 2; ++o) {
      const auto& a = nz[o];
      const auto& b = nz[1 - o];
      if (recs[a.first].r == 2 && a.second == s && recs[b.first].r == 1 && b.second == mod(-s, d))
        return std::make_pair(a.first, b.first);
    }
    return std::nullopt;
  });
}

InfectionScenario bd_scenario(long a, long n) {
  const BingDoubleTower bd = bing_double_tower(n);
  const LiftStructure ls = bd_lift_structure_check(n, 4, 1);
  InfectionScenario s{bd.base, bd.characters, bd.alpha, k_a_matrix(a), ls.character, 4, 2, WittClass::zero(4),
                      "zero: the seed is the Bing double of the unknot, which is slice"};
  return s;
}

ObstructionReport bd_slice_obstruction(long a, long n) { return solvability_report(bd_scenario(a, n)); }

namespace {

LiftStructure signature_structure(long n, long d, long s) {
  const BingDoubleTower bd = bing_double_tower(n);
  const Tower t = build_tower(bd, n);
  s = mod(s, d);
  if (s == 0) {
    LiftStructure out{Character(FiniteAbelianGroup::cyclic(d), t.top().edge_count()), {}, {}, {}, {}, 0, 0, 0};
    out.records = loop_lift_collection(bd.alpha, t);
    out.values.assign(out.records.size(), 0);
    out.total_degree = t.degree();
    for (const auto& r : out.records) out.sum_r += r.r;
    return out;
  }
  return single_edge_search(t, bd.alpha, d, [&](const std::vector<LoopLiftRecord>& recs,
                                                const std::vector<std::pair<std::size_t, long>>& nz) -> Hit {
    if (nz.size() != 2) return std::nullopt;
    if (recs[nz[0].first].r != 1 || recs[nz[1].first].r != 1) return std::nullopt;
    for (int o = 0; o < 2; ++o)
      if (nz[o].second == s && nz[1 - o].second == mod(-s, d)) return std::make_pair(nz[o].first, nz[1 - o].first);
    return std::nullopt;
  });
}

}  // namespace

InfectionScenario bd_signature_scenario(const SeifertMatrix& a, long n, long d, long s) {
  const BingDoubleTower bd = bing_double_tower(n);
  const LiftStructure ls = signature_structure(n, d, s);
  std::vector<Character> chars(bd.characters.begin(), bd.characters.begin() + n);
  return InfectionScenario{bd.base, chars, bd.alpha, a, ls.character, d, 2, WittClass::zero(d),
                           "zero: the seed is the Bing double of the unknot, which is slice"};
}

SignatureRecovery bd_signature_recovery(const SeifertMatrix& a, long n, long d, long s) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  SignatureRecovery out;
  out.structure = signature_structure(n, d, s);
  const BingDoubleTower bd = bing_double_tower(n);
  std::vector<Character> chars(bd.characters.begin(), bd.characters.begin() + n);
  InfectionScenario sc{bd.base, chars, bd.alpha, a, out.structure.character, d, 2, WittClass::zero(d),
                       "zero: the seed is the Bing double of the unknot, which is slice"};
  out.report = solvability_report(sc);
  out.defect_signature = out.report.invariants.signature;
  out.lambda1_signature = witt_invariants(WittClass::of(build_lambda_r(a, 1, zeta_power(d, mod(s, d)))))
                              .signature;
  out.levine_tristram = levine_tristram(a, d, mod(s, d));
  return out;
}

// ---------------------------------------------------------------- lens seed

LensScanReport lens_seed_scan(long r1, long r2, long a, long support_limit, long max_evaluations,
                              bool keep_entries) {
  if (r1 < 2 || r2 < 2) throw std::invalid_argument("lens orders must be at least 2");
  if (support_limit < 1) throw std::invalid_argument("support limit must be positive");
  LensScanReport rep;
  rep.r1 = r1;
  rep.r2 = r2;
  rep.a = a;
  rep.support_limit = support_limit;
  rep.f1 = lemma_factor_r1(BigInt(a));
  rep.f2 = lemma_factor_r2(BigInt(a));
  rep.p1 = dual_prime_of(rep.f1);
  rep.p2 = dual_prime_of(rep.f2);

  auto power_word = [](long edge, long k) {
    Word w{0, {}};
    for (long i = 0; i < k; ++i) w.letters.push_back(Letter{edge, 1});
    return w;
  };
  auto base = std::make_shared<const VoltageGraph>(VoltageGraph::wedge(2, {power_word(0, r1), power_word(1, r2)}));
  const Word alpha = commutator(single_letter(0), single_letter(1));
  const FiniteAbelianGroup g0({r1, r2});
  const Character chi0(g0, 2, {{0, g0.basis(0)}, {1, g0.basis(1)}});
  const DerivedCover x1 = derive_cover(base, chi0);

  const SeifertMatrix ka = k_a_matrix(a);
  TermCache cache(ka, 4);

  CharacterEnumerator level1(x1.cover_ptr(), FiniteAbelianGroup::cyclic(2), support_limit);
  while (auto chi1 = level1.next()) {
    if (chi1->support().empty()) continue;
    Tower tower(base);
    tower.push(chi0);
    try {
      tower.push(*chi1);
    } catch (const InvalidCharacter&) {
      continue;
    }
    ++rep.level1_characters;
    const auto records = loop_lift_collection(alpha, tower);
    for (const auto& r : records)
      if (r.r != 1 && r.r != 2) rep.all_r_in_1_2 = false;
    const auto occ = edge_occurrences(records);

    CharacterEnumerator top(tower.top_ptr(), FiniteAbelianGroup::cyclic(4), support_limit);
    while (auto chi = top.next()) {
      const auto support = chi->support();
      if (support.empty()) continue;
      if (rep.evaluations >= max_evaluations) {
        rep.budget_exhausted = true;
        return rep;
      }
      ++rep.evaluations;

      std::vector<long> values(records.size(), 0);
      for (long e : support) {
        auto it = occ.find(e);
        if (it == occ.end()) continue;
        for (const auto& [j, c] : it->second) values[j] = mod(values[j] + c * chi->value(e)[0], 4);
      }
      LensScanEntry entry{*chi1, *chi, {}, WittClass::zero(4), 0, {}, {}};
      for (std::size_t j = 0; j < records.size(); ++j)
        entry.terms.push_back(LiftTerm{records[j].start, records[j].r, values[j]});
      entry.defect = sum_terms(entry.terms, cache, WittClass::zero(4));
      const WittInvariants inv = witt_invariants(entry.defect);
      entry.signature = inv.signature;

      ShapeCheck& sh = entry.shape;
      sh.discriminant = rational_discriminant(entry.defect);
      for (long k = 0; k < 4 && !sh.passes; ++k) {
        const long n1 = k & 1, n2 = k >> 1;
        Rational target = 1;
        if (n1) target *= Rational(rep.f1);
        if (n2) target *= Rational(rep.f2);
        if (inv.signature == 0 && inv.rank_mod2 == 0 && norm_class_equal(sh.discriminant, target)) {
          sh.passes = true;
          sh.n1 = n1;
          sh.n2 = n2;
        }
      }
      if (rep.p1) sh.at_p1 = symbol_certificate_at(sh.discriminant, {*rep.p1});
      if (rep.p2) sh.at_p2 = symbol_certificate_at(sh.discriminant, {*rep.p2});
      if (!sh.passes) rep.all_shapes_pass = false;

      entry.cross_path = cross_path_check(ka, entry.terms, 4, entry.defect);
      if (entry.cross_path.applicable && !entry.cross_path.agree) rep.all_cross_paths_agree = false;

      std::ostringstream key;
      key << "sigma=" << inv.signature << " class="
          << (inv.discriminant_class ? inv.discriminant_class->representative.get_str() : std::string("?"));
      ++rep.class_histogram[key.str()];
      if (sh.passes && sh.n1 == 1 && sh.n2 == 1 && !rep.realization) rep.realization = entry;
      if (keep_entries) rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- distinguisher

DistinguisherReport homology_cobordism_distinguisher(int count, const FactorBudget& budget) {
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  DistinguisherReport rep;
  if (count == 0) return rep;
  rep.sequence = dual_sequence(count, budget);
  const auto& pairs = rep.sequence.pairs;
  for (const auto& pr : pairs) rep.classes.push_back(lemma_factor_r1(pr.a) * lemma_factor_r2(pr.a));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const BigInt& p = pairs[i].p;
    for (std::size_t j = 0; j <= pairs.size(); ++j) {
      if (j == i + 1) continue;
      DistinguisherEntry e;
      e.i = i + 1;
      e.j = j;
      e.prime = p;
      e.class_symbol = norm_residue_symbol(Rational(rep.classes[i]), Rational(-1), p);
      if (j > 0) {
        const BigInt& aj = pairs[j - 1].a;
        e.generator_symbols = {norm_residue_symbol(Rational(lemma_factor_r1(aj)), Rational(-1), p),
                               norm_residue_symbol(Rational(lemma_factor_r2(aj)), Rational(-1), p)};
      }
      e.distinguished = e.class_symbol == -1 &&
                        std::all_of(e.generator_symbols.begin(), e.generator_symbols.end(), [](int x) { return x == 1; });
      if (!e.distinguished) rep.all_distinguished = false;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- solvability

int arf_invariant(const SeifertMatrix& a) {
  const Rational v = alexander(a).evaluate(Rational(-1));
  return arf_from_alexander_at_minus_one(v.numerator());
}

ObstructionReport solvability_report(const InfectionScenario& s) {
  const InfectionResult res = evaluate_infection(s);
  ObstructionReport rep = obstruction_report(res.defect);
  rep.terms = res.terms;
  if (s.seed_defect.is_structurally_zero() && s.d == 4) rep.cross_path = cross_path_check(s.seifert, res.terms, s.d, res.defect);
  if (rep.verdict == ObstructionReport::Verdict::obstructed)
    rep.notes.push_back("not " + std::to_string(res.height + 1) + "-solvable");
  rep.notes.push_back("Arf(K) = " + std::to_string(arf_invariant(s.seifert)));
  rep.notes.push_back("seed defect: " + s.seed_provenance);
  if (!res.invariance_claim) rep.notes.push_back("no invariance claim: d or a deck order is not a power of the tower prime");
  return rep;
}

}  // namespace hfd
