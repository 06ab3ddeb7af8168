#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "hfd/covers.hpp"
#include "oracles.hpp"

using namespace hfd;

namespace {

Word loop(long edge, int exp = 1) { return Word{0, {Letter{edge, exp}}}; }

Word power(long edge, long k) {
  Word w{0, {}};
  for (long i = 0; i < k; ++i) w.letters.push_back(Letter{edge, 1});
  return w;
}

long euler(const VoltageGraph& g) { return g.vertex_count() - g.edge_count(); }

/// Random surjective character on g with values in gamma; tries until the cover is connected.
Character random_character(std::mt19937& rng, const VoltageGraph& g, const FiniteAbelianGroup& gamma) {
  std::uniform_int_distribution<long> pick(0, gamma.order() - 1);
  for (;;) {
    Character chi(gamma, g.edge_count());
    for (long e = 0; e < g.edge_count(); ++e) chi.set(e, gamma.element(pick(rng)));
    try {
      derive_cover(g, chi);
      return chi;
    } catch (const InvalidCharacter&) {
    }
  }
}

}  // namespace

TEST_CASE("finite abelian groups") {
  FiniteAbelianGroup g({2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  for (long k = 0; k < g.order(); ++k) CHECK(g.index(g.element(k)) == k);
  CHECK(g.add({1, 3}, {1, 2}) == FiniteAbelianGroup::Element{0, 1});
  CHECK(g.is_zero(g.add({1, 3}, g.negate({1, 3}))));
  CHECK(g.reduce({-1, 9}) == FiniteAbelianGroup::Element{1, 1});
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(VoltageGraph(2, {Edge{0, 0}}, 0), InvalidGraph);  // disconnected
  CHECK_THROWS_AS(VoltageGraph(1, {Edge{0, 0}}, 0, {Word{0, {Letter{1, 1}}}}), std::invalid_argument);
  const VoltageGraph path(2, {Edge{0, 1}}, 0);
  CHECK_THROWS_AS(VoltageGraph(2, {Edge{0, 1}}, 0, {Word{0, {Letter{0, 1}}}}), std::invalid_argument);
  CHECK(path.end_of(Word{0, {Letter{0, 1}}}) == 1);
  CHECK_THROWS_AS(path.end_of(Word{0, {Letter{0, -1}}}), InvalidWord);
}

TEST_CASE("derived covers") {
  const VoltageGraph w2 = VoltageGraph::wedge(2);
  CHECK(betti(w2) == 2);

  const FiniteAbelianGroup trivial({1});
  const DerivedCover t = derive_cover(w2, Character(trivial, 2));
  CHECK(t.cover().vertex_count() == 1);
  CHECK(t.cover().edge_count() == 2);

  const FiniteAbelianGroup z22 = FiniteAbelianGroup::elementary(2, 2);
  const DerivedCover c = derive_cover(w2, Character(z22, 2, {{0, z22.basis(0)}, {1, z22.basis(1)}}));
  CHECK(c.cover().vertex_count() == 4);
  CHECK(c.cover().edge_count() == 8);
  CHECK(betti(c.cover()) == 5);
  CHECK(euler(c.cover()) == 4 * euler(w2));

  for (long m = 2; m <= 4; ++m)
    for (long d : {2L, 3L, 4L}) {
      const FiniteAbelianGroup zd = FiniteAbelianGroup::cyclic(d);
      const DerivedCover cc = derive_cover(VoltageGraph::wedge(m), Character(zd, m, {{0, {1}}}));
      CHECK(cc.cover().vertex_count() == d);
      CHECK(cc.cover().edge_count() == d * m);
      CHECK(betti(cc.cover()) == d * (m - 1) + 1);
    }

  // Non-surjective and relator-violating characters are rejected.
  CHECK_THROWS_AS(derive_cover(w2, Character(z22, 2, {{0, z22.basis(0)}})), InvalidCharacter);
  const VoltageGraph lens = VoltageGraph::wedge(1, {power(0, 3)});
  CHECK_THROWS_AS(derive_cover(lens, Character(FiniteAbelianGroup::cyclic(2), 1, {{0, {1}}})), InvalidCharacter);
}

TEST_CASE("lift_word") {
  const VoltageGraph w2 = VoltageGraph::wedge(2);
  const DerivedCover t = derive_cover(w2, Character(FiniteAbelianGroup({1}), 2));
  const Word w = loop(0) * loop(1);
  CHECK(t.lift_word(w, 0).first == 0);

  const FiniteAbelianGroup z22 = FiniteAbelianGroup::elementary(2, 2);
  const DerivedCover c = derive_cover(w2, Character(z22, 2, {{0, z22.basis(0)}, {1, z22.basis(1)}}));
  for (long v = 0; v < 4; ++v) CHECK(c.lift_word(commutator(loop(0), loop(1)), v).first == v);

  const DerivedCover z3 = derive_cover(VoltageGraph::wedge(1), Character(FiniteAbelianGroup::cyclic(3), 1, {{0, {1}}}));
  const auto [end, lifted] = z3.lift_word(loop(0), 0);
  CHECK(end == 1);
  CHECK(lifted.size() == 1);
  CHECK_THROWS_AS(z3.lift_word(Word{1, {Letter{0, 1}}}, 0), InvalidWord);
}

TEST_CASE("loop lift collection") {
  const VoltageGraph circle = VoltageGraph::wedge(1);
  {
    const Tower t(circle);
    const auto recs = loop_lift_collection(loop(0), t);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].r == 1);
    CHECK(recs[0].lifted_word.letters == loop(0).letters);
  }
  {
    Tower t(circle);
    t.push(Character(FiniteAbelianGroup::cyclic(4), 1, {{0, {1}}}));
    const auto recs = loop_lift_collection(loop(0), t);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].r == 4);
    CHECK(t.top().is_loop(recs[0].lifted_word));
  }
}

TEST_CASE("loop lift bookkeeping on random towers") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const long m = 2 + trial % 3;
    auto base = std::make_shared<const VoltageGraph>(VoltageGraph::wedge(m));
    Tower t(base);
    const int height = 1 + trial % 2;
    for (int k = 0; k < height; ++k) {
      const FiniteAbelianGroup g = (trial + k) % 2 ? FiniteAbelianGroup::cyclic(4) : FiniteAbelianGroup::elementary(2, 2);
      t.push(random_character(rng, t.top(), g));
    }
    // alpha = c_1 c_2 c_1 (not a commutator, so lifts can have r > 1).
    const Word alpha = loop(0) * loop(1) * loop(0);
    const auto recs = loop_lift_collection(alpha, t);
    long sum = 0;
    std::set<long> starts;
    for (const auto& r : recs) {
      sum += r.r;
      CHECK(t.top().is_loop(r.lifted_word));
      CHECK(r.lifted_word.size() == alpha.size() * static_cast<std::size_t>(r.r));
      starts.insert(r.start);
    }
    CHECK(sum == t.degree());
    CHECK(starts.size() == recs.size());

    // Euler characteristic multiplies through the tower.
    CHECK(euler(t.top()) == t.degree() * euler(*base));

    // One-level oracle: r is the order of chi(alpha).
    if (height == 1) {
      const auto& lvl = t.levels()[0];
      const auto v = path_value(lvl.character(), alpha);
      long order = 1;
      auto acc = v;
      while (!lvl.deck().is_zero(acc)) {
        acc = lvl.deck().add(acc, v);
        ++order;
      }
      for (const auto& r : recs) CHECK(r.r == order);
    }
  }
}

TEST_CASE("character evaluation") {
  const VoltageGraph w2 = VoltageGraph::wedge(2);
  const FiniteAbelianGroup z4 = FiniteAbelianGroup::cyclic(4);
  const Character chi(z4, 2, {{0, {1}}, {1, {3}}});
  CHECK(evaluate_character(w2, chi, commutator(loop(0), loop(1))) == FiniteAbelianGroup::Element{0});
  CHECK(evaluate_character(w2, chi, loop(1)) == FiniteAbelianGroup::Element{3});
  CHECK(evaluate_character(w2, chi, loop(0, -1)) == FiniteAbelianGroup::Element{3});
  const VoltageGraph path(2, {Edge{0, 1}, Edge{1, 0}}, 0);
  CHECK_THROWS_AS(evaluate_character(path, Character(z4, 2), Word{0, {Letter{0, 1}}}), InvalidWord);

  // Single-edge Z_4 character on the Z_2 cover of a circle, evaluated on the lift of alpha^2.
  Tower t(VoltageGraph::wedge(1));
  t.push(Character(FiniteAbelianGroup::cyclic(2), 1, {{0, {1}}}));
  const auto recs = loop_lift_collection(loop(0), t);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].r == 2);
  const Character top(z4, 2, {{1, {1}}});
  CHECK(evaluate_character(t.top(), top, recs[0].lifted_word) == FiniteAbelianGroup::Element{1});
  CHECK(evaluate_character(t.top(), top, recs[0].lifted_word.inverse()) == FiniteAbelianGroup::Element{3});
}

TEST_CASE("relator lifting") {
  const VoltageGraph lens = VoltageGraph::wedge(2, {power(0, 4), power(1, 2)});
  const FiniteAbelianGroup g({4, 2});
  const DerivedCover c = derive_cover(lens, Character(g, 2, {{0, g.basis(0)}, {1, g.basis(1)}}));
  CHECK(c.cover().relators().size() == 2 * 8);
  for (const auto& r : c.cover().relators()) CHECK(c.cover().is_loop(r));
  // A base character kills a relator iff its pullback kills every lift.
  const FiniteAbelianGroup z2 = FiniteAbelianGroup::cyclic(2);
  for (long v0 = 0; v0 < 2; ++v0)
    for (long v1 = 0; v1 < 2; ++v1) {
      const Character chi(z2, 2, {{0, {v0}}, {1, {v1}}});
      CHECK(kills_relators(lens, chi) == kills_relators(c.cover(), pullback(c, chi)));
    }
}

TEST_CASE("character rank") {
  for (long m = 1; m <= 4; ++m) CHECK(character_rank(VoltageGraph::wedge(m), FiniteAbelianGroup::cyclic(2)) == m);
  const VoltageGraph c4 = VoltageGraph::wedge(1, {power(0, 4)});
  CHECK(character_rank(c4, FiniteAbelianGroup::cyclic(2)) == 1);
  CHECK(character_rank(VoltageGraph::wedge(1, {power(0, 3)}), FiniteAbelianGroup::cyclic(2)) == 0);
  CHECK(homology_invariant_factors(c4) == std::vector<std::int64_t>{4});

  // Brute-force oracle on small presentation complexes: |Hom(H_1, Z_2)| = 2^rank, and
  // |Hom(H_1, Z_n)| is the product of gcd(f, n) over the invariant factors (f = 0 free).
  const std::vector<VoltageGraph> graphs{
      VoltageGraph::wedge(2, {power(0, 4), power(1, 2)}),
      VoltageGraph::wedge(2, {loop(0) * loop(0) * loop(1)}),
      VoltageGraph::wedge(3, {power(2, 8), commutator(loop(0), loop(1))}),
      VoltageGraph::wedge(2, {power(0, 6), power(1, 3)}),
  };
  for (const auto& g : graphs) {
    long long two = 1;
    for (long k = 0; k < character_rank(g, FiniteAbelianGroup::cyclic(2)); ++k) two *= 2;
    CHECK(oracle::count_characters_brute(g, 2) == two);
    for (long n : {3L, 4L}) {
      long long expect = 1;
      for (auto f : homology_invariant_factors(g)) expect *= std::gcd(static_cast<long>(f), n);
      CHECK(oracle::count_characters_brute(g, n) == expect);
    }
  }

  // Rank formula for a full level over a wedge of 2^n circles.
  for (long n = 1; n <= 2; ++n) {
    const long m = 1L << n;
    const FiniteAbelianGroup g = FiniteAbelianGroup::elementary(2, m);
    std::map<long, FiniteAbelianGroup::Element> assign;
    for (long i = 0; i < m; ++i) assign[i] = g.basis(i);
    const DerivedCover c = derive_cover(VoltageGraph::wedge(m), Character(g, m, assign));
    CHECK(betti(c.cover()) == g.order() * (m - 1) + 1);
    CHECK(character_rank(c, FiniteAbelianGroup::cyclic(2)) == g.order() * (m - 1) + 1);
  }
}

TEST_CASE("character enumeration") {
  auto count = [](CharacterEnumerator e) {
    long n = 0;
    while (e.next()) ++n;
    return n;
  };
  const VoltageGraph w2 = VoltageGraph::wedge(2);
  CHECK(count(enumerate_characters(w2, FiniteAbelianGroup({1}))) == 1);
  CHECK(count(enumerate_characters(w2, FiniteAbelianGroup::cyclic(2))) == 4);

  // First character is zero, then support size ascending.
  auto e = enumerate_characters(w2, FiniteAbelianGroup::cyclic(3));
  std::size_t last = 0;
  bool first = true;
  while (auto chi = e.next()) {
    if (first) CHECK(chi->support().empty());
    CHECK(chi->support().size() >= last);
    last = chi->support().size();
    first = false;
  }

  // 64-edge cover with Z_4 and support limit 1.
  const FiniteAbelianGroup z22 = FiniteAbelianGroup::elementary(2, 2), z23 = FiniteAbelianGroup::elementary(2, 3);
  Tower t(w2);
  t.push(Character(z22, 2, {{0, z22.basis(0)}, {1, z22.basis(1)}}));
  t.push(Character(z23, 8, {{0, z23.basis(0)}, {1, z23.basis(1)}, {3, z23.basis(2)}}));
  REQUIRE(t.top().edge_count() == 64);
  const long n = count(CharacterEnumerator(t.top_ptr(), FiniteAbelianGroup::cyclic(4), 1));
  CHECK(n == 64 * 3 + 1);

  // Relator-killing filter matches the brute-force count.
  const VoltageGraph lens = VoltageGraph::wedge(2, {power(0, 4), power(1, 2)});
  CHECK(count(enumerate_characters(lens, FiniteAbelianGroup::cyclic(4))) == oracle::count_characters_brute(lens, 4));
}
