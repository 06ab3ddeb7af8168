#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hfd {

class InvalidGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidWord : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for characters that do not kill the relators or do not give a connected cover.
class InvalidCharacter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Direct sum of cyclic groups Z_{n_1} + ... + Z_{n_k}. Elements are residue
/// vectors; each element also has an integer index in mixed radix with the
/// first coordinate least significant.
class FiniteAbelianGroup {
 public:
  using Element = std::vector<long>;

  explicit FiniteAbelianGroup(std::vector<long> orders);
  static FiniteAbelianGroup cyclic(long n) { return FiniteAbelianGroup({n}); }
  /// (Z_p)^k.
  static FiniteAbelianGroup elementary(long p, long k) { return FiniteAbelianGroup(std::vector<long>(k, p)); }

  const std::vector<long>& orders() const { return orders_; }
  long rank() const { return static_cast<long>(orders_.size()); }
  long order() const { return order_; }
  /// lcm of the cyclic orders.
  long exponent() const;

  Element zero() const { return Element(orders_.size(), 0); }
  Element reduce(Element x) const;
  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;
  Element scale(const Element& a, long k) const;
  bool is_zero(const Element& a) const;
  /// i-th standard basis vector.
  Element basis(long i) const;

  long index(const Element& a) const;
  Element element(long index) const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.orders_ == b.orders_; }

 private:
  std::vector<long> orders_;
  long order_ = 1;
};

struct Edge {
  long source = 0;
  long target = 0;
};

struct Letter {
  long edge = 0;
  int exp = 1;  // +1 or -1
  friend bool operator==(const Letter& a, const Letter& b) { return a.edge == b.edge && a.exp == b.exp; }
};

/// Edge path starting at `start`.
struct Word {
  long start = 0;
  std::vector<Letter> letters;

  Word inverse() const;
  std::size_t size() const { return letters.size(); }
};

/// Word concatenation (b must start where a ends; not checked here).
Word operator*(const Word& a, const Word& b);
/// [a, b] = a b a^-1 b^-1 for loops at the same vertex.
Word commutator(const Word& a, const Word& b);

/// Connected graph with stable edge ids, a basepoint and relator loops
/// (the 2-cells of a presentation complex).
class VoltageGraph {
 public:
  VoltageGraph(long vertex_count, std::vector<Edge> edges, long basepoint, std::vector<Word> relators = {});

  /// One vertex, m loops.
  static VoltageGraph wedge(long m, std::vector<Word> relators = {});

  long vertex_count() const { return vertices_; }
  long edge_count() const { return static_cast<long>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  long basepoint() const { return basepoint_; }
  const std::vector<Word>& relators() const { return relators_; }

  /// Endpoint of the path; throws InvalidWord if the letters do not compose.
  long end_of(const Word& w) const;
  bool is_loop(const Word& w) const { return end_of(w) == w.start; }

 private:
  long vertices_;
  std::vector<Edge> edges_;
  long basepoint_;
  std::vector<Word> relators_;
};

/// Graph first Betti number E - V + 1.
long betti(const VoltageGraph& g);

/// Edge labelling by a finite abelian group.
class Character {
 public:
  Character(FiniteAbelianGroup target, long edge_count);
  Character(FiniteAbelianGroup target, long edge_count, const std::map<long, FiniteAbelianGroup::Element>& assignment);

  const FiniteAbelianGroup& target() const { return target_; }
  long edge_count() const { return static_cast<long>(values_.size()); }
  const FiniteAbelianGroup::Element& value(long edge) const { return values_.at(static_cast<std::size_t>(edge)); }
  void set(long edge, FiniteAbelianGroup::Element v);
  /// Edges with nonzero value, ascending.
  std::vector<long> support() const;

 private:
  FiniteAbelianGroup target_;
  std::vector<FiniteAbelianGroup::Element> values_;
};

/// Signed sum of the labels along w (any path).
FiniteAbelianGroup::Element path_value(const Character& chi, const Word& w);

/// Signed sum of labels along a loop; open paths are rejected.
FiniteAbelianGroup::Element evaluate_character(const VoltageGraph& g, const Character& chi, const Word& w);

bool kills_relators(const VoltageGraph& g, const Character& chi);

/// Derived graph of (base, chi): vertex (v, g) has id index(g) * V + v and
/// the lift of edge e starting on sheet g has id index(g) * E + e, so sheet
/// zero carries the base ids.
class DerivedCover {
 public:
  const VoltageGraph& base() const { return *base_; }
  const VoltageGraph& cover() const { return *cover_; }
  std::shared_ptr<const VoltageGraph> cover_ptr() const { return cover_; }
  std::shared_ptr<const VoltageGraph> base_ptr() const { return base_; }
  const FiniteAbelianGroup& deck() const { return chi_.target(); }
  const Character& character() const { return chi_; }

  long vertex_projection(long v) const { return v % base_->vertex_count(); }
  long edge_projection(long e) const { return e % base_->edge_count(); }
  long sheet_of_vertex(long v) const { return v / base_->vertex_count(); }
  long lift_vertex(long base_vertex, long sheet) const { return sheet * base_->vertex_count() + base_vertex; }
  /// Lift of e starting on `sheet`.
  long lift_edge(long base_edge, long sheet) const { return sheet * base_->edge_count() + base_edge; }
  /// Lift of e ending on `sheet`.
  long lift_edge_ending(long base_edge, long sheet) const;

  /// Deck translation by group element index h.
  long translate_vertex(long v, long h) const;

  /// Lift of a base word starting at a cover vertex over w.start.
  std::pair<long, Word> lift_word(const Word& w, long start) const;

 private:
  friend DerivedCover derive_cover(std::shared_ptr<const VoltageGraph> base, const Character& chi);
  DerivedCover(std::shared_ptr<const VoltageGraph> base, Character chi) : base_(std::move(base)), chi_(std::move(chi)) {}

  std::shared_ptr<const VoltageGraph> base_;
  std::shared_ptr<const VoltageGraph> cover_;
  Character chi_;
  std::vector<long> voltage_;     // group index of chi(e)
  std::vector<long> back_sheet_;  // [e * |G| + h] = h - chi(e)
  std::vector<long> add_table_;   // [g * |G| + h] = g + h (index arithmetic)
};

/// Builds the derived cover; rejects characters that do not kill the base
/// relators or whose cover is disconnected (non-surjective on pi_1).
DerivedCover derive_cover(std::shared_ptr<const VoltageGraph> base, const Character& chi);
DerivedCover derive_cover(const VoltageGraph& base, const Character& chi);

/// free function form of DerivedCover::lift_word
std::pair<long, Word> lift_word(const DerivedCover& c, const Word& w, long start);

/// Base character pulled back to the cover (chi o projection).
Character pullback(const DerivedCover& c, const Character& chi);

/// Composable sequence of derived covers X_0 <- X_1 <- ... <- X_h.
class Tower {
 public:
  explicit Tower(std::shared_ptr<const VoltageGraph> base);
  explicit Tower(const VoltageGraph& base) : Tower(std::make_shared<const VoltageGraph>(base)) {}

  /// Adds the cover of the current top determined by chi.
  void push(const Character& chi);

  const VoltageGraph& base() const { return *base_; }
  const VoltageGraph& top() const { return levels_.empty() ? *base_ : levels_.back().cover(); }
  std::shared_ptr<const VoltageGraph> top_ptr() const { return levels_.empty() ? base_ : levels_.back().cover_ptr(); }
  const std::vector<DerivedCover>& levels() const { return levels_; }
  long height() const { return static_cast<long>(levels_.size()); }
  /// Product of deck orders.
  long degree() const;

  /// Vertex of X_0 under v in the top.
  long project_to_base(long top_vertex) const;
  /// Top vertices over the base basepoint, ascending.
  std::vector<long> basepoint_fiber() const;
  /// Lift of a word in X_0 starting at a top vertex.
  std::pair<long, Word> lift(const Word& w, long top_start) const;

 private:
  std::shared_ptr<const VoltageGraph> base_;
  std::vector<DerivedCover> levels_;
};

struct LoopLiftRecord {
  long start = 0;  // top vertex
  long r = 1;      // minimal power with a closed lift
  Word lifted_word;
};

/// Marking algorithm: fiber points over the basepoint start white; for each
/// white v (ascending) find the least r with the lift of alpha^r at v closed,
/// record it and mark the intermediate endpoints black.
std::vector<LoopLiftRecord> loop_lift_collection(const Word& alpha, const Tower& tower);

/// Invariant factors of H_1 of the 2-complex (graph plus relator cells),
/// ascending, with 0 for each free summand; factors equal to 1 are dropped.
std::vector<std::int64_t> homology_invariant_factors(const VoltageGraph& g);

/// r with Hom(H_1, Gamma) = Gamma^r: the number of invariant factors
/// divisible by exp(Gamma) (free summands count). Exact for homocyclic Gamma.
long character_rank(const VoltageGraph& g, const FiniteAbelianGroup& gamma);
inline long character_rank(const DerivedCover& c, const FiniteAbelianGroup& gamma) {
  return character_rank(c.cover(), gamma);
}

/// Lazily enumerates relator-killing characters g -> gamma: the zero
/// character first, then by support size, edge subsets in lexicographic
/// order, nonzero values in index order.
class CharacterEnumerator {
 public:
  CharacterEnumerator(std::shared_ptr<const VoltageGraph> g, FiniteAbelianGroup gamma,
                      std::optional<long> support_limit = std::nullopt);

  /// Next valid character, or nullopt when exhausted.
  std::optional<Character> next();

 private:
  bool advance();
  bool current_valid() const;

  std::shared_ptr<const VoltageGraph> g_;
  FiniteAbelianGroup gamma_;
  long limit_;
  bool started_ = false;
  bool done_ = false;
  std::vector<long> subset_;
  std::vector<long> values_;  // group indices in [1, |gamma|)
  std::vector<std::vector<std::pair<long, long>>> occurrences_;  // edge -> (relator, net exponent)
};

CharacterEnumerator enumerate_characters(const VoltageGraph& g, const FiniteAbelianGroup& gamma,
                                         std::optional<long> support_limit = std::nullopt);

}  // namespace hfd
