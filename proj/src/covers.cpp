#include "hfd/covers.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace hfd {

// ---------------------------------------------------------------- groups

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("FiniteAbelianGroup needs at least one cyclic factor");
  for (long n : orders_) {
    if (n < 1) throw std::invalid_argument("cyclic orders must be >= 1");
    if (order_ > (1L << 40) / n) throw std::invalid_argument("group order too large");
    order_ *= n;
  }
}

long FiniteAbelianGroup::exponent() const {
  long e = 1;
  for (long n : orders_) e = std::lcm(e, n);
  return e;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::reduce(Element x) const {
  if (x.size() != orders_.size()) throw std::invalid_argument("group element has the wrong length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] %= orders_[i];
    if (x[i] < 0) x[i] += orders_[i];
  }
  return x;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::add(const Element& a, const Element& b) const {
  Element r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + b[i]) % orders_[i];
  return r;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::negate(const Element& a) const {
  Element r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (orders_[i] - a[i]) % orders_[i];
  return r;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::scale(const Element& a, long k) const {
  Element r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * k;
  return reduce(std::move(r));
}

bool FiniteAbelianGroup::is_zero(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
}

FiniteAbelianGroup::Element FiniteAbelianGroup::basis(long i) const {
  Element e = zero();
  e.at(static_cast<std::size_t>(i)) = 1 % orders_[static_cast<std::size_t>(i)];
  return e;
}

long FiniteAbelianGroup::index(const Element& a) const {
  long idx = 0, radix = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    idx += a[i] * radix;
    radix *= orders_[i];
  }
  return idx;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::element(long index) const {
  Element e(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    e[i] = index % orders_[i];
    index /= orders_[i];
  }
  return e;
}

// ---------------------------------------------------------------- words and graphs

Word Word::inverse() const {
  Word w{start, {}};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->edge, -it->exp});
  return w;
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

VoltageGraph::VoltageGraph(long vertex_count, std::vector<Edge> edges, long basepoint, std::vector<Word> relators)
    : vertices_(vertex_count), edges_(std::move(edges)), basepoint_(basepoint), relators_(std::move(relators)) {
  if (vertices_ < 1) throw InvalidGraph("graph needs at least one vertex");
  if (basepoint_ < 0 || basepoint_ >= vertices_) throw InvalidGraph("basepoint out of range");
  for (const auto& e : edges_)
    if (e.source < 0 || e.source >= vertices_ || e.target < 0 || e.target >= vertices_)
      throw InvalidGraph("edge endpoint out of range");
  std::vector<std::vector<long>> adj(static_cast<std::size_t>(vertices_));
  for (const auto& e : edges_) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  std::vector<bool> seen(static_cast<std::size_t>(vertices_), false);
  std::deque<long> queue{basepoint_};
  seen[basepoint_] = true;
  long reached = 1;
  while (!queue.empty()) {
    const long v = queue.front();
    queue.pop_front();
    for (long u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        queue.push_back(u);
      }
  }
  if (reached != vertices_) throw InvalidGraph("graph is not connected");
  for (const auto& r : relators_)
    if (!is_loop(r)) throw InvalidGraph("relator word is not a closed loop");
}

VoltageGraph VoltageGraph::wedge(long m, std::vector<Word> relators) {
  std::vector<Edge> edges(static_cast<std::size_t>(m), Edge{0, 0});
  return VoltageGraph(1, std::move(edges), 0, std::move(relators));
}

long VoltageGraph::end_of(const Word& w) const {
  if (w.start < 0 || w.start >= vertices_) throw InvalidWord("word starts outside the graph");
  long cur = w.start;
  for (const auto& l : w.letters) {
    if (l.edge < 0 || l.edge >= edge_count()) throw InvalidWord("letter uses unknown edge " + std::to_string(l.edge));
    const Edge& e = edges_[l.edge];
    if (l.exp == 1) {
      if (e.source != cur) throw InvalidWord("letters do not compose into a path");
      cur = e.target;
    } else if (l.exp == -1) {
      if (e.target != cur) throw InvalidWord("letters do not compose into a path");
      cur = e.source;
    } else {
      throw InvalidWord("letter exponent must be +1 or -1");
    }
  }
  return cur;
}

long betti(const VoltageGraph& g) { return g.edge_count() - g.vertex_count() + 1; }

// ---------------------------------------------------------------- characters

Character::Character(FiniteAbelianGroup target, long edge_count)
    : target_(std::move(target)), values_(static_cast<std::size_t>(edge_count), target_.zero()) {}

Character::Character(FiniteAbelianGroup target, long edge_count,
                     const std::map<long, FiniteAbelianGroup::Element>& assignment)
    : Character(std::move(target), edge_count) {
  for (const auto& [e, v] : assignment) set(e, v);
}

void Character::set(long edge, FiniteAbelianGroup::Element v) {
  if (edge < 0 || edge >= edge_count()) throw InvalidCharacter("character assigns a value to unknown edge");
  values_[static_cast<std::size_t>(edge)] = target_.reduce(std::move(v));
}

std::vector<long> Character::support() const {
  std::vector<long> s;
  for (long e = 0; e < edge_count(); ++e)
    if (!target_.is_zero(values_[static_cast<std::size_t>(e)])) s.push_back(e);
  return s;
}

FiniteAbelianGroup::Element path_value(const Character& chi, const Word& w) {
  const auto& G = chi.target();
  auto acc = G.zero();
  for (const auto& l : w.letters) acc = G.add(acc, l.exp > 0 ? chi.value(l.edge) : G.negate(chi.value(l.edge)));
  return acc;
}

FiniteAbelianGroup::Element evaluate_character(const VoltageGraph& g, const Character& chi, const Word& w) {
  if (chi.edge_count() != g.edge_count()) throw InvalidCharacter("character and graph disagree on edge count");
  if (!g.is_loop(w)) throw InvalidWord("character evaluation needs a closed loop");
  return path_value(chi, w);
}

bool kills_relators(const VoltageGraph& g, const Character& chi) {
  for (const auto& r : g.relators())
    if (!chi.target().is_zero(path_value(chi, r))) return false;
  return true;
}

// ---------------------------------------------------------------- covers

long DerivedCover::lift_edge_ending(long base_edge, long sheet) const {
  return back_sheet_[static_cast<std::size_t>(base_edge * deck().order() + sheet)] * base_->edge_count() + base_edge;
}

long DerivedCover::translate_vertex(long v, long h) const {
  const auto& G = deck();
  const long g = sheet_of_vertex(v);
  return lift_vertex(vertex_projection(v), G.index(G.add(G.element(g), G.element(h))));
}

std::pair<long, Word> DerivedCover::lift_word(const Word& w, long start) const {
  if (start < 0 || start >= cover_->vertex_count()) throw InvalidWord("lift start outside the cover");
  if (vertex_projection(start) != w.start) throw InvalidWord("lift start does not lie over the word's start");
  const auto& cedges = cover_->edges();
  const auto& bedges = base_->edges();
  const long V = base_->vertex_count();
  Word out{start, {}};
  out.letters.reserve(w.letters.size());
  long cur = start;
  for (const auto& l : w.letters) {
    const Edge& be = bedges.at(static_cast<std::size_t>(l.edge));
    long id;
    if (l.exp > 0) {
      if (be.source != cur % V) throw InvalidWord("letters do not compose into a path");
      id = lift_edge(l.edge, cur / V);
      cur = cedges[id].target;
    } else {
      if (be.target != cur % V) throw InvalidWord("letters do not compose into a path");
      id = lift_edge_ending(l.edge, cur / V);
      cur = cedges[id].source;
    }
    out.letters.push_back({id, l.exp});
  }
  return {cur, std::move(out)};
}

DerivedCover derive_cover(std::shared_ptr<const VoltageGraph> base, const Character& chi) {
  if (chi.edge_count() != base->edge_count()) throw InvalidCharacter("character and graph disagree on edge count");
  if (!kills_relators(*base, chi)) throw InvalidCharacter("character does not kill every relator");
  DerivedCover c(base, chi);
  const auto& G = chi.target();
  const long n = G.order();
  const long V = base->vertex_count();
  const long E = base->edge_count();
  c.voltage_.resize(static_cast<std::size_t>(E));
  for (long e = 0; e < E; ++e) c.voltage_[e] = G.index(chi.value(e));
  std::vector<long> forward(static_cast<std::size_t>(E * n));
  c.back_sheet_.resize(static_cast<std::size_t>(E * n));
  for (long e = 0; e < E; ++e) {
    const auto w = chi.value(e);
    for (long g = 0; g < n; ++g) {
      const long h = G.index(G.add(G.element(g), w));
      forward[e * n + g] = h;
      c.back_sheet_[e * n + h] = g;
    }
  }
  std::vector<Edge> edges(static_cast<std::size_t>(E * n));
  for (long g = 0; g < n; ++g)
    for (long e = 0; e < E; ++e) {
      const Edge& be = base->edges()[e];
      edges[g * E + e] = Edge{g * V + be.source, forward[e * n + g] * V + be.target};
    }
  // Provisional cover without relators so relator lifts can be traced.
  std::shared_ptr<const VoltageGraph> bare;
  try {
    bare = std::make_shared<const VoltageGraph>(V * n, edges, base->basepoint());
  } catch (const InvalidGraph&) {
    throw InvalidCharacter("derived cover is disconnected (character is not surjective on pi_1)");
  }
  c.cover_ = bare;
  if (base->relators().empty()) return c;
  std::vector<Word> relators;
  for (long g = 0; g < n; ++g)
    for (const auto& r : base->relators()) relators.push_back(c.lift_word(r, g * V + r.start).second);
  c.cover_ = std::make_shared<const VoltageGraph>(V * n, std::move(edges), base->basepoint(), std::move(relators));
  return c;
}

DerivedCover derive_cover(const VoltageGraph& base, const Character& chi) {
  return derive_cover(std::make_shared<const VoltageGraph>(base), chi);
}

std::pair<long, Word> lift_word(const DerivedCover& c, const Word& w, long start) { return c.lift_word(w, start); }

Character pullback(const DerivedCover& c, const Character& chi) {
  Character out(chi.target(), c.cover().edge_count());
  for (long e = 0; e < c.cover().edge_count(); ++e) out.set(e, chi.value(c.edge_projection(e)));
  return out;
}

// ---------------------------------------------------------------- towers

Tower::Tower(std::shared_ptr<const VoltageGraph> base) : base_(std::move(base)) {}

void Tower::push(const Character& chi) { levels_.push_back(derive_cover(top_ptr(), chi)); }

long Tower::degree() const {
  long d = 1;
  for (const auto& l : levels_) d *= l.deck().order();
  return d;
}

long Tower::project_to_base(long top_vertex) const {
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) top_vertex = it->vertex_projection(top_vertex);
  return top_vertex;
}

std::vector<long> Tower::basepoint_fiber() const {
  std::vector<long> fiber{base_->basepoint()};
  for (const auto& l : levels_) {
    std::vector<long> next;
    next.reserve(fiber.size() * static_cast<std::size_t>(l.deck().order()));
    for (long g = 0; g < l.deck().order(); ++g)
      for (long v : fiber) next.push_back(l.lift_vertex(v, g));
    fiber = std::move(next);
  }
  std::sort(fiber.begin(), fiber.end());
  return fiber;
}

std::pair<long, Word> Tower::lift(const Word& w, long top_start) const {
  std::vector<long> chain(levels_.size() + 1);
  chain.back() = top_start;
  for (std::size_t k = levels_.size(); k-- > 0;) chain[k] = levels_[k].vertex_projection(chain[k + 1]);
  if (chain[0] != w.start) throw InvalidWord("lift start does not lie over the word's start");
  std::pair<long, Word> cur{base_->end_of(w), w};
  for (std::size_t k = 0; k < levels_.size(); ++k) cur = levels_[k].lift_word(cur.second, chain[k + 1]);
  return cur;
}

std::vector<LoopLiftRecord> loop_lift_collection(const Word& alpha, const Tower& tower) {
  if (alpha.start != tower.base().basepoint() || !tower.base().is_loop(alpha))
    throw InvalidWord("alpha must be a loop at the basepoint");
  const std::vector<long> fiber = tower.basepoint_fiber();
  std::map<long, std::size_t> position;
  for (std::size_t i = 0; i < fiber.size(); ++i) position[fiber[i]] = i;
  std::vector<std::pair<long, Word>> step(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) step[i] = tower.lift(alpha, fiber[i]);

  std::vector<bool> black(fiber.size(), false);
  std::vector<LoopLiftRecord> records;
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (black[i]) continue;
    LoopLiftRecord rec;
    rec.start = fiber[i];
    rec.lifted_word = Word{fiber[i], {}};
    black[i] = true;
    std::size_t cur = i;
    for (;;) {
      const auto& w = step[cur].second.letters;
      rec.lifted_word.letters.insert(rec.lifted_word.letters.end(), w.begin(), w.end());
      const long end = step[cur].first;
      if (end == rec.start) break;
      cur = position.at(end);
      if (black[cur]) throw std::logic_error("lift of alpha is not a permutation of the fiber");
      black[cur] = true;
      ++rec.r;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

// ---------------------------------------------------------------- homology

std::vector<std::int64_t> homology_invariant_factors(const VoltageGraph& g) {
  // Spanning tree by BFS; each non-tree edge is a free generator of H_1 of the graph.
  const long V = g.vertex_count(), E = g.edge_count();
  std::vector<std::vector<std::pair<long, long>>> adj(static_cast<std::size_t>(V));
  for (long e = 0; e < E; ++e) {
    adj[g.edges()[e].source].push_back({e, g.edges()[e].target});
    adj[g.edges()[e].target].push_back({e, g.edges()[e].source});
  }
  std::vector<bool> seen(static_cast<std::size_t>(V), false), tree(static_cast<std::size_t>(E), false);
  std::deque<long> queue{g.basepoint()};
  seen[g.basepoint()] = true;
  while (!queue.empty()) {
    const long v = queue.front();
    queue.pop_front();
    for (const auto& [e, u] : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        tree[e] = true;
        queue.push_back(u);
      }
  }
  std::vector<long> column(static_cast<std::size_t>(E), -1);
  long b = 0;
  for (long e = 0; e < E; ++e)
    if (!tree[e]) column[e] = b++;

  const long m = static_cast<long>(g.relators().size());
  std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(m), std::vector<std::int64_t>(static_cast<std::size_t>(b), 0));
  for (long i = 0; i < m; ++i)
    for (const auto& l : g.relators()[i].letters)
      if (column[l.edge] >= 0) a[i][column[l.edge]] += l.exp;

  // Smith normal form by repeated minimal-pivot elimination.
  std::vector<std::int64_t> diag;
  for (long t = 0; t < std::min(m, b); ++t) {
    for (;;) {
      long pi = -1, pj = -1;
      for (long i = t; i < m; ++i)
        for (long j = t; j < b; ++j)
          if (a[i][j] != 0 && (pi < 0 || std::abs(a[i][j]) < std::abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;
      std::swap(a[t], a[pi]);
      for (long i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);
      bool clean = true;
      for (long i = t + 1; i < m; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        for (long j = t; j < b; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (long j = t + 1; j < b; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        for (long i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(std::abs(a[t][t]));
  }
done:
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const std::int64_t g2 = std::gcd(diag[i], diag[j]);
      const std::int64_t l = diag[i] / g2 * diag[j];
      diag[i] = g2;
      diag[j] = l;
    }
  std::vector<std::int64_t> out;
  for (auto d : diag)
    if (d != 1) out.push_back(d);
  for (long k = static_cast<long>(diag.size()); k < b; ++k) out.push_back(0);
  return out;
}

long character_rank(const VoltageGraph& g, const FiniteAbelianGroup& gamma) {
  if (g.relators().empty()) return betti(g);
  const long e = gamma.exponent();
  long r = 0;
  for (auto f : homology_invariant_factors(g))
    if (f == 0 || f % e == 0) ++r;
  return r;
}

// ---------------------------------------------------------------- enumeration

CharacterEnumerator::CharacterEnumerator(std::shared_ptr<const VoltageGraph> g, FiniteAbelianGroup gamma,
                                         std::optional<long> support_limit)
    : g_(std::move(g)), gamma_(std::move(gamma)) {
  limit_ = std::min(support_limit.value_or(g_->edge_count()), g_->edge_count());
  occurrences_.resize(static_cast<std::size_t>(g_->edge_count()));
  for (long i = 0; i < static_cast<long>(g_->relators().size()); ++i) {
    std::map<long, long> net;
    for (const auto& l : g_->relators()[i].letters) net[l.edge] += l.exp;
    for (const auto& [e, k] : net)
      if (k != 0) occurrences_[e].push_back({i, k});
  }
}

bool CharacterEnumerator::advance() {
  const long n = gamma_.order();
  const long E = g_->edge_count();
  if (n <= 1 || limit_ < 1 || E == 0) return false;
  if (subset_.empty()) {
    subset_ = {0};
    values_ = {1};
    return true;
  }
  for (long i = static_cast<long>(values_.size()) - 1; i >= 0; --i) {
    if (values_[i] + 1 < n) {
      ++values_[i];
      for (long j = i + 1; j < static_cast<long>(values_.size()); ++j) values_[j] = 1;
      return true;
    }
  }
  const long k = static_cast<long>(subset_.size());
  for (long i = k - 1; i >= 0; --i) {
    if (subset_[i] < E - k + i) {
      ++subset_[i];
      for (long j = i + 1; j < k; ++j) subset_[j] = subset_[j - 1] + 1;
      std::fill(values_.begin(), values_.end(), 1);
      return true;
    }
  }
  if (k + 1 > limit_) return false;
  subset_.resize(static_cast<std::size_t>(k + 1));
  std::iota(subset_.begin(), subset_.end(), 0L);
  values_.assign(static_cast<std::size_t>(k + 1), 1);
  return true;
}

bool CharacterEnumerator::current_valid() const {
  std::map<long, FiniteAbelianGroup::Element> sums;
  for (std::size_t i = 0; i < subset_.size(); ++i) {
    const auto v = gamma_.element(values_[i]);
    for (const auto& [rel, k] : occurrences_[subset_[i]]) {
      auto it = sums.try_emplace(rel, gamma_.zero()).first;
      it->second = gamma_.add(it->second, gamma_.scale(v, k));
    }
  }
  for (const auto& [rel, s] : sums)
    if (!gamma_.is_zero(s)) return false;
  return true;
}

std::optional<Character> CharacterEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return Character(gamma_, g_->edge_count());
  }
  while (advance()) {
    if (!current_valid()) continue;
    Character chi(gamma_, g_->edge_count());
    for (std::size_t i = 0; i < subset_.size(); ++i) chi.set(subset_[i], gamma_.element(values_[i]));
    return chi;
  }
  done_ = true;
  return std::nullopt;
}

CharacterEnumerator enumerate_characters(const VoltageGraph& g, const FiniteAbelianGroup& gamma,
                                         std::optional<long> support_limit) {
  return CharacterEnumerator(std::make_shared<const VoltageGraph>(g), gamma, support_limit);
}

}  // namespace hfd
