#include "hfd/json_io.hpp"

#include <limits>

namespace hfd {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonFormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long as_long(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw JsonFormatError(std::string(what) + " must be an integer");
  return j.get<long>();
}

}  // namespace

Json to_json(const Rational& x) { return x.str(); }
Json to_json(const BigInt& x) { return x.get_str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw JsonFormatError(std::string("bad rational: ") + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw JsonFormatError("rational must be a string or an integer");
}

BigInt bigint_from_json(const Json& j) {
  const Rational r = rational_from_json(j);
  if (!r.is_integer()) throw JsonFormatError("expected an integer");
  return r.numerator();
}

Json to_json(const Cyclotomic& x) {
  Json c = Json::array();
  for (const auto& q : x.coeffs()) c.push_back(q.str());
  return Json{{"d", x.conductor()}, {"coeffs", c}};
}

Cyclotomic cyclotomic_from_json(const Json& j) {
  const long d = as_long(field(j, "d"), "d");
  if (d < 1) throw JsonFormatError("d must be positive");
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array()) throw JsonFormatError("coeffs must be an array");
  std::vector<Rational> coeffs;
  for (const auto& c : cs) coeffs.push_back(rational_from_json(c));
  return Cyclotomic(d, std::move(coeffs));
}

namespace {

Cyclotomic entry_from_json(const Json& e, long d) {
  if (e.is_array()) {
    std::vector<Rational> coeffs;
    for (const auto& c : e) coeffs.push_back(rational_from_json(c));
    return Cyclotomic(d, std::move(coeffs));
  }
  if (e.is_object()) return cyclotomic_from_json(e).lift_to(d);
  return Cyclotomic(d, rational_from_json(e));
}

}  // namespace

Json to_json(const HermitianForm& h) {
  Json rows = Json::array();
  for (Index i = 0; i < h.dim(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < h.dim(); ++k) {
      Json c = Json::array();
      for (const auto& q : h.gram()(i, k).coeffs()) c.push_back(q.str());
      row.push_back(c);
    }
    rows.push_back(row);
  }
  return Json{{"conductor", h.conductor()}, {"gram", rows}};
}

HermitianForm hermitian_from_json(const Json& j) {
  const long d = as_long(field(j, "conductor"), "conductor");
  if (d < 1) throw JsonFormatError("conductor must be positive");
  const Json& g = field(j, "gram");
  if (!g.is_array()) throw JsonFormatError("gram must be an array");
  const auto n = static_cast<Index>(g.size());
  CycMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const Json& row = g[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) throw JsonFormatError("gram must be square");
    for (Index k = 0; k < n; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)], d);
  }
  return HermitianForm(d, std::move(m));
}

Json to_json(const SymbolCertificate& c) {
  Json syms = Json::array();
  for (const auto& [p, s] : c.symbols) syms.push_back(Json{{"prime", p.get_str()}, {"symbol", s}});
  return Json{{"value", c.value.str()},
              {"symbols", syms},
              {"verdict", c.verdict == SymbolCertificate::Verdict::norm ? "norm" : "not_norm"}};
}

Json to_json(const WittInvariants& inv) {
  Json j{{"conductor", inv.conductor},
         {"signature", inv.signature},
         {"rank_mod2", inv.rank_mod2},
         {"discriminant", to_json(inv.discriminant_raw)}};
  if (inv.discriminant_class) {
    j["discriminant_class"] = Json{{"value", inv.discriminant_class->value.str()},
                                   {"representative", inv.discriminant_class->representative.get_str()},
                                   {"certificate", to_json(inv.discriminant_class->certificate)}};
  }
  return j;
}

Json to_json(const SeifertMatrix& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.entries().rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < a.entries().cols(); ++k) row.push_back(a.entries()(i, k));
    rows.push_back(row);
  }
  return rows;
}

SeifertMatrix seifert_from_json(const Json& j) {
  if (!j.is_array()) throw JsonFormatError("Seifert matrix must be an array of rows");
  const auto n = static_cast<Index>(j.size());
  IntMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) throw JsonFormatError("Seifert matrix must be square");
    for (Index k = 0; k < n; ++k) m(i, k) = as_long(row[static_cast<std::size_t>(k)], "matrix entry");
  }
  return SeifertMatrix(std::move(m));
}

Json to_json(const LaurentPolynomial& p) {
  Json j = Json::object();
  for (const auto& [e, c] : p.coeffs()) {
    if (c.fits_slong_p()) j[std::to_string(e)] = c.get_si();
    else j[std::to_string(e)] = c.get_str();
  }
  return j;
}

LaurentPolynomial laurent_from_json(const Json& j) {
  if (!j.is_object()) throw JsonFormatError("Laurent polynomial must be an object");
  std::map<long, BigInt> c;
  for (const auto& [k, v] : j.items()) {
    long e = 0;
    try {
      std::size_t used = 0;
      e = std::stol(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      throw JsonFormatError("bad exponent key \"" + k + "\"");
    }
    c[e] = bigint_from_json(v);
  }
  return LaurentPolynomial(c);
}

Json to_json(const Word& w) {
  Json a = Json::array();
  for (const auto& l : w.letters) a.push_back(Json::array({l.edge, l.exp}));
  return a;
}

Word word_from_json(const Json& j, long start) {
  if (!j.is_array()) throw JsonFormatError("word must be an array of [edge, exp]");
  Word w{start, {}};
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2) throw JsonFormatError("letter must be [edge, exp]");
    const long e = as_long(l[0], "edge");
    const long x = as_long(l[1], "exp");
    if (x != 1 && x != -1) throw JsonFormatError("letter exponent must be 1 or -1");
    w.letters.push_back(Letter{e, static_cast<int>(x)});
  }
  return w;
}

Json to_json(const VoltageGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.source, e.target}));
  Json rel = Json::array();
  for (const auto& r : g.relators()) rel.push_back(to_json(r));
  return Json{{"vertices", g.vertex_count()}, {"edges", edges}, {"basepoint", g.basepoint()}, {"relators", rel}};
}

VoltageGraph graph_from_json(const Json& j) {
  const long v = as_long(field(j, "vertices"), "vertices");
  const long base = j.contains("basepoint") ? as_long(j.at("basepoint"), "basepoint") : 0;
  std::vector<Edge> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw JsonFormatError("edge must be [u, v]");
    edges.push_back(Edge{as_long(e[0], "edge source"), as_long(e[1], "edge target")});
  }
  // Relators are loops; each starts at the source of its first letter.
  std::vector<Word> rel;
  if (j.contains("relators")) {
    for (const auto& r : j.at("relators")) {
      Word w = word_from_json(r, 0);
      if (!w.letters.empty()) {
        const Letter& l = w.letters.front();
        if (l.edge < 0 || l.edge >= static_cast<long>(edges.size())) throw JsonFormatError("relator edge out of range");
        const Edge& e = edges[static_cast<std::size_t>(l.edge)];
        w.start = l.exp > 0 ? e.source : e.target;
      }
      rel.push_back(std::move(w));
    }
  }
  return VoltageGraph(v, std::move(edges), base, std::move(rel));
}

Json to_json(const Character& chi) {
  Json assign = Json::object();
  for (long e : chi.support()) assign[std::to_string(e)] = chi.value(e);
  return Json{{"orders", chi.target().orders()}, {"assignment", assign}};
}

Character character_from_json(const Json& j, long edge_count) {
  std::vector<long> orders;
  for (const auto& o : field(j, "orders")) orders.push_back(as_long(o, "order"));
  FiniteAbelianGroup g(orders);
  std::map<long, FiniteAbelianGroup::Element> assign;
  if (j.contains("assignment")) {
    for (const auto& [k, v] : j.at("assignment").items()) {
      long e = 0;
      try {
        e = std::stol(k);
      } catch (const std::exception&) {
        throw JsonFormatError("bad edge key \"" + k + "\"");
      }
      FiniteAbelianGroup::Element x;
      if (v.is_array()) {
        for (const auto& r : v) x.push_back(as_long(r, "residue"));
      } else {
        x.push_back(as_long(v, "residue"));
      }
      if (x.size() != orders.size()) throw JsonFormatError("residue vector has the wrong length");
      assign[e] = g.reduce(x);
    }
  }
  return Character(g, edge_count, assign);
}

Json to_json(const LoopLiftRecord& r) {
  return Json{{"start", r.start}, {"r", r.r}, {"length", r.lifted_word.size()}};
}

Json to_json(const LiftTerm& t) { return Json{{"start", t.start}, {"r", t.r}, {"value", t.value}}; }

Json to_json(const CrossPathCheck& c) {
  Json j{{"applicable", c.applicable}};
  if (c.applicable) {
    j["agree"] = c.agree;
    j["witt_discriminant"] = c.witt_discriminant.str();
    j["formula_discriminant"] = c.formula_discriminant.str();
  }
  return j;
}

Json to_json(const ObstructionReport& r) {
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(to_json(t));
  Json j{{"representative", to_json(r.witt_class.representative())},
         {"invariants", to_json(r.invariants)},
         {"certificates", certs},
         {"verdict", r.verdict == ObstructionReport::Verdict::obstructed ? "obstructed" : "unobstructed_at_this_tower"},
         {"notes", r.notes},
         {"terms", terms}};
  if (r.cross_path) j["cross_path"] = to_json(*r.cross_path);
  return j;
}

Json to_json(const LiftStructure& s) {
  Json recs = Json::array();
  for (std::size_t k = 0; k < s.records.size(); ++k) {
    Json rj = to_json(s.records[k]);
    if (k < s.values.size()) rj["value"] = s.values[k];
    recs.push_back(rj);
  }
  Json j{{"character", to_json(s.character)},
         {"total_degree", s.total_degree},
         {"sum_r", s.sum_r},
         {"candidates_tried", s.candidates_tried},
         {"records", recs}};
  if (s.first) j["first"] = *s.first;
  if (s.second) j["second"] = *s.second;
  return j;
}

Json to_json(const SignatureRecovery& s) {
  return Json{{"defect_signature", s.defect_signature},
              {"lambda1_signature", s.lambda1_signature},
              {"levine_tristram", s.levine_tristram},
              {"structure", to_json(s.structure)},
              {"report", to_json(s.report)}};
}

namespace {

Json entry_json(const LensScanEntry& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms) terms.push_back(to_json(t));
  return Json{{"level1", to_json(e.level1)},
              {"top", to_json(e.top)},
              {"terms", terms},
              {"signature", e.signature},
              {"discriminant", e.shape.discriminant.str()},
              {"n1", e.shape.n1},
              {"n2", e.shape.n2},
              {"shape_passes", e.shape.passes},
              {"symbols_p1", to_json(e.shape.at_p1)},
              {"symbols_p2", to_json(e.shape.at_p2)},
              {"cross_path", to_json(e.cross_path)}};
}

}  // namespace

Json to_json(const LensScanReport& r) {
  Json j{{"r1", r.r1},
         {"r2", r.r2},
         {"a", r.a},
         {"support_limit", r.support_limit},
         {"f1", r.f1.get_str()},
         {"f2", r.f2.get_str()},
         {"level1_characters", r.level1_characters},
         {"evaluations", r.evaluations},
         {"all_shapes_pass", r.all_shapes_pass},
         {"all_r_in_1_2", r.all_r_in_1_2},
         {"all_cross_paths_agree", r.all_cross_paths_agree},
         {"budget_exhausted", r.budget_exhausted},
         {"class_histogram", r.class_histogram}};
  if (r.p1) j["p1"] = r.p1->get_str();
  if (r.p2) j["p2"] = r.p2->get_str();
  j["realization"] = r.realization ? entry_json(*r.realization) : Json(nullptr);
  if (!r.entries.empty()) {
    Json es = Json::array();
    for (const auto& e : r.entries) es.push_back(entry_json(e));
    j["entries"] = es;
  }
  return j;
}

Json to_json(const DualSequence& s) {
  Json pairs = Json::array();
  for (const auto& p : s.pairs) pairs.push_back(Json{{"a", p.a.get_str()}, {"p", p.p.get_str()}});
  Json table = Json::array();
  for (const auto& e : dual_symbol_table(s))
    table.push_back(Json{{"i", e.i}, {"j", e.j}, {"symbol_r1", e.symbol_r1}, {"symbol_r2", e.symbol_r2}});
  Json j{{"pairs", pairs}, {"symbol_table", table}, {"conditions_hold", dual_conditions_hold(s)}, {"truncated", s.truncated}};
  if (s.truncated) j["truncation_reason"] = s.truncation_reason;
  return j;
}

Json to_json(const DistinguisherReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(c.get_str());
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"i", e.i},
                           {"j", e.j},
                           {"prime", e.prime.get_str()},
                           {"class_symbol", e.class_symbol},
                           {"generator_symbols", e.generator_symbols},
                           {"distinguished", e.distinguished}});
  return Json{{"sequence", to_json(r.sequence)},
              {"classes", classes},
              {"entries", entries},
              {"all_distinguished", r.all_distinguished}};
}

Json tower_summary(const Tower& t) {
  Json levels = Json::array();
  auto describe = [](const VoltageGraph& g) {
    return Json{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"betti", betti(g)},
                {"relators", g.relators().size()}};
  };
  Json base = describe(t.base());
  for (const auto& l : t.levels()) {
    Json lj = describe(l.cover());
    lj["deck_orders"] = l.deck().orders();
    lj["character"] = to_json(l.character());
    levels.push_back(lj);
  }
  return Json{{"base", base}, {"levels", levels}, {"degree", t.degree()}};
}

}  // namespace hfd
