// Command-line front end. Exit codes: 0 computed, 1 usage error, 2 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hfd/json_io.hpp"

using namespace hfd;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBudget = 2;

Json read_json_arg(const std::string& arg) {
  if (arg == "-") return Json::parse(std::cin);
  std::ifstream in(arg);
  if (in) return Json::parse(in);
  return Json::parse(arg);
}

/// "trefoil", "K<a>" or a JSON matrix (inline or a file).
SeifertMatrix knot_from_arg(const std::string& arg) {
  if (arg == "trefoil") {
    IntMatrix m(2, 2);
    m << -1, 1, 0, -1;
    return SeifertMatrix(m);
  }
  if (arg.size() > 1 && (arg[0] == 'K' || arg[0] == 'k') && arg.find_first_not_of("-0123456789", 1) == std::string::npos)
    return k_a_matrix(std::stol(arg.substr(1)));
  return seifert_from_json(read_json_arg(arg));
}

std::string verdict_str(const ObstructionReport& r) {
  return r.verdict == ObstructionReport::Verdict::obstructed ? "obstructed" : "unobstructed at this tower";
}

void print_invariants(const WittInvariants& inv) {
  std::cout << "conductor     " << inv.conductor << "\n";
  std::cout << "signature     " << inv.signature << "\n";
  std::cout << "rank mod 2    " << inv.rank_mod2 << "\n";
  std::cout << "discriminant  " << to_json(inv.discriminant_raw).dump() << "\n";
  if (inv.discriminant_class) {
    std::cout << "disc class    " << inv.discriminant_class->representative.get_str() << " (mod Q(i)-norms)\n";
    for (const auto& [p, s] : inv.discriminant_class->certificate.symbols)
      std::cout << "  (" << inv.discriminant_class->value.str() << ", -1)_" << p.get_str() << " = " << s << "\n";
  }
}

void print_report(const ObstructionReport& r) {
  print_invariants(r.invariants);
  std::cout << "verdict       " << verdict_str(r) << "\n";
  for (const auto& n : r.notes) std::cout << "  " << n << "\n";
  if (r.cross_path && r.cross_path->applicable)
    std::cout << "cross-path    " << (r.cross_path->agree ? "agree" : "DISAGREE") << " (formula "
              << r.cross_path->formula_discriminant.str() << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian forms, Witt classes and abelian cover towers for link concordance"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  auto* witt = app.add_subcommand("witt", "invariants of a hermitian form given as JSON");
  std::string form_arg;
  witt->add_option("form", form_arg, "JSON form, file path or - for stdin")->required();

  auto* kd = app.add_subcommand("knot-defect", "[lambda_r(A, zeta_d^s)] - [lambda_r(A, 1)]");
  std::string knot_arg;
  long r = 1, s = 0, d = 4;
  kd->add_option("A", knot_arg, "trefoil, K<a>, or a JSON Seifert matrix")->required();
  kd->add_option("r", r)->required()->check(CLI::PositiveNumber);
  kd->add_option("s", s)->required();
  kd->add_option("d", d)->required()->check(CLI::PositiveNumber);

  auto* bd = app.add_subcommand("bing-double", "slice obstruction or signature recovery for Bing doubles");
  long bd_a = 1, bd_n = 1, bd_s = 1;
  std::optional<long> bd_d;
  std::string bd_knot;
  bd->add_option("--a", bd_a, "K_a parameter");
  bd->add_option("--n", bd_n, "Bing double height")->check(CLI::Range(1, 3));
  bd->add_option("--d", bd_d, "conductor (selects signature recovery)");
  bd->add_option("--s", bd_s, "residue for signature recovery");
  bd->add_option("--knot", bd_knot, "knot for signature recovery (default K_a)");

  auto* lens = app.add_subcommand("lens-seed", "scan of lens-space seed infections");
  long r1 = 4, r2 = 4, la = 1, support = 2, budget = 200000;
  bool entries = false;
  lens->add_option("--r1", r1)->check(CLI::Range(2, 64));
  lens->add_option("--r2", r2)->check(CLI::Range(2, 64));
  lens->add_option("--a", la);
  lens->add_option("--support", support, "support limit of scanned characters")->check(CLI::Range(1, 3));
  lens->add_option("--budget", budget, "maximum number of evaluations")->check(CLI::PositiveNumber);
  lens->add_flag("--entries", entries, "include every scanned entry in JSON output");

  auto* dual = app.add_subcommand("dual-primes", "dual sequence (a_i, p_i) with symbol tables");
  int count = 2;
  FactorBudget fb;
  dual->add_option("--count", count)->check(CLI::Range(0, 8));
  dual->add_option("--trial-limit", fb.trial_limit);
  dual->add_option("--rho-iterations", fb.rho_iterations);

  auto* dist = app.add_subcommand("distinguish", "pairwise certificates for the distinguished classes");
  dist->add_option("--count", count)->check(CLI::Range(0, 8));
  dist->add_option("--trial-limit", fb.trial_limit);
  dist->add_option("--rho-iterations", fb.rho_iterations);

  auto* tower = app.add_subcommand("tower", "build and inspect a tower from JSON");
  std::string tower_arg;
  tower->add_option("input", tower_arg,
                    "JSON {graph, characters: [...], alpha?: word, gamma?: orders}, file path or -")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*witt) {
      const HermitianForm h = hermitian_from_json(read_json_arg(form_arg));
      const WittClass x = WittClass::of(h);
      const WittInvariants inv = witt_invariants(x);
      if (json) {
        Json j = to_json(inv);
        j["reduced"] = to_json(x.representative());
        std::cout << j.dump(2) << "\n";
      } else {
        print_invariants(inv);
        std::cout << "reduced dim   " << x.representative().dim() << "\n";
      }
    } else if (*kd) {
      const SeifertMatrix a = knot_from_arg(knot_arg);
      const ObstructionReport rep = obstruction_report(knot_cover_defect(a, r, ((s % d) + d) % d, d));
      if (json) {
        Json j = to_json(rep);
        j["alexander"] = to_json(alexander(a));
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "Alexander     " << alexander(a).str() << "\n";
        print_report(rep);
      }
    } else if (*bd) {
      if (bd_d) {
        const SeifertMatrix a = bd_knot.empty() ? k_a_matrix(bd_a) : knot_from_arg(bd_knot);
        const SignatureRecovery sr = bd_signature_recovery(a, bd_n, *bd_d, bd_s);
        if (json) {
          std::cout << to_json(sr).dump(2) << "\n";
        } else {
          std::cout << "defect signature       " << sr.defect_signature << "\n";
          std::cout << "2 sign lambda_1        " << 2 * sr.lambda1_signature << "\n";
          std::cout << "2 Levine-Tristram      " << 2 * sr.levine_tristram << "\n";
          print_report(sr.report);
        }
      } else {
        const ObstructionReport rep = bd_slice_obstruction(bd_a, bd_n);
        if (json) std::cout << to_json(rep).dump(2) << "\n";
        else print_report(rep);
      }
    } else if (*lens) {
      const LensScanReport rep = lens_seed_scan(r1, r2, la, support, budget, entries);
      if (json) {
        std::cout << to_json(rep).dump(2) << "\n";
      } else {
        std::cout << "level-1 characters  " << rep.level1_characters << "\n";
        std::cout << "evaluations         " << rep.evaluations << "\n";
        std::cout << "shape test          " << (rep.all_shapes_pass ? "all pass" : "FAILURES") << "\n";
        std::cout << "r_j in {1, 2}       " << (rep.all_r_in_1_2 ? "yes" : "NO") << "\n";
        std::cout << "cross-path          " << (rep.all_cross_paths_agree ? "agree" : "DISAGREE") << "\n";
        for (const auto& [k, v] : rep.class_histogram) std::cout << "  " << k << ": " << v << "\n";
        if (rep.realization)
          std::cout << "realization         class " << rep.realization->shape.discriminant.str() << " (n1 = n2 = 1)\n";
        else
          std::cout << "realization         none found\n";
      }
      if (rep.budget_exhausted) {
        std::cerr << "evaluation budget exhausted\n";
        return kBudget;
      }
    } else if (*dual) {
      const DualSequence seq = dual_sequence(count, fb);
      if (json) {
        std::cout << to_json(seq).dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < seq.pairs.size(); ++i)
          std::cout << "a_" << i + 1 << " = " << seq.pairs[i].a.get_str() << "  p_" << i + 1 << " = "
                    << seq.pairs[i].p.get_str() << "\n";
        for (const auto& e : dual_symbol_table(seq))
          std::cout << "  at p_" << e.i + 1 << ": value " << e.j + 1 << " symbols " << e.symbol_r1 << " "
                    << e.symbol_r2 << "\n";
        std::cout << "conditions " << (dual_conditions_hold(seq) ? "hold" : "FAIL") << "\n";
      }
      if (seq.truncated) {
        std::cerr << "truncated: " << seq.truncation_reason << "\n";
        return kBudget;
      }
    } else if (*dist) {
      const DistinguisherReport rep = homology_cobordism_distinguisher(count, fb);
      if (json) {
        std::cout << to_json(rep).dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < rep.classes.size(); ++i)
          std::cout << "class " << i + 1 << " = " << rep.classes[i].get_str() << "\n";
        for (const auto& e : rep.entries) {
          std::cout << "  " << e.i << " vs " << e.j << " at p = " << e.prime.get_str() << ": class " << e.class_symbol;
          for (int g : e.generator_symbols) std::cout << " gen " << g;
          std::cout << (e.distinguished ? "  distinguished" : "  NOT distinguished") << "\n";
        }
      }
      if (rep.sequence.truncated) {
        std::cerr << "truncated: " << rep.sequence.truncation_reason << "\n";
        return kBudget;
      }
    } else if (*tower) {
      const Json input = read_json_arg(tower_arg);
      auto g = std::make_shared<const VoltageGraph>(graph_from_json(input.at("graph")));
      Tower t(g);
      if (input.contains("characters"))
        for (const auto& c : input.at("characters")) t.push(character_from_json(c, t.top().edge_count()));
      Json out = tower_summary(t);
      if (input.contains("gamma")) {
        FiniteAbelianGroup gamma(input.at("gamma").get<std::vector<long>>());
        out["character_rank"] = character_rank(t.top(), gamma);
      }
      if (input.contains("alpha")) {
        Json recs = Json::array();
        for (const auto& rec : loop_lift_collection(word_from_json(input.at("alpha"), g->basepoint()), t))
          recs.push_back(to_json(rec));
        out["loop_lifts"] = recs;
      }
      std::cout << (json ? out.dump(2) : out.dump()) << "\n";
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
