#pragma once

#include <json.hpp>

#include "hfd/covers.hpp"
#include "hfd/cyclotomic.hpp"
#include "hfd/numtheory.hpp"
#include "hfd/pipeline.hpp"
#include "hfd/seifert.hpp"
#include "hfd/witt.hpp"

namespace hfd {

using Json = nlohmann::json;

/// Raised for JSON input of the wrong shape.
class JsonFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rationals and big integers are strings ("num/den", decimal).
Json to_json(const Rational& x);
Json to_json(const BigInt& x);
Rational rational_from_json(const Json& j);
BigInt bigint_from_json(const Json& j);

/// {"d": d, "coeffs": ["num/den", ...]} in the power basis.
Json to_json(const Cyclotomic& x);
Cyclotomic cyclotomic_from_json(const Json& j);

/// {"conductor": d, "gram": [[[coeff strings], ...], ...]}; an entry may
/// also be a single rational string.
Json to_json(const HermitianForm& h);
HermitianForm hermitian_from_json(const Json& j);

Json to_json(const SymbolCertificate& c);
Json to_json(const WittInvariants& inv);

/// Nested integer arrays.
Json to_json(const SeifertMatrix& a);
SeifertMatrix seifert_from_json(const Json& j);

/// {"exponent": coefficient}.
Json to_json(const LaurentPolynomial& p);
LaurentPolynomial laurent_from_json(const Json& j);

/// {vertices, edges: [[u, v], ...], basepoint, relators: [[[edge, exp], ...], ...]}.
Json to_json(const VoltageGraph& g);
VoltageGraph graph_from_json(const Json& j);

/// Array of [edge, exp]; the start vertex is supplied by the caller.
Json to_json(const Word& w);
Word word_from_json(const Json& j, long start);

/// {orders: [...], assignment: {"edge": [residues]}} (zero values omitted).
Json to_json(const Character& chi);
Character character_from_json(const Json& j, long edge_count);

Json to_json(const LoopLiftRecord& r);
Json to_json(const LiftTerm& t);
Json to_json(const CrossPathCheck& c);
Json to_json(const ObstructionReport& r);
Json to_json(const LiftStructure& s);
Json to_json(const SignatureRecovery& s);
Json to_json(const LensScanReport& r);
Json to_json(const DistinguisherReport& r);

/// DualSequence with its full symbol table and the condition check.
Json to_json(const DualSequence& s);

/// Summary of each level: vertex/edge counts, deck orders, character rank.
Json tower_summary(const Tower& t);

}  // namespace hfd
