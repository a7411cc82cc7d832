#pragma once

#include <nlohmann/json.hpp>

#include "pfmirror/automorphy.hpp"
#include "pfmirror/bundle.hpp"
#include "pfmirror/cone.hpp"
#include "pfmirror/heisenberg.hpp"
#include "pfmirror/mirror.hpp"
#include "pfmirror/torus.hpp"

// Reading and writing the JSON documents accepted by the command line tool.
// Numbers may be given as JSON numbers (converted exactly) or as strings
// understood by parse_number ("1/2", "pi/3", "1+2i"). Every malformed input
// raises InputError or DimensionError.
namespace pfm::io {

using nlohmann::json;

PiComplex number_from_json(const json& j);
Rational rational_from_json(const json& j);
PiLinear real_from_json(const json& j);
std::int64_t int_from_json(const json& j);

// [[1,0],[0,1]], or the same text inside a string.
IntMatrix int_matrix_from_json(const json& j);
IntMatrix int_matrix_from_text(const std::string& text);

// {"n": 2, "T": [[{"re": "0", "im": "1"}, ...], ...]}; entries may also be
// plain numbers or strings. Entries involving π give a numeric torus.
TorusData torus_from_json(const json& j);

// {"rank", "order", "V": [M_1..M_n], "U": [...]}; a matrix entry is a list of
// power-basis coefficients, a rational scalar, or {"zeta": k, "coeff": c}.
CocycleSet cocycle_from_json(const json& j, int default_order);

// {"r", "A", "mu": [z_1..z_n] | {"re": [...], "im": [...]} | {"p": [...], "q": [...]},
//  "cocycle": optional}
BundleData bundle_from_json(const json& j, const TorusData& torus);

// {"r", "A", "p": [...], "q": [...]}
AffineLagrangian lagrangian_from_json(const json& j);

// {"m": [...], "n_prime": [...]}
LatticeVector lattice_from_json(const json& j, int n);
// [z_1, ..., z_n]
CVector point_from_json(const json& j, int n);

json to_json(const Rational& q);
json to_json(const QComplex& z);
json to_json(const PiLinear& x);
json to_json(const PiComplex& z);
json to_json(const Complex& z);
json to_json(const IntMatrix& m);
json to_json(const QCMatrix& m);
json to_json(const RatMatrix& m);
json to_json(const CMatrix& m);
json to_json(const Cyclotomic& c);
json to_json(const CycloMatrix& m);
json to_json(const exterior::FormElement& f);

json to_json(const TorusValidation& v);
json to_json(const HolomorphyReport& h);
json to_json(const GeneratorPairings& g);
json to_json(const CocycleReport& c);
json to_json(const CocycleSet& c);
json to_json(const ScriptA& a);
json to_json(const Theorem36Constants& c);
json to_json(const GaugeReport& g);
json to_json(const MinorsReport& m);
json to_json(const IntersectionResult& r);
json to_json(const Theorem41Report& r);
json to_json(const ConeFlatness& c);
json to_json(const ChernChain& c);
json to_json(const CiFactorization& c);
json to_json(const Section5Report& s);

}  // namespace pfm::io
