#pragma once

#include "sniep/ctrace.hpp"
#include "sniep/equiv.hpp"
#include "sniep/hcalc.hpp"
#include "sniep/numkit.hpp"
#include "sniep/soto.hpp"
#include "sniep/soules.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace sniep::io {

using Json = nlohmann::json;

// Rationals are written as "p/q" strings; numbers and decimal strings are accepted on input.
Json to_json(const Rational& q);
Rational rational_from(const Json& j);
Json to_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from(const Json& j);

Json to_json(const HCertificate& cert);
HCertificate hcert_from(const Json& j);

Json to_json(const SotoCertificate& cert);
SotoCertificate soto_from(const Json& j);

Json to_json(const CTrace& trace);
CTrace trace_from(const Json& j);

// Index sets are 1-based in JSON.
Json to_json(const SoulesSpec& spec);
SoulesSpec soules_from(const Json& j);
Json to_json(const SoulesRealization& real);
SoulesRealization realization_from(const Json& j);

Json to_json(const SymMatrix& a);
std::vector<std::vector<double>> matrix_from(const Json& j);
Json to_json(const VerificationReport& r);

}  // namespace sniep::io
