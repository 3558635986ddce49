#ifndef HSINT_IO_HPP
#define HSINT_IO_HPP

#include <json.hpp>

#include "hsint/binomial.hpp"
#include "hsint/logint.hpp"

namespace hsint {

using json = nlohmann::json;

// { p, variables, length, images: per variable [[slot, poly], ...] };
// omitted slots are zero and slot 0 is implied by the variable.
json derivation_to_json(const HSDerivation& d);
HSDerivation derivation_from_json(const json& j);

json certificate_to_json(const IntegralCertificate& c);
struct LoadedCertificate {
  HSDerivation derivation;
  Poly h;
  size_t verified_to;
};
LoadedCertificate certificate_from_json(const json& j);

json witness_to_json(const LeapWitness& w);
json piecewise_to_json(const PiecewiseModule& m);
json probe_to_json(const ProbeReport& r);
json invariants_to_json(const CurveInvariants& inv);

std::string cert_kind_name(CertKind k);

}  // namespace hsint

#endif
