#pragma once

#include <json.hpp>

#include "xpat/witness.hpp"

// Certificate and witness JSON. Field order is fixed so equal inputs give
// byte-identical output; unbounded integers travel as decimal strings.
namespace xpat::io {

using Json = nlohmann::ordered_json;

Json to_json(const Int& v);
Json to_json(const ExponentPattern& p);
Json to_json(const Factorization& f);
Json to_json(const LinearForm& L);
Json to_json(const AdmissibilityCertificate& cert);
Json to_json(const Relation& rel);
Json to_json(const RelationSystem& sys);
Json to_json(const AdjoinPlan& plan);
Json to_json(const E2Pair& pair);
Json to_json(const TraceStep& step);
Json to_json(const CaseTrace& trace);
Json to_json(const ConstructionCertificate& cert);
Json to_json(const Witness& w);
Json to_json(const WitnessReport& rep);
Json to_json(const ArithValues& v);

Int int_from_json(const Json& j);
ExponentPattern pattern_from_json(const Json& j);
LinearForm form_from_json(const Json& j);
AdmissibilityCertificate admissibility_from_json(const Json& j);
Relation relation_from_json(const Json& j);
RelationSystem system_from_json(const Json& j);
AdjoinPlan plan_from_json(const Json& j);
E2Pair e2pair_from_json(const Json& j);
TraceStep step_from_json(const Json& j);
CaseTrace trace_from_json(const Json& j);
ConstructionCertificate certificate_from_json(const Json& j);

} // namespace xpat::io
