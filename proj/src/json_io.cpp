#include "xpat/json_io.hpp"

namespace xpat::io {

namespace {

Json opt_int(const std::optional<Int>& v) { return v ? Json(v->get_str()) : Json(nullptr); }

std::optional<Int> opt_int_from(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return int_from_json(j.at(key));
}

} // namespace

Json to_json(const Int& v) { return v.get_str(); }

Int int_from_json(const Json& j) {
    if (j.is_string()) return parse_int(j.get<std::string>());
    if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    fail(ErrorKind::Parse, "expected an integer (string or number)");
}

Json to_json(const ExponentPattern& p) { return p.str(); }

ExponentPattern pattern_from_json(const Json& j) {
    if (!j.is_string()) fail(ErrorKind::Parse, "expected a pattern string");
    return ExponentPattern::parse(j.get<std::string>());
}

Json to_json(const Factorization& f) {
    Json factors = Json::array();
    for (const auto& fe : f.factors) factors.push_back({to_json(fe.prime), fe.exp});
    return Json{{"value", to_json(f.value)}, {"factors", factors}};
}

Json to_json(const LinearForm& L) { return Json::array({to_json(L.a), to_json(L.b)}); }

LinearForm form_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) fail(ErrorKind::Parse, "expected a form as [a, b]");
    return LinearForm(int_from_json(j[0]), int_from_json(j[1]));
}

Json to_json(const AdmissibilityCertificate& cert) {
    Json witnesses = Json::object();
    for (const auto& [p, t] : cert.witnesses) witnesses[std::to_string(p)] = to_json(t);
    Json reduced = Json::array();
    for (bool f : cert.reduced_flags) reduced.push_back(f);
    return Json{{"k", cert.k}, {"witnesses", witnesses}, {"reduced", reduced}};
}

AdmissibilityCertificate admissibility_from_json(const Json& j) {
    AdmissibilityCertificate cert;
    cert.k = j.at("k").get<std::size_t>();
    for (const auto& [key, val] : j.at("witnesses").items())
        cert.witnesses.emplace(to_u64(parse_int(key)), int_from_json(val));
    for (const auto& f : j.at("reduced")) cert.reduced_flags.push_back(f.get<bool>());
    return cert;
}

Json to_json(const Relation& rel) {
    return Json{{"i", rel.i},
                {"j", rel.j},
                {"ci", to_json(rel.ci)},
                {"cj", to_json(rel.cj)},
                {"value", to_json(rel.value)},
                {"sign", rel.sign}};
}

Relation relation_from_json(const Json& j) {
    Relation rel;
    rel.i = j.at("i").get<std::size_t>();
    rel.j = j.at("j").get<std::size_t>();
    rel.ci = int_from_json(j.at("ci"));
    rel.cj = int_from_json(j.at("cj"));
    rel.value = int_from_json(j.at("value"));
    rel.sign = j.at("sign").get<int>();
    return rel;
}

Json to_json(const RelationSystem& sys) {
    Json forms = Json::array();
    for (const auto& L : sys.forms) forms.push_back(to_json(L));
    Json relations = Json::array();
    for (const auto& r : sys.relations) relations.push_back(to_json(r));
    Json j{{"forms", forms}, {"relations", relations}};
    j["admissibility"] = sys.certificate ? to_json(*sys.certificate) : Json(nullptr);
    return j;
}

RelationSystem system_from_json(const Json& j) {
    RelationSystem sys;
    for (const auto& f : j.at("forms")) sys.forms.push_back(form_from_json(f));
    for (const auto& r : j.at("relations")) sys.relations.push_back(relation_from_json(r));
    if (j.contains("admissibility") && !j.at("admissibility").is_null())
        sys.certificate = admissibility_from_json(j.at("admissibility"));
    return sys;
}

Json to_json(const AdjoinPlan& plan) {
    Json r = Json::array();
    for (const auto& v : plan.r) r.push_back(to_json(v));
    return Json{{"r", r}, {"x", to_json(plan.x)}, {"modulus", to_json(plan.modulus)}};
}

AdjoinPlan plan_from_json(const Json& j) {
    AdjoinPlan plan;
    for (const auto& v : j.at("r")) plan.r.push_back(int_from_json(v));
    plan.x = int_from_json(j.at("x"));
    plan.modulus = int_from_json(j.at("modulus"));
    return plan;
}

Json to_json(const E2Pair& pair) {
    return Json{{"q1", to_json(pair.q1)},
                {"q2", to_json(pair.q2)},
                {"j", pair.j},
                {"g", pair.g},
                {"q1_primes", Json::array({to_json(pair.p11), to_json(pair.p12)})},
                {"q2_primes", Json::array({to_json(pair.p21), to_json(pair.p22)})},
                {"bezout", Json{{"a", to_json(pair.bezout.a)}, {"b", to_json(pair.bezout.b)}}}};
}

E2Pair e2pair_from_json(const Json& j) {
    E2Pair pair;
    pair.q1 = int_from_json(j.at("q1"));
    pair.q2 = int_from_json(j.at("q2"));
    pair.j = j.at("j").get<unsigned>();
    pair.g = j.at("g").get<unsigned>();
    pair.p11 = int_from_json(j.at("q1_primes").at(0));
    pair.p12 = int_from_json(j.at("q1_primes").at(1));
    pair.p21 = int_from_json(j.at("q2_primes").at(0));
    pair.p22 = int_from_json(j.at("q2_primes").at(1));
    pair.bezout.a = int_from_json(j.at("bezout").at("a"));
    pair.bezout.b = int_from_json(j.at("bezout").at("b"));
    pair.bezout.q1 = pair.q1;
    pair.bezout.q2 = pair.q2;
    return pair;
}

Json to_json(const TraceStep& step) {
    Json divisors = Json::array();
    for (const auto& d : step.divisors) divisors.push_back(to_json(d));
    Json j{{"kind", step.kind}, {"r", to_json(step.r)}, {"x", to_json(step.x)},
           {"divisors", divisors}};
    j["plan"] = step.plan ? to_json(*step.plan) : Json(nullptr);
    j["system"] = to_json(step.system);
    return j;
}

TraceStep step_from_json(const Json& j) {
    TraceStep step;
    step.kind = j.at("kind").get<std::string>();
    step.r = int_from_json(j.at("r"));
    step.x = int_from_json(j.at("x"));
    for (const auto& d : j.at("divisors")) step.divisors.push_back(int_from_json(d));
    if (j.contains("plan") && !j.at("plan").is_null()) step.plan = plan_from_json(j.at("plan"));
    step.system = system_from_json(j.at("system"));
    return step;
}

Json to_json(const CaseTrace& trace) {
    Json j{{"case", case_name(trace.label)}};
    j["g2"] = opt_int(trace.g2);
    j["g3"] = opt_int(trace.g3);
    j["g5"] = opt_int(trace.g5);
    j["g9"] = opt_int(trace.g9);
    j["n2"] = opt_int(trace.n2);
    j["n3"] = opt_int(trace.n3);
    j["e2_pair"] = trace.pair ? to_json(*trace.pair) : Json(nullptr);
    if (trace.e2_params) {
        j["e2_search"] = Json{{"floor", to_json(trace.e2_params->floor)},
                              {"bound", trace.e2_params->bound}};
    } else {
        j["e2_search"] = nullptr;
    }
    j["initial"] = to_json(trace.initial);
    Json steps = Json::array();
    for (const auto& s : trace.steps) steps.push_back(to_json(s));
    j["steps"] = steps;
    return j;
}

CaseTrace trace_from_json(const Json& j) {
    CaseTrace trace;
    trace.label = parse_case(j.at("case").get<std::string>());
    trace.g2 = opt_int_from(j, "g2");
    trace.g3 = opt_int_from(j, "g3");
    trace.g5 = opt_int_from(j, "g5");
    trace.g9 = opt_int_from(j, "g9");
    trace.n2 = opt_int_from(j, "n2");
    trace.n3 = opt_int_from(j, "n3");
    if (j.contains("e2_pair") && !j.at("e2_pair").is_null())
        trace.pair = e2pair_from_json(j.at("e2_pair"));
    if (j.contains("e2_search") && !j.at("e2_search").is_null()) {
        E2SearchParams params;
        params.floor = int_from_json(j.at("e2_search").at("floor"));
        params.bound = j.at("e2_search").at("bound").get<std::uint64_t>();
        trace.e2_params = params;
    }
    trace.initial = system_from_json(j.at("initial"));
    for (const auto& s : j.at("steps")) trace.steps.push_back(step_from_json(s));
    return trace;
}

Json to_json(const ConstructionCertificate& cert) {
    Json j{{"shift", to_json(cert.shift)}, {"case", case_name(cert.trace.label)}};
    Json forms = Json::array();
    for (const auto& L : cert.system.forms) forms.push_back(to_json(L));
    j["forms"] = forms;
    Json relations = Json::array();
    for (const auto& r : cert.system.relations) relations.push_back(to_json(r));
    j["relations"] = relations;
    j["admissibility"] =
        cert.system.certificate ? to_json(*cert.system.certificate) : Json(nullptr);
    j["trace"] = to_json(cert.trace);
    Json pats = Json::array();
    for (const auto& [p, q] : cert.coeff_patterns)
        pats.push_back(Json::array({to_json(p), to_json(q)}));
    j["coefficient_patterns"] = pats;
    j["minimal_target"] = to_json(cert.minimal_target);
    j["completion_target"] = to_json(cert.completion_target);
    j["completion_floor"] = to_json(cert.completion_floor);
    j["completed"] = to_json(cert.completed);
    j["final_pattern"] = to_json(cert.final_pattern);
    j["sharp_final_pattern"] = to_json(cert.sharp_final_pattern);
    Json plans = Json::array();
    for (const auto& step : cert.trace.steps)
        if (step.plan) plans.push_back(to_json(*step.plan));
    plans.push_back(to_json(cert.completion_plan));
    j["adjoin_plans"] = plans;
    return j;
}

ConstructionCertificate certificate_from_json(const Json& j) {
    ConstructionCertificate cert;
    cert.shift = int_from_json(j.at("shift"));
    cert.trace = trace_from_json(j.at("trace"));
    RelationSystem sys;
    for (const auto& f : j.at("forms")) sys.forms.push_back(form_from_json(f));
    for (const auto& r : j.at("relations")) sys.relations.push_back(relation_from_json(r));
    if (j.contains("admissibility") && !j.at("admissibility").is_null())
        sys.certificate = admissibility_from_json(j.at("admissibility"));
    cert.system = std::move(sys);
    auto pats = j.at("coefficient_patterns");
    if (!pats.is_array() || pats.size() != 3)
        fail(ErrorKind::Parse, "coefficient_patterns must list three pairs");
    for (std::size_t f = 0; f < 3; ++f)
        cert.coeff_patterns[f] = {pattern_from_json(pats[f].at(0)),
                                  pattern_from_json(pats[f].at(1))};
    cert.minimal_target = pattern_from_json(j.at("minimal_target"));
    cert.completion_target = pattern_from_json(j.at("completion_target"));
    cert.completion_floor = int_from_json(j.at("completion_floor"));
    cert.completed = system_from_json(j.at("completed"));
    cert.final_pattern = pattern_from_json(j.at("final_pattern"));
    cert.sharp_final_pattern = pattern_from_json(j.at("sharp_final_pattern"));
    Json plans = j.at("adjoin_plans");
    if (!plans.is_array() || plans.empty())
        fail(ErrorKind::Parse, "adjoin_plans must end with the completion plan");
    cert.completion_plan = plan_from_json(plans.back());
    return cert;
}

Json to_json(const ArithValues& v) {
    return Json{{"d", to_json(v.d)},
                {"Omega", v.big_omega},
                {"omega", v.small_omega},
                {"mu", v.mu},
                {"lambda", v.lambda}};
}

Json to_json(const Witness& w) {
    Json j{{"x", to_json(w.x)}, {"n", to_json(w.n)}, {"pattern", to_json(w.pattern)}};
    j["fx"] = to_json(w.fx);
    j["fxn"] = to_json(w.fxn);
    if (w.source == Witness::Source::Direct) {
        j["provenance"] = Json{{"kind", "direct"}};
    } else {
        j["provenance"] =
            Json{{"kind", "certificate"}, {"m", to_json(w.m)}, {"i", w.form_i}, {"j", w.form_j}};
    }
    return j;
}

Json to_json(const WitnessReport& rep) {
    Json decades = Json::object();
    for (const auto& [d, c] : rep.per_decade) decades[std::to_string(d)] = c;
    Json j{{"count", rep.count}};
    j["first"] = rep.first ? Json(rep.first->get_str()) : Json(nullptr);
    j["per_decade"] = decades;
    j["values"] = to_json(rep.values);
    return j;
}

} // namespace xpat::io
