// xpat: construct and verify admissible-triple certificates for shifted
// exponent-pattern equalities, and search for concrete witnesses.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "xpat/json_io.hpp"

using namespace xpat;
using io::Json;

namespace {

std::uint64_t sieve_cap() {
    if (const char* env = std::getenv("XPAT_SIEVE_MAX")) {
        Int v = parse_int(env);
        if (v < 2 || !fits_u64(v)) fail(ErrorKind::Precondition, "bad XPAT_SIEVE_MAX");
        return to_u64(v);
    }
    return 100'000'000;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Precondition, "cannot write to " + path);
    out << text << "\n";
}

std::string human_form(const LinearForm& L) {
    return L.a.get_str() + "m" + (L.b < 0 ? "-" : "+") + Int(abs(L.b)).get_str();
}

std::string human_relation(const Relation& rel) {
    return "|" + rel.ci.get_str() + "*L" + std::to_string(rel.i + 1) + " - " + rel.cj.get_str() +
           "*L" + std::to_string(rel.j + 1) + "| = " + rel.value.get_str();
}

std::string human_system(const RelationSystem& sys) {
    std::string s;
    for (std::size_t i = 0; i < sys.forms.size(); ++i)
        s += "  L" + std::to_string(i + 1) + " = " + human_form(sys.forms[i]) + "\n";
    for (const auto& rel : sys.relations) s += "  " + human_relation(rel) + "\n";
    if (sys.certificate) {
        s += "  admissible, witnesses:";
        for (const auto& [p, t] : sys.certificate->witnesses)
            s += " t_" + std::to_string(p) + "=" + t.get_str();
        s += "\n";
    }
    return s;
}

std::string human_certificate(const ConstructionCertificate& cert) {
    std::string s;
    s += "shift " + cert.shift.get_str() + ", case " + std::string(case_name(cert.trace.label)) +
         "\n";
    s += "pre-completion triple:\n" + human_system(cert.system);
    s += "completion target {" + cert.completion_target.str() + "}, minimal {" +
         cert.minimal_target.str() + "}\n";
    s += "adjoined r = (";
    for (std::size_t i = 0; i < cert.completion_plan.r.size(); ++i)
        s += (i ? ", " : "") + cert.completion_plan.r[i].get_str();
    s += "), x = " + cert.completion_plan.x.get_str() + " mod " +
         cert.completion_plan.modulus.get_str() + "\n";
    s += "completed triple:\n" + human_system(cert.completed);
    s += "witness pattern claim {" + cert.final_pattern.str() + "}  (sharper: {" +
         cert.sharp_final_pattern.str() + "})\n";
    return s;
}

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        out.push_back(parse_int(
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<Relation> parse_relations(const std::string& text,
                                      const std::vector<LinearForm>& forms) {
    std::vector<Relation> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        auto fields = parse_int_list(
            text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
        if (fields.size() != 5) fail(ErrorKind::Parse, "relation needs 5 fields: i,j,ci,cj,value");
        Relation rel;
        rel.i = static_cast<std::size_t>(to_u64(fields[0]));
        rel.j = static_cast<std::size_t>(to_u64(fields[1]));
        rel.ci = fields[2];
        rel.cj = fields[3];
        rel.value = fields[4];
        if (rel.i >= forms.size() || rel.j >= forms.size())
            fail(ErrorKind::Parse, "relation indexes a missing form (indices are 0-based)");
        rel.sign = (rel.ci * forms[rel.i].b - rel.cj * forms[rel.j].b >= 0) ? 1 : -1;
        if (!verify_relation(forms, rel))
            fail(ErrorKind::Precondition, "relation " + human_relation(rel) + " does not hold");
        out.push_back(std::move(rel));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

struct CliConfig {
    std::string shift;
    std::string pattern;
    std::string target_pattern;
    std::string forms;
    std::string relations;
    std::string r_list;
    std::string cert_path;
    std::string out_path;
    std::string x_value;
    std::uint64_t x_bound = 1'000'000;
    std::string m_bound = "1000";
    std::uint64_t e2_bound = 1'000'000;
    std::string e2_floor = "5";
    std::string witness_floor;
    std::string completion_floor = "0";
    std::uint64_t limit = 0; // 0: unlimited
    unsigned workers = 1;
    bool via_certificate = false;
    bool human = false;
    bool report = false;
};

ConstructOptions construct_options(const CliConfig& cfg) {
    ConstructOptions opts;
    if (!cfg.target_pattern.empty()) opts.target = ExponentPattern::parse(cfg.target_pattern);
    opts.e2.floor = parse_int(cfg.e2_floor);
    opts.e2.bound = cfg.e2_bound;
    opts.completion_floor = parse_int(cfg.completion_floor);
    return opts;
}

int cmd_construct(const CliConfig& cfg) {
    auto cert = construct_triple(parse_int(cfg.shift), construct_options(cfg));
    write_output(cfg.human ? human_certificate(cert) : io::to_json(cert).dump(1), cfg.out_path);
    return 0;
}

int cmd_verify(const CliConfig& cfg) {
    Json j;
    if (cfg.cert_path == "-") {
        j = Json::parse(std::cin);
    } else {
        std::ifstream in(cfg.cert_path);
        if (!in) fail(ErrorKind::Precondition, "cannot read " + cfg.cert_path);
        j = Json::parse(in);
    }
    auto cert = io::certificate_from_json(j);
    verify_certificate(cert);
    Json out{{"verified", true},
             {"shift", io::to_json(cert.shift)},
             {"case", case_name(cert.trace.label)},
             {"final_pattern", io::to_json(cert.final_pattern)}};
    write_output(cfg.human ? "certificate verified: shift " + cert.shift.get_str() +
                                 ", pattern {" + cert.final_pattern.str() + "}"
                           : out.dump(1),
                 cfg.out_path);
    return 0;
}

int cmd_check(const CliConfig& cfg) {
    auto forms = parse_forms(cfg.forms);
    auto cert = admissible(forms);
    Json out;
    out["forms"] = Json::array();
    for (const auto& L : forms) out["forms"].push_back(io::to_json(L));
    if (cert) {
        out["admissible"] = true;
        out["certificate"] = io::to_json(*cert);
    } else {
        out["admissible"] = false;
        // name the obstruction: an unreduced form or the first failing prime
        for (std::size_t i = 0; i < forms.size(); ++i)
            if (!forms[i].reduced()) out["unreduced_form"] = i;
        if (!out.contains("unreduced_form")) {
            for (std::uint64_t p = 2; p <= forms.size(); p = next_prime_above(p))
                if (!p_admissible(forms, p)) {
                    out["failing_prime"] = p;
                    break;
                }
        }
    }
    if (cfg.human) {
        write_output(cert ? "admissible" : "not admissible", cfg.out_path);
    } else {
        write_output(out.dump(1), cfg.out_path);
    }
    return 0;
}

int cmd_adjoin(const CliConfig& cfg) {
    RelationSystem sys;
    sys.forms = parse_forms(cfg.forms);
    sys.relations = parse_relations(cfg.relations, sys.forms);
    auto r = parse_int_list(cfg.r_list);
    auto res = adjoin(sys, r);
    Json out{{"plan", io::to_json(res.plan)}, {"system", io::to_json(res.system)}};
    write_output(cfg.human ? human_system(res.system) : out.dump(1), cfg.out_path);
    return 0;
}

int cmd_e2pair(const CliConfig& cfg) {
    E2SearchParams params;
    params.floor = parse_int(cfg.e2_floor);
    params.bound = cfg.e2_bound;
    auto pair = find_e2_pair(parse_int(cfg.shift), params);
    write_output(io::to_json(pair).dump(1), cfg.out_path);
    return 0;
}

int cmd_funcs(const CliConfig& cfg) {
    Int x = parse_int(cfg.x_value);
    auto f = factorize(x);
    auto vals = arith_functions(f.pattern());
    Json out{{"x", io::to_json(x)},
             {"factorization", f.str()},
             {"pattern", io::to_json(f.pattern())}};
    out.update(io::to_json(vals));
    if (cfg.human) {
        write_output(x.get_str() + " = " + f.str() + ", pattern {" + f.pattern().str() +
                         "}, d=" + vals.d.get_str() + ", Omega=" + std::to_string(vals.big_omega) +
                         ", omega=" + std::to_string(vals.small_omega) + ", mu=" +
                         std::to_string(vals.mu) + ", lambda=" + std::to_string(vals.lambda),
                     cfg.out_path);
    } else {
        write_output(out.dump(1), cfg.out_path);
    }
    return 0;
}

int cmd_witness(const CliConfig& cfg) {
    Int n = parse_int(cfg.shift);
    std::size_t limit = cfg.limit == 0 ? SIZE_MAX : cfg.limit;
    std::vector<Witness> collected;
    auto sink = [&](const Witness& w) {
        std::cout << io::to_json(w).dump() << "\n";
        collected.push_back(w);
        return collected.size() < limit;
    };

    ExponentPattern target;
    if (cfg.via_certificate) {
        auto cert = construct_triple(n, construct_options(cfg));
        target = cert.final_pattern;
        if (!cfg.pattern.empty() && !(ExponentPattern::parse(cfg.pattern) == target))
            fail(ErrorKind::Precondition,
                 "certificate claims pattern {" + target.str() + "}, not {" + cfg.pattern + "}");
        std::optional<Int> floor;
        if (!cfg.witness_floor.empty()) floor = parse_int(cfg.witness_floor);
        search_via_certificate(cert, parse_int(cfg.m_bound), sink, floor, cfg.workers);
    } else {
        if (cfg.pattern.empty()) fail(ErrorKind::Precondition, "direct search needs --pattern");
        target = ExponentPattern::parse(cfg.pattern);
        if (!fits_u64(n) || cfg.x_bound + to_u64(n) > sieve_cap())
            fail(ErrorKind::Precondition, "bound exceeds the sieve cap (XPAT_SIEVE_MAX)");
        SpfSieve sieve(cfg.x_bound + to_u64(n));
        search_direct(n, target, cfg.x_bound, sieve, sink, cfg.workers);
    }
    if (cfg.report) std::cerr << io::to_json(witness_report(collected, target)).dump(1) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponent-pattern toolkit: admissible triples, prime adjoining, witnesses"};
    app.require_subcommand(1);
    CliConfig cfg;
    int (*run)(const CliConfig&) = nullptr;

    auto* construct = app.add_subcommand("construct", "build a certificate for a shift");
    construct->add_option("--shift", cfg.shift, "shift n >= 1")->required();
    construct->add_option("--target-pattern", cfg.target_pattern,
                          "completion target, e.g. 2,1,1 (default: per-case)");
    construct->add_option("--e2-floor", cfg.e2_floor, "E2 prime floor (shift2 cases)");
    construct->add_option("--e2-bound", cfg.e2_bound, "E2 search bound on q1");
    construct->add_option("--completion-floor", cfg.completion_floor,
                          "force fresh primes above this bound");
    construct->callback([&]() { run = cmd_construct; });

    auto* verify = app.add_subcommand("verify", "re-verify a certificate JSON file");
    verify->add_option("--cert", cfg.cert_path, "certificate path, or - for stdin")->required();
    verify->callback([&]() { run = cmd_verify; });

    auto* check = app.add_subcommand("check", "admissibility of a form tuple");
    check->add_option("--forms", cfg.forms, "tuple like \"2*m+1;3*m+1;5*m+2\"")->required();
    check->callback([&]() { run = cmd_check; });

    auto* adj = app.add_subcommand("adjoin", "adjoin multipliers to a relation system");
    adj->add_option("--forms", cfg.forms, "form tuple")->required();
    adj->add_option("--relations", cfg.relations,
                    "relations \"i,j,ci,cj,value;...\" with 0-based indices")
        ->required();
    adj->add_option("--r", cfg.r_list, "comma-separated multipliers, one per form")->required();
    adj->callback([&]() { run = cmd_adjoin; });

    auto* e2 = app.add_subcommand("e2pair", "deterministic E2 pair search for a shift2 shift");
    e2->add_option("--shift", cfg.shift, "odd shift divisible by 15")->required();
    e2->add_option("--floor", cfg.e2_floor, "prime floor C");
    e2->add_option("--bound", cfg.e2_bound, "q1 bound");
    e2->callback([&]() { run = cmd_e2pair; });

    auto* wit = app.add_subcommand("witness", "search for x with pattern(x) = pattern(x+n)");
    wit->add_option("--shift", cfg.shift, "shift n >= 1")->required();
    wit->add_option("--pattern", cfg.pattern, "target pattern, e.g. 2,1,1,1");
    wit->add_option("--bound", cfg.x_bound, "direct scan bound on x");
    wit->add_flag("--via-certificate", cfg.via_certificate, "scan a construction instead");
    wit->add_option("--m-bound", cfg.m_bound, "certificate scan bound on m");
    wit->add_option("--floor", cfg.witness_floor, "prime floor for certificate scans");
    wit->add_option("--target-pattern", cfg.target_pattern,
                    "completion target for the certificate");
    wit->add_option("--workers", cfg.workers, "parallel scan workers");
    wit->add_option("--limit", cfg.limit, "stop after this many witnesses (0: all)");
    wit->add_flag("--report", cfg.report, "print a summary to stderr");
    wit->callback([&]() { run = cmd_witness; });

    auto* funcs = app.add_subcommand("funcs", "d, Omega, omega, mu, lambda of an integer");
    funcs->add_option("--x", cfg.x_value, "positive integer")->required();
    funcs->callback([&]() { run = cmd_funcs; });

    for (auto* sub : {construct, verify, check, adj, e2, wit, funcs}) {
        sub->add_flag("--human", cfg.human, "human-readable output");
        sub->add_option("-o,--output", cfg.out_path, "write output to a file");
    }

    try {
        app.parse(argc, argv);
        return run(cfg);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        Json err{{"error", Json{{"kind", e.kind_name()}, {"message", e.what()}}}};
        std::cout << err.dump(1) << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json err{{"error", Json{{"kind", "internal"}, {"message", e.what()}}}};
        std::cout << err.dump(1) << "\n";
        return 1;
    }
}
