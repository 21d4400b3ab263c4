#include "xpat/forms.hpp"

namespace xpat {

LinearForm::LinearForm(Int slope, Int constant) : a(std::move(slope)), b(std::move(constant)) {
    if (a <= 0) fail(ErrorKind::Precondition, "linear form slope must be positive");
}

std::string LinearForm::str() const {
    return a.get_str() + "*m" + (b < 0 ? "-" : "+") + Int(abs(b)).get_str();
}

LinearForm LinearForm::parse(const std::string& s) {
    std::size_t star = s.find("*m");
    if (star == std::string::npos) fail(ErrorKind::Parse, "bad form '" + s + "', expected <a>*m+<b>");
    std::size_t sign_pos = star + 2;
    if (sign_pos >= s.size() || (s[sign_pos] != '+' && s[sign_pos] != '-'))
        fail(ErrorKind::Parse, "bad form '" + s + "', expected <a>*m+<b>");
    Int a = parse_int(s.substr(0, star));
    Int mag = parse_int(s.substr(sign_pos + 1));
    if (a < 1) fail(ErrorKind::Parse, "form slope must be positive in '" + s + "'");
    return LinearForm(a, s[sign_pos] == '-' ? Int(-mag) : mag);
}

Int evaluate(const LinearForm& L, const Int& m) { return L(m); }

ContentSplit content_and_reduce(const LinearForm& L) {
    Int g = (L.b == 0) ? L.a : gcd(L.a, L.b);
    return ContentSplit{g, LinearForm(exact_div(L.a, g, "slope"), exact_div(L.b, g, "constant"))};
}

LinearForm substitute_divide(const LinearForm& L, const Int& r, const Int& x, const Int& d) {
    if (r < 1 || d < 1) fail(ErrorKind::Precondition, "substitute_divide needs r >= 1 and d >= 1");
    Int new_a = L.a * r;
    Int new_b = L.a * x + L.b;
    if (!divides(d, new_a))
        fail(ErrorKind::Precondition,
             "substituted slope " + new_a.get_str() + " not divisible by " + d.get_str());
    if (!divides(d, new_b))
        fail(ErrorKind::Precondition,
             "substituted constant " + new_b.get_str() + " not divisible by " + d.get_str());
    return LinearForm(exact_div(new_a, d, "slope"), exact_div(new_b, d, "constant"));
}

Int determinant(const LinearForm& L, const LinearForm& K) { return abs(L.a * K.b - L.b * K.a); }

std::optional<Int> p_admissible(std::span<const LinearForm> forms, std::uint64_t p) {
    Int m = Int(static_cast<unsigned long>(p));
    for (Int t = 0; t < m; ++t) {
        bool hit = false;
        for (const auto& L : forms) {
            if (mod_floor(L(t), m) == 0) {
                hit = true;
                break;
            }
        }
        if (!hit) return t;
    }
    return std::nullopt;
}

std::optional<AdmissibilityCertificate> admissible(std::span<const LinearForm> forms) {
    AdmissibilityCertificate cert;
    cert.k = forms.size();
    cert.reduced_flags.reserve(forms.size());
    bool all_reduced = true;
    for (const auto& L : forms) {
        bool red = L.reduced();
        cert.reduced_flags.push_back(red);
        all_reduced = all_reduced && red;
    }
    if (!all_reduced) return std::nullopt;
    for (std::uint64_t p = 2; p <= forms.size(); p = next_prime_above(p)) {
        auto t = p_admissible(forms, p);
        if (!t) return std::nullopt;
        cert.witnesses.emplace(p, *t);
    }
    return cert;
}

bool check_certificate(std::span<const LinearForm> forms, const AdmissibilityCertificate& cert) {
    if (cert.k != forms.size()) return false;
    if (cert.reduced_flags.size() != forms.size()) return false;
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (!cert.reduced_flags[i] || !forms[i].reduced()) return false;
    for (std::uint64_t p = 2; p <= forms.size(); p = next_prime_above(p)) {
        auto it = cert.witnesses.find(p);
        if (it == cert.witnesses.end()) return false;
        Int m = Int(static_cast<unsigned long>(p));
        if (it->second < 0 || it->second >= m) return false;
        for (const auto& L : forms)
            if (mod_floor(L(it->second), m) == 0) return false;
    }
    return true;
}

std::vector<LinearForm> parse_forms(const std::string& s) {
    std::vector<LinearForm> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t semi = s.find(';', pos);
        std::string tok = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        if (tok.empty()) fail(ErrorKind::Parse, "empty form in tuple '" + s + "'");
        out.push_back(LinearForm::parse(tok));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

std::string format_forms(std::span<const LinearForm> forms) {
    std::string s;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (i) s += ';';
        s += forms[i].str();
    }
    return s;
}

} // namespace xpat
