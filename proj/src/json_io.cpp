#include "periods/json_io.hpp"

#include <cctype>

namespace periods {

namespace {
mpz_class mpz_from_string(const std::string& s) {
    mpz_class z;
    if (z.set_str(s, 10) != 0)
        throw std::invalid_argument("not a decimal integer: " + s);
    return z;
}
}  // namespace

json to_json(const PadicElement& x) {
    json j;
    j["p"] = x.field().p;
    j["m"] = x.field().m;
    j["N"] = x.aprec();
    json coeffs = json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
    j["coeffs"] = std::move(coeffs);
    if (x.shift() != 0) j["shift"] = x.shift();
    return j;
}

PadicElement element_from_json(const json& j) {
    FieldDesc f;
    f.p = j.at("p").get<long>();
    f.m = j.at("m").get<int>();
    f.N = j.at("N").get<int>();
    f.validate();
    int shift = j.value("shift", 0);
    std::vector<mpz_class> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(mpz_from_string(c.get<std::string>()));
    int aprec = f.N;
    return PadicElement::from_coeffs(f, std::move(coeffs), aprec, shift);
}

std::string gamma_to_text(long p, const mpz_class& gamma) {
    if (gamma == 1 + p) return "1+p";
    if (gamma == 1 + p + p * p) return "1+p+p^2";
    return gamma.get_str();
}

mpz_class gamma_from_text(long p, const std::string& text) {
    if (text == "1+p") return mpz_class(1 + p);
    if (text == "1+p+p^2") return mpz_class(1 + p + p * p);
    return mpz_from_string(text);
}

json to_json(const WeightPoint& psi) {
    json j;
    j["i"] = psi.i;
    j["t"] = to_json(psi.t);
    j["gamma"] = gamma_to_text(psi.field().p, psi.gamma);
    return j;
}

WeightPoint weight_point_from_json(const json& j) {
    PadicElement t = element_from_json(j.at("t"));
    int i = j.value("i", 0);
    mpz_class gamma = j.contains("gamma")
                          ? gamma_from_text(t.field().p, j.at("gamma").get<std::string>())
                          : default_gamma(t.field().p);
    return WeightPoint(i, std::move(t), std::move(gamma));
}

json to_json(const QuotientPoint& phi) {
    json j;
    j["theta"] = to_json(phi.theta_value);
    j["level"] = phi.level;
    return j;
}

QuotientPoint quotient_point_from_json(const json& j) {
    if (j.contains("t")) return quotient_class(weight_point_from_json(j));
    return QuotientPoint{element_from_json(j.at("theta")), j.at("level").get<int>()};
}

json magnitude_to_json(const Magnitude& m) {
    if (m.is_zero()) return nullptr;
    return rat_to_string(m.exponent());
}

Magnitude magnitude_from_json(const json& j) {
    if (j.is_null()) return Magnitude::zero();
    if (j.is_number_integer()) return Magnitude::pow_p(Rat(j.get<long long>()));
    return Magnitude::pow_p(rat_from_string(j.get<std::string>()));
}

json to_json(const TateSeries& f) {
    json j;
    j["level"] = f.level();
    json coeffs = json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
    j["coeffs"] = std::move(coeffs);
    j["tail_bound_exp"] = magnitude_to_json(f.tail_bound());
    return j;
}

TateSeries tate_series_from_json(const json& j) {
    std::vector<PadicElement> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(element_from_json(c));
    Magnitude tail = j.contains("tail_bound_exp") ? magnitude_from_json(j.at("tail_bound_exp"))
                                                  : Magnitude::zero();
    return TateSeries(j.at("level").get<int>(), std::move(coeffs), tail);
}

json to_json(const BoundedDistribution& mu) {
    json j;
    j["level"] = mu.level();
    json ms = json::array();
    for (const auto& x : mu.moments()) ms.push_back(to_json(x));
    j["moments"] = std::move(ms);
    j["C_exp"] = magnitude_to_json(mu.bound());
    return j;
}

BoundedDistribution distribution_from_json(const json& j) {
    std::vector<PadicElement> ms;
    for (const auto& x : j.at("moments")) ms.push_back(element_from_json(x));
    Magnitude C = j.contains("C_exp") ? magnitude_from_json(j.at("C_exp")) : Magnitude::one();
    return from_moments(std::move(ms), j.at("level").get<int>(), C);
}

json to_json(const GaloisElement& g) {
    json j;
    j["chi"] = to_json(g.chi());
    j["scope_m"] = g.field_scope();
    return j;
}

GaloisElement galois_from_json(const json& j) {
    return GaloisElement(element_from_json(j.at("chi")), j.value("scope_m", 3));
}

json to_json(const BSenElement& P) {
    json j;
    json coeffs = json::array();
    for (const auto& c : P.coeffs()) coeffs.push_back(to_json(c));
    j["coeffs"] = std::move(coeffs);
    j["filtration"] = P.filtration_level();
    j["bound_exp"] = magnitude_to_json(P.bound());
    return j;
}

BSenElement bsen_from_json(const json& j) {
    std::vector<PadicElement> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(element_from_json(c));
    Magnitude B = j.contains("bound_exp") ? magnitude_from_json(j.at("bound_exp"))
                                          : Magnitude::one();
    return BSenElement(std::move(coeffs), j.at("filtration").get<int>(), B);
}

// ---- expression parser -----------------------------------------------------

namespace {
struct ExprParser {
    const FieldDesc& f;
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_alpha() {
        skip_ws();
        return pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]));
    }

    long parse_uint() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expected integer in: " + s);
        return std::stol(s.substr(start, pos - start));
    }

    PadicElement parse_factor() {
        skip_ws();
        if (peek_alpha()) {
            size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string name = s.substr(start, pos - start);
            long k = 1;
            if (eat('^')) k = parse_uint();
            if (name == "p") {
                mpz_class v = pow_p(f.p, static_cast<unsigned long>(k));
                return PadicElement::from_integer(f, v);
            }
            if (name == "zeta") return PadicElement::zeta_power(f, k);
            throw std::invalid_argument("unknown symbol '" + name + "' in: " + s);
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            mpz_class v = mpz_from_string(s.substr(start, pos - start));
            if (eat('^')) {
                long k = parse_uint();
                mpz_class r;
                mpz_pow_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
                v = r;
            }
            return PadicElement::from_integer(f, v);
        }
        throw std::invalid_argument("cannot parse element expression: " + s);
    }

    PadicElement parse_term() {
        PadicElement x = parse_factor();
        while (eat('*')) x = x * parse_factor();
        return x;
    }

    PadicElement parse_expr() {
        skip_ws();
        bool neg = eat('-');
        PadicElement x = parse_term();
        if (neg) x = -x;
        for (;;) {
            if (eat('+')) {
                x = x + parse_term();
            } else if (eat('-')) {
                x = x - parse_term();
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != s.size()) throw std::invalid_argument("trailing input in: " + s);
        return x;
    }
};
}  // namespace

PadicElement parse_element_text(const FieldDesc& f, const std::string& text) {
    ExprParser ep{f, text};
    return ep.parse_expr();
}

PadicElement element_from_any(const FieldDesc& f, const json& j) {
    if (j.is_object()) return element_from_json(j);
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (!s.empty() && s.front() == '{') return element_from_json(json::parse(s));
        return parse_element_text(f, s);
    }
    if (j.is_number_integer())
        return PadicElement::from_integer(f, mpz_class(static_cast<long>(j.get<long long>())));
    throw std::invalid_argument("cannot read an element from this JSON value");
}

}  // namespace periods
