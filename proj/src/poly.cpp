#include "oggn/poly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "oggn/errors.hpp"

namespace oggn {

using nlohmann::json;

namespace {

bool is_integer_exponent(double e) { return e == std::floor(e); }

std::string var_name(std::size_t j) { return "x" + std::to_string(j + 1); }

// x^p with the conventions this library needs: 0^p = 0 for p > 0, 0^0 = 1,
// and hard errors instead of NaN/Inf for the undefined combinations.
double checked_pow(double x, double p, std::size_t var) {
    if (x == 0.0) {
        if (p > 0.0) return 0.0;
        if (p == 0.0) return 1.0;
        throw DomainError(var_name(var) + " = 0 raised to negative exponent");
    }
    if (x < 0.0 && !is_integer_exponent(p))
        throw DomainError(var_name(var) + " = " + std::to_string(x) +
                          " is negative but has fractional exponent " + std::to_string(p));
    return std::pow(x, p);
}

void validate_terms(std::size_t n_vars, const std::vector<PolyTerm>& terms) {
    for (const PolyTerm& t : terms) {
        if (!std::isfinite(t.coeff)) throw DomainError("non-finite coefficient");
        for (const auto& [var, exp] : t.factors) {
            if (var >= n_vars)
                throw ShapeError("term references " + var_name(var) + " but only " +
                                 std::to_string(n_vars) + " variables exist");
            if (!std::isfinite(exp)) throw DomainError("non-finite exponent");
        }
    }
}

PolyTerm merge_factors(PolyTerm t) {
    std::map<std::size_t, double> merged;
    for (const auto& [var, exp] : t.factors) merged[var] += exp;
    t.factors.assign(merged.begin(), merged.end());
    return t;
}

} // namespace

PolyFunction make_poly(std::size_t n_vars, std::vector<PolyTerm> terms) {
    validate_terms(n_vars, terms);
    PolyFunction f;
    f.n_vars = n_vars;
    f.terms.reserve(terms.size());
    for (PolyTerm& t : terms) f.terms.push_back(merge_factors(std::move(t)));
    return f;
}

PolySystem make_system(std::size_t n_vars, std::vector<PolyFunction> equations) {
    PolySystem s;
    s.n_vars = n_vars;
    for (PolyFunction& eq : equations) {
        if (eq.n_vars != n_vars)
            throw ShapeError("equation spans " + std::to_string(eq.n_vars) +
                             " variables, system has " + std::to_string(n_vars));
        validate_terms(n_vars, eq.terms);
        s.equations.push_back(std::move(eq));
    }
    return s;
}

double poly_eval(const PolyFunction& f, std::span<const double> x) {
    if (x.size() != f.n_vars)
        throw ShapeError("poly_eval: got " + std::to_string(x.size()) + " values for " +
                         std::to_string(f.n_vars) + " variables");
    double sum = 0.0;
    for (const PolyTerm& t : f.terms) {
        double prod = t.coeff;
        for (const auto& [var, exp] : t.factors) prod *= checked_pow(x[var], exp, var);
        sum += prod;
    }
    return sum;
}

std::vector<double> poly_grad(const PolyFunction& f, std::span<const double> x) {
    if (x.size() != f.n_vars)
        throw ShapeError("poly_grad: got " + std::to_string(x.size()) + " values for " +
                         std::to_string(f.n_vars) + " variables");
    std::vector<double> grad(f.n_vars, 0.0);
    for (const PolyTerm& t : f.terms) {
        for (std::size_t k = 0; k < t.factors.size(); ++k) {
            const auto [var, exp] = t.factors[k];
            if (exp == 0.0) continue;
            if (x[var] == 0.0 && exp < 1.0)
                throw DomainError("derivative of " + var_name(var) + "^" +
                                  std::to_string(exp) + " is singular at 0");
            // d/dx_var of the term: coeff * exp * x_var^(exp-1) * other factors.
            double prod = t.coeff * exp * checked_pow(x[var], exp - 1.0, var);
            for (std::size_t m = 0; m < t.factors.size(); ++m) {
                if (m == k) continue;
                const auto [ovar, oexp] = t.factors[m];
                prod *= checked_pow(x[ovar], oexp, ovar);
            }
            grad[var] += prod;
        }
    }
    return grad;
}

std::vector<bool> fractional_exponent_vars(const PolyFunction& f) {
    std::vector<bool> frac(f.n_vars, false);
    for (const PolyTerm& t : f.terms)
        for (const auto& [var, exp] : t.factors)
            if (!is_integer_exponent(exp)) frac[var] = true;
    return frac;
}

std::vector<bool> fractional_exponent_vars(const PolySystem& s) {
    std::vector<bool> frac(s.n_vars, false);
    for (const PolyFunction& eq : s.equations) {
        const auto eq_frac = fractional_exponent_vars(eq);
        for (std::size_t j = 0; j < s.n_vars; ++j)
            if (eq_frac[j]) frac[j] = true;
    }
    return frac;
}

bool has_fractional_exponents(const PolyFunction& f) {
    const auto frac = fractional_exponent_vars(f);
    return std::any_of(frac.begin(), frac.end(), [](bool b) { return b; });
}

PolyFunction poly4() {
    return make_poly(4, {
        {9.0, {{0, 0.87}}},
        {8.97, {{1, 0.02}}},
        {0.876, {{2, 0.12}}},
        {2.9876, {{3, 0.987}}},
    });
}

PolySystem demo_system() {
    PolyFunction f = make_poly(3, {
        {9.0, {{0, 2.0}}},
        {8.97, {{1, 7.8}}},
        {0.876, {{2, 1.0}}},
        {-32.0, {}},
    });
    PolyFunction g = make_poly(3, {
        {12.0, {{0, 3.0}}},
        {9.97, {{1, 8.0}}},
        {10.876, {{2, 3.0}}},
        {-43.0, {}},
    });
    return make_system(3, {std::move(f), std::move(g)});
}

namespace {

json terms_to_json(const std::vector<PolyTerm>& terms) {
    json arr = json::array();
    for (const PolyTerm& t : terms) {
        json jt;
        jt["coeff"] = t.coeff;
        json factors = json::array();
        for (const auto& [var, exp] : t.factors) factors.push_back(json::array({var, exp}));
        jt["factors"] = std::move(factors);
        arr.push_back(std::move(jt));
    }
    return arr;
}

std::vector<PolyTerm> terms_from_json(const json& arr) {
    std::vector<PolyTerm> terms;
    for (const auto& jt : arr) {
        PolyTerm t;
        t.coeff = jt.at("coeff").get<double>();
        for (const auto& jf : jt.at("factors")) {
            if (!jf.is_array() || jf.size() != 2)
                throw ParseError("factor must be a [variable, exponent] pair");
            t.factors.emplace_back(jf[0].get<std::size_t>(), jf[1].get<double>());
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

} // namespace

void save_poly(const PolyFunction& f, const std::filesystem::path& path) {
    json j;
    j["format_version"] = 1;
    j["n_vars"] = f.n_vars;
    j["terms"] = terms_to_json(f.terms);
    write_json_file(j, path);
}

PolyFunction load_poly(const std::filesystem::path& path) {
    const json j = load_json_file(path);
    try {
        return make_poly(j.at("n_vars").get<std::size_t>(), terms_from_json(j.at("terms")));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_system(const PolySystem& s, const std::filesystem::path& path) {
    json j;
    j["format_version"] = 1;
    j["n_vars"] = s.n_vars;
    json eqs = json::array();
    for (const PolyFunction& eq : s.equations) eqs.push_back({{"terms", terms_to_json(eq.terms)}});
    j["equations"] = std::move(eqs);
    write_json_file(j, path);
}

PolySystem load_system(const std::filesystem::path& path) {
    const json j = load_json_file(path);
    try {
        const auto n_vars = j.at("n_vars").get<std::size_t>();
        std::vector<PolyFunction> eqs;
        for (const auto& je : j.at("equations")) {
            PolyFunction f;
            f.n_vars = n_vars;
            f.terms = terms_from_json(je.at("terms"));
            eqs.push_back(std::move(f));
        }
        if (eqs.empty()) throw ParseError(path.string() + ": empty equation list");
        return make_system(n_vars, std::move(eqs));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

PolyFunction resolve_function(const std::string& id_or_path) {
    if (id_or_path == "poly4") return poly4();
    if (std::filesystem::exists(id_or_path)) return load_poly(id_or_path);
    throw ConfigError("unknown function '" + id_or_path + "': not a built-in id and no such file");
}

PolySystem resolve_system(const std::string& id_or_path) {
    if (id_or_path == "demo3") return demo_system();
    if (std::filesystem::exists(id_or_path)) return load_system(id_or_path);
    throw ConfigError("unknown system '" + id_or_path + "': not a built-in id and no such file");
}

} // namespace oggn
