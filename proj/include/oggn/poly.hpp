#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oggn {

/// One product term: coeff * prod_i x[var_i]^exp_i. A term with no factors
/// is a constant. Exponents may be fractional, in which case the variable
/// must stay nonnegative (0^p is defined as 0 for p > 0).
struct PolyTerm {
    double coeff = 0.0;
    std::vector<std::pair<std::size_t, double>> factors; // (var index, exponent)
};

/// Sum of power terms over n_vars variables.
struct PolyFunction {
    std::size_t n_vars = 0;
    std::vector<PolyTerm> terms;
};

/// Simultaneous equations f_k(x) = 0 sharing one variable vector.
struct PolySystem {
    std::size_t n_vars = 0;
    std::vector<PolyFunction> equations;
};

/// Validates variable indices and merges repeated variables within a term.
PolyFunction make_poly(std::size_t n_vars, std::vector<PolyTerm> terms);
PolySystem make_system(std::size_t n_vars, std::vector<PolyFunction> equations);

double poly_eval(const PolyFunction& f, std::span<const double> x);

/// Componentwise derivative. Singular where x_j = 0 with an exponent < 1;
/// that raises DomainError rather than returning Inf/NaN.
std::vector<double> poly_grad(const PolyFunction& f, std::span<const double> x);

/// True per variable if it appears anywhere with a non-integer exponent.
std::vector<bool> fractional_exponent_vars(const PolyFunction& f);
std::vector<bool> fractional_exponent_vars(const PolySystem& s);
bool has_fractional_exponents(const PolyFunction& f);

/// Built-in benchmark function, id "poly4":
/// 9 x1^0.87 + 8.97 x2^0.02 + 0.876 x3^0.12 + 2.9876 x4^0.987.
PolyFunction poly4();

/// Built-in three-variable demo system, id "demo3":
///   9 x^2 + 8.97 y^7.8 + 0.876 z - 32 = 0
///   12 x^3 + 9.97 y^8 + 10.876 z^3 - 43 = 0
PolySystem demo_system();

// JSON text format, format_version 1:
//   function: {"n_vars": d, "terms": [{"coeff": c, "factors": [[var, exp], ...]}, ...]}
//   system:   {"n_vars": d, "equations": [{"terms": [...]}, ...]}
void save_poly(const PolyFunction& f, const std::filesystem::path& path);
PolyFunction load_poly(const std::filesystem::path& path);
void save_system(const PolySystem& s, const std::filesystem::path& path);
PolySystem load_system(const std::filesystem::path& path);

/// Resolves a CLI reference: a built-in id ("poly4") or a path to a JSON file.
PolyFunction resolve_function(const std::string& id_or_path);
/// Resolves a built-in id ("demo3") or a path to a JSON file.
PolySystem resolve_system(const std::string& id_or_path);

} // namespace oggn
