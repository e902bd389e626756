#include "oggn/constraint.hpp"

#include <string>

#include "oggn/errors.hpp"

namespace oggn {

ConstraintSpec make_constraint(double lower, double upper, double c1, double c2) {
    if (!(lower < upper))
        throw ConfigError("constraint: lower bound " + std::to_string(lower) +
                          " must be below upper bound " + std::to_string(upper));
    if (!(c1 > 1.0) || !(c2 > 1.0))
        throw ConfigError("constraint: c1 and c2 must exceed 1");
    return {lower, upper, c1, c2};
}

double apply_constraint(const ConstraintSpec& s, double x) {
    if (x >= s.upper) return x / s.c1;
    if (x <= s.lower) return x * s.c2;
    return x;
}

double constraint_slope(const ConstraintSpec& s, double x) {
    if (x >= s.upper) return 1.0 / s.c1;
    if (x <= s.lower) return s.c2;
    return 1.0;
}

ConstrainedBatch apply_constraints_batch(const std::vector<std::optional<ConstraintSpec>>& specs,
                                         const Matrix& batch) {
    if (specs.size() != batch.cols())
        throw ShapeError("apply_constraints_batch: " + std::to_string(specs.size()) +
                         " specs for " + std::to_string(batch.cols()) + " columns");
    ConstrainedBatch out{batch, Matrix(batch.rows(), batch.cols(), 1.0)};
    for (std::size_t j = 0; j < batch.cols(); ++j) {
        if (!specs[j]) continue;
        const ConstraintSpec& s = *specs[j];
        for (std::size_t i = 0; i < batch.rows(); ++i) {
            out.values(i, j) = apply_constraint(s, batch(i, j));
            out.slopes(i, j) = constraint_slope(s, batch(i, j));
        }
    }
    return out;
}

std::vector<bool> in_range(const std::vector<std::optional<ConstraintSpec>>& specs,
                           const Matrix& features, double slack) {
    if (specs.size() != features.cols())
        throw ShapeError("in_range: " + std::to_string(specs.size()) + " specs for " +
                         std::to_string(features.cols()) + " columns");
    if (slack < 0.0) throw ConfigError("in_range: negative slack");
    std::vector<bool> ok(features.rows(), true);
    for (std::size_t i = 0; i < features.rows(); ++i) {
        for (std::size_t j = 0; j < features.cols(); ++j) {
            if (!specs[j]) continue;
            const double lo = specs[j]->lower * (1.0 - slack);
            const double hi = specs[j]->upper * (1.0 + slack);
            const double v = features(i, j);
            if (v < lo || v > hi) {
                ok[i] = false;
                break;
            }
        }
    }
    return ok;
}

} // namespace oggn
