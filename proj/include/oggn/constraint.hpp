#pragma once

#include <optional>
#include <vector>

#include "oggn/matrix.hpp"

namespace oggn {

/// Box constraint with rescaling constants: values at or above `upper` are
/// divided by c1, values at or below `lower` are multiplied by c2, values
/// strictly inside the box pass through unchanged.
struct ConstraintSpec {
    double lower = 0.0;
    double upper = 0.0;
    double c1 = 2.0;  // shrink divisor
    double c2 = 2.0;  // growth multiplier
};

/// Validates lower < upper, c1 > 1, c2 > 1.
ConstraintSpec make_constraint(double lower, double upper, double c1, double c2);

double apply_constraint(const ConstraintSpec& s, double x);

/// Local derivative of apply_constraint: 1/c1, c2 or 1. Positive everywhere,
/// so gradients keep flowing; the two breakpoints take the rescaling slope.
double constraint_slope(const ConstraintSpec& s, double x);

struct ConstrainedBatch {
    Matrix values;
    Matrix slopes;
};

/// Columnwise apply; columns without a spec pass through with slope 1.
ConstrainedBatch apply_constraints_batch(const std::vector<std::optional<ConstraintSpec>>& specs,
                                         const Matrix& batch);

/// Row predicate: every constrained feature inside [lower·(1−slack), upper·(1+slack)].
std::vector<bool> in_range(const std::vector<std::optional<ConstraintSpec>>& specs,
                           const Matrix& features, double slack);

} // namespace oggn
