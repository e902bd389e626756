#pragma once

#include "oggn/network.hpp"

namespace oggn {

/// Compares backward() against central finite differences of
/// mse_loss(forward(net, input), target), perturbing every weight, bias and
/// input entry by +-eps. Returns the largest relative error found.
double grad_check(const Network& net, const Matrix& input, const Matrix& target,
                  double eps);

/// Same check against an all-zero target.
double grad_check(const Network& net, const Matrix& input, double eps);

} // namespace oggn
