#pragma once

// Umbrella header for the whole library.

#include "oggn/constraint.hpp"
#include "oggn/dataset.hpp"
#include "oggn/errors.hpp"
#include "oggn/generator.hpp"
#include "oggn/gradcheck.hpp"
#include "oggn/log.hpp"
#include "oggn/matrix.hpp"
#include "oggn/network.hpp"
#include "oggn/network_io.hpp"
#include "oggn/optim.hpp"
#include "oggn/oracle.hpp"
#include "oggn/poly.hpp"
#include "oggn/result_io.hpp"
#include "oggn/rng.hpp"
