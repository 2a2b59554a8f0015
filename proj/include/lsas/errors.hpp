// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
#pragma once

#include <stdexcept>
#include <string>

namespace lsas {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument values (bad dimensions, negative energies, malformed
// config keys, out-of-domain inputs).
struct parameter_error : error {
    using error::error;
};

// A scheduling group that cannot be served at all by the chosen receiver
// (zero-forcing with more users than antennas).
struct infeasible_group_error : error {
    using error::error;
};

// No exact cover of the user set by usable (positive-rate) groups exists.
struct no_feasible_partition_error : error {
    using error::error;
};

// An expectation integral does not exist (probability mass at zero product).
struct divergence_error : error {
    using error::error;
};

// A "cannot happen" condition was detected (e.g. a fractional LP vertex on a
// totally unimodular instance). Indicates a bug, not bad input.
struct internal_error : error {
    using error::error;
};

}  // namespace lsas
