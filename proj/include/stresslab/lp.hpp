/**
 * Small exact linear programs: dense two-phase simplex over Q with Bland's
 * rule, so it always terminates and the answer depends only on the input.
 */
#pragma once

#include "stresslab/linalg.hpp"

#include <optional>

namespace stresslab::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    RowVector x;     // meaningful when optimal
    Rational value;  // c . x at the optimum
};

/** maximize c.x subject to A x <= b, x unrestricted in sign. */
Result maximize(const linalg::DenseMatrix& a, const RowVector& b, const RowVector& c);

/** Some x with A x <= b, or nullopt. */
std::optional<RowVector> feasible_point(const linalg::DenseMatrix& a, const RowVector& b, std::size_t nvars);

}  // namespace stresslab::lp
