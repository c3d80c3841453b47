#pragma once

#include <functional>
#include <span>
#include <string>

#include "awenc/graph.hpp"
#include "awenc/param_store.hpp"

namespace awenc::num {

std::vector<Graph::Var> bind_params(Graph& g, const models::ParamStore& params, bool requires_grad);

struct GradCheckResult {
    double max_rel_error = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
};

/// Builds the scalar computation from one leaf per store entry.
using ScalarBuilder = std::function<Graph::Var(Graph&, std::span<const Graph::Var>)>;

/// Central finite differences against the analytic gradient, per parameter
/// entry. Relative error uses max(1, |analytic|, |numeric|) in the
/// denominator.
GradCheckResult grad_check(const models::ParamStore& params, double step, const ScalarBuilder& build);

}  // namespace awenc::num
