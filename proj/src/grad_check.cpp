#include "awenc/grad_check.hpp"

#include <cmath>
#include <stdexcept>

#include "awenc/errors.hpp"

namespace awenc::num {

std::vector<Graph::Var> bind_params(Graph& g, const models::ParamStore& params, bool requires_grad) {
    std::vector<Graph::Var> vars;
    vars.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) vars.push_back(g.leaf(params.at(i), requires_grad));
    return vars;
}

GradCheckResult grad_check(const models::ParamStore& params, double step, const ScalarBuilder& build) {
    if (step <= 0.0) throw std::invalid_argument("grad_check: step must be positive");

    Graph g;
    auto leaves = bind_params(g, params, true);
    Graph::Var root = build(g, leaves);
    if (g.value(root).size() != 1) throw std::invalid_argument("grad_check: computation must be scalar-valued");
    if (!std::isfinite(g.value(root).item())) throw NumericError("grad_check: non-finite value");
    g.backward(root);
    std::vector<Tensor> analytic;
    analytic.reserve(params.size());
    for (auto v : leaves) analytic.push_back(g.grad(v));

    auto eval = [&](const models::ParamStore& ps) {
        Graph g2;
        auto l2 = bind_params(g2, ps, false);
        double v = g2.value(build(g2, l2)).item();
        if (!std::isfinite(v)) throw NumericError("grad_check: non-finite intermediate");
        return v;
    };

    models::ParamStore work = params;
    GradCheckResult result;
    for (std::size_t p = 0; p < params.size(); ++p) {
        auto& data = work.at(p).data();
        for (std::size_t e = 0; e < data.size(); ++e) {
            double keep = data[e];
            data[e] = keep + step;
            double fp = eval(work);
            data[e] = keep - step;
            double fm = eval(work);
            data[e] = keep;
            double numeric = (fp - fm) / (2.0 * step);
            double a = analytic[p][e];
            double rel = std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
            if (rel > result.max_rel_error) {
                result.max_rel_error = rel;
                result.worst_param = params.name(p);
                result.worst_index = e;
            }
        }
    }
    return result;
}

}  // namespace awenc::num
