// scratch diagnostics for the eigensolver on the dumbbell pipeline
#include <cstdio>

#include "auglab/consistency.hpp"

using namespace auglab;

int main() {
    const size_t n = 1500;
    const ManifoldSpec spec = ManifoldSpec::dumbbell(0.3, 1.0);
    EpsRule rule;
    rule.kind = EpsRule::Kind::FromNPlain;
    Pipeline p = build_pipeline(spec, rule, 2.0, 1.0, n, 1, 1);
    std::printf("n=%zu eps=%.4f eps_w=%.5f eps_p=%.5f\n", p.cloud.size(), p.sched.eps,
                p.sched.eps_w, p.sched.eps_p);
    std::printf("edges=%zu components=%zu max_degree=%.6f scale=%.4f rejects=%lld\n",
                p.graph.edge_count(), p.graph.components, p.graph.max_degree(), p.graph.scale,
                static_cast<long long>(p.cloud.rejection_count));
    double wmin = 1e308, wmax = 0.0;
    for (double w : p.graph.edge_w) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    std::printf("weights in [%.3e, %.3e]\n", wmin, wmax);
    try {
        SolverOptions opt;
        opt.tol = 1e-10;
        opt.max_iter = 4000;
        EigenPairs pairs = smallest_eigenpairs(p.graph, 2, opt);
        std::printf("lam1=%.6e lam2=%.6e resid=(%.2e, %.2e)\n", pairs.values[0], pairs.values[1],
                    pairs.residuals[0], pairs.residuals[1]);
    } catch (const Error& e) {
        std::printf("solver failed: %s\n", e.what());
    }
    return 0;
}
