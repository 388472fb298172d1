#pragma once

// Per-fixture measurements shared by the unit tests and the acceptance run.

#include <chrono>

#include "fixtures.hpp"

namespace checks {

using namespace qhahn;

struct Prepared {
    OrthScenario sc;
    WeightForm wf;
    Support sup;
};

/// Scenario matching the fixture's rule, its weight and a support for n_max.
inline Prepared prepare(const fixtures::Positive& p, int n_max = 6) {
    auto scs = enumerate_scenarios(p.spec);
    auto it = std::find_if(scs.begin(), scs.end(), [&](const OrthScenario& s) { return s.rule_id == p.rule; });
    if (it == scs.end()) throw Error(ErrorKind::invariant_undefined, p.name + ": rule " + p.rule + " not produced");
    Prepared r{*it, closed_form_weight(p.spec, *it), {}};
    r.sup = enumerate_support(r.sc, r.wf, n_max, p.spec.qp);
    return r;
}

/// Largest Pearson residual over the first `count` support points.
inline double pearson_max(const fixtures::Positive& p, const Prepared& pr, std::size_t count = 30) {
    double worst = 0.0;
    std::size_t used = 0;
    for (const auto& pt : pr.sup.points) {
        if (used == count) break;
        worst = std::max(worst, pearson_residual(p.spec, pr.wf, pt.x));
        ++used;
    }
    return worst;
}

/// max |ratio_j / ratio_0 - 1| of closed form over recursion, `count` points
/// per branch starting at the generator.
inline double recursion_spread(const fixtures::Positive& p, const Prepared& pr, int count = 20) {
    const double q = p.spec.q();
    double worst = 0.0;
    for (const auto& b : pr.sup.branches) {
        std::vector<int> dirs = b.dir == 0 ? std::vector<int>{1, -1} : std::vector<int>{b.dir};
        for (int dir : dirs) {
            int n = count;
            if (pr.sup.finite) n = std::min(n, b.terms);
            const double rho0 = eval_weight(pr.wf, b.generator);
            for (int j = 1; j < n; ++j) {
                double x = b.generator * std::pow(q, dir * j);
                double rec = weight_by_recursion(p.spec, b.generator, rho0, dir * j);
                double closed = eval_weight(pr.wf, x);
                worst = std::max(worst, std::abs(closed / rec - 1.0));
            }
        }
    }
    return worst;
}

/// Largest coefficient gap between the monic solutions and Gram-Schmidt on
/// the support, relative to the coefficient size.
inline double gram_schmidt_gap(const fixtures::Positive& p, const Prepared& pr, int n_max = 6) {
    if (pr.sup.finite && pr.sup.N) n_max = std::min(n_max, *pr.sup.N);
    auto gs = gram_schmidt(pr.sup, n_max);
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        RealPolynomial P = monic_solution(p.spec, n);
        double d = (P - gs.P[std::size_t(n)]).max_abs_coeff() / std::max(1.0, P.max_abs_coeff());
        worst = std::max(worst, d);
    }
    return worst;
}

inline GramReport orthogonality(const fixtures::Positive& p, const Prepared& pr, int n_max = 6) {
    return verify_orthogonality(p.spec, pr.wf, pr.sc, p.dn2 ? &p.dn2 : nullptr, n_max, p.spec.qp);
}

template <class F>
double seconds(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace checks
