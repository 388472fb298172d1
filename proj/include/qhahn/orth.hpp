#pragma once

/**
 * @file orth.hpp
 * @brief Lattice supports, Gram matrices under the Jackson integrals and the
 * Gram-Schmidt oracle for the monic orthogonal polynomials.
 */

#include <functional>

#include "weight.hpp"

namespace qhahn {

/// A support point with its Jackson quadrature weight and rho(x).
struct LatticePoint {
    double x = 0.0;
    double w = 0.0;
    double rho = 0.0;
};

struct BranchStats {
    double generator = 0.0;
    int dir = 1;
    int terms = 0;
    double tail = 0.0;   ///< last monitored summand relative to the branch sum
};

struct Support {
    std::vector<LatticePoint> points;
    std::vector<BranchStats> branches;
    bool finite = false;
    std::optional<int> N;
};

namespace detail {

/// Walks generator * q^{dir j}, j >= first, adding points until the moment
/// summand w rho max(1, x^{2 n_max}) is negligible.
inline BranchStats walk_branch(std::vector<LatticePoint>& out, const WeightForm& wf, double g, int dir, int first,
                               double prefactor, int n_max, const QParam& p) {
    const double q = p.q;
    BranchStats st{g, dir, 0, 0.0};
    auto point = [&](int j) { return g * std::pow(q, dir * j); };
    double monitored_sum = 0.0;
    auto term = [&](int j) {
        double x = point(j);
        double w = prefactor * std::pow(q, dir * j);
        double rho = eval_weight(wf, x);
        out.push_back({x, w, rho});
        double m = std::abs(w * rho) * std::max(1.0, std::pow(std::abs(x), 2 * n_max));
        monitored_sum += m;
        return m;
    };
    RaySum rs = sum_until_small(term, point, p, first);
    st.terms = rs.terms;
    st.tail = monitored_sum > 0 ? rs.tail / monitored_sum : 0.0;
    return st;
}

} // namespace detail

/// Lattice of the scenario with Jackson weights, so that the q-integral of F
/// is sum_i w_i F(x_i).
inline Support enumerate_support(const OrthScenario& sc, const WeightForm& wf, int n_max, const QParam& p) {
    if (n_max < 0) throw Error(ErrorKind::precondition, "n_max must be >= 0");
    const double q = p.q;
    Support s;
    s.N = sc.N;
    auto add = [&](double g, int dir, int first, double pre) {
        s.branches.push_back(detail::walk_branch(s.points, wf, g, dir, first, pre, n_max, p));
    };
    switch (sc.kind) {
    case 1:
        for (const auto& b : sc.branches) add(b.generator, 1, 0, (1.0 - q) * std::abs(b.generator));
        break;
    case 2:
        add(sc.branches.at(0).generator, 1, 0, (1.0 - q) * std::abs(sc.branches[0].generator));
        break;
    case 3: {
        s.finite = true;
        const double a = sc.branches.at(0).generator;
        const int N = sc.N.value();
        for (int k = 0; k <= N; ++k) {
            double x = a * std::pow(q, -k);
            double w = (1.0 / q - 1.0) * std::abs(a) * std::pow(q, -k);
            s.points.push_back({x, w, eval_weight(wf, x)});
        }
        s.branches.push_back({a, -1, N + 1, 0.0});
        break;
    }
    case 4:
        add(sc.branches.at(0).generator, 1, 0, (1.0 - q) * std::abs(sc.branches[0].generator));
        add(sc.branches.at(1).generator, 1, 0, 1.0 - q);
        add(sc.branches[1].generator, -1, 1, 1.0 - q);
        break;
    case 5: {
        const double a = sc.branches.at(0).generator;
        add(a, -1, 0, (1.0 / q - 1.0) * std::abs(a));
        break;
    }
    case 6: {
        const double sg = sc.reflected ? -1.0 : 1.0;
        add(sg, 1, 0, 1.0 - q);
        add(sg, -1, 1, 1.0 - q);
        break;
    }
    case 7:
        for (double sg : {1.0, -1.0}) {
            add(sg, 1, 0, 1.0 - q);
            add(sg, -1, 1, 1.0 - q);
        }
        break;
    default:
        throw Error(ErrorKind::precondition, "scenario kind must be 1..7");
    }
    return s;
}

/// Discrete inner product on a support.
inline double lattice_inner(const Support& s, const std::function<double(double)>& f) {
    double r = 0.0;
    for (const auto& pt : s.points) r += pt.w * pt.rho * f(pt.x);
    return r;
}

struct GramReport {
    int n_max = 0;              ///< highest degree used; capped at N on a finite lattice
    int n_requested = 0;
    std::vector<std::vector<double>> gram;
    double off_diag_max = 0.0;
    std::vector<double> norm_ratios;
    double ratio_spread = 0.0;
    double off_diag_threshold = 1e-8;
    double ratio_threshold = 1e-6;
    bool verdict = false;
    std::vector<BranchStats> branches;
};

/// I_mn for the monic solutions P_0..P_{n_max} of the equation. On N + 1
/// lattice points only degrees 0..N are independent, so n_max is capped at N.
inline GramReport gram_matrix(const EHTSpec& spec, const Support& sup, int n_max, double off_diag_threshold = 1e-8) {
    const int n_requested = n_max;
    if (sup.finite && sup.N) n_max = std::min(n_max, *sup.N);
    // long double coefficients and sums: high-degree norms are far below the
    // size of the polynomial values, so double cancellation sets a floor
    const std::size_t M = sup.points.size(), K = std::size_t(n_max) + 1;
    std::vector<std::vector<long double>> vals(K, std::vector<long double>(M));
    for (std::size_t n = 0; n < K; ++n) {
        auto c = detail::monic_coefficients<long double>(spec, int(n));
        for (std::size_t i = 0; i < M; ++i) {
            long double x = sup.points[i].x, r = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
            vals[n][i] = r;
        }
    }
    GramReport g;
    g.n_max = n_max;
    g.n_requested = n_requested;
    g.off_diag_threshold = off_diag_threshold;
    g.branches = sup.branches;
    g.gram.assign(K, std::vector<double>(K, 0.0));
    std::vector<std::vector<long double>> acc(K, std::vector<long double>(K, 0.0L));
    for (std::size_t m = 0; m < K; ++m)
        for (std::size_t n = m; n < K; ++n) {
            long double a = 0;
            for (std::size_t i = 0; i < M; ++i)
                a += (long double)sup.points[i].w * sup.points[i].rho * vals[m][i] * vals[n][i];
            acc[m][n] = acc[n][m] = a;
            g.gram[m][n] = g.gram[n][m] = double(a);
        }
    for (std::size_t m = 0; m < K; ++m) {
        if (!(g.gram[m][m] > 0.0) && n_max > 0)
            throw Error(ErrorKind::degeneracy, "nonpositive diagonal Gram entry at n = " + std::to_string(m));
        for (std::size_t n = 0; n < m; ++n)
            g.off_diag_max = std::max(g.off_diag_max,
                                      double(std::abs(acc[m][n]) / std::sqrt(std::abs(acc[m][m] * acc[n][n]))));
    }
    g.verdict = g.off_diag_max < off_diag_threshold;
    return g;
}

/// Monic orthogonal polynomials on the support by Gram-Schmidt on the Krylov
/// sequence x P_{n-1}, with one reorthogonalisation pass.
struct GramSchmidtResult {
    std::vector<RealPolynomial> P;
    std::vector<double> norms;   ///< <P_n, P_n>
};

inline GramSchmidtResult gram_schmidt(const Support& sup, int n_max) {
    const std::size_t M = sup.points.size();
    GramSchmidtResult r;
    std::vector<std::vector<double>> vals;
    auto ip = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double a = 0.0;
        for (std::size_t i = 0; i < M; ++i) a += sup.points[i].w * sup.points[i].rho * u[i] * v[i];
        return a;
    };
    r.P.push_back(RealPolynomial{1.0});
    vals.emplace_back(M, 1.0);
    r.norms.push_back(ip(vals[0], vals[0]));
    const RealPolynomial X{0.0, 1.0};
    for (int n = 1; n <= n_max; ++n) {
        RealPolynomial p = X * r.P.back();
        std::vector<double> v(M);
        for (std::size_t i = 0; i < M; ++i) v[i] = sup.points[i].x * vals.back()[i];
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < n; ++j) {
                double h = ip(v, vals[std::size_t(j)]) / r.norms[std::size_t(j)];
                p = p - h * r.P[std::size_t(j)];
                for (std::size_t i = 0; i < M; ++i) v[i] -= h * vals[std::size_t(j)][i];
            }
        r.P.push_back(p);
        vals.push_back(v);
        r.norms.push_back(ip(v, v));
    }
    return r;
}

/// alpha_n, beta_n with x P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1}, read
/// off the coefficients; also returns the largest residual of that relation.
struct Recurrence {
    std::vector<double> alpha, beta;
    double residual = 0.0;
};

inline Recurrence recurrence_from(const std::vector<RealPolynomial>& P) {
    Recurrence rc;
    const RealPolynomial X{0.0, 1.0};
    for (std::size_t n = 0; n + 1 < P.size(); ++n) {
        // coefficient of x^n in x P_n - P_{n+1} gives alpha_n
        RealPolynomial d = X * P[n] - P[n + 1];
        double a = d.coeff(int(n));
        double b = 0.0;
        d = d - a * P[n];
        if (n > 0) {
            b = d.coeff(int(n) - 1);
            d = d - b * P[n - 1];
        }
        double sc = std::max(1.0, (X * P[n]).max_abs_coeff());
        rc.residual = std::max(rc.residual, d.max_abs_coeff() / sc);
        rc.alpha.push_back(a);
        rc.beta.push_back(b);
    }
    return rc;
}

/// Gram report plus the normalization-free norm check against a d_n^2 formula.
inline GramReport verify_orthogonality(const EHTSpec& spec, const WeightForm& wf, const OrthScenario& sc,
                                       const std::function<double(int)>* dn2, int n_max, const QParam& p,
                                       double off_diag_threshold = 1e-8, double ratio_threshold = 1e-6) {
    Support sup = enumerate_support(sc, wf, n_max, p);
    GramReport g = gram_matrix(spec, sup, n_max, off_diag_threshold);
    g.ratio_threshold = ratio_threshold;
    if (dn2 && *dn2) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int n = 0; n <= g.n_max; ++n) {
            double r = g.gram[std::size_t(n)][std::size_t(n)] / (*dn2)(n);
            g.norm_ratios.push_back(r);
            lo = std::min(lo, std::abs(r));
            hi = std::max(hi, std::abs(r));
        }
        g.ratio_spread = hi / lo - 1.0;
        g.verdict = g.verdict && g.ratio_spread < ratio_threshold;
    }
    return g;
}

} // namespace qhahn
