#pragma once

/**
 * @file families.hpp
 * @brief Registry of the named q-families: (sigma1, tau) recipes, parameter
 * regions, expected class and support, lambda_n and d_n^2 displays.
 */

#include <functional>

#include "orth.hpp"

namespace qhahn {

using Params = std::map<std::string, double, std::less<>>;

enum class Region { classic, extended, invalid };

inline std::string_view to_string(Region r) {
    switch (r) {
    case Region::classic: return "classic";
    case Region::extended: return "extended";
    case Region::invalid: return "invalid";
    }
    return "?";
}

/// A parameter region and the inequalities that define it.
struct RegionSpec {
    std::string name;
    Region kind = Region::classic;
    std::string conditions;        ///< human-readable inequality list
    std::string rule_id;           ///< positive rule realised in this region
    std::function<bool(const Params&, double q)> holds;
    Params sample;                 ///< interior point used by fixtures (q = 0.5)
};

struct FamilyInfo {
    std::string id;
    std::string display;
    std::vector<std::string> params;
    HahnClass cls{};
    int kind = 0;
    std::vector<RegionSpec> regions;
    std::function<std::pair<RealPolynomial, RealPolynomial>(const Params&, double q)> coefficients;  ///< sigma1, tau
    std::function<RealPolynomial(const Params&, double q)> sigma2_display;
    std::function<double(const Params&, double q, int n)> lambda_display;
    std::function<double(const Params&, double q, int n)> dn2;   ///< empty when the family has none
    /// n-independent factor of dn2 split off where it can degenerate to 0/0;
    /// dn2 is then the n-dependent rest.
    std::function<double(const Params&, double q)> dn2_constant = {};
    /// Leading coefficient k_n of the polynomial whose norm dn2 prints; empty
    /// means the display is already the monic norm.
    std::function<double(const Params&, double q, int n)> leading = {};
};

struct FamilySpec {
    const FamilyInfo* info = nullptr;
    Params params;
    Region region = Region::invalid;
    std::string region_name;
    std::string expected_rule;
    EHTSpec spec;
};

namespace detail {

inline double qp_inf(double a, double q) {
    return qpochhammer_inf(a, make_qparam(q)).value;
}
inline double qp_inf(std::initializer_list<double> as, double q) {
    return qpochhammer_inf(as, make_qparam(q));
}
inline double qp_n(std::initializer_list<double> as, double q, int n) {
    return qpochhammer(as, q, n);
}
/// (z; q)_inf for complex z.
inline std::complex<double> qp_inf_c(std::complex<double> z, double q) {
    std::complex<double> r = 1.0;
    for (int k = 0; std::abs(z) * std::pow(q, k) >= 1e-17; ++k) r *= 1.0 - z * std::pow(q, k);
    return r;
}
inline RealPolynomial lin(double c0, double c1) { return RealPolynomial{c0, c1}; }
/// k (x - r1)(x - r2)
inline RealPolynomial quad(double k, double r1, double r2) {
    return RealPolynomial{k * r1 * r2, -k * (r1 + r2), k};
}
inline int as_int(const Params& p, const char* name) {
    return int(std::lround(p.at(name)));
}

} // namespace detail

inline const std::vector<FamilyInfo>& family_registry() {
    using detail::as_int;
    using detail::lin;
    using detail::qp_inf;
    using detail::qp_n;
    using detail::quad;
    using C = HahnClass;
    static const std::vector<FamilyInfo> reg = [] {
        std::vector<FamilyInfo> v;

        v.push_back({"big-q-jacobi", "big q-Jacobi P_n(x; a, b, c; q)", {"a", "b", "c"}, C::empty_jacobi_jacobi, 1,
            {{"classic", Region::classic, "c < 0, 0 < a < 1/q, 0 < b < 1/q", "ejj.two-sided",
              [](const Params& p, double q) { return p.at("c") < 0 && 0 < p.at("a") && p.at("a") < 1 / q && 0 < p.at("b") && p.at("b") < 1 / q; },
              {{"a", 0.5}, {"b", 0.5}, {"c", -0.5}}},
             {"negative-b", Region::extended, "c < 0, b < 0, a b q / c <= 1, 0 < a < 1/q", "ejj.two-sided-outer-sigma2",
              [](const Params& p, double q) { double a = p.at("a"), b = p.at("b"), c = p.at("c"); return c < 0 && b < 0 && a * b * q / c <= 1 && 0 < a && a < 1 / q; },
              {{"a", 0.5}, {"b", -0.5}, {"c", -0.7}}}},
            [](const Params& p, double q) {
                double a = p.at("a"), b = p.at("b"), c = p.at("c");
                return std::pair{quad(1 / (q * q), c * q, a * q),
                                 lin((a * (b * q - 1) + c * (a * q - 1)) / (1 - q), (1 - a * b * q * q) / ((1 - q) * q))};
            },
            [](const Params& p, double q) { double a = p.at("a"), b = p.at("b"), c = p.at("c"); return quad(a * b * q, c / b, 1.0); },
            [](const Params& p, double q, int n) { return std::pow(q, -n) * qbracket(n, q) * (1 - p.at("a") * p.at("b") * std::pow(q, n + 1)) / (q - 1); },
            [](const Params& p, double q, int n) {
                double a = p.at("a"), b = p.at("b"), c = p.at("c");
                return (a - c) * q * (1 - q) * qp_inf({q, a * b * q * q, c * q / a, a * q / c}, q) /
                       qp_inf({a * q, b * q, c * q, a * b * q / c}, q) * qp_n({q, a * b * q}, q, n) /
                       qp_n({a * b * q, a * b * q * q}, q, 2 * n) * qp_n({a * q, b * q, c * q, a * b * q / c}, q, n) *
                       std::pow(-a * c, n) * std::pow(q, n * (n + 3) / 2.0);
            }});

        auto hahn_tau = [](const Params& p, double q) {
            double al = p.at("alpha"), be = p.at("beta");
            int N = as_int(p, "N");
            double qN = std::pow(q, -N);
            return std::pair{quad(1 / (q * q), al * q, qN),
                             lin((al * qN + al * be * q - al - qN / q) / (1 - q), (1 - al * be * q * q) / ((1 - q) * q))};
        };
        v.push_back({"q-hahn", "q-Hahn Q_n(x; alpha, beta, N | q)", {"alpha", "beta", "N"}, C::empty_jacobi_jacobi, 3,
            {{"classic", Region::classic, "0 < alpha < 1/q, 0 < beta < 1/q", "ejj.finite-from-a2",
              [](const Params& p, double q) { return 0 < p.at("alpha") && p.at("alpha") < 1 / q && 0 < p.at("beta") && p.at("beta") < 1 / q; },
              {{"alpha", 0.5}, {"beta", 0.5}, {"N", 5}}},
             {"large-parameters", Region::extended, "alpha >= q^(-N-1), beta >= q^(-N-1)", "ejj.finite-from-b2-large",
              [](const Params& p, double q) { double t = std::pow(q, -as_int(p, "N") - 1); return p.at("alpha") >= t && p.at("beta") >= t; },
              {{"alpha", 80.0}, {"beta", 80.0}, {"N", 5}}},
             {"negative-alpha", Region::extended, "alpha < 0, beta >= q^(-N-1)", "ejj.finite-from-b2-negative-a1",
              [](const Params& p, double q) { return p.at("alpha") < 0 && p.at("beta") >= std::pow(q, -as_int(p, "N") - 1); },
              {{"alpha", -1.0}, {"beta", 80.0}, {"N", 5}}},
             {"negative-beta", Region::extended, "0 < alpha < 1/q, beta < 0", "ejj.finite-from-b2-negative-a2",
              [](const Params& p, double q) { return 0 < p.at("alpha") && p.at("alpha") < 1 / q && p.at("beta") < 0; },
              {{"alpha", 0.5}, {"beta", -0.5}, {"N", 5}}}},
            hahn_tau,
            [](const Params& p, double q) {
                double al = p.at("alpha"), be = p.at("beta");
                return quad(al * be * q, 1.0, std::pow(q, -as_int(p, "N") - 1) / be);
            },
            [](const Params& p, double q, int n) { return -std::pow(q, -n) * qbracket(n, q) * (1 - p.at("alpha") * p.at("beta") * std::pow(q, n + 1)) / (1 - q); },
            [](const Params& p, double q, int n) {
                double al = p.at("alpha"), be = p.at("beta");
                int N = as_int(p, "N");
                double qN = std::pow(q, -N);
                return qp_n({q, al * be * q, al * q, qN, be * q, al * be * std::pow(q, N + 2)}, q, n) /
                       qp_n({al * be * q, al * be * q * q}, q, 2 * n) * std::pow(-al * qN, n) *
                       std::pow(q, n * (n + 1) / 2.0) * (1 / q - 1);
            },
            [](const Params& p, double q) {
                double al = p.at("alpha"), be = p.at("beta");
                int N = as_int(p, "N");
                double qN = std::pow(q, -N);
                return qp_inf({q, std::pow(q, N + 1), 1 / be, qN / (q * al * be)}, q) /
                       qp_inf({al * q, be * std::pow(q, N + 1), qN / be, 1 / (al * be * q)}, q);
            }});

        v.push_back({"little-q-jacobi", "little q-Jacobi p_n(x; a, b | q)", {"a", "b"}, C::zero_jacobi_jacobi, 2,
            {{"classic", Region::classic, "0 < a < 1/q, 0 < b < 1/q", "zjj.from-a1",
              [](const Params& p, double q) { return 0 < p.at("a") && p.at("a") < 1 / q && 0 < p.at("b") && p.at("b") < 1 / q; },
              {{"a", 0.5}, {"b", 0.5}}},
             {"negative-b", Region::extended, "0 < a < 1/q, b < 0", "zjj.from-a1-negative-a2",
              [](const Params& p, double q) { return 0 < p.at("a") && p.at("a") < 1 / q && p.at("b") < 0; },
              {{"a", 0.5}, {"b", -0.5}}}},
            [](const Params& p, double q) {
                double a = p.at("a"), b = p.at("b");
                return std::pair{quad(1 / (q * q), 0.0, 1.0), lin((a * q - 1) / ((1 - q) * q), (1 - a * b * q * q) / ((1 - q) * q))};
            },
            [](const Params& p, double q) { double a = p.at("a"), b = p.at("b"); return quad(a * b * q, 0.0, 1 / (b * q)); },
            [](const Params& p, double q, int n) { return -std::pow(q, -n) * qbracket(n, q) * (1 - p.at("a") * p.at("b") * std::pow(q, n + 1)) / (1 - q); },
            [](const Params& p, double q, int n) {
                double a = p.at("a"), b = p.at("b");
                return std::pow(a, n) * std::pow(q, n * n) * (1 - q) * qp_n({q, a * b * q}, q, n) /
                       qp_n({a * b * q, a * b * q * q}, q, 2 * n) * qp_n({a * q, b * q}, q, n) *
                       qp_inf({q, a * b * q * q}, q) / qp_inf({a * q, b * q}, q);
            }});

        v.push_back({"q-kravchuk", "q-Kravchuk K_n(x; p, N; q)", {"p", "N"}, C::zero_jacobi_jacobi, 3,
            {{"classic", Region::classic, "p > 0", "zjj.finite-from-a2",
              [](const Params& p, double) { return p.at("p") > 0; },
              {{"p", 0.5}, {"N", 5}}}},
            [](const Params& p, double q) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                return std::pair{quad(1 / (q * q), 0.0, std::pow(q, -N)),
                                 lin(-(pp + std::pow(q, -N - 1)) / (1 - q), (1 + pp * q) / ((1 - q) * q))};
            },
            [](const Params& p, double) { return quad(-p.at("p"), 0.0, 1.0); },
            [](const Params& p, double q, int n) { return -std::pow(q, -n) * qbracket(n, q) * (1 + p.at("p") * std::pow(q, n)) / (1 - q); },
            [](const Params& p, double q, int n) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                double qN = std::pow(q, -N);
                return (1 / q - 1) * std::pow(pp, -N) * std::pow(q, -N * (N + 1) / 2.0) * std::pow(-qN * pp, n) *
                       std::pow(q, n * n) * (1 + pp) / (1 + pp * std::pow(q, 2 * n)) * qpochhammer(-pp * q, q, N) *
                       qp_inf({q, std::pow(q, N + 1)}, q) * qp_n({q, -pp * std::pow(q, N + 1)}, q, n) /
                       qp_n({-pp, qN}, q, n);
            },
            {},
            // K_n = 3phi2(q^-n, q^-s, -p q^n; q^-N, 0; q; q) as a polynomial in x = q^-s
            [](const Params& p, double q, int n) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                return qp_n({std::pow(q, -n), -pp * std::pow(q, n)}, q, n) * std::pow(-1.0, n) *
                       std::pow(q, n * (n + 1) / 2.0) / qp_n({std::pow(q, -N), q}, q, n);
            }});

        v.push_back({"quantum-q-kravchuk", "quantum q-Kravchuk K^qtm_n(x; p, N; q)", {"p", "N"}, C::empty_jacobi_laguerre, 3,
            {{"classic", Region::classic, "p >= q^(-N-1)", "ejl.finite-from-b2",
              [](const Params& p, double q) { return p.at("p") >= std::pow(q, -as_int(p, "N") - 1); },
              {{"p", 80.0}, {"N", 5}}}},
            [](const Params& p, double q) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                return std::pair{RealPolynomial{std::pow(q, -N) / (q * q), -1 / (q * q)},
                                 lin((pp - 1 / q + std::pow(q, -N - 1)) / (1 - q), -pp / (1 - q))};
            },
            [](const Params& p, double q) { double pp = p.at("p"); return quad(pp, std::pow(q, -as_int(p, "N") - 1) / pp, 1.0); },
            [](const Params& p, double q, int n) { return p.at("p") / (1 - q) * qbracket(n, q); },
            [](const Params& p, double q, int n) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                double qN = std::pow(q, -N);
                return (1 / q - 1) / qpochhammer(qN / pp, q, N) * std::pow(pp, -2 * n) * std::pow(q, -n * (2 * n + 1)) *
                       qp_n({q, pp * q, qN}, q, n) * qp_inf({q, qN / pp, std::pow(q, N + 1)}, q);
            }});

        v.push_back({"affine-q-kravchuk", "affine q-Kravchuk K^Aff_n(x; p, N; q)", {"p", "N"}, C::empty_laguerre_jacobi, 3,
            {{"classic", Region::classic, "0 < p < 1/q", "elj.finite-from-a2",
              [](const Params& p, double q) { return 0 < p.at("p") && p.at("p") < 1 / q; },
              {{"p", 0.5}, {"N", 5}}}},
            [](const Params& p, double q) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                return std::pair{quad(1 / q, pp * q, std::pow(q, -N)),
                                 lin(-(pp * q + std::pow(q, -N) - pp * std::pow(q, 1 - N)) / (1 - q), 1 / (1 - q))};
            },
            [](const Params& p, double q) {
                double k = -p.at("p") * std::pow(q, 1 - as_int(p, "N"));
                return RealPolynomial{-k, k};
            },
            [](const Params&, double q, int n) { return qbracket(n, 1 / q) / (q - 1); },
            [](const Params& p, double q, int n) {
                double pp = p.at("p");
                int N = as_int(p, "N");
                return std::pow(-1.0, n) * std::pow(pp, n - N) * (1 / q - 1) * std::pow(q, -N * (n + 1)) *
                       std::pow(q, n * (n + 1) / 2.0) * qp_n({q, pp * q, std::pow(q, -N)}, q, n) *
                       qp_inf({q, std::pow(q, N + 1)}, q) / qp_inf(pp * q, q);
            }});

        v.push_back({"big-q-laguerre", "big q-Laguerre P_n(x; a, b; q)", {"a", "b"}, C::empty_laguerre_jacobi, 1,
            {{"classic", Region::classic, "b < 0, 0 < a < 1/q", "elj.two-sided",
              [](const Params& p, double q) { return p.at("b") < 0 && 0 < p.at("a") && p.at("a") < 1 / q; },
              {{"a", 0.5}, {"b", -0.5}}}},
            [](const Params& p, double q) {
                double a = p.at("a"), b = p.at("b");
                return std::pair{quad(1 / (q * q), b * q, a * q), lin((a + b - a * b * q) / (q - 1), -1 / (q * (q - 1)))};
            },
            [](const Params& p, double q) { double k = -p.at("a") * p.at("b") * q; return RealPolynomial{-k, k}; },
            [](const Params&, double q, int n) { return std::pow(q, -n) / (q - 1) * qbracket(n, q); },
            [](const Params& p, double q, int n) {
                double a = p.at("a"), b = p.at("b");
                return (a - b) * q * (1 - q) * std::pow(-a * b, n) * std::pow(q, n * (n + 3) / 2.0) *
                       qpochhammer(q, q, n) * qp_n({a * q, b * q}, q, n) * qp_inf({q, b * q / a, a * q / b}, q) /
                       qp_inf({a * q, b * q}, q);
            }});

        v.push_back({"q-meixner", "q-Meixner M_n(x; b, c; q)", {"b", "c"}, C::empty_jacobi_laguerre, 5,
            {{"classic", Region::classic, "c > 0, 0 < b < 1/q", "ejl.ray-from-b2",
              [](const Params& p, double q) { return p.at("c") > 0 && 0 < p.at("b") && p.at("b") < 1 / q; },
              {{"b", 0.5}, {"c", 1.0}}},
             {"negative-b", Region::extended, "c > 0, b < 0, 0 < -b c <= 1", "ejl.ray-from-b2-negative-a1",
              [](const Params& p, double) { double b = p.at("b"), c = p.at("c"); return c > 0 && b < 0 && 0 < -b * c && -b * c <= 1; },
              {{"b", -0.5}, {"c", 1.0}}}},
            [](const Params& p, double q) {
                double b = p.at("b"), c = p.at("c");
                return std::pair{RealPolynomial{-c * b * q / (q * q), c / (q * q)}, lin((c / q - b * c + 1) / (1 - q), -1 / (1 - q))};
            },
            [](const Params& p, double) { return quad(1.0, -p.at("b") * p.at("c"), 1.0); },
            [](const Params&, double q, int n) { return qbracket(n, q) / (1 - q); },
            [](const Params& p, double q, int n) {
                double b = p.at("b"), c = p.at("c");
                return (1 / q - 1) * std::pow(c, 2 * n) * std::pow(q, -n * (2 * n + 1)) * qp_n({q, -q / c, b * q}, q, n) *
                       qp_inf({q, -c}, q) / qp_inf(b * q, q);
            }});

        auto asc1_dn2 = [](double a, double q, int n) {
            return (1 - a) * std::pow(-a, n) * std::pow(q, n * (n - 1) / 2.0) * (1 - q) * qpochhammer(q, q, n) *
                   qp_inf({q, a * q, q / a}, q);
        };
        auto asc1_coef = [](double a, double q) {
            return std::pair{quad(1 / q, a, 1.0), lin(-(1 + a) / (1 - q), 1 / (1 - q))};
        };
        v.push_back({"al-salam-carlitz-1", "Al-Salam-Carlitz I U_n^(a)(x; q)", {"a"}, C::empty_hermite_jacobi, 1,
            {{"classic", Region::classic, "a < 0", "ehj.two-sided",
              [](const Params& p, double) { return p.at("a") < 0; },
              {{"a", -1.0}}}},
            [asc1_coef](const Params& p, double q) { return asc1_coef(p.at("a"), q); },
            [](const Params& p, double) { return RealPolynomial{p.at("a")}; },
            [](const Params&, double q, int n) { return std::pow(q, 1 - n) / (q - 1) * qbracket(n, q); },
            [asc1_dn2](const Params& p, double q, int n) { return asc1_dn2(p.at("a"), q, n); }});

        v.push_back({"al-salam-carlitz-2", "Al-Salam-Carlitz II V_n^(a)(x; q)", {"a"}, C::empty_jacobi_hermite, 5,
            {{"classic", Region::classic, "0 < a <= 1", "ejh.ray-from-b2",
              [](const Params& p, double) { return 0 < p.at("a") && p.at("a") <= 1; },
              {{"a", 0.5}}}},
            [](const Params& p, double q) {
                double a = p.at("a");
                return std::pair{RealPolynomial{a / q}, lin(-(1 + a) / (q - 1), 1 / (q - 1))};
            },
            [](const Params& p, double) { return quad(1.0, p.at("a"), 1.0); },
            [](const Params&, double q, int n) { return qbracket(n, q) / (1 - q); },
            [](const Params& p, double q, int n) {
                return (1 / q - 1) * std::pow(p.at("a"), n) * std::pow(q, -n * n) * qpochhammer(q, q, n) * qp_inf(q, q);
            }});

        v.push_back({"discrete-q-hermite-1", "discrete q-Hermite I h_n(x; q)", {}, C::empty_hermite_jacobi, 1,
            {{"classic", Region::classic, "none (Al-Salam-Carlitz I with a = -1)", "ehj.two-sided",
              [](const Params&, double) { return true; }, {}}},
            [asc1_coef](const Params&, double q) { return asc1_coef(-1.0, q); },
            [](const Params&, double) { return RealPolynomial{-1.0}; },
            [](const Params&, double q, int n) { return std::pow(q, 1 - n) / (q - 1) * qbracket(n, q); },
            [asc1_dn2](const Params&, double q, int n) { return asc1_dn2(-1.0, q, n); }});

        v.push_back({"discrete-q-hermite-2", "discrete q-Hermite II h~_n(x; q)", {}, C::empty_jacobi_hermite, 7,
            {{"classic", Region::classic, "none", "ejh.bilateral-complex-sigma2",
              [](const Params&, double) { return true; }, {}}},
            [](const Params&, double q) { return std::pair{RealPolynomial{1 / q}, lin(0.0, 1 / (q - 1))}; },
            [](const Params&, double) { return RealPolynomial{1.0, 0.0, 1.0}; },
            [](const Params&, double q, int n) { return qbracket(n, q) / (1 - q); },
            [](const Params&, double q, int n) {
                using detail::qp_inf_c;
                const std::complex<double> I(0.0, 1.0);
                std::complex<double> den = 1.0;
                for (auto z : {I, -I, -I * q, I * q, -I, I, I * q, -I * q}) den *= qp_inf_c(z, q);
                double num = qp_inf({q, -q, -1.0, -1.0, -q}, q);
                return (1 - q) * std::pow(q, -n * n) * qpochhammer(q, q, n) * num / den.real();
            }});

        v.push_back({"q-laguerre", "q-Laguerre L_n^(alpha)(x; q)", {"alpha"}, C::zero_jacobi_laguerre, 6,
            {{"classic", Region::classic, "alpha > -1", "zjl.half-line",
              [](const Params& p, double) { return p.at("alpha") > -1; },
              {{"alpha", 0.5}}}},
            [](const Params& p, double q) {
                double qa = std::pow(q, p.at("alpha"));
                return std::pair{RealPolynomial{0.0, 1 / (q * q)}, lin((1 / q - qa) / (1 - q), -qa / (1 - q))};
            },
            [](const Params& p, double q) { return quad(std::pow(q, p.at("alpha")), 0.0, -1.0); },
            [](const Params& p, double q, int n) { return qbracket(n, q) * std::pow(q, p.at("alpha")) / (1 - q); },
            [](const Params& p, double q, int n) {
                double qa = std::pow(q, p.at("alpha"));
                return std::pow(q, -n) * (1 - q) * qpochhammer(qa * q, q, n) / qpochhammer(q, q, n) *
                       qp_inf({q, -qa * q, -1 / qa}, q) / qp_inf({qa * q, -q, -q}, q);
            },
            {},
            [](const Params& p, double q, int n) {
                return std::pow(-1.0, n) * std::pow(q, n * (n + p.at("alpha"))) / qpochhammer(q, q, n);
            }});

        v.push_back({"q-charlier", "q-Charlier C_n(x; a; q)", {"a"}, C::zero_jacobi_laguerre, 5,
            {{"classic", Region::classic, "a > 0", "zjl.ray-from-a2",
              [](const Params& p, double) { return p.at("a") > 0; },
              {{"a", 1.0}}}},
            [](const Params& p, double q) {
                double a = p.at("a");
                return std::pair{RealPolynomial{0.0, a / (q * q)}, lin((a + q) / ((1 - q) * q), -1 / (1 - q))};
            },
            [](const Params&, double) { return quad(1.0, 0.0, 1.0); },
            [](const Params&, double q, int n) { return qbracket(n, q) / (1 - q); },
            [](const Params& p, double q, int n) {
                double a = p.at("a");
                return std::pow(a, 2 * n) * std::pow(q, -n * (2 * n + 1)) * qp_n({-q / a, q}, q, n) * qp_inf({-a, q}, q);
            }});

        v.push_back({"alternative-q-charlier", "alternative q-Charlier K_n(x; a; q)", {"a"}, C::zero_bessel_jacobi, 2,
            {{"classic", Region::classic, "a > 0", "zbj.from-a1",
              [](const Params& p, double) { return p.at("a") > 0; },
              {{"a", 1.0}}}},
            [](const Params& p, double q) {
                double a = p.at("a");
                return std::pair{quad(-1 / (q * q), 0.0, 1.0), lin(1 / ((1 - q) * q), -(1 + a * q) / ((1 - q) * q))};
            },
            [](const Params& p, double) { return RealPolynomial{0.0, 0.0, p.at("a")}; },
            [](const Params& p, double q, int n) { return std::pow(q, -n) * qbracket(n, q) * (1 + p.at("a") * std::pow(q, n)) / (1 - q); },
            [](const Params& p, double q, int n) {
                double a = p.at("a");
                return std::pow(a, n) * std::pow(q, n * (3 * n - 1) / 2.0) * qp_inf({-a * q, q}, q) *
                       qp_n({q, -a}, q, n) / qp_n({-a, -a * q}, q, 2 * n);
            }});

        v.push_back({"stieltjes-wigert", "Stieltjes-Wigert S_n(x; q)", {}, C::zero_bessel_laguerre, 6,
            {{"classic", Region::classic, "none", "zbl.half-line", [](const Params&, double) { return true; }, {}}},
            [](const Params&, double q) { return std::pair{RealPolynomial{0.0, 1 / (q * q)}, lin(1 / ((1 - q) * q), -1 / (1 - q))}; },
            [](const Params&, double) { return RealPolynomial{0.0, 0.0, 1.0}; },
            [](const Params&, double q, int n) { return qbracket(n, q) / (1 - q); },
            // the printed form carries an unspecified t; it is fixed to 1 as part of the constant
            [](const Params&, double q, int n) {
                const double t = 1.0;
                return std::pow(q, -n) * (1 - q) * qp_inf({-t * q, -1 / t, q}, q) / qpochhammer(q * q, q, n);
            },
            {},
            [](const Params&, double q, int n) { return std::pow(-1.0, n) * std::pow(q, n * n) / qpochhammer(q, q, n); }});

        v.push_back({"little-q-laguerre", "little q-Laguerre p_n(x; a | q)", {"a"}, C::zero_laguerre_jacobi, 2,
            {{"classic", Region::classic, "0 < a < 1/q", "zlj.from-a1",
              [](const Params& p, double q) { return 0 < p.at("a") && p.at("a") < 1 / q; },
              {{"a", 0.5}}}},
            [](const Params& p, double q) {
                double a = p.at("a");
                return std::pair{quad(-1 / (q * q), 0.0, 1.0), lin((1 - a * q) / ((1 - q) * q), -1 / ((1 - q) * q))};
            },
            [](const Params& p, double) { return RealPolynomial{0.0, p.at("a")}; },
            [](const Params&, double q, int n) { return std::pow(q, -n) / (1 - q) * qbracket(n, q); },
            [](const Params& p, double q, int n) {
                double a = p.at("a");
                return std::pow(a, n) * std::pow(q, n * n) * qp_inf(q, q) / qp_inf(a * q, q) * qp_n({q, a * q}, q, n);
            }});
        return v;
    }();
    return reg;
}

inline const FamilyInfo& find_family(std::string_view id) {
    for (const auto& f : family_registry())
        if (f.id == id) return f;
    throw Error(ErrorKind::precondition, "unknown family " + std::string(id));
}

/// Builds the equation of a family instance and tags its region.
inline FamilySpec make_family(std::string_view id, const Params& params, const QParam& qp) {
    const FamilyInfo& info = find_family(id);
    for (const auto& name : info.params)
        if (!params.count(name)) throw Error(ErrorKind::precondition, "missing parameter " + name + " for " + info.id);
    for (const auto& [name, value] : params)
        if (std::find(info.params.begin(), info.params.end(), name) == info.params.end())
            throw Error(ErrorKind::precondition, "unknown parameter " + name + " for " + info.id);
    if (params.count("N")) {
        double N = params.at("N");
        if (N < 0 || N != std::round(N)) throw Error(ErrorKind::precondition, "N must be a nonnegative integer");
    }
    FamilySpec fs;
    fs.info = &info;
    fs.params = params;
    auto [s1, tau] = info.coefficients(params, qp.q);
    fs.spec = make_eht(s1, tau, qp);
    for (const auto& r : info.regions)
        if (r.holds(params, qp.q)) {
            fs.region = r.kind;
            fs.region_name = r.name;
            fs.expected_rule = r.rule_id;
            break;
        }
    return fs;
}

/// The printed d_n^2 of a family, evaluated verbatim.
inline double norm_formula(std::string_view id, const Params& params, double q, int n) {
    const FamilyInfo& info = find_family(id);
    if (!info.dn2) throw Error(ErrorKind::unsupported, "no d_n^2 display for " + info.id);
    double c = info.dn2_constant ? info.dn2_constant(params, q) : 1.0;
    return c * info.dn2(params, q, n);
}

/// d_n^2 / k_n^2: the display brought to the monic normalization. A prefactor
/// that is 0, infinite or 0/0 at these parameters is replaced by 1, since the
/// comparison is up to a constant anyway; `degenerate_constant` reports it.
struct MonicNorm {
    std::function<double(int)> dn2;
    bool degenerate_constant = false;
};

inline MonicNorm monic_norm(const FamilySpec& fs) {
    const FamilyInfo& info = *fs.info;
    if (!info.dn2) throw Error(ErrorKind::unsupported, "no d_n^2 display for " + info.id);
    const double q = fs.spec.q();
    MonicNorm m;
    double c = 1.0;
    if (info.dn2_constant) {
        c = info.dn2_constant(fs.params, q);
        if (!std::isfinite(c) || c == 0.0) {
            c = 1.0;
            m.degenerate_constant = true;
        }
    }
    m.dn2 = [&info, params = fs.params, q, c](int n) {
        double k = info.leading ? info.leading(params, q, n) : 1.0;
        return c * info.dn2(params, q, n) / (k * k);
    };
    return m;
}

inline const std::vector<FamilyInfo>& list_families() { return family_registry(); }

} // namespace qhahn
