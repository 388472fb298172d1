#pragma once

/**
 * @file eht.hpp
 * @brief The q-difference equation of hypergeometric type
 *
 *     sigma1(x) D_{1/q} D_q y + tau(x) D_q y + lambda y = 0
 *
 * together with sigma2 = q [sigma1 + (1 - 1/q) x tau], its roots, the
 * eigenvalues lambda_n, the Pearson ratio and the monic polynomial solutions.
 */

#include <array>
#include <optional>

#include "qcore.hpp"

namespace qhahn {

/// Roots of a polynomial of degree <= 2. Real roots are sorted ascending;
/// a conjugate pair is stored as re +- i im. `double_root` marks a
/// discriminant inside the degeneracy band.
struct RootSet {
    std::vector<double> real;
    std::optional<std::complex<double>> complex_pair;   // the member with im > 0
    bool double_root = false;

    bool empty() const { return real.empty() && !complex_pair; }
};

inline RootSet polynomial_roots(const RealPolynomial& p) {
    RootSet r;
    if (p.degree() == 1) {
        r.real.push_back(-p.coeff(0) / p.coeff(1));
    } else if (p.degree() == 2) {
        const double a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        const double disc = b * b - 4.0 * a * c;
        const double scale = std::max(b * b, std::abs(4.0 * a * c));
        if (std::abs(disc) <= 1e-12 * scale) {
            double x = -b / (2.0 * a);
            r.real = {x, x};
            r.double_root = true;
        } else if (disc > 0) {
            double s = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            double x1 = s / a, x2 = (s != 0.0) ? c / s : -x1;
            if (x1 > x2) std::swap(x1, x2);
            r.real = {x1, x2};
        } else {
            r.complex_pair = std::complex<double>(-b / (2.0 * a), std::sqrt(-disc) / (2.0 * std::abs(a)));
        }
    }
    return r;
}

/// Values of sigma1, sigma2, tau and their derivatives at x = 0.
struct Taylor {
    double s1_0 = 0, s1_1 = 0, s1_2 = 0;
    double s2_0 = 0, s2_1 = 0, s2_2 = 0;
    double t_0 = 0, t_1 = 0;
};

struct EHTSpec {
    QParam qp;
    RealPolynomial sigma1;
    RealPolynomial tau;
    RealPolynomial sigma2;
    RootSet roots1;
    RootSet roots2;
    Taylor taylor;

    double q() const { return qp.q; }
    /// Coefficient scale used by every zero test on this spec.
    double scale() const {
        return std::max({sigma1.max_abs_coeff(), sigma2.max_abs_coeff(), tau.max_abs_coeff()});
    }
};

namespace detail {

inline EHTSpec finish_spec(RealPolynomial s1, RealPolynomial tau, RealPolynomial s2, const QParam& qp) {
    EHTSpec s;
    s.qp = qp;
    const double sc = std::max({s1.max_abs_coeff(), s2.max_abs_coeff(), tau.max_abs_coeff()});
    const double tol = 1e-13 * sc;
    s.sigma1 = s1.cleaned(tol);
    s.sigma2 = s2.cleaned(tol);
    s.tau = tau;
    s.roots1 = polynomial_roots(s.sigma1);
    s.roots2 = polynomial_roots(s.sigma2);
    auto& t = s.taylor;
    t.s1_0 = s.sigma1.coeff(0); t.s1_1 = s.sigma1.coeff(1); t.s1_2 = 2.0 * s.sigma1.coeff(2);
    t.s2_0 = s.sigma2.coeff(0); t.s2_1 = s.sigma2.coeff(1); t.s2_2 = 2.0 * s.sigma2.coeff(2);
    t.t_0 = s.tau.coeff(0); t.t_1 = s.tau.coeff(1);
    return s;
}

} // namespace detail

/// Builds the equation from (sigma1, tau): sigma2 = q sigma1 + (q - 1) x tau.
inline EHTSpec make_eht(const RealPolynomial& sigma1, const RealPolynomial& tau, const QParam& qp) {
    qp.validate();
    if (sigma1.degree() > 2) throw Error(ErrorKind::precondition, "sigma1 must have degree <= 2");
    if (tau.degree() != 1 || tau.coeff(1) == 0.0)
        throw Error(ErrorKind::precondition, "tau must have degree exactly 1 with tau'(0) != 0");
    const double q = qp.q;
    RealPolynomial s2 = q * sigma1 + (q - 1.0) * (RealPolynomial{0.0, 1.0} * tau);
    if (sigma1.is_zero() && s2.is_zero()) throw Error(ErrorKind::precondition, "sigma1 and sigma2 both vanish");
    return detail::finish_spec(sigma1, tau, s2, qp);
}

/// Builds the equation from (sigma1, sigma2); needs sigma2(0) = q sigma1(0).
inline EHTSpec eht_from_sigmas(const RealPolynomial& sigma1, const RealPolynomial& sigma2, const QParam& qp) {
    qp.validate();
    const double q = qp.q;
    const double sc = std::max(sigma1.max_abs_coeff(), sigma2.max_abs_coeff());
    if (std::abs(sigma2.coeff(0) - q * sigma1.coeff(0)) > 1e-12 * sc)
        throw Error(ErrorKind::precondition, "sigma2(0) must equal q sigma1(0)");
    // (q - 1) x tau = sigma2 - q sigma1
    RealPolynomial d = sigma2 - q * sigma1;
    RealPolynomial tau({d.coeff(1) / (q - 1.0), d.coeff(2) / (q - 1.0)});
    if (d.degree() > 2) throw Error(ErrorKind::precondition, "sigma2 must have degree <= 2");
    return make_eht(sigma1, tau, qp);
}

/// The equation of y(-x): sigma1(-x), -tau(-x). Roots change sign.
inline EHTSpec reflect(const EHTSpec& s) {
    return make_eht(s.sigma1.scaled_argument(-1.0), -1.0 * s.tau.scaled_argument(-1.0), s.qp);
}

/// lambda_n = -[n]_q ( tau'(0) + 1/2 [n-1]_{1/q} sigma1''(0) )
inline double lambda_n(const EHTSpec& s, int n) {
    if (n < 0) throw Error(ErrorKind::precondition, "lambda_n needs n >= 0");
    const double q = s.q();
    return -qbracket(n, q) * (s.taylor.t_1 + 0.5 * qbracket(n - 1, 1.0 / q) * s.taylor.s1_2);
}

namespace detail {
inline bool vanishes(const RealPolynomial& p, double x) {
    double v = p(x);
    return v == 0.0 || std::abs(v) <= 1e-14 * p.abs_scale(x);
}
} // namespace detail

/// f(x) = q^{-1} sigma2(x) / sigma1(q x) = rho(qx)/rho(x)
inline double pearson_ratio(const EHTSpec& s, double x) {
    const double q = s.q();
    if (detail::vanishes(s.sigma1, q * x))
        throw Error(ErrorKind::pole, "Pearson ratio has a pole (sigma1(qx) = 0)", x);
    return s.sigma2(x) / (q * s.sigma1(q * x));
}

/// q^k q^{-1} sigma2(x) / sigma1(x): successive-point ratio of sigma1 rho x^k.
inline double extended_ratio(const EHTSpec& s, double x, int k) {
    if (k < 0) throw Error(ErrorKind::precondition, "extended ratio needs k >= 0");
    const double q = s.q();
    if (detail::vanishes(s.sigma1, x))
        throw Error(ErrorKind::pole, "extended Pearson ratio has a pole (sigma1(x) = 0)", x);
    return std::pow(q, k - 1) * s.sigma2(x) / s.sigma1(x);
}

/// sigma1 D_{1/q} D_q p + tau D_q p + lambda p, as a polynomial.
inline RealPolynomial apply_operator(const EHTSpec& s, const RealPolynomial& p, double lambda) {
    const double q = s.q();
    RealPolynomial dq = qderivative(p, q);
    RealPolynomial ddq = qderivative(dq, 1.0 / q);
    return s.sigma1 * ddq + s.tau * dq + lambda * p;
}

namespace detail {

/// [n]_q in working precision T, as a sum of powers for n >= 0.
template <typename T>
T qbracket_t(int n, T q) {
    if (n >= 0) {
        T r = 0, p = 1;
        for (int j = 0; j < n; ++j, p *= q) r += p;
        return r;
    }
    // [-m]_q = -q^{-m} [m]_q
    return -qbracket_t<T>(-n, q) / std::pow(q, T(-n));
}

template <typename T>
T lambda_t(const EHTSpec& s, int n) {
    const T q = s.q();
    return -qbracket_t<T>(n, q) * (T(s.taylor.t_1) + T(0.5) * qbracket_t<T>(n - 1, 1 / q) * T(s.taylor.s1_2));
}

/// Monic coefficients in precision T. The operator maps x^k to
///   (lambda - lambda_k) x^k + (s1 [k][k-1]' + t0 [k]) x^{k-1} + s0 [k][k-1]' x^{k-2}
/// so they follow by back substitution from c_n = 1.
template <typename T>
std::vector<T> monic_coefficients(const EHTSpec& s, int n) {
    if (n < 0) throw Error(ErrorKind::precondition, "degree must be >= 0");
    const T q = s.q();
    const T s0 = s.sigma1.coeff(0), s1 = s.sigma1.coeff(1), t0 = s.tau.coeff(0);
    const T ln = lambda_t<T>(s, n);
    auto kk = [&](int k) { return qbracket_t<T>(k, q) * qbracket_t<T>(k - 1, 1 / q); };
    std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
    c[static_cast<std::size_t>(n)] = 1;
    for (int j = n - 1; j >= 0; --j) {
        T lj = lambda_t<T>(s, j);
        if (std::abs(ln - lj) < T(1e-12) * std::max(std::abs(ln), T(1)))
            throw Error(ErrorKind::degeneracy, "eigenvalue collision lambda_n = lambda_k at k = " + std::to_string(j), j);
        T rhs = c[std::size_t(j) + 1] * (s1 * kk(j + 1) + t0 * qbracket_t<T>(j + 1, q));
        if (j + 2 <= n) rhs += c[std::size_t(j) + 2] * s0 * kk(j + 2);
        c[static_cast<std::size_t>(j)] = -rhs / (ln - lj);
    }
    return c;
}

} // namespace detail

/// Monic degree-n solution of the equation.
inline RealPolynomial monic_solution(const EHTSpec& s, int n) {
    auto c = detail::monic_coefficients<long double>(s, n);
    return RealPolynomial(std::vector<double>(c.begin(), c.end()));
}

/// Relative residual of the equation at x, scaled by the size of its terms.
inline double equation_residual(const EHTSpec& s, const RealPolynomial& p, double lambda, double x) {
    const double q = s.q();
    RealPolynomial dq = qderivative(p, q);
    RealPolynomial ddq = qderivative(dq, 1.0 / q);
    double a = s.sigma1(x) * ddq(x), b = s.tau(x) * dq(x), c = lambda * p(x);
    double sc = std::abs(s.sigma1(x)) * ddq.abs_scale(x) + std::abs(s.tau(x)) * dq.abs_scale(x) +
                std::abs(lambda) * p.abs_scale(x);
    return sc == 0.0 ? 0.0 : std::abs(a + b + c) / sc;
}

/// Residual of sigma2 D_q y - q sigma1 D_{1/q} y + (q - 1) x lambda y = 0.
inline double convenient_form_residual(const EHTSpec& s, const RealPolynomial& p, double lambda, double x) {
    const double q = s.q();
    RealPolynomial dq = qderivative(p, q);
    RealPolynomial dqi = qderivative(p, 1.0 / q);
    double a = s.sigma2(x) * dq(x), b = -q * s.sigma1(x) * dqi(x), c = (q - 1.0) * x * lambda * p(x);
    double sc = std::abs(s.sigma2(x)) * dq.abs_scale(x) + q * std::abs(s.sigma1(x)) * dqi.abs_scale(x) +
                std::abs((q - 1.0) * x * lambda) * p.abs_scale(x);
    return sc == 0.0 ? 0.0 : std::abs(a + b + c) / sc;
}

} // namespace qhahn
