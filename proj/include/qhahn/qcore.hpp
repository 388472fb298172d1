#pragma once

/**
 * @file qcore.hpp
 * @brief q-brackets, q-Pochhammer symbols, Jackson derivatives and integrals.
 *
 * Everything is double precision. Infinite products and lattice sums carry
 * an error estimate next to the value instead of switching precision.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhahn {

enum class ErrorKind {
    precondition,
    divergence,
    truncation,
    pole,
    domain,
    degeneracy,
    invariant_undefined,
    representation,
    propagation,
    unsupported,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::pole: return "pole";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::invariant_undefined: return "invariant-undefined";
    case ErrorKind::representation: return "representation";
    case ErrorKind::propagation: return "propagation";
    case ErrorKind::unsupported: return "unsupported";
    }
    return "unknown";
}

/// Library exception. `where` holds the offending point (pole, lattice
/// point, eigenvalue index) when there is one, NaN otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg,
          double where = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
          kind_(kind), where_(where) {}

    ErrorKind kind() const noexcept { return kind_; }
    double where() const noexcept { return where_; }

    /// Precondition violations are caller mistakes; the rest are numerical.
    bool numerical() const noexcept { return kind_ != ErrorKind::precondition; }

private:
    ErrorKind kind_;
    double where_;
};

/// Numerical configuration shared by every module.
struct QParam {
    double q = 0.5;
    double eps_product = 1e-16;
    double eps_tail = 1e-17;
    int max_terms = 20000;
    int window = 8;               ///< consecutive small terms before a sum stops
    int divergence_window = 64;   ///< consecutive growing terms before a sum is declared divergent

    void validate() const {
        if (!(q > 0.0 && q < 1.0))
            throw Error(ErrorKind::precondition, "q must lie strictly inside (0,1)", q);
        if (!(eps_product > 0.0 && eps_product < 1.0))
            throw Error(ErrorKind::precondition, "eps_product must lie in (0,1)", eps_product);
        if (!(eps_tail > 0.0 && eps_tail < 1.0))
            throw Error(ErrorKind::precondition, "eps_tail must lie in (0,1)", eps_tail);
        if (max_terms < 1)
            throw Error(ErrorKind::precondition, "max_terms must be positive");
        if (window < 1 || divergence_window < 1)
            throw Error(ErrorKind::precondition, "summation windows must be positive");
    }
};

inline QParam make_qparam(double q) {
    QParam p;
    p.q = q;
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Real polynomial, coefficients in ascending degree. Trailing zeros are
/// trimmed so the leading coefficient is nonzero unless the polynomial is 0.
class RealPolynomial {
public:
    RealPolynomial() = default;
    RealPolynomial(std::initializer_list<double> c) : c_(c) { trim(); }
    explicit RealPolynomial(std::vector<double> c) : c_(std::move(c)) { trim(); }

    static RealPolynomial monomial(int k, double coef = 1.0) {
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        c.back() = coef;
        return RealPolynomial(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }

    double coeff(int k) const noexcept {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : 0.0;
    }
    const std::vector<double>& coefficients() const noexcept { return c_; }

    double operator()(double x) const noexcept {
        double r = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    /// Sum of |c_k x^k|: the magnitude scale of an evaluation, used for
    /// relative zero tests.
    double abs_scale(double x) const noexcept {
        double r = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * std::abs(x) + std::abs(*it);
        return r;
    }

    /// k-th derivative at 0, i.e. k! c_k.
    double derivative_at_zero(int k) const noexcept {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f * coeff(k);
    }

    double max_abs_coeff() const noexcept {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    /// p(s x)
    RealPolynomial scaled_argument(double s) const {
        std::vector<double> c = c_;
        double p = 1.0;
        for (auto& v : c) { v *= p; p *= s; }
        return RealPolynomial(std::move(c));
    }

    /// Sets coefficients with |c| <= tol to exactly zero.
    RealPolynomial cleaned(double tol) const {
        std::vector<double> c = c_;
        for (auto& v : c)
            if (std::abs(v) <= tol) v = 0.0;
        return RealPolynomial(std::move(c));
    }

    friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
        std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(int(i)) + b.coeff(int(i));
        return RealPolynomial(std::move(c));
    }
    friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
        return a + (-1.0) * b;
    }
    friend RealPolynomial operator*(double s, const RealPolynomial& p) {
        std::vector<double> c = p.c_;
        for (auto& v : c) v *= s;
        return RealPolynomial(std::move(c));
    }
    friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return RealPolynomial(std::move(c));
    }
    friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
    std::vector<double> c_;
};

// ---------------------------------------------------------------------------
// q-numbers and q-Pochhammer symbols
// ---------------------------------------------------------------------------

/// [n]_q = (1 - q^n)/(1 - q)
inline double qbracket(int n, double q) {
    if (q == 1.0) throw Error(ErrorKind::precondition, "qbracket is undefined at q = 1");
    if (!(q > 0.0)) throw Error(ErrorKind::precondition, "qbracket needs q > 0", q);
    if (n == 0) return 0.0;
    return (1.0 - std::pow(q, n)) / (1.0 - q);
}

struct Estimate {
    double value = 0.0;
    double error = 0.0;   ///< absolute error bound from truncation
    int terms = 0;
};

namespace detail {

/// One factor 1 - z. A factor that cancels to within rounding is exact zero,
/// so (q^{-m}; q)_inf vanishes even when q is not a power of two.
inline double one_minus(double z) {
    double f = 1.0 - z;
    if (std::abs(f) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z)))
        return 0.0;
    return f;
}

} // namespace detail

/// (a; q)_n for a finite count n >= 0.
inline double qpochhammer(double a, double q, int n) {
    if (n < 0) throw Error(ErrorKind::precondition, "finite q-Pochhammer needs n >= 0");
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= detail::one_minus(a * std::pow(q, k));
    return r;
}

/// (a; q)_inf, truncated once |a q^k| < eps_product. The error field is the
/// first-order tail bound |value| * sum_{j>=k} |a q^j|.
inline Estimate qpochhammer_inf(double a, const QParam& p) {
    if (!(std::abs(p.q) < 1.0))
        throw Error(ErrorKind::precondition, "infinite q-Pochhammer needs |q| < 1", p.q);
    Estimate e;
    e.value = 1.0;
    for (int k = 0;; ++k) {
        double z = a * std::pow(p.q, k);
        if (std::abs(z) < p.eps_product) {
            e.error = std::abs(e.value) * std::abs(z) / (1.0 - p.q);
            e.terms = k;
            return e;
        }
        if (k >= p.max_terms)
            throw Error(ErrorKind::truncation, "q-Pochhammer did not converge within max_terms", a);
        e.value *= detail::one_minus(z);
        if (e.value == 0.0) { e.terms = k + 1; return e; }
    }
}

/// prod_k (1 - z q^k)(1 - conj(z) q^k), real by construction.
inline Estimate qpochhammer_inf_pair(std::complex<double> z, const QParam& p) {
    Estimate e;
    e.value = 1.0;
    const double s = 2.0 * z.real(), m = std::norm(z);
    for (int k = 0;; ++k) {
        double qk = std::pow(p.q, k);
        if (std::abs(z) * qk < p.eps_product) {
            e.error = std::abs(e.value) * 2.0 * std::abs(z) * qk / (1.0 - p.q);
            e.terms = k;
            return e;
        }
        if (k >= p.max_terms)
            throw Error(ErrorKind::truncation, "paired q-Pochhammer did not converge", std::abs(z));
        e.value *= 1.0 - s * qk + m * qk * qk;
    }
}

/// log|(a; q)_inf| with its sign (0 when the product vanishes). Used by the
/// weight evaluators where the plain product over/underflows.
struct LogValue {
    double log_abs = 0.0;
    int sign = 1;
};

inline LogValue log_qpochhammer_inf(double a, const QParam& p) {
    LogValue r;
    for (int k = 0;; ++k) {
        double z = a * std::pow(p.q, k);
        if (std::abs(z) < p.eps_product) return r;
        if (k >= p.max_terms)
            throw Error(ErrorKind::truncation, "q-Pochhammer did not converge within max_terms", a);
        double f = detail::one_minus(z);
        if (f == 0.0) { r.sign = 0; r.log_abs = -std::numeric_limits<double>::infinity(); return r; }
        if (f < 0) r.sign = -r.sign;
        r.log_abs += std::abs(z) < 0.5 ? std::log1p(-z) : std::log(std::abs(f));
    }
}

inline LogValue log_qpochhammer_inf_pair(std::complex<double> z, const QParam& p) {
    LogValue r;
    const double s = 2.0 * z.real(), m = std::norm(z);
    for (int k = 0;; ++k) {
        double qk = std::pow(p.q, k);
        if (std::abs(z) * qk < p.eps_product) return r;
        if (k >= p.max_terms)
            throw Error(ErrorKind::truncation, "paired q-Pochhammer did not converge", std::abs(z));
        double f = 1.0 - s * qk + m * qk * qk;
        if (f == 0.0) { r.sign = 0; r.log_abs = -std::numeric_limits<double>::infinity(); return r; }
        if (f < 0) r.sign = -r.sign;
        r.log_abs += std::log(std::abs(f));
    }
}

/// (a1, a2, ..., q)_inf as a plain product of values.
inline double qpochhammer_inf(std::initializer_list<double> as, const QParam& p) {
    double r = 1.0;
    for (double a : as) r *= qpochhammer_inf(a, p).value;
    return r;
}

inline double qpochhammer(std::initializer_list<double> as, double q, int n) {
    double r = 1.0;
    for (double a : as) r *= qpochhammer(a, q, n);
    return r;
}

// ---------------------------------------------------------------------------
// Jackson derivative
// ---------------------------------------------------------------------------

/// D_zeta p, using D_zeta x^k = [k]_zeta x^{k-1}.
inline RealPolynomial qderivative(const RealPolynomial& p, double zeta) {
    if (zeta == 0.0 || zeta == 1.0 || zeta == -1.0)
        throw Error(ErrorKind::precondition, "Jackson derivative needs zeta outside {0, 1, -1}", zeta);
    if (p.degree() < 1) return {};
    std::vector<double> c(static_cast<std::size_t>(p.degree()), 0.0);
    for (int k = 1; k <= p.degree(); ++k)
        c[static_cast<std::size_t>(k - 1)] = p.coeff(k) * (1.0 - std::pow(zeta, k)) / (1.0 - zeta);
    return RealPolynomial(std::move(c));
}

/// D_zeta f at x != 0 for an arbitrary function.
inline double qderivative_at(const std::function<double(double)>& f, double zeta, double x) {
    if (x == 0.0) throw Error(ErrorKind::domain, "pointwise Jackson derivative needs x != 0");
    return (f(x) - f(zeta * x)) / ((1.0 - zeta) * x);
}

// ---------------------------------------------------------------------------
// Jackson integrals
// ---------------------------------------------------------------------------

/// Geometric ray  generator * q^{dir*j}, j = 0, 1, ...  with dir = +1 toward
/// the origin and dir = -1 away from it.
struct Ray {
    double generator;
    int dir;
};

/// Outcome of summing sum_j w_j g(x_j) along one ray.
struct RaySum {
    double value = 0.0;
    double tail = 0.0;     ///< size of the last accepted term, a tail scale
    int terms = 0;
};

/// Sums term(j) for j = 0, 1, ... until |term| < eps_tail |sum| holds for
/// `window` consecutive terms. Terms growing for `divergence_window`
/// consecutive steps, a non-finite term, or hitting max_terms is reported as
/// divergence at the lattice point supplied by `point(j)`.
template <class Term, class Point>
RaySum sum_until_small(Term&& term, Point&& point, const QParam& p, int first = 0,
                       int last = std::numeric_limits<int>::max()) {
    RaySum s;
    int small = 0, growing = 0;
    double prev = 0.0;
    const int win = std::max(8, p.window);
    for (int j = first; j <= last; ++j) {
        if (s.terms >= p.max_terms)
            throw Error(ErrorKind::divergence, "lattice sum did not settle within max_terms", point(j));
        double t = term(j);
        if (!std::isfinite(t))
            throw Error(ErrorKind::divergence, "non-finite summand on the lattice", point(j));
        s.value += t;
        ++s.terms;
        double at = std::abs(t);
        growing = (s.terms > 1 && at > prev && at > 0.0) ? growing + 1 : 0;
        if (growing >= p.divergence_window)
            throw Error(ErrorKind::divergence, "summand grows along the lattice", point(j));
        prev = at;
        if (at <= p.eps_tail * std::abs(s.value) || (at == 0.0 && s.value == 0.0)) {
            if (++small >= win) { s.tail = at; return s; }
        } else {
            small = 0;
        }
    }
    return s;
}

enum class Flavor { q, q_inverse };

/// Integration domains for Jackson integrals.
struct Interval {
    enum Kind {
        zero_to,      ///< (0, a), a > 0
        to_zero,      ///< (a, 0), a < 0
        positive,     ///< (a, b), 0 < a < b
        straddle,     ///< (a, b), a < 0 < b
        half_line,    ///< (0, inf)
        line,         ///< (-inf, inf)
        ray_up,       ///< (a, inf), a > 0, q-inverse flavor only
    } kind;
    double a = 0.0;
    double b = 0.0;
};

namespace detail {

inline double q_ray_sum(const std::function<double(double)>& f, double a, const QParam& p) {
    // (1-q) |a| sum_j q^j f(q^j a)
    const double q = p.q;
    auto term = [&](int j) { double qj = std::pow(q, j); return qj * f(qj * a); };
    auto pt = [&](int j) { return std::pow(q, j) * a; };
    return (1.0 - q) * std::abs(a) * sum_until_small(term, pt, p).value;
}

inline double qinv_ray_sum(const std::function<double(double)>& f, double a, const QParam& p) {
    // (q^{-1}-1) a sum_{j>=0} q^{-j} f(q^{-j} a)
    const double q = p.q;
    auto term = [&](int j) { double qj = std::pow(q, -j); return qj * f(qj * a); };
    auto pt = [&](int j) { return std::pow(q, -j) * a; };
    return (1.0 / q - 1.0) * a * sum_until_small(term, pt, p).value;
}

inline double bilateral_sum(const std::function<double(double)>& f, double sign, const QParam& p) {
    // sum over j in Z of q^j f(sign q^j), split into j >= 0 and j < 0
    const double q = p.q;
    auto down = [&](int j) { double qj = std::pow(q, j); return qj * f(sign * qj); };
    auto up = [&](int j) { double qj = std::pow(q, -j); return qj * f(sign * qj); };
    auto pd = [&](int j) { return sign * std::pow(q, j); };
    auto pu = [&](int j) { return sign * std::pow(q, -j); };
    return sum_until_small(down, pd, p).value + sum_until_small(up, pu, p, 1).value;
}

} // namespace detail

/// Jackson integral of f over `iv` in the requested flavor.
inline double qintegral(const std::function<double(double)>& f, const Interval& iv, Flavor flavor,
                        const QParam& p) {
    p.validate();
    if (flavor == Flavor::q) {
        switch (iv.kind) {
        case Interval::zero_to:
            if (!(iv.a > 0)) throw Error(ErrorKind::precondition, "(0,a) needs a > 0", iv.a);
            return detail::q_ray_sum(f, iv.a, p);
        case Interval::to_zero:
            if (!(iv.a < 0)) throw Error(ErrorKind::precondition, "(a,0) needs a < 0", iv.a);
            return detail::q_ray_sum(f, iv.a, p);
        case Interval::positive:
            if (!(0 < iv.a && iv.a < iv.b))
                throw Error(ErrorKind::precondition, "(a,b) needs 0 < a < b");
            return detail::q_ray_sum(f, iv.b, p) - detail::q_ray_sum(f, iv.a, p);
        case Interval::straddle:
            if (!(iv.a < 0 && 0 < iv.b))
                throw Error(ErrorKind::precondition, "(a,b) needs a < 0 < b");
            return detail::q_ray_sum(f, iv.a, p) + detail::q_ray_sum(f, iv.b, p);
        case Interval::half_line:
            return (1.0 - p.q) * detail::bilateral_sum(f, 1.0, p);
        case Interval::line:
            return (1.0 - p.q) * (detail::bilateral_sum(f, 1.0, p) + detail::bilateral_sum(f, -1.0, p));
        case Interval::ray_up:
            throw Error(ErrorKind::precondition, "(a,inf) is defined for the q-inverse flavor");
        }
    } else {
        switch (iv.kind) {
        case Interval::ray_up:
            if (!(iv.a > 0)) throw Error(ErrorKind::precondition, "(a,inf) needs a > 0", iv.a);
            return detail::qinv_ray_sum(f, iv.a, p);
        case Interval::positive: {
            if (!(0 < iv.a && iv.a < iv.b))
                throw Error(ErrorKind::precondition, "(a,b) needs 0 < a < b");
            // finite when b = q^{-N-1} a, otherwise the difference of two rays
            double n1 = std::log(iv.b / iv.a) / -std::log(p.q);
            long N1 = std::lround(n1);
            if (N1 >= 1 && std::abs(std::pow(p.q, -double(N1)) * iv.a - iv.b) <= 1e-12 * iv.b) {
                double s = 0.0;
                for (long k = 0; k < N1; ++k) {
                    double qk = std::pow(p.q, -double(k));
                    s += qk * f(qk * iv.a);
                }
                return (1.0 / p.q - 1.0) * iv.a * s;
            }
            return detail::qinv_ray_sum(f, iv.a, p) - detail::qinv_ray_sum(f, iv.b, p);
        }
        default:
            throw Error(ErrorKind::unsupported, "q-inverse flavor is provided on (a,b) and (a,inf) with a > 0");
        }
    }
    throw Error(ErrorKind::precondition, "unknown interval");
}

} // namespace qhahn
