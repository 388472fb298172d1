#pragma once

/**
 * @file weight.hpp
 * @brief Closed-form q-weights from the two weight tables, the Pearson
 * recursion used as an independent oracle, and the behavior of rho at 0.
 *
 * A table row is stored in its own symbols (a1, b1, a2, b2). The rule that
 * selected the row binds those symbols to roots of the spec, so the same row
 * serves several orderings.
 */

#include "classify.hpp"

namespace qhahn {

enum class HFactor {
    none,
    sqrt_h,          ///< sqrt(x^{log_q x - 1})
    x_log,           ///< x^{log_q x}
    x_log_minus,     ///< x^{log_q x - 1}
};

inline std::string_view to_string(HFactor h) {
    switch (h) {
    case HFactor::none: return "none";
    case HFactor::sqrt_h: return "sqrt(x^(log_q x - 1))";
    case HFactor::x_log: return "x^(log_q x)";
    case HFactor::x_log_minus: return "x^(log_q x - 1)";
    }
    return "?";
}

/// (q^shift x / sym; q)_inf when over_x is false, (q^shift sym / x; q)_inf otherwise.
struct FactorTemplate {
    bool over_x = false;
    int shift = 0;
    std::string_view sym;
};

struct TableRow {
    std::string_view id;
    int table = 1;
    bool power = false;
    HFactor h = HFactor::none;
    std::vector<FactorTemplate> num;
    std::vector<FactorTemplate> den;
    std::string_view relation;   ///< q^alpha as printed, in row symbols
    /// q^alpha from Taylor data and the bound roots (row symbols -> values)
    double (*stated)(const Taylor&, double q, const std::map<std::string, double, std::less<>>&) = nullptr;
};

namespace detail {
inline FactorTemplate mx(int shift, std::string_view s) { return {false, shift, s}; }
inline FactorTemplate ox(int shift, std::string_view s) { return {true, shift, s}; }
} // namespace detail

inline const std::vector<TableRow>& weight_table() {
    using detail::mx;
    using detail::ox;
    using M = std::map<std::string, double, std::less<>>;
    static const std::vector<TableRow> rows = {
        {"jj-1", 1, false, HFactor::none, {mx(1, "a1"), mx(1, "b1")}, {mx(0, "a2"), mx(0, "b2")}, "", nullptr},
        {"jj-2", 1, true, HFactor::none, {mx(1, "b1"), ox(1, "a2")}, {ox(0, "a1"), mx(0, "b2")},
         "q^-2 sigma2''(0) b2 / (sigma1''(0) b1)",
         [](const Taylor& t, double q, const M& r) { return t.s2_2 * r.at("b2") / (q * q * t.s1_2 * r.at("b1")); }},
        {"jj-3", 1, true, HFactor::none, {mx(1, "a1")}, {mx(0, "a2")},
         "q^-2 sigma2''(0) a2 / (sigma1''(0) a1)",
         [](const Taylor& t, double q, const M& r) { return t.s2_2 * r.at("a2") / (q * q * t.s1_2 * r.at("a1")); }},
        {"jj-4", 1, true, HFactor::sqrt_h, {mx(1, "a1"), ox(1, "a2")}, {},
         "-q^-2 sigma2''(0) / (sigma1''(0) a1)",
         [](const Taylor& t, double q, const M& r) { return -t.s2_2 / (q * q * t.s1_2 * r.at("a1")); }},
        {"jl-1", 2, false, HFactor::none, {mx(1, "a1")}, {mx(0, "a2"), mx(0, "b2")}, "", nullptr},
        {"jl-2", 2, true, HFactor::sqrt_h, {ox(1, "a2"), ox(1, "b2")}, {ox(0, "a1")},
         "q^-2 (sigma2''(0)/2) / sigma1'(0)",
         [](const Taylor& t, double q, const M&) { return 0.5 * t.s2_2 / (q * q * t.s1_1); }},
        {"jl-3", 2, true, HFactor::x_log, {mx(1, "a1"), ox(1, "a2"), ox(1, "b2")}, {},
         "-q^-2 (sigma2''(0)/2) / (sigma1'(0) a1)",
         [](const Taylor& t, double q, const M& r) { return -0.5 * t.s2_2 / (q * q * t.s1_1 * r.at("a1")); }},
        {"jh-1", 2, false, HFactor::none, {}, {mx(0, "a2"), mx(0, "b2")}, "", nullptr},
        {"jh-2", 2, true, HFactor::x_log_minus, {ox(1, "a2"), ox(1, "b2")}, {},
         "q^-1 (sigma2''(0)/2) / sigma1(0)",
         [](const Taylor& t, double q, const M&) { return 0.5 * t.s2_2 / (q * t.s1_0); }},
        {"lj-1", 2, false, HFactor::none, {mx(1, "a1"), mx(1, "b1")}, {mx(0, "a2")}, "", nullptr},
        {"lj-2", 2, true, HFactor::none, {ox(1, "a2"), mx(1, "b1")}, {ox(0, "a1")},
         "-q^-2 sigma2'(0) / ((sigma1''(0)/2) b1)",
         [](const Taylor& t, double q, const M& r) { return -t.s2_1 / (q * q * 0.5 * t.s1_2 * r.at("b1")); }},
        {"hj-1", 2, false, HFactor::none, {mx(1, "a1"), mx(1, "b1")}, {}, "", nullptr},
        {"zjl-1", 2, true, HFactor::none, {}, {mx(0, "a2")},
         "-q^-2 (sigma2''(0)/2) a2 / sigma1'(0)",
         [](const Taylor& t, double q, const M& r) { return -0.5 * t.s2_2 * r.at("a2") / (q * q * t.s1_1); }},
        {"zjl-2", 2, true, HFactor::sqrt_h, {ox(1, "a2")}, {},
         "q^-2 (sigma2''(0)/2) / sigma1'(0)",
         [](const Taylor& t, double q, const M&) { return 0.5 * t.s2_2 / (q * q * t.s1_1); }},
        {"zbj-1", 2, true, HFactor::sqrt_h, {mx(1, "a1")}, {},
         "-q^-2 (sigma2''(0)/2) / ((sigma1''(0)/2) a1)",
         [](const Taylor& t, double q, const M& r) { return -t.s2_2 / (q * q * t.s1_2 * r.at("a1")); }},
        {"zbl-1", 2, true, HFactor::sqrt_h, {}, {},
         "q^-2 (sigma2''(0)/2) / sigma1'(0)",
         [](const Taylor& t, double q, const M&) { return 0.5 * t.s2_2 / (q * q * t.s1_1); }},
        {"zlj-1", 2, true, HFactor::none, {mx(1, "a1")}, {},
         "-q^-2 sigma2'(0) / ((sigma1''(0)/2) a1)",
         [](const Taylor& t, double q, const M& r) { return -t.s2_1 / (q * q * 0.5 * t.s1_2 * r.at("a1")); }},
    };
    return rows;
}

inline const TableRow& find_row(std::string_view id) {
    for (const auto& r : weight_table())
        if (r.id == id) return r;
    throw Error(ErrorKind::precondition, "unknown weight form " + std::string(id));
}

/// (c x; q)_inf or (c / x; q)_inf
struct PochFactor {
    double c = 0.0;
    bool over_x = false;
};

/// WeightForm: rho(x) = s(x) |x|^alpha H(x) prod num / prod den, scaled so
/// that rho(x_ref) = 1. With a negative stated q^alpha the sign s(x) flips
/// from one lattice point to the next, counted from x_ref.
struct WeightForm {
    std::string form_id;
    std::string rule_id;
    QParam qp;
    bool has_power = false;
    double q_alpha = 1.0;          ///< stated value, possibly negative
    double alpha = 0.0;            ///< log|q_alpha| / log q
    bool alternating = false;
    std::string relation;
    HFactor h = HFactor::none;
    std::vector<PochFactor> num, den;
    std::vector<std::complex<double>> num_pairs, den_pairs;
    bool reflected = false;        ///< evaluated at -x
    double x_ref = 0.0, value_ref = 1.0;
    double log_norm = 0.0;         ///< log|raw rho| at x_ref
    int sign_norm = 1;
};

namespace detail {

struct RawLog {
    double log_abs = 0.0;
    int sign = 1;
    bool zero = false;
};

/// Unnormalised log|rho| at internal coordinate y (already reflected).
inline RawLog raw_log_weight(const WeightForm& wf, double y) {
    RawLog r;
    const double lq = std::log(wf.qp.q);
    const bool needs_positive = wf.h != HFactor::none || (wf.has_power && wf.alpha != std::round(wf.alpha));
    if (needs_positive && !(y > 0))
        throw Error(ErrorKind::domain, "weight has a factor defined for x > 0 only", y);
    if ((wf.has_power || wf.h != HFactor::none) && y == 0.0)
        throw Error(ErrorKind::domain, "power factor at x = 0", y);
    if (wf.has_power) r.log_abs += wf.alpha * std::log(std::abs(y));
    if (wf.h != HFactor::none) {
        double L = std::log(y);
        switch (wf.h) {
        case HFactor::sqrt_h: r.log_abs += 0.5 * (L / lq - 1.0) * L; break;
        case HFactor::x_log: r.log_abs += L * L / lq; break;
        case HFactor::x_log_minus: r.log_abs += (L / lq - 1.0) * L; break;
        case HFactor::none: break;
        }
    }
    auto arg = [&](const PochFactor& f) {
        if (f.over_x) {
            if (y == 0.0) throw Error(ErrorKind::domain, "factor in c/x at x = 0", y);
            return f.c / y;
        }
        return f.c * y;
    };
    for (const auto& f : wf.den) {
        LogValue v = log_qpochhammer_inf(arg(f), wf.qp);
        if (v.sign == 0) throw Error(ErrorKind::pole, "weight has a pole (denominator factor vanishes)", y);
        r.log_abs -= v.log_abs;
        r.sign *= v.sign;
    }
    for (const auto& z : wf.den_pairs) {
        LogValue v = log_qpochhammer_inf_pair(z * y, wf.qp);
        if (v.sign == 0) throw Error(ErrorKind::pole, "weight has a pole (paired factor vanishes)", y);
        r.log_abs -= v.log_abs;
        r.sign *= v.sign;
    }
    for (const auto& f : wf.num) {
        LogValue v = log_qpochhammer_inf(arg(f), wf.qp);
        if (v.sign == 0) { r.zero = true; r.sign = 0; return r; }
        r.log_abs += v.log_abs;
        r.sign *= v.sign;
    }
    for (const auto& z : wf.num_pairs) {
        LogValue v = log_qpochhammer_inf_pair(z * y, wf.qp);
        if (v.sign == 0) { r.zero = true; r.sign = 0; return r; }
        r.log_abs += v.log_abs;
        r.sign *= v.sign;
    }
    return r;
}

/// rho(qy)/rho(y) implied by the factors, without the |x|^alpha constant.
inline double factor_ratio(const WeightForm& wf, double y) {
    const double q = wf.qp.q;
    double R = 1.0;
    for (const auto& f : wf.num) R *= f.over_x ? (1.0 - f.c / (q * y)) : 1.0 / (1.0 - f.c * y);
    for (const auto& f : wf.den) R *= f.over_x ? 1.0 / (1.0 - f.c / (q * y)) : (1.0 - f.c * y);
    for (const auto& z : wf.num_pairs) R /= std::norm(1.0 - z * y);
    for (const auto& z : wf.den_pairs) R *= std::norm(1.0 - z * y);
    switch (wf.h) {
    case HFactor::sqrt_h: R *= y; break;
    case HFactor::x_log: R *= q * y * y; break;
    case HFactor::x_log_minus: R *= y * y; break;
    case HFactor::none: break;
    }
    return R;
}

inline int lattice_sign(const WeightForm& wf, double y) {
    if (!wf.alternating) return 1;
    double yr = wf.reflected ? -wf.x_ref : wf.x_ref;
    if (yr == 0.0) yr = 1.0;
    long k = std::lround(std::log(std::abs(y / yr)) / std::log(wf.qp.q));
    return (k % 2 == 0) ? 1 : -1;
}

} // namespace detail

/// Instantiates the table row named by the scenario with the equation's roots.
/// q^alpha is taken from the printed relation and cross-checked against the
/// Pearson ratio at three generic points; a mismatch is a representation error.
inline WeightForm closed_form_weight(const EHTSpec& spec, const OrthScenario& sc) {
    const EHTSpec work = sc.reflected ? reflect(spec) : spec;
    const Rule& rule = find_rule(sc.rule_id);
    const TableRow& row = find_row(rule.form);
    const CaseInvariants inv = case_invariants(work);
    const double q = work.q();

    WeightForm wf;
    wf.form_id = std::string(row.id);
    wf.rule_id = sc.rule_id;
    wf.qp = work.qp;
    wf.has_power = row.power;
    wf.h = row.h;
    wf.relation = std::string(row.relation);
    wf.reflected = sc.reflected;

    auto bound = [&](std::string_view s) -> std::string_view {
        for (const auto& [from, to] : rule.bind)
            if (from == s) return to;
        return s;
    };
    std::map<std::string, double, std::less<>> vals;
    for (std::string_view s : {"a1", "b1", "a2", "b2"}) {
        auto b = bound(s);
        if (b.ends_with('*')) continue;
        if (auto v = inv.symbols.get(b)) vals[std::string(s)] = *v;
    }

    auto instantiate = [&](const std::vector<FactorTemplate>& ts, std::vector<PochFactor>& out,
                           std::vector<std::complex<double>>& pairs) {
        bool pair_done = false;
        for (const auto& t : ts) {
            auto b = bound(t.sym);
            const double qs = std::pow(q, t.shift);
            if (b.ends_with('*')) {
                if (!inv.symbols.pair2 || t.over_x)
                    throw Error(ErrorKind::representation, "complex root where the row needs a real one");
                if (!pair_done) pairs.push_back(qs / *inv.symbols.pair2);
                pair_done = true;
                continue;
            }
            auto v = inv.symbols.get(b);
            if (!v) throw Error(ErrorKind::representation, "weight row refers to missing root " + std::string(b));
            out.push_back(t.over_x ? PochFactor{qs * *v, true} : PochFactor{qs / *v, false});
        }
    };
    instantiate(row.num, wf.num, wf.num_pairs);
    instantiate(row.den, wf.den, wf.den_pairs);

    if (row.power) {
        wf.q_alpha = row.stated(work.taylor, q, vals);
        if (!(wf.q_alpha != 0.0) || !std::isfinite(wf.q_alpha))
            throw Error(ErrorKind::representation, "q^alpha relation gives a zero or non-finite value");
        wf.alpha = std::log(std::abs(wf.q_alpha)) / std::log(q);
        wf.alternating = wf.q_alpha < 0;
    }

    // consistency with the Pearson ratio
    double rs = 1.0;
    for (const auto& [k, v] : vals) rs = std::max(rs, std::abs(v));
    for (double t : {0.3719, 1.2871, 2.6183}) {
        double y = t * rs;
        double R = detail::factor_ratio(wf, y) * wf.q_alpha;
        double f = pearson_ratio(work, y);
        if (std::abs(f - R) > 1e-9 * std::max(std::abs(f), std::abs(R)))
            throw Error(ErrorKind::representation,
                        "weight row " + wf.form_id + " does not reproduce the Pearson ratio", y);
    }

    // normalization
    bool at_zero = !row.power && row.h == HFactor::none && sc.lo <= 0.0 && 0.0 <= sc.hi;
    for (const auto& f : wf.num) at_zero = at_zero && !f.over_x;
    for (const auto& f : wf.den) at_zero = at_zero && !f.over_x;
    if (at_zero) {
        wf.x_ref = 0.0;
    } else {
        double g = 0.0;
        for (const auto& b : sc.branches)
            if (std::abs(b.generator) > std::abs(g)) g = b.generator;
        wf.x_ref = g;
    }
    auto raw = detail::raw_log_weight(wf, wf.reflected ? -wf.x_ref : wf.x_ref);
    if (raw.zero) throw Error(ErrorKind::representation, "weight vanishes at its normalization point", wf.x_ref);
    wf.log_norm = raw.log_abs;
    wf.sign_norm = raw.sign;
    return wf;
}

/// rho(x), normalised so that rho(x_ref) = 1.
inline double eval_weight(const WeightForm& wf, double x) {
    double y = wf.reflected ? -x : x;
    auto raw = detail::raw_log_weight(wf, y);
    if (raw.zero) return 0.0;
    return raw.sign * wf.sign_norm * detail::lattice_sign(wf, y) * std::exp(raw.log_abs - wf.log_norm);
}

/// rho(q^k x_start) from rho(x_start) by the Pearson ratio (k < 0 runs the
/// inverse step rho(y/q) = rho(y) q sigma1(y) / sigma2(y/q)).
inline double weight_by_recursion(const EHTSpec& s, double x_start, double rho_start, int k) {
    const double q = s.q();
    double x = x_start, rho = rho_start;
    for (int i = 0; i < k; ++i) {
        double f;
        try {
            f = pearson_ratio(s, x);
        } catch (const Error&) {
            throw Error(ErrorKind::propagation, "Pearson ratio has a pole at step " + std::to_string(i), x);
        }
        if (f == 0.0) throw Error(ErrorKind::propagation, "Pearson ratio vanishes at step " + std::to_string(i), x);
        rho *= f;
        x *= q;
    }
    for (int i = 0; i > k; --i) {
        double xd = x / q;
        double d = s.sigma2(xd), n = q * s.sigma1(x);
        if (detail::vanishes(s.sigma2, xd) || detail::vanishes(s.sigma1, x))
            throw Error(ErrorKind::propagation, "inverse Pearson step is singular at step " + std::to_string(-i), x);
        rho *= n / d;
        x = xd;
    }
    return rho;
}

/// |sigma2 rho(x) - q sigma1(qx) rho(qx)| relative to the larger side.
inline double pearson_residual(const EHTSpec& s, const WeightForm& wf, double x) {
    const double q = s.q();
    double lhs = s.sigma2(x) * eval_weight(wf, x);
    double rhs = q * s.sigma1(q * x) * eval_weight(wf, q * x);
    double den = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / den;
}

enum class ZeroLimit { vanishes, diverges, indeterminate };

inline std::string_view to_string(ZeroLimit z) {
    switch (z) {
    case ZeroLimit::vanishes: return "vanishes";
    case ZeroLimit::diverges: return "diverges";
    case ZeroLimit::indeterminate: return "indeterminate";
    }
    return "?";
}

/// Limit of rho at 0 along the lattice, decided by y0 = f(0).
inline ZeroLimit zero_limit_class(const CaseInvariants& inv, double band = 1e-10) {
    if (!inv.y0) throw Error(ErrorKind::invariant_undefined, "class has no y0");
    double y = *inv.y0;
    if (std::abs(y) <= band || std::abs(y - 1.0) <= band) return ZeroLimit::indeterminate;
    return (y > 0.0 && y < 1.0) ? ZeroLimit::vanishes : ZeroLimit::diverges;
}

} // namespace qhahn
