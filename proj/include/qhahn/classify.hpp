#pragma once

/**
 * @file classify.hpp
 * @brief Hahn-class tag, case invariants and the orthogonality rule table.
 *
 * Each rule is data: a class tag, a list of inequality chains over named
 * symbols (roots, q^{-1} a1, Lambda_q, y0, ...), the support scenario it
 * produces and the weight-table row it uses, with the row's symbols bound to
 * the equation's roots. Negative rules carry the configurations for which no
 * orthogonal polynomial system exists.
 */

#include <map>
#include <optional>
#include <sstream>
#include <string_view>

#include "eht.hpp"

namespace qhahn {

enum class HahnClass {
    empty_jacobi_jacobi,
    empty_jacobi_laguerre,
    empty_jacobi_hermite,
    empty_laguerre_jacobi,
    empty_hermite_jacobi,
    zero_jacobi_jacobi,
    zero_jacobi_laguerre,
    zero_bessel_jacobi,
    zero_bessel_laguerre,
    zero_laguerre_jacobi,
};

inline constexpr std::array<HahnClass, 10> all_classes = {
    HahnClass::empty_jacobi_jacobi, HahnClass::empty_jacobi_laguerre, HahnClass::empty_jacobi_hermite,
    HahnClass::empty_laguerre_jacobi, HahnClass::empty_hermite_jacobi, HahnClass::zero_jacobi_jacobi,
    HahnClass::zero_jacobi_laguerre, HahnClass::zero_bessel_jacobi, HahnClass::zero_bessel_laguerre,
    HahnClass::zero_laguerre_jacobi,
};

/// Machine name, e.g. "empty-jacobi-jacobi".
inline std::string_view slug(HahnClass c) {
    switch (c) {
    case HahnClass::empty_jacobi_jacobi: return "empty-jacobi-jacobi";
    case HahnClass::empty_jacobi_laguerre: return "empty-jacobi-laguerre";
    case HahnClass::empty_jacobi_hermite: return "empty-jacobi-hermite";
    case HahnClass::empty_laguerre_jacobi: return "empty-laguerre-jacobi";
    case HahnClass::empty_hermite_jacobi: return "empty-hermite-jacobi";
    case HahnClass::zero_jacobi_jacobi: return "zero-jacobi-jacobi";
    case HahnClass::zero_jacobi_laguerre: return "zero-jacobi-laguerre";
    case HahnClass::zero_bessel_jacobi: return "zero-bessel-jacobi";
    case HahnClass::zero_bessel_laguerre: return "zero-bessel-laguerre";
    case HahnClass::zero_laguerre_jacobi: return "zero-laguerre-jacobi";
    }
    return "?";
}

/// Display name, e.g. "∅-Jacobi/Jacobi".
inline std::string_view display_name(HahnClass c) {
    switch (c) {
    case HahnClass::empty_jacobi_jacobi: return "∅-Jacobi/Jacobi";
    case HahnClass::empty_jacobi_laguerre: return "∅-Jacobi/Laguerre";
    case HahnClass::empty_jacobi_hermite: return "∅-Jacobi/Hermite";
    case HahnClass::empty_laguerre_jacobi: return "∅-Laguerre/Jacobi";
    case HahnClass::empty_hermite_jacobi: return "∅-Hermite/Jacobi";
    case HahnClass::zero_jacobi_jacobi: return "0-Jacobi/Jacobi";
    case HahnClass::zero_jacobi_laguerre: return "0-Jacobi/Laguerre";
    case HahnClass::zero_bessel_jacobi: return "0-Bessel/Jacobi";
    case HahnClass::zero_bessel_laguerre: return "0-Bessel/Laguerre";
    case HahnClass::zero_laguerre_jacobi: return "0-Laguerre/Jacobi";
    }
    return "?";
}

inline std::optional<HahnClass> class_from_slug(std::string_view s) {
    for (auto c : all_classes)
        if (slug(c) == s) return c;
    return std::nullopt;
}

inline bool is_zero_class(HahnClass c) {
    return c >= HahnClass::zero_jacobi_jacobi;
}

/// Ten-way tag from which of sigma1(0), sigma1', sigma1'', sigma2', sigma2''
/// vanish (relative tolerance 1e-13 of the coefficient scale).
inline HahnClass classify(const EHTSpec& s) {
    const auto& t = s.taylor;
    const double tol = 1e-13 * s.scale();
    auto nz = [&](double v) { return std::abs(v) > tol; };
    if (nz(t.s1_0)) {
        if (nz(t.s2_2)) {
            if (nz(t.s1_2)) return HahnClass::empty_jacobi_jacobi;
            if (nz(t.s1_1)) return HahnClass::empty_jacobi_laguerre;
            return HahnClass::empty_jacobi_hermite;
        }
        if (nz(t.s2_1)) return HahnClass::empty_laguerre_jacobi;
        return HahnClass::empty_hermite_jacobi;
    }
    if (!nz(t.s1_1))
        throw Error(ErrorKind::unsupported,
                    "sigma1(0) = sigma1'(0) = 0 lies outside the ten-class taxonomy");
    if (nz(t.s2_2)) {
        if (nz(t.s2_1)) return nz(t.s1_2) ? HahnClass::zero_jacobi_jacobi : HahnClass::zero_jacobi_laguerre;
        return nz(t.s1_2) ? HahnClass::zero_bessel_jacobi : HahnClass::zero_bessel_laguerre;
    }
    if (nz(t.s1_2)) return HahnClass::zero_laguerre_jacobi;
    throw Error(ErrorKind::unsupported, "linear sigma1 with linear sigma2 in the zero case is outside the taxonomy");
}

// ---------------------------------------------------------------------------
// Symbols and invariants
// ---------------------------------------------------------------------------

/// Named quantities a rule may refer to. Real roots follow the a <= b
/// convention; in the zero classes a1, a2 are the nonzero roots.
struct SymbolTable {
    std::map<std::string, double, std::less<>> values;
    std::optional<std::complex<double>> pair2;   ///< complex zeros of sigma2

    std::optional<double> get(std::string_view name) const {
        auto it = values.find(name);
        if (it == values.end()) return std::nullopt;
        return it->second;
    }
};

struct CaseInvariants {
    HahnClass cls{};
    std::optional<double> Lambda;
    std::optional<double> Delta;
    std::optional<double> y0;
    double x0 = 0.0;
    std::vector<std::pair<std::string, double>> root_order;
    bool ties = false;
    SymbolTable symbols;
};

namespace detail {

inline CaseInvariants build_invariants(const EHTSpec& s, HahnClass c) {
    CaseInvariants inv;
    inv.cls = c;
    const auto& t = s.taylor;
    const double q = s.q(), w = 1.0 - 1.0 / q;
    auto& sym = inv.symbols.values;
    auto put_pair = [&](const RootSet& r, const char* a, const char* b) {
        if (r.real.size() == 2) { sym[a] = r.real[0]; sym[b] = r.real[1]; }
    };
    auto nonzero_root = [](const RealPolynomial& p) {
        // p = x (c1 + c2 x)
        return -p.coeff(1) / p.coeff(2);
    };
    auto div = [](double num, double den, const char* what) {
        if (den == 0.0) throw Error(ErrorKind::invariant_undefined, std::string("vanishing denominator in ") + what);
        return num / den;
    };
    switch (c) {
    case HahnClass::empty_jacobi_jacobi: {
        put_pair(s.roots1, "a1", "b1");
        put_pair(s.roots2, "a2", "b2");
        inv.symbols.pair2 = s.roots2.complex_pair;
        double h = 0.5 * t.s1_2;
        double k = 1.0 + w * t.t_1 / h;
        inv.Lambda = k / (q * q);
        double sum1 = div(-t.s1_1, h, "a1 + b1"), prod1 = t.s1_0 / h;
        double u = sum1 - w * t.t_0 / h;
        inv.Delta = u * u - 4.0 * prod1 * k;
        break;
    }
    case HahnClass::zero_jacobi_jacobi: {
        sym["a1"] = nonzero_root(s.sigma1);
        sym["a2"] = nonzero_root(s.sigma2);
        double h = 0.5 * t.s1_2;
        inv.Lambda = (1.0 + w * t.t_1 / h) / (q * q);
        inv.y0 = (1.0 + w * t.t_0 / t.s1_1) / q;
        break;
    }
    case HahnClass::empty_jacobi_laguerre: {
        sym["a1"] = s.roots1.real.at(0);
        put_pair(s.roots2, "a2", "b2");
        inv.symbols.pair2 = s.roots2.complex_pair;
        inv.Lambda = div(t.t_1, t.s1_1, "tau'/sigma1'");
        double u = 1.0 + w * t.t_0 / t.s1_1;
        inv.Delta = u * u + 4.0 * sym["a1"] * w * t.t_1 / t.s1_1;
        break;
    }
    case HahnClass::empty_jacobi_hermite: {
        put_pair(s.roots2, "a2", "b2");
        inv.symbols.pair2 = s.roots2.complex_pair;
        inv.Lambda = div(t.t_1, t.s1_0, "tau'/sigma1(0)");
        double u = w * t.t_0 / t.s1_0;
        inv.Delta = u * u - 4.0 * w * t.t_1 / t.s1_0;
        break;
    }
    case HahnClass::empty_laguerre_jacobi: {
        put_pair(s.roots1, "a1", "b1");
        sym["a2"] = s.roots2.real.at(0);
        double h = 0.5 * t.s1_2;
        inv.Lambda = -t.s1_1 / h - w * t.t_0 / h;
        break;
    }
    case HahnClass::empty_hermite_jacobi:
        put_pair(s.roots1, "a1", "b1");
        break;
    case HahnClass::zero_jacobi_laguerre:
        sym["a2"] = nonzero_root(s.sigma2);
        inv.Lambda = div(t.t_1, t.s1_1, "tau'/sigma1'");
        inv.y0 = (1.0 + w * t.t_0 / t.s1_1) / q;
        break;
    case HahnClass::zero_bessel_jacobi: {
        sym["a1"] = nonzero_root(s.sigma1);
        double h = 0.5 * t.s1_2;
        inv.Lambda = (1.0 + w * t.t_1 / h) / (q * q);
        inv.y0 = 0.0;
        break;
    }
    case HahnClass::zero_bessel_laguerre:
        inv.Lambda = div(t.t_1, t.s1_1, "tau'/sigma1'");
        inv.y0 = 0.0;
        break;
    case HahnClass::zero_laguerre_jacobi:
        sym["a1"] = nonzero_root(s.sigma1);
        inv.y0 = (1.0 + w * t.t_0 / t.s1_1) / q;
        break;
    }
    inv.x0 = -t.t_0 / t.t_1;

    for (const char* n : {"a1", "b1"}) {
        auto it = sym.find(n);
        if (it != sym.end()) sym[std::string(n) + "/q"] = it->second / q;
    }
    if (inv.Lambda) {
        sym["L"] = *inv.Lambda;
        sym["q2L"] = q * q * *inv.Lambda;
    }
    if (inv.Delta) sym["D"] = *inv.Delta;
    if (inv.y0) {
        sym["y0"] = *inv.y0;
        sym["qy0"] = q * *inv.y0;
    }

    for (const char* n : {"a1", "b1", "a2", "b2", "a1/q", "b1/q"}) {
        auto it = sym.find(n);
        if (it != sym.end()) inv.root_order.emplace_back(n, it->second);
    }
    inv.root_order.emplace_back("0", 0.0);
    std::stable_sort(inv.root_order.begin(), inv.root_order.end(),
                     [](const auto& x, const auto& y) { return x.second < y.second; });
    for (std::size_t i = 1; i < inv.root_order.size(); ++i) {
        double u = inv.root_order[i - 1].second, v = inv.root_order[i].second;
        if (std::abs(v - u) <= 1e-10 * std::max(std::abs(u), std::abs(v))) inv.ties = true;
    }
    return inv;
}

} // namespace detail

inline CaseInvariants case_invariants(const EHTSpec& s) {
    return detail::build_invariants(s, classify(s));
}

// ---------------------------------------------------------------------------
// Inequality chains
// ---------------------------------------------------------------------------

enum class Truth { no, yes, boundary };

/// Evaluates "t0 r0 t1 r1 t2 ..." with r in {<, <=, >, >=} and t a symbol,
/// a number, or the predicate "complex(a2,b2)". Strict comparisons whose
/// margin is inside the relative band report `boundary`.
inline Truth evaluate_chain(std::string_view chain, const SymbolTable& st, double band = 1e-10) {
    std::istringstream in{std::string(chain)};
    std::vector<std::string> tok;
    for (std::string w; in >> w;) tok.push_back(w);
    if (tok.size() == 1 && tok[0] == "complex(a2,b2)") return st.pair2 ? Truth::yes : Truth::no;
    if (tok.size() < 3 || tok.size() % 2 == 0)
        throw Error(ErrorKind::precondition, "malformed inequality chain: " + std::string(chain));
    auto value = [&](const std::string& t) -> std::optional<double> {
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end && *end == '\0' && end != t.c_str()) return v;
        return st.get(t);
    };
    Truth out = Truth::yes;
    for (std::size_t i = 1; i + 1 < tok.size(); i += 2) {
        auto u = value(tok[i - 1]), v = value(tok[i + 1]);
        if (!u || !v) return Truth::no;
        const std::string& r = tok[i];
        double lhs = *u, rhs = *v;
        if (r == ">" || r == ">=") std::swap(lhs, rhs);
        double margin = rhs - lhs, b = band * std::max(std::abs(lhs), std::abs(rhs));
        bool strict = (r == "<" || r == ">");
        if (!strict && r != "<=" && r != ">=")
            throw Error(ErrorKind::precondition, "unknown relation '" + r + "'");
        if (strict) {
            if (margin > b) continue;
            if (margin >= -b) { out = Truth::boundary; continue; }
            return Truth::no;
        }
        if (margin >= -b) continue;
        return Truth::no;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rule table
// ---------------------------------------------------------------------------

enum class IntegralFlavor { q, q_inverse, bilateral };

inline std::string_view to_string(IntegralFlavor f) {
    switch (f) {
    case IntegralFlavor::q: return "q";
    case IntegralFlavor::q_inverse: return "q-inverse";
    case IntegralFlavor::bilateral: return "bilateral";
    }
    return "?";
}

/// Table-row symbol -> equation symbol. "a2*" and "b2*" name the complex zeros.
using Binding = std::vector<std::pair<std::string_view, std::string_view>>;

struct Rule {
    std::string_view id;
    HahnClass cls;
    std::vector<std::string_view> when;
    bool positive = true;
    int kind = 0;                 ///< support scenario 1..7 (0 for negative rules)
    std::string_view gen;         ///< first generator symbol
    std::string_view gen2;        ///< kind 1: second generator; kind 3: sigma1 root with b = gen2/q
    std::string_view form;        ///< weight table row
    Binding bind;
    std::string_view example;     ///< named family realising the rule, if any
};

inline const std::vector<Rule>& rule_table() {
    using C = HahnClass;
    static const std::vector<Rule> rules = {
        // ∅-Jacobi/Jacobi
        {"ejj.two-sided", C::empty_jacobi_jacobi, {"a2 < a1 < 0 < b1 < b2", "0 < q2L < 1"}, true, 1, "a1", "b1",
         "jj-1", {}, "big-q-jacobi"},
        {"ejj.finite-from-a2", C::empty_jacobi_jacobi, {"0 < a1 < a2 < b1 < b2", "0 < q2L < 1"}, true, 3, "a2", "b1",
         "jj-2", {}, "q-hahn"},
        {"ejj.finite-from-b2-large", C::empty_jacobi_jacobi, {"0 < a2 <= b2 < a1 <= b1", "q2L > 1"}, true, 3, "b2", "a1",
         "jj-2", {{"a1", "b1"}, {"b1", "a1"}, {"a2", "b2"}, {"b2", "a2"}}, "q-hahn"},
        {"ejj.two-sided-outer-sigma2", C::empty_jacobi_jacobi, {"a1 < 0 < b1 < a2 <= b2", "q2L < 0"}, true, 1, "a1", "b1",
         "jj-1", {}, "big-q-jacobi"},
        {"ejj.finite-from-b2-negative-a1", C::empty_jacobi_jacobi, {"a1 < 0 < a2 <= b2 < b1", "q2L < 0"}, true, 3, "b2", "b1",
         "jj-2", {{"a2", "b2"}, {"b2", "a2"}}, "q-hahn"},
        {"ejj.two-sided-complex-sigma2", C::empty_jacobi_jacobi, {"a1 < 0 < b1", "complex(a2,b2)", "q2L < 0"}, true, 1,
         "a1", "b1", "jj-1", {{"a2", "a2*"}, {"b2", "b2*"}}, ""},
        {"ejj.finite-from-b2-negative-a2", C::empty_jacobi_jacobi, {"a2 < 0 < a1 < b2 < b1", "q2L < 0"}, true, 3, "b2", "b1",
         "jj-2", {{"a2", "b2"}, {"b2", "a2"}}, "q-hahn"},
        // 0-Jacobi/Jacobi
        {"zjj.from-a1", C::zero_jacobi_jacobi, {"0 < a1 < a2", "0 < qy0 < 1", "0 < q2L < 1"}, true, 2, "a1", "",
         "jj-3", {}, "little-q-jacobi"},
        {"zjj.from-a1-negative-a2", C::zero_jacobi_jacobi, {"a2 < 0 < a1", "0 < qy0 < 1", "q2L < 0"}, true, 2, "a1", "",
         "jj-3", {}, "little-q-jacobi"},
        {"zjj.finite-from-a2", C::zero_jacobi_jacobi, {"0 < a2 < a1", "qy0 < 0", "q2L < 0"}, true, 3, "a2", "a1",
         "jj-4", {}, "q-kravchuk"},
        // ∅-Jacobi/Laguerre
        {"ejl.ray-from-b2", C::empty_jacobi_laguerre, {"a2 < 0 < a1 < b2", "L < 0"}, true, 5, "b2", "", "jl-2", {},
         "q-meixner"},
        {"ejl.half-line-negative-roots", C::empty_jacobi_laguerre, {"a2 <= b2 < a1 < 0", "L < 0"}, true, 4, "a1", "",
         "jl-1", {}, ""},
        {"ejl.ray-from-b2-negative-a1", C::empty_jacobi_laguerre, {"a1 < 0 < a2 <= b2", "L < 0"}, true, 5, "b2", "",
         "jl-3", {}, "q-meixner"},
        {"ejl.finite-from-b2", C::empty_jacobi_laguerre, {"0 < a2 <= b2 < a1", "L > 0"}, true, 3, "b2", "a1", "jl-3", {},
         "quantum-q-kravchuk"},
        {"ejl.half-line-complex-sigma2", C::empty_jacobi_laguerre, {"a1 < 0", "complex(a2,b2)", "L < 0"}, true, 4, "a1",
         "", "jl-1", {{"a2", "a2*"}, {"b2", "b2*"}}, ""},
        // ∅-Jacobi/Hermite
        {"ejh.ray-from-b2", C::empty_jacobi_hermite, {"0 < a2 <= b2", "L < 0"}, true, 5, "b2", "", "jh-2", {},
         "al-salam-carlitz-2"},
        {"ejh.bilateral-complex-sigma2", C::empty_jacobi_hermite, {"complex(a2,b2)", "L < 0"}, true, 7, "", "", "jh-1",
         {{"a2", "a2*"}, {"b2", "b2*"}}, "discrete-q-hermite-2"},
        // ∅-Laguerre/Jacobi
        {"elj.two-sided", C::empty_laguerre_jacobi, {"a1 < 0 < b1 < a2", "L < 0"}, true, 1, "a1", "b1", "lj-1", {},
         "big-q-laguerre"},
        {"elj.finite-from-a2", C::empty_laguerre_jacobi, {"0 < a1 < a2 < b1", "L > 0"}, true, 3, "a2", "b1", "lj-2", {},
         "affine-q-kravchuk"},
        // ∅-Hermite/Jacobi
        {"ehj.two-sided", C::empty_hermite_jacobi, {"a1 < 0 < b1"}, true, 1, "a1", "b1", "hj-1", {},
         "al-salam-carlitz-1"},
        // 0-Jacobi/Laguerre
        {"zjl.half-line", C::zero_jacobi_laguerre, {"L < 0", "a2 < 0", "0 < qy0 < 1"}, true, 6, "", "", "zjl-1", {},
         "q-laguerre"},
        {"zjl.ray-from-a2", C::zero_jacobi_laguerre, {"L < 0", "a2 > 0", "qy0 < 0"}, true, 5, "a2", "", "zjl-2", {},
         "q-charlier"},
        // 0-Bessel/Jacobi
        {"zbj.from-a1", C::zero_bessel_jacobi, {"q2L < 0", "a1 > 0"}, true, 2, "a1", "", "zbj-1", {},
         "alternative-q-charlier"},
        // 0-Bessel/Laguerre
        {"zbl.half-line", C::zero_bessel_laguerre, {"L < 0"}, true, 6, "", "", "zbl-1", {}, "stieltjes-wigert"},
        // 0-Laguerre/Jacobi
        {"zlj.from-a1", C::zero_laguerre_jacobi, {"a1 > 0", "0 < qy0 < 1"}, true, 2, "a1", "", "zlj-1", {},
         "little-q-laguerre"},

        // configurations without an orthogonal polynomial system
        {"ejj.none.large-L-a2-below-a1q-below-b2", C::empty_jacobi_jacobi, {"0 < a2 < a1/q < b2 < b1/q", "L > 1"}, false},
        {"ejj.none.large-L-a2-below-a1q-b2-outer", C::empty_jacobi_jacobi, {"0 < a2 < a1/q < b1/q < b2", "L > 1"}, false},
        {"ejj.none.large-L-sigma2-inside", C::empty_jacobi_jacobi, {"0 < a1/q < a2 < b2 < b1/q", "L > 1"}, false},
        {"ejj.none.large-L-negative-sigma2", C::empty_jacobi_jacobi, {"a2 < b2 < 0 < a1/q < b1/q", "L > 1"}, false},
        {"ejj.none.small-L-sigma2-inside", C::empty_jacobi_jacobi, {"0 < a1/q < a2 < b2 < b1/q", "0 < L < 1"}, false},
        {"ejj.none.small-L-sigma1-inside", C::empty_jacobi_jacobi, {"0 < a2 < a1/q < b1/q < b2", "0 < L < 1"}, false},
        {"ejj.none.small-L-sigma2-outer", C::empty_jacobi_jacobi, {"0 < a1/q < b1/q < a2 < b2", "0 < L < 1"}, false},
        {"ejj.none.small-L-negative-sigma2", C::empty_jacobi_jacobi, {"a2 < b2 < 0 < a1/q < b1/q", "0 < L < 1"}, false},
        {"ejj.none.negative-L-b2-outer", C::empty_jacobi_jacobi, {"a2 < 0 < a1/q < b1/q < b2", "L < 0"}, false},
        {"ejj.none.negative-L-b2-inner", C::empty_jacobi_jacobi, {"a2 < 0 < b2 < a1/q < b1/q", "L < 0"}, false},
        {"zjj.none.small-L-a2-below-a1q", C::zero_jacobi_jacobi, {"0 < L < 1", "0 < a2 < a1/q"}, false},
        {"zjj.none.large-L-a2-above-a1q", C::zero_jacobi_jacobi, {"L > 1", "0 < a1/q < a2"}, false},
        {"zjj.none.large-L-negative-a1", C::zero_jacobi_jacobi, {"L > 1", "a1/q < 0 < a2"}, false},
        {"zjj.none.small-L-negative-a2", C::zero_jacobi_jacobi, {"0 < L < 1", "a2 < 0 < a1/q"}, false},
        {"ejl.none.positive-L-straddle", C::empty_jacobi_laguerre, {"L > 0", "a1/q < a2 < 0 < b2"}, false},
        {"ejl.none.positive-L-a1q-inside", C::empty_jacobi_laguerre, {"L > 0", "0 < a2 < a1/q < b2"}, false},
        {"elj.none.negative-L-a2-inside", C::empty_laguerre_jacobi, {"L < 0", "a1/q < 0 < a2 < b1/q"}, false},
        {"elj.none.positive-L-a2-outer", C::empty_laguerre_jacobi, {"L > 0", "0 < a1/q < b1/q < a2"}, false},
        {"elj.none.positive-L-a2-below", C::empty_laguerre_jacobi, {"L > 0", "0 < a2 < a1/q < b1/q"}, false},
        {"elj.none.negative-L-negative-a2", C::empty_laguerre_jacobi, {"L < 0", "a2 < 0 < a1/q < b1/q"}, false},
        {"ejh.none.positive-L-straddle", C::empty_jacobi_hermite, {"L > 0", "a2 < 0 < b2"}, false},
        {"zbj.none.positive-L", C::zero_bessel_jacobi, {"L > 0", "a1 > 0"}, false},
    };
    return rules;
}

inline const Rule& find_rule(std::string_view id) {
    for (const auto& r : rule_table())
        if (r.id == id) return r;
    throw Error(ErrorKind::precondition, "unknown rule id " + std::string(id));
}

/// All predicates true (boundary counts as true, with the warning reported).
inline Truth rule_matches(const Rule& r, const SymbolTable& st) {
    Truth out = Truth::yes;
    for (auto w : r.when) {
        Truth t = evaluate_chain(w, st);
        if (t == Truth::no) return Truth::no;
        if (t == Truth::boundary) out = Truth::boundary;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

/// One geometric branch of a support: generator * q^{k} (dir = +1, toward 0),
/// generator * q^{-k} (dir = -1) or both directions (dir = 0).
struct Branch {
    double generator = 1.0;
    int dir = 1;
    std::optional<int> count;   ///< finite branch length (kind 3)
};

struct OrthScenario {
    int kind = 0;
    double lo = 0.0, hi = 0.0;   ///< interval, may be +-infinity
    IntegralFlavor flavor = IntegralFlavor::q;
    std::vector<Branch> branches;
    std::optional<int> N;
    std::string rule_id;
    std::string weight_form_id;
    bool reflected = false;      ///< support and weight live on -x of the reflected equation
    std::vector<std::string> warnings;
};

namespace detail {

inline std::optional<OrthScenario> build_scenario(const Rule& r, const CaseInvariants& inv, double q) {
    const auto& st = inv.symbols;
    constexpr double inf = std::numeric_limits<double>::infinity();
    OrthScenario sc;
    sc.kind = r.kind;
    sc.rule_id = std::string(r.id);
    sc.weight_form_id = std::string(r.form);
    auto need = [&](std::string_view n) {
        auto v = st.get(n);
        if (!v) throw Error(ErrorKind::invariant_undefined, "rule refers to missing symbol " + std::string(n));
        return *v;
    };
    switch (r.kind) {
    case 1: {
        double a = need(r.gen), b = need(r.gen2);
        sc.lo = a; sc.hi = b;
        sc.branches = {{a, 1, {}}, {b, 1, {}}};
        break;
    }
    case 2: {
        double b = need(r.gen);
        sc.lo = 0.0; sc.hi = b;
        sc.branches = {{b, 1, {}}};
        break;
    }
    case 3: {
        double a = need(r.gen), b = need(r.gen2) / q;
        double n1 = std::log(a / b) / std::log(q);
        if (!std::isfinite(n1)) return std::nullopt;
        long N = std::lround(n1) - 1;
        if (N < 0 || N > 1000000) return std::nullopt;
        if (std::abs(std::pow(q, -double(N + 1)) * a - b) > 1e-9 * std::abs(b)) return std::nullopt;
        sc.N = int(N);
        sc.lo = a; sc.hi = b;
        sc.flavor = IntegralFlavor::q_inverse;
        sc.branches = {{a, -1, int(N) + 1}};
        break;
    }
    case 4: {
        double a = need(r.gen);
        sc.lo = a; sc.hi = inf;
        sc.branches = {{a, 1, {}}, {1.0, 0, {}}};
        break;
    }
    case 5: {
        double a = need(r.gen);
        sc.lo = a; sc.hi = inf;
        sc.flavor = IntegralFlavor::q_inverse;
        sc.branches = {{a, -1, {}}};
        break;
    }
    case 6:
        sc.lo = 0.0; sc.hi = inf;
        sc.branches = {{1.0, 0, {}}};
        break;
    case 7:
        sc.lo = -inf; sc.hi = inf;
        sc.flavor = IntegralFlavor::bilateral;
        sc.branches = {{1.0, 0, {}}, {-1.0, 0, {}}};
        break;
    default:
        throw Error(ErrorKind::precondition, "rule without a scenario kind");
    }
    return sc;
}

inline std::vector<OrthScenario> run_table(const EHTSpec& s, bool reflected) {
    std::vector<OrthScenario> out;
    CaseInvariants inv = case_invariants(s);
    for (const auto& r : rule_table()) {
        if (!r.positive || r.cls != inv.cls) continue;
        Truth t = rule_matches(r, inv.symbols);
        if (t == Truth::no) continue;
        auto sc = build_scenario(r, inv, s.q());
        if (!sc) continue;
        if (t == Truth::boundary) sc->warnings.push_back("a strict condition of " + std::string(r.id) + " holds only within the tolerance band");
        if (inv.ties) sc->warnings.push_back("coinciding roots in the ordering");
        if (reflected) {
            sc->reflected = true;
            for (auto& b : sc->branches) b.generator = -b.generator;
            double lo = -sc->hi, hi = -sc->lo;
            sc->lo = lo; sc->hi = hi;
        }
        out.push_back(std::move(*sc));
    }
    return out;
}

} // namespace detail

/// Every positive rule matching the spec, in table order. When none match,
/// the table is run on the reflected equation (x -> -x) and the resulting
/// scenarios are mapped back to the negative axis.
inline std::vector<OrthScenario> enumerate_scenarios(const EHTSpec& s) {
    auto out = detail::run_table(s, false);
    if (out.empty()) out = detail::run_table(reflect(s), true);
    return out;
}

/// Negative rules (no orthogonal polynomial system) matching the spec.
inline std::vector<std::string> matched_rejections(const EHTSpec& s) {
    std::vector<std::string> out;
    CaseInvariants inv = case_invariants(s);
    for (const auto& r : rule_table())
        if (!r.positive && r.cls == inv.cls && rule_matches(r, inv.symbols) != Truth::no)
            out.emplace_back(r.id);
    return out;
}

/// True iff sigma1 rho x^k -> 0 toward the tail for every k <= k_max, which
/// by the extended Pearson ratio happens exactly when deg sigma2 > deg sigma1.
inline bool bc_at_infinity(const EHTSpec& s, int tail_sign, int k_max) {
    (void)tail_sign;   // the ratio's growth depends on degrees only
    if (k_max < 0) throw Error(ErrorKind::precondition, "k_max must be >= 0");
    return s.sigma2.degree() > s.sigma1.degree();
}

} // namespace qhahn
