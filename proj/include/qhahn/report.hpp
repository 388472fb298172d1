#pragma once

/**
 * @file report.hpp
 * @brief JSON documents for invariants, scenarios, the rule table, weight
 * forms, Gram reports and the family registry.
 *
 * Documents are nlohmann::ordered_json, so field order is the insertion
 * order below. canonical_dump() writes floats with %.17g and negative zero
 * as 0; parsing its output and dumping again reproduces the same bytes. Non-finite reals are written
 * as the strings "inf", "-inf" and "nan".
 */

#include <cstdio>

#include <json.hpp>

#include "families.hpp"

namespace qhahn {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";

namespace detail {

inline void dump_to(std::string& out, const Json& j, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(std::size_t(indent * d), ' ');
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) { out += "{}"; return; }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            out += Json(it.key()).dump();
            out += indent < 0 ? ":" : ": ";
            dump_to(out, it.value(), indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) { out += "[]"; return; }
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            dump_to(out, v, indent, depth + 1);
        }
        newline(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float: {
        double v = j.get<double>();
        if (v == 0.0) v = 0.0;   // "-0" would parse back as the integer 0
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace detail

inline std::string canonical_dump(const Json& j, int indent = 2) {
    std::string out;
    detail::dump_to(out, j, indent, 0);
    return out;
}

/// A real, or its spelling when it is not finite.
inline Json real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline Json real(const std::optional<double>& v) { return v ? real(*v) : Json(nullptr); }

inline Json coeffs(const RealPolynomial& p) {
    Json a = Json::array();
    for (double c : p.coefficients()) a.push_back(real(c));
    return a;
}

inline Json to_json(const RootSet& r) {
    Json j;
    Json re = Json::array();
    for (double x : r.real) re.push_back(real(x));
    j["real"] = re;
    if (r.complex_pair)
        j["complex"] = Json{{"re", real(r.complex_pair->real())}, {"im", real(r.complex_pair->imag())}};
    else
        j["complex"] = nullptr;
    j["double_root"] = r.double_root;
    return j;
}

inline Json to_json(const EHTSpec& s) {
    Json j;
    j["q"] = real(s.q());
    j["sigma1"] = coeffs(s.sigma1);
    j["tau"] = coeffs(s.tau);
    j["sigma2"] = coeffs(s.sigma2);
    j["roots_sigma1"] = to_json(s.roots1);
    j["roots_sigma2"] = to_json(s.roots2);
    return j;
}

inline Json to_json(const CaseInvariants& inv) {
    Json j;
    j["class"] = std::string(slug(inv.cls));
    j["display"] = std::string(display_name(inv.cls));
    j["Lambda"] = real(inv.Lambda);
    j["Delta"] = real(inv.Delta);
    j["y0"] = real(inv.y0);
    j["x0"] = real(inv.x0);
    Json order = Json::array();
    for (const auto& [name, v] : inv.root_order) order.push_back(Json{{"symbol", name}, {"value", real(v)}});
    j["root_order"] = order;
    j["ties"] = inv.ties;
    return j;
}

inline Json to_json(const OrthScenario& sc) {
    Json j;
    j["rule_id"] = sc.rule_id;
    j["kind"] = sc.kind;
    j["interval"] = Json::array({real(sc.lo), real(sc.hi)});
    j["integral"] = std::string(to_string(sc.flavor));
    Json br = Json::array();
    for (const auto& b : sc.branches) {
        Json e;
        e["generator"] = real(b.generator);
        e["direction"] = b.dir == 1 ? "q^k" : b.dir == -1 ? "q^-k" : "q^+-k";
        e["count"] = b.count ? Json(*b.count) : Json(nullptr);
        br.push_back(e);
    }
    j["branches"] = br;
    j["N"] = sc.N ? Json(*sc.N) : Json(nullptr);
    j["weight_form_id"] = sc.weight_form_id;
    j["reflected"] = sc.reflected;
    j["warnings"] = sc.warnings;
    return j;
}

inline Json to_json(const Rule& r) {
    Json j;
    j["rule_id"] = std::string(r.id);
    j["class"] = std::string(slug(r.cls));
    j["positive"] = r.positive;
    Json pred = Json::array();
    for (auto w : r.when) pred.push_back(std::string(w));
    j["predicates"] = pred;
    if (r.positive) {
        j["kind"] = r.kind;
        j["generator"] = std::string(r.gen);
        j["generator2"] = r.gen2.empty() ? Json(nullptr) : Json(std::string(r.gen2));
        j["weight_form_id"] = std::string(r.form);
        Json b = Json::object();
        for (const auto& [from, to] : r.bind) b[std::string(from)] = std::string(to);
        j["binding"] = b;
        j["example"] = r.example.empty() ? Json(nullptr) : Json(std::string(r.example));
    }
    return j;
}

inline Json rule_table_json() {
    Json j;
    j["schema_version"] = schema_version;
    Json rules = Json::array();
    for (const auto& r : rule_table()) rules.push_back(to_json(r));
    j["rules"] = rules;
    return j;
}

inline Json to_json(const WeightForm& wf) {
    Json j;
    j["form_id"] = wf.form_id;
    j["rule_id"] = wf.rule_id;
    j["power_alpha"] = wf.has_power ? Json{{"alpha", real(wf.alpha)}, {"q_alpha", real(wf.q_alpha)},
                                           {"relation", wf.relation}, {"alternating", wf.alternating}}
                                    : Json(nullptr);
    j["h_factor"] = wf.h == HFactor::none ? Json(nullptr) : Json(std::string(to_string(wf.h)));
    auto facs = [](const std::vector<PochFactor>& fs, const std::vector<std::complex<double>>& pairs) {
        Json a = Json::array();
        for (const auto& f : fs) a.push_back(Json{{"c", real(f.c)}, {"form", f.over_x ? "c/x" : "c*x"}});
        for (const auto& z : pairs)
            a.push_back(Json{{"c", Json{{"re", real(z.real())}, {"im", real(z.imag())}}}, {"form", "c*x, conj(c)*x"}});
        return a;
    };
    j["pochhammer_numerators"] = facs(wf.num, wf.num_pairs);
    j["pochhammer_denominators"] = facs(wf.den, wf.den_pairs);
    j["reflected"] = wf.reflected;
    j["normalization_point"] = Json{{"x", real(wf.x_ref)}, {"value", real(wf.value_ref)}};
    return j;
}

inline Json to_json(const GramReport& g) {
    Json j;
    j["n_max"] = g.n_max;
    j["n_requested"] = g.n_requested;
    Json m = Json::array();
    for (const auto& row : g.gram) {
        Json r = Json::array();
        for (double v : row) r.push_back(real(v));
        m.push_back(r);
    }
    j["gram"] = m;
    j["off_diag_max"] = real(g.off_diag_max);
    Json nr = Json::array();
    for (double v : g.norm_ratios) nr.push_back(real(v));
    j["norm_ratios"] = nr;
    j["ratio_spread"] = g.norm_ratios.empty() ? Json(nullptr) : real(g.ratio_spread);
    j["thresholds"] = Json{{"off_diag", real(g.off_diag_threshold)}, {"ratio_spread", real(g.ratio_threshold)}};
    j["verdict"] = g.verdict;
    Json br = Json::array();
    for (const auto& b : g.branches)
        br.push_back(Json{{"generator", real(b.generator)}, {"direction", b.dir}, {"terms", b.terms},
                          {"relative_tail", real(b.tail)}});
    j["branches"] = br;
    return j;
}

inline Json to_json(const FamilyInfo& f) {
    Json j;
    j["family_id"] = f.id;
    j["name"] = f.display;
    j["params"] = f.params;
    j["expected_class"] = std::string(slug(f.cls));
    j["expected_kind"] = f.kind;
    Json regs = Json::array();
    for (const auto& r : f.regions) {
        Json e;
        e["name"] = r.name;
        e["region"] = std::string(to_string(r.kind));
        e["conditions"] = r.conditions;
        e["rule_id"] = r.rule_id;
        Json s = Json::object();
        for (const auto& [k, v] : r.sample) s[k] = real(v);
        e["sample"] = s;
        regs.push_back(e);
    }
    j["regions"] = regs;
    j["dn2"] = bool(f.dn2);
    j["dn2_normalization"] = f.leading ? "standard" : "monic";
    return j;
}

inline Json registry_json() {
    Json j;
    j["schema_version"] = schema_version;
    Json fams = Json::array();
    for (const auto& f : list_families()) fams.push_back(to_json(f));
    j["families"] = fams;
    return j;
}

} // namespace qhahn
