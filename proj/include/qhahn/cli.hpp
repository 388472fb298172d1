#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: parses a run configuration, executes one
 * command and writes a human, JSON or CSV document.
 *
 * Exit status: 0 on success (an empty scenario list is a success), 2 for
 * precondition violations and bad arguments, 3 for numerical failures.
 */

#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "report.hpp"

namespace qhahn::cli {

enum class Output { human, json, csv };

struct RunConfig {
    std::string command;
    std::string family;
    std::string params;
    std::string sigma1;
    std::string tau;
    double q = 0.5;
    int n_max = 6;
    Output output = Output::human;
    std::optional<double> eps_product, eps_tail;
    std::optional<int> max_terms;
    double off_diag = 1e-8;
    double ratio_spread = 1e-6;
    std::optional<int> scenario;
    std::optional<double> x_min, x_max;
    int points = 200;
    std::string sidecar;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> v;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        char* end = nullptr;
        double x = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0')
            throw Error(ErrorKind::precondition, std::string("cannot read ") + what + " entry '" + item + "'");
        v.push_back(x);
    }
    if (v.empty()) throw Error(ErrorKind::precondition, std::string("empty coefficient list for ") + what);
    return v;
}

inline Params parse_params(const std::string& s) {
    Params p;
    if (s.empty()) return p;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::precondition, "parameter '" + item + "' is not name=value");
        std::string name = item.substr(0, eq), val = item.substr(eq + 1);
        char* end = nullptr;
        double x = std::strtod(val.c_str(), &end);
        if (val.empty() || *end != '\0') throw Error(ErrorKind::precondition, "cannot read value of " + name);
        p[name] = x;
    }
    return p;
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Input {
    EHTSpec spec;
    std::optional<FamilySpec> family;
};

inline QParam qparam_of(const RunConfig& c) {
    QParam p;
    p.q = c.q;
    if (c.eps_product) p.eps_product = *c.eps_product;
    if (c.eps_tail) p.eps_tail = *c.eps_tail;
    if (c.max_terms) p.max_terms = *c.max_terms;
    p.validate();
    return p;
}

inline Input read_input(const RunConfig& c) {
    QParam qp = qparam_of(c);
    Input in;
    if (!c.family.empty()) {
        if (!c.sigma1.empty() || !c.tau.empty())
            throw Error(ErrorKind::precondition, "give either --family or --sigma1/--tau, not both");
        in.family = make_family(c.family, parse_params(c.params), qp);
        in.spec = in.family->spec;
        return in;
    }
    if (c.sigma1.empty() || c.tau.empty())
        throw Error(ErrorKind::precondition, "input needs --family or both --sigma1 and --tau");
    in.spec = make_eht(RealPolynomial(parse_list(c.sigma1, "sigma1")), RealPolynomial(parse_list(c.tau, "tau")), qp);
    return in;
}

inline Json input_json(const RunConfig& c, const Input& in) {
    Json j;
    if (in.family) {
        j["family"] = in.family->info->id;
        Json p = Json::object();
        for (const auto& [k, v] : in.family->params) p[k] = real(v);
        j["params"] = p;
        j["region"] = std::string(to_string(in.family->region));
        j["region_name"] = in.family->region_name.empty() ? Json(nullptr) : Json(in.family->region_name);
    } else {
        j["family"] = nullptr;
    }
    j["q"] = real(c.q);
    j["spec"] = to_json(in.spec);
    return j;
}

inline Json header(const std::string& command) {
    Json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    return j;
}

inline std::vector<OrthScenario> selected(const RunConfig& c, const EHTSpec& s) {
    auto all = enumerate_scenarios(s);
    if (!c.scenario) return all;
    if (*c.scenario < 0 || std::size_t(*c.scenario) >= all.size())
        throw Error(ErrorKind::precondition, "scenario index out of range (" + std::to_string(all.size()) + " available)");
    return {all[std::size_t(*c.scenario)]};
}

inline void require_output(const RunConfig& c, std::initializer_list<Output> allowed) {
    for (Output o : allowed)
        if (o == c.output) return;
    throw Error(ErrorKind::precondition, "output format not available for " + c.command);
}

inline void no_system(std::ostream& out, const EHTSpec& s) {
    auto rej = matched_rejections(s);
    out << "no orthogonal polynomial system";
    if (!rej.empty()) {
        out << " (rejected configuration:";
        for (const auto& r : rej) out << ' ' << r;
        out << ')';
    }
    out << '\n';
}

inline std::function<double(int)> family_norm(const Input& in, std::vector<std::string>& notes) {
    if (!in.family || !in.family->info->dn2) return {};
    MonicNorm m = monic_norm(*in.family);
    if (m.degenerate_constant) notes.push_back("n-independent d_n^2 prefactor is degenerate here and was dropped");
    return m.dn2;
}

// ---------------------------------------------------------------------------

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
    require_output(c, {Output::human, Output::json});
    Input in = read_input(c);
    CaseInvariants inv = case_invariants(in.spec);
    if (c.output == Output::json) {
        Json j = header("classify");
        Json body = to_json(inv);
        for (auto& [k, v] : body.items()) j[k] = v;
        j["input"] = input_json(c, in);
        out << canonical_dump(j) << '\n';
        return 0;
    }
    out << "class     " << display_name(inv.cls) << " (" << slug(inv.cls) << ")\n";
    auto line = [&](const char* n, const std::optional<double>& v) {
        if (v) out << n << fmt(*v) << '\n';
    };
    line("Lambda_q  ", inv.Lambda);
    line("Delta_q   ", inv.Delta);
    line("y0        ", inv.y0);
    line("x0        ", inv.x0);
    out << "ordering ";
    for (const auto& [n, v] : inv.root_order) out << ' ' << n << '=' << fmt(v);
    out << '\n';
    if (inv.ties) out << "warning: coinciding roots\n";
    if (in.family) out << "region    " << to_string(in.family->region) << ' ' << in.family->region_name << '\n';
    return 0;
}

inline int cmd_scenarios(const RunConfig& c, std::ostream& out) {
    require_output(c, {Output::human, Output::json});
    Input in = read_input(c);
    auto scs = enumerate_scenarios(in.spec);
    auto rej = matched_rejections(in.spec);
    if (c.output == Output::json) {
        Json j = header("scenarios");
        j["class"] = std::string(slug(classify(in.spec)));
        Json a = Json::array();
        for (const auto& s : scs) a.push_back(to_json(s));
        j["scenarios"] = a;
        j["rejected_configurations"] = rej;
        j["input"] = input_json(c, in);
        out << canonical_dump(j) << '\n';
        return 0;
    }
    if (scs.empty()) {
        no_system(out, in.spec);
        return 0;
    }
    for (std::size_t i = 0; i < scs.size(); ++i) {
        const auto& s = scs[i];
        out << '[' << i << "] " << s.rule_id << "  kind " << s.kind << "  (" << fmt(s.lo) << ", " << fmt(s.hi)
            << ")  " << to_string(s.flavor) << "-integral  weight " << s.weight_form_id;
        if (s.N) out << "  N=" << *s.N;
        if (s.reflected) out << "  reflected";
        out << '\n';
        for (const auto& b : s.branches)
            out << "    generator " << fmt(b.generator) << (b.dir == 1 ? "  q^k" : b.dir == -1 ? "  q^-k" : "  q^+-k")
                << (b.count ? "  x" + std::to_string(*b.count) : std::string()) << '\n';
        for (const auto& w : s.warnings) out << "    warning: " << w << '\n';
    }
    return 0;
}

inline int cmd_weight(const RunConfig& c, std::ostream& out) {
    require_output(c, {Output::human, Output::json});
    Input in = read_input(c);
    auto scs = selected(c, in.spec);
    Json a = Json::array();
    for (const auto& s : scs) {
        WeightForm wf = closed_form_weight(in.spec, s);
        if (c.output == Output::json) {
            a.push_back(to_json(wf));
            continue;
        }
        out << s.rule_id << ": row " << wf.form_id;
        if (wf.has_power)
            out << ", |x|^alpha with q^alpha = " << fmt(wf.q_alpha) << " (" << wf.relation << ")"
                << (wf.alternating ? ", alternating sign" : "");
        if (wf.h != HFactor::none) out << ", " << to_string(wf.h);
        out << "\n  numerator:";
        for (const auto& f : wf.num) out << " (" << fmt(f.c) << (f.over_x ? "/x" : " x") << ";q)";
        for (const auto& z : wf.num_pairs) out << " |(" << fmt(z.real()) << (z.imag() < 0 ? "" : "+") << fmt(z.imag()) << "i x;q)|^2";
        out << "\n  denominator:";
        for (const auto& f : wf.den) out << " (" << fmt(f.c) << (f.over_x ? "/x" : " x") << ";q)";
        for (const auto& z : wf.den_pairs) out << " |(" << fmt(z.real()) << (z.imag() < 0 ? "" : "+") << fmt(z.imag()) << "i x;q)|^2";
        out << "\n  rho(" << fmt(wf.x_ref) << ") = 1\n";
    }
    if (c.output == Output::json) {
        Json j = header("weight");
        j["weights"] = a;
        j["input"] = input_json(c, in);
        out << canonical_dump(j) << '\n';
    } else if (scs.empty()) {
        no_system(out, in.spec);
    }
    return 0;
}

inline int cmd_orth(const RunConfig& c, std::ostream& out, bool norms) {
    if (norms)
        require_output(c, {Output::human, Output::json, Output::csv});
    else
        require_output(c, {Output::human, Output::json});
    Input in = read_input(c);
    QParam qp = qparam_of(c);
    auto scs = selected(c, in.spec);
    std::vector<std::string> notes;
    auto dn2 = family_norm(in, notes);
    Json a = Json::array();
    bool all_ok = true;
    if (norms && c.output == Output::csv) out << "n,I_nn,dn2,ratio\n";
    for (const auto& s : scs) {
        WeightForm wf = closed_form_weight(in.spec, s);
        GramReport g = verify_orthogonality(in.spec, wf, s, dn2 ? &dn2 : nullptr, c.n_max, qp, c.off_diag, c.ratio_spread);
        all_ok = all_ok && g.verdict;
        if (c.output == Output::json) {
            Json e;
            e["rule_id"] = s.rule_id;
            e["report"] = to_json(g);
            if (norms) {
                Json rows = Json::array();
                for (int n = 0; n <= g.n_max; ++n) {
                    Json r;
                    r["n"] = n;
                    r["I_nn"] = real(g.gram[std::size_t(n)][std::size_t(n)]);
                    r["dn2"] = dn2 ? real(dn2(n)) : Json(nullptr);
                    r["ratio"] = dn2 ? real(g.norm_ratios[std::size_t(n)]) : Json(nullptr);
                    rows.push_back(r);
                }
                e["norms"] = rows;
            }
            a.push_back(e);
        } else if (norms) {
            if (c.output == Output::human) out << s.rule_id << "\n  n  I_nn  d_n^2  ratio\n";
            for (int n = 0; n <= g.n_max; ++n) {
                double I = g.gram[std::size_t(n)][std::size_t(n)];
                std::string d = dn2 ? fmt(dn2(n)) : "", r = dn2 ? fmt(g.norm_ratios[std::size_t(n)]) : "";
                if (c.output == Output::csv)
                    out << n << ',' << fmt(I) << ',' << d << ',' << r << '\n';
                else
                    out << "  " << n << "  " << fmt(I) << "  " << (dn2 ? d : "-") << "  " << (dn2 ? r : "-") << '\n';
            }
            if (c.output == Output::human && dn2) out << "  spread " << fmt(g.ratio_spread) << '\n';
        } else {
            out << s.rule_id << ": off-diagonal max " << fmt(g.off_diag_max) << " (threshold " << fmt(g.off_diag_threshold)
                << ")";
            if (!g.norm_ratios.empty()) out << ", norm ratio spread " << fmt(g.ratio_spread);
            out << ", n_max " << g.n_max << ", verdict " << (g.verdict ? "orthogonal" : "FAILED") << '\n';
        }
    }
    if (c.output == Output::json) {
        Json j = header(norms ? "norms" : "orth");
        j["reports"] = a;
        j["notes"] = notes;
        j["verdict"] = all_ok && !scs.empty();
        j["input"] = input_json(c, in);
        out << canonical_dump(j) << '\n';
    } else if (c.output == Output::human) {
        for (const auto& n : notes) out << "note: " << n << '\n';
        if (scs.empty()) no_system(out, in.spec);
    }
    return 0;
}

/// Grid over [lo, hi] without the points within 1e-6 of any pole.
inline std::vector<double> grid(double lo, double hi, int n, const std::vector<double>& poles) {
    if (!(lo < hi) || n < 2) throw Error(ErrorKind::precondition, "plot grid needs x-min < x-max and at least 2 points");
    std::vector<double> g;
    for (int i = 0; i < n; ++i) {
        double x = lo + (hi - lo) * i / (n - 1);
        bool near = false;
        for (double p : poles) near = near || std::abs(x - p) <= 1e-6;
        if (!near) g.push_back(x);
    }
    return g;
}

inline void write_plot(const RunConfig& c, std::ostream& out, const std::string& command,
                       const std::vector<std::pair<double, double>>& pts, const Json& annotations) {
    if (c.output == Output::json) {
        Json j = header(command);
        Json a = Json::array();
        for (const auto& [x, v] : pts) a.push_back(Json::array({real(x), real(v)}));
        j["points"] = a;
        for (auto& [k, v] : annotations.items()) j[k] = v;
        out << canonical_dump(j) << '\n';
        return;
    }
    out << "x,value\n";
    for (const auto& [x, v] : pts) out << fmt(x) << ',' << fmt(v) << '\n';
    if (!c.sidecar.empty()) {
        std::ofstream f(c.sidecar);
        if (!f) throw Error(ErrorKind::precondition, "cannot write sidecar " + c.sidecar);
        Json j = header(command);
        for (auto& [k, v] : annotations.items()) j[k] = v;
        f << canonical_dump(j) << '\n';
    }
}

inline std::pair<double, double> default_range(const EHTSpec& s) {
    double r = 1.0;
    for (double x : s.roots1.real) r = std::max(r, std::abs(x) / s.q());
    for (double x : s.roots2.real) r = std::max(r, std::abs(x));
    return {-1.5 * r, 1.5 * r};
}

inline int cmd_plot_f(const RunConfig& c, std::ostream& out) {
    require_output(c, {Output::csv, Output::json});
    Input in = read_input(c);
    const double q = in.spec.q();
    std::vector<double> poles, zeros;
    for (double r : in.spec.roots1.real) poles.push_back(r / q);   // sigma1(qx) = 0
    for (double r : in.spec.roots2.real) zeros.push_back(r);
    auto [lo, hi] = default_range(in.spec);
    if (c.x_min) lo = *c.x_min;
    if (c.x_max) hi = *c.x_max;
    std::vector<std::pair<double, double>> pts;
    for (double x : grid(lo, hi, c.points, poles)) {
        try {
            pts.emplace_back(x, pearson_ratio(in.spec, x));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::pole) throw;
        }
    }
    Json ann;
    Json p = Json::array(), z = Json::array();
    for (double v : poles) p.push_back(real(v));
    for (double v : zeros) z.push_back(real(v));
    ann["poles"] = p;
    ann["zeros"] = z;
    // horizontal asymptote of f at infinity when deg sigma2 = deg sigma1
    if (in.spec.sigma1.degree() == in.spec.sigma2.degree() && !in.spec.sigma1.is_zero())
        ann["asymptote"] = real(in.spec.sigma2.coeff(in.spec.sigma2.degree()) /
                                (q * in.spec.sigma1.coeff(in.spec.sigma1.degree()) *
                                 std::pow(q, in.spec.sigma1.degree())));
    else
        ann["asymptote"] = nullptr;
    ann["f_at_zero"] = in.spec.sigma1(0.0) != 0.0 ? real(pearson_ratio(in.spec, 0.0)) : Json(nullptr);
    write_plot(c, out, "plot-f", pts, ann);
    return 0;
}

inline int cmd_plot_rho(const RunConfig& c, std::ostream& out) {
    require_output(c, {Output::csv, Output::json});
    Input in = read_input(c);
    auto scs = selected(c, in.spec);
    if (scs.empty()) throw Error(ErrorKind::precondition, "no scenario to take a weight from");
    const OrthScenario& s = scs.front();
    WeightForm wf = closed_form_weight(in.spec, s);
    auto [lo, hi] = default_range(in.spec);
    if (c.x_min) lo = *c.x_min;
    if (c.x_max) hi = *c.x_max;
    std::vector<double> poles;
    std::vector<std::pair<double, double>> pts;
    int skipped = 0;
    for (double x : grid(lo, hi, c.points, {})) {
        try {
            pts.emplace_back(x, eval_weight(wf, x));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::pole) poles.push_back(x);
            else if (e.kind() == ErrorKind::domain) ++skipped;
            else throw;
        }
    }
    Json ann;
    ann["rule_id"] = s.rule_id;
    ann["weight"] = to_json(wf);
    Json p = Json::array();
    for (double v : poles) p.push_back(real(v));
    ann["poles"] = p;
    ann["outside_domain"] = skipped;
    write_plot(c, out, "plot-rho", pts, ann);
    return 0;
}

inline int cmd_families(const RunConfig& c, std::ostream& out) {
    require_output(c, {Output::human, Output::json});
    if (c.output == Output::json) {
        out << canonical_dump(registry_json()) << '\n';
        return 0;
    }
    for (const auto& f : list_families()) {
        out << f.id << "  [" << slug(f.cls) << ", kind " << f.kind << "]  params:";
        for (const auto& p : f.params) out << ' ' << p;
        out << '\n';
        for (const auto& r : f.regions)
            out << "    " << to_string(r.kind) << ' ' << r.name << ": " << r.conditions << "  -> " << r.rule_id << '\n';
    }
    return 0;
}

} // namespace detail

/// Runs the command line; returns the exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification, weights and orthogonality for q-difference equations of hypergeometric type"};
    app.require_subcommand(1);
    RunConfig c;
    std::string output = "human";

    auto common = [&](CLI::App* s, bool with_input) {
        if (with_input) {
            s->add_option("--family", c.family, "registered family id");
            s->add_option("-p,--params", c.params, "family parameters, e.g. a=0.5,b=0.5,c=-0.5");
            s->add_option("--sigma1", c.sigma1, "sigma1 coefficients c0,c1,c2 (use --sigma1=-1,... for a leading minus)");
            s->add_option("--tau", c.tau, "tau coefficients c0,c1");
            s->add_option("--q", c.q, "base q in (0,1)");
            s->add_option("--n-max", c.n_max, "highest degree");
            s->add_option("--eps-product", c.eps_product, "relative truncation of infinite products");
            s->add_option("--eps-tail", c.eps_tail, "relative truncation of lattice sums");
            s->add_option("--max-terms", c.max_terms, "term limit of lattice sums")->envname("QHAHN_MAX_TERMS");
            s->add_option("--off-diag", c.off_diag, "off-diagonal threshold");
            s->add_option("--ratio-spread", c.ratio_spread, "norm ratio spread threshold");
            s->add_option("--scenario", c.scenario, "index of the scenario to use");
            s->add_option("--x-min", c.x_min, "plot range start");
            s->add_option("--x-max", c.x_max, "plot range end");
            s->add_option("--points", c.points, "plot grid size");
            s->add_option("--sidecar", c.sidecar, "file for the plot annotations (CSV output)");
        }
        s->add_option("--output", output, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
    };
    for (const char* name : {"classify", "scenarios", "weight", "orth", "norms", "plot-f", "plot-rho"})
        common(app.add_subcommand(name, ""), true);
    common(app.add_subcommand("families", "list the registered families"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.command.rfind("plot", 0) == 0 && output == "human") output = "csv";
    c.output = output == "json" ? Output::json : output == "csv" ? Output::csv : Output::human;

    try {
        if (c.n_max < 0) throw Error(ErrorKind::precondition, "--n-max must be >= 0");
        if (c.command == "classify") return detail::cmd_classify(c, out);
        if (c.command == "scenarios") return detail::cmd_scenarios(c, out);
        if (c.command == "weight") return detail::cmd_weight(c, out);
        if (c.command == "orth") return detail::cmd_orth(c, out, false);
        if (c.command == "norms") return detail::cmd_orth(c, out, true);
        if (c.command == "plot-f") return detail::cmd_plot_f(c, out);
        if (c.command == "plot-rho") return detail::cmd_plot_rho(c, out);
        return detail::cmd_families(c, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.numerical() ? 3 : 2;
    }
}

} // namespace qhahn::cli
