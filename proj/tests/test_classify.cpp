#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"

using namespace qhahn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const QParam qp = make_qparam(fixtures::q0);

// leading coefficients and real roots straight from the coefficient lists
double lead(const RealPolynomial& p) { return p.coeff(p.degree()); }

double nonzero_root(const RealPolynomial& p) { return -p.coeff(1) / p.coeff(2); }

} // namespace

TEST_CASE("every fixture lands in its class and rule", "[classify]") {
    std::set<HahnClass> seen;
    for (const auto& p : fixtures::all_positive()) {
        INFO(p.name);
        CHECK(classify(p.spec) == p.cls);
        auto scs = enumerate_scenarios(p.spec);
        auto it = std::find_if(scs.begin(), scs.end(), [&](const OrthScenario& s) { return s.rule_id == p.rule; });
        REQUIRE(it != scs.end());
        CHECK(it->kind == p.kind);
        CHECK(find_rule(p.rule).kind == p.kind);
        if (p.family) seen.insert(p.cls);
    }
    CHECK(seen.size() == all_classes.size());
}

TEST_CASE("each positive rule is realised by a fixture", "[classify]") {
    std::set<std::string> realised;
    for (const auto& p : fixtures::all_positive()) realised.insert(p.rule);
    for (const auto& r : rule_table())
        if (r.positive) CHECK(realised.count(std::string(r.id)) == 1);
}

TEST_CASE("rejected configurations give no scenario and name their rule", "[classify]") {
    auto negs = fixtures::negative_fixtures();
    std::set<std::string> covered;
    for (const auto& n : negs) {
        INFO(n.name);
        CHECK(enumerate_scenarios(n.spec).empty());
        auto rej = matched_rejections(n.spec);
        CHECK(std::find(rej.begin(), rej.end(), n.name) != rej.end());
        CHECK(find_rule(n.name).cls == classify(n.spec));
        covered.insert(n.name);
    }
    std::size_t negatives = 0;
    for (const auto& r : rule_table()) negatives += r.positive ? 0 : 1;
    CHECK(covered.size() == negatives);
    CHECK(negatives == 22);
}

TEST_CASE("Lambda from root products in the empty Jacobi/Jacobi class", "[classify]") {
    for (const auto& p : fixtures::all_positive()) {
        if (p.cls != HahnClass::empty_jacobi_jacobi) continue;
        INFO(p.name);
        auto inv = case_invariants(p.spec);
        const double q = p.spec.q();
        // sigma2(0) = q sigma1(0) turns k2 / (q k1) into a1 b1 / (a2 b2)
        double via_lead = lead(p.spec.sigma2) / (q * lead(p.spec.sigma1));
        double prod1 = p.spec.sigma1.coeff(0) / lead(p.spec.sigma1);
        double prod2 = p.spec.sigma2.coeff(0) / lead(p.spec.sigma2);
        CHECK_THAT(q * q * *inv.Lambda, WithinRel(via_lead, 1e-12));
        CHECK_THAT(q * q * *inv.Lambda, WithinRel(prod1 / prod2, 1e-12));
    }
}

TEST_CASE("Lambda and y0 in the zero Jacobi/Jacobi class", "[classify]") {
    int count = 0;
    for (const auto& p : fixtures::all_positive()) {
        if (p.cls != HahnClass::zero_jacobi_jacobi) continue;
        ++count;
        INFO(p.name);
        auto inv = case_invariants(p.spec);
        const double q = p.spec.q();
        double q2L = lead(p.spec.sigma2) / (q * lead(p.spec.sigma1));
        CHECK_THAT(q * q * *inv.Lambda, WithinRel(q2L, 1e-12));
        double a1 = nonzero_root(p.spec.sigma1), a2 = nonzero_root(p.spec.sigma2);
        CHECK_THAT(q * *inv.y0, WithinRel(q2L * a2 / a1, 1e-12));
    }
    CHECK(count > 0);
}

TEST_CASE("Lambda in the Laguerre and Hermite classes", "[classify]") {
    for (const auto& p : fixtures::all_positive()) {
        INFO(p.name);
        const double q = p.spec.q();
        const auto& s1 = p.spec.sigma1;
        const auto& s2 = p.spec.sigma2;
        switch (p.cls) {
        case HahnClass::empty_jacobi_laguerre:
            CHECK_THAT(*case_invariants(p.spec).Lambda, WithinRel(lead(s2) / ((q - 1) * lead(s1)), 1e-12));
            break;
        case HahnClass::empty_laguerre_jacobi:
            CHECK_THAT(*case_invariants(p.spec).Lambda, WithinRel(-lead(s2) / (q * lead(s1)), 1e-12));
            break;
        case HahnClass::empty_jacobi_hermite:
            CHECK_THAT(*case_invariants(p.spec).Lambda, WithinRel(lead(s2) / ((q - 1) * s1.coeff(0)), 1e-12));
            break;
        case HahnClass::zero_bessel_jacobi:
            CHECK_THAT(q * q * *case_invariants(p.spec).Lambda, WithinRel(lead(s2) / (q * lead(s1)), 1e-12));
            break;
        default:
            break;
        }
    }
}

TEST_CASE("x0 is the zero of tau and sigma2 = q sigma1 there", "[classify]") {
    for (const auto& p : fixtures::all_positive()) {
        auto inv = case_invariants(p.spec);
        double x0 = inv.x0;
        CHECK(std::abs(p.spec.tau(x0)) <= 1e-12 * p.spec.tau.abs_scale(x0));
        CHECK_THAT(p.spec.sigma2(x0), WithinAbs(p.spec.q() * p.spec.sigma1(x0), 1e-12 * (1 + p.spec.sigma1.abs_scale(x0))));
    }
}

TEST_CASE("invariants stay put under positive rescaling", "[classify]") {
    for (const auto& p : fixtures::all_positive()) {
        EHTSpec s = make_eht(3.5 * p.spec.sigma1, 3.5 * p.spec.tau, p.spec.qp);
        auto a = case_invariants(p.spec), b = case_invariants(s);
        CHECK(a.cls == b.cls);
        if (a.Lambda) CHECK_THAT(*b.Lambda, WithinRel(*a.Lambda, 1e-12));
        if (a.y0) CHECK_THAT(*b.y0, WithinAbs(*a.y0, 1e-12));
        CHECK(enumerate_scenarios(s).size() == enumerate_scenarios(p.spec).size());
    }
}

TEST_CASE("inequality chains with tolerance bands", "[classify]") {
    SymbolTable st;
    st.values = {{"a", 1.0}, {"b", 2.0}, {"c", 2.0 + 1e-13}};
    CHECK(evaluate_chain("0 < a < b", st) == Truth::yes);
    CHECK(evaluate_chain("b < a", st) == Truth::no);
    CHECK(evaluate_chain("b < c", st) == Truth::boundary);
    CHECK(evaluate_chain("c <= b", st) == Truth::yes);
    CHECK(evaluate_chain("b >= a > 0", st) == Truth::yes);
    CHECK(evaluate_chain("a < missing", st) == Truth::no);
    CHECK(evaluate_chain("complex(a2,b2)", st) == Truth::no);
    st.pair2 = std::complex<double>(0.0, 1.0);
    CHECK(evaluate_chain("complex(a2,b2)", st) == Truth::yes);
    CHECK_THROWS_AS(evaluate_chain("a <", st), Error);
    CHECK_THROWS_AS(evaluate_chain("a == b", st), Error);
}

TEST_CASE("rule table ids are unique and positive rules are complete", "[classify]") {
    std::set<std::string_view> ids;
    for (const auto& r : rule_table()) {
        CHECK(ids.insert(r.id).second);
        CHECK(r.id.find('/') == std::string_view::npos);
        if (!r.positive) continue;
        CHECK((r.kind >= 1 && r.kind <= 7));
        // the bilateral kinds live on +-q^k and need no generator symbol
        if (r.kind <= 5) CHECK_FALSE(r.gen.empty());
        CHECK_NOTHROW(find_row(r.form));
    }
    CHECK_THROWS_AS(find_rule("no.such.rule"), Error);
}

TEST_CASE("class slugs round trip", "[classify]") {
    for (HahnClass c : all_classes) {
        auto back = class_from_slug(slug(c));
        REQUIRE(back);
        CHECK(*back == c);
        CHECK_FALSE(display_name(c).empty());
    }
    CHECK_FALSE(class_from_slug("no-such-class"));
}

TEST_CASE("doubly vanishing sigma1 is outside the taxonomy", "[classify]") {
    EHTSpec s = make_eht(RealPolynomial{0.0, 0.0, 1.0}, RealPolynomial{1.0, 1.0}, qp);
    try {
        classify(s);
        FAIL("classified");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported);
        CHECK(e.numerical());
    }
}

TEST_CASE("boundary condition at infinity follows the degrees", "[classify]") {
    for (const auto& p : fixtures::all_positive()) {
        bool expect = p.spec.sigma2.degree() > p.spec.sigma1.degree();
        CHECK(bc_at_infinity(p.spec, 1, 6) == expect);
        // the extended ratio grows without bound exactly when sigma2 wins
        double x = 1e8;
        CHECK((std::abs(extended_ratio(p.spec, x, 0)) > 1e4) == expect);
    }
    CHECK_THROWS_AS(bc_at_infinity(fixtures::all_positive().front().spec, 1, -1), Error);
}
