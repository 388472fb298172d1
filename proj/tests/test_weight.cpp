#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "checks.hpp"

using namespace qhahn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("closed-form weights satisfy the Pearson equation on the support", "[weight]") {
    for (const auto& p : fixtures::all_positive()) {
        INFO(p.name);
        auto pr = checks::prepare(p);
        CHECK(checks::pearson_max(p, pr, 30) < 1e-10);
    }
}

TEST_CASE("closed form over recursion is constant along every branch", "[weight]") {
    for (const auto& p : fixtures::all_positive()) {
        INFO(p.name);
        auto pr = checks::prepare(p);
        CHECK(checks::recursion_spread(p, pr, 20) < 1e-9);
    }
}

TEST_CASE("weights are normalised at their reference point", "[weight]") {
    for (const auto& p : fixtures::all_positive()) {
        auto pr = checks::prepare(p);
        CHECK_THAT(eval_weight(pr.wf, pr.wf.x_ref), WithinRel(1.0, 1e-13));
        CHECK(pr.wf.rule_id == p.rule);
        CHECK(pr.wf.form_id == pr.sc.weight_form_id);
    }
}

TEST_CASE("weights are positive on the support", "[weight]") {
    for (const auto& p : fixtures::all_positive()) {
        INFO(p.name);
        auto pr = checks::prepare(p);
        for (const auto& pt : pr.sup.points) CHECK(pt.rho * pt.w >= 0.0);
    }
}

TEST_CASE("weight table rows are unique", "[weight]") {
    const auto& t = weight_table();
    CHECK(t.size() == 17);
    std::set<std::string> ids;
    for (const auto& r : t) CHECK(ids.insert(std::string(r.id)).second);
    CHECK_THROWS_AS(find_row("no-such-row"), Error);
}

TEST_CASE("recursion forward then back returns the start value", "[weight]") {
    for (const auto& p : fixtures::all_positive()) {
        auto pr = checks::prepare(p);
        const auto& b = pr.sup.branches.front();
        int k = pr.sup.finite ? std::min(4, b.terms - 1) : 5;
        int dir = b.dir == 0 ? 1 : b.dir;
        double x = b.generator * std::pow(p.spec.q(), dir * k);
        double rho = weight_by_recursion(p.spec, b.generator, 1.0, dir * k);
        CHECK_THAT(weight_by_recursion(p.spec, x, rho, -dir * k), WithinRel(1.0, 1e-12));
    }
}

TEST_CASE("recursion through a pole is a propagation error", "[weight]") {
    // sigma1(qx) = 0 at x = 0.5 for sigma1 = x - 1/4
    EHTSpec s = make_eht(RealPolynomial{-0.25, 1.0}, RealPolynomial{1.0, -2.0}, make_qparam(0.5));
    try {
        weight_by_recursion(s, 1.0, 1.0, 3);
        FAIL("pole crossed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::propagation);
        CHECK(e.where() == 0.5);
    }
}

TEST_CASE("power factor exponents solve their relation", "[weight]") {
    for (const auto& p : fixtures::all_positive()) {
        auto pr = checks::prepare(p);
        if (!pr.wf.has_power) continue;
        INFO(p.name);
        CHECK_FALSE(pr.wf.relation.empty());
        CHECK_THAT(std::pow(p.spec.q(), pr.wf.alpha), WithinRel(std::abs(pr.wf.q_alpha), 1e-12));
    }
}

TEST_CASE("limit of the weight at the origin", "[weight]") {
    CaseInvariants inv;
    inv.y0 = 0.5;
    CHECK(zero_limit_class(inv) == ZeroLimit::vanishes);
    inv.y0 = 2.0;
    CHECK(zero_limit_class(inv) == ZeroLimit::diverges);
    inv.y0 = -0.5;
    CHECK(zero_limit_class(inv) == ZeroLimit::diverges);
    inv.y0 = 1.0;
    CHECK(zero_limit_class(inv) == ZeroLimit::indeterminate);
    inv.y0.reset();
    try {
        zero_limit_class(inv);
        FAIL("no y0");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invariant_undefined);
    }
}
