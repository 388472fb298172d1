#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "checks.hpp"

using namespace qhahn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const QParam qp = make_qparam(0.5);
}

TEST_CASE("registry holds seventeen distinct families over all classes", "[families]") {
    const auto& reg = list_families();
    CHECK(reg.size() == 17);
    std::set<std::string> ids;
    std::set<HahnClass> classes;
    for (const auto& f : reg) {
        CHECK(ids.insert(f.id).second);
        classes.insert(f.cls);
        CHECK_FALSE(f.regions.empty());
        CHECK(f.regions.front().kind == Region::classic);
    }
    CHECK(classes.size() == all_classes.size());
}

TEST_CASE("eigenvalues match the family displays", "[families]") {
    for (const auto& f : list_families())
        for (const auto& r : f.regions) {
            INFO(f.id << " " << r.name);
            auto fs = make_family(f.id, r.sample, qp);
            for (int n = 0; n <= 10; ++n) {
                double want = f.lambda_display(r.sample, 0.5, n);
                CHECK_THAT(lambda_n(fs.spec, n), WithinAbs(want, 1e-12 * std::max(1.0, std::abs(want))));
            }
        }
}

TEST_CASE("sigma2 matches the family displays", "[families]") {
    for (const auto& f : list_families())
        for (const auto& r : f.regions) {
            INFO(f.id << " " << r.name);
            auto fs = make_family(f.id, r.sample, qp);
            RealPolynomial want = f.sigma2_display(r.sample, 0.5);
            CHECK((want - fs.spec.sigma2).max_abs_coeff() <= 1e-12 * std::max(1.0, want.max_abs_coeff()));
        }
}

TEST_CASE("region samples are tagged with their region and rule", "[families]") {
    for (const auto& f : list_families())
        for (const auto& r : f.regions) {
            INFO(f.id << " " << r.name);
            auto fs = make_family(f.id, r.sample, qp);
            CHECK(fs.region == r.kind);
            CHECK(fs.region_name == r.name);
            CHECK(fs.expected_rule == r.rule_id);
            CHECK(r.holds(r.sample, 0.5));
        }
}

TEST_CASE("parameter validation", "[families]") {
    CHECK(make_family("big-q-jacobi", {{"a", 5.0}, {"b", 0.5}, {"c", -0.5}}, qp).region == Region::invalid);
    auto precondition = [](auto&& f) {
        try {
            f();
            return false;
        } catch (const Error& e) {
            return e.kind() == ErrorKind::precondition;
        }
    };
    CHECK(precondition([] { make_family("q-hahn", {{"alpha", 0.5}, {"N", 5}}, qp); }));
    CHECK(precondition([] { make_family("q-hahn", {{"alpha", 0.5}, {"beta", 0.5}, {"N", 5}, {"z", 1}}, qp); }));
    CHECK(precondition([] { make_family("q-hahn", {{"alpha", 0.5}, {"beta", 0.5}, {"N", 2.5}}, qp); }));
    CHECK(precondition([] { make_family("q-kravchuk", {{"p", 0.5}, {"N", -1}}, qp); }));
    CHECK(precondition([] { find_family("no-such-family"); }));
}

TEST_CASE("degenerate q-Hahn prefactor is dropped and flagged", "[families]") {
    Params p{{"alpha", 0.5}, {"beta", 0.5}, {"N", 5}};
    auto fs = make_family("q-hahn", p, qp);
    auto m = monic_norm(fs);
    CHECK(m.degenerate_constant);
    for (int n = 0; n <= 5; ++n) CHECK(std::isfinite(m.dn2(n)));
    CHECK_FALSE(std::isfinite(norm_formula("q-hahn", p, 0.5, 0)));
    auto large = make_family("q-hahn", {{"alpha", 80}, {"beta", 80}, {"N", 5}}, qp);
    CHECK_FALSE(monic_norm(large).degenerate_constant);
}

TEST_CASE("standard-normalised displays become monic through the leading coefficient", "[families]") {
    // k_n of the q-Laguerre polynomial: (-1)^n q^{n(n+alpha)} / (q;q)_n
    const auto& f = find_family("q-laguerre");
    REQUIRE(f.leading);
    Params p{{"alpha", 0.5}};
    for (int n = 0; n <= 6; ++n)
        CHECK_THAT(f.leading(p, 0.5, n),
                   WithinRel((n % 2 ? -1.0 : 1.0) * std::pow(0.5, n * (n + 0.5)) / qpochhammer(0.5, 0.5, n), 1e-13));
}

TEST_CASE("Stieltjes-Wigert display is off by (1-q^(n+1))/(1-q)", "[families]") {
    // The printed norm carries (q^2;q)_n where the lattice gives (q;q)_n; the
    // ratio grows by exactly the quotient of the two.
    for (const auto& p : fixtures::family_fixtures()) {
        if (p.name.rfind("stieltjes-wigert", 0) != 0) continue;
        auto pr = checks::prepare(p);
        auto g = checks::orthogonality(p, pr);
        const double q = p.spec.q();
        CHECK(g.ratio_spread > 0.5);
        for (int n = 0; n <= g.n_max; ++n)
            CHECK_THAT(g.norm_ratios[std::size_t(n)] * (1 - q) / (1 - std::pow(q, n + 1)),
                       WithinRel(g.norm_ratios[0], 1e-12));
    }
}

TEST_CASE("extended-region samples stay orthogonal", "[families]") {
    int count = 0;
    for (const auto& p : fixtures::family_fixtures()) {
        if (!p.extended) continue;
        ++count;
        INFO(p.name);
        auto pr = checks::prepare(p);
        CHECK(checks::pearson_max(p, pr) < 1e-10);
        CHECK(checks::recursion_spread(p, pr) < 1e-9);
        CHECK(checks::orthogonality(p, pr).off_diag_max < (pr.sup.finite ? 1e-10 : 1e-8));
    }
    CHECK(count >= 5);
}
