#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace qhahn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const QParam qp = make_qparam(0.5);

}

TEST_CASE("sigma2 is q sigma1 plus (q-1) x tau", "[eht]") {
    RealPolynomial s1{1.0, -2.0, 0.5}, tau{0.3, -1.5};
    EHTSpec s = make_eht(s1, tau, qp);
    for (double x : {-2.0, 0.0, 0.7, 3.0}) CHECK_THAT(s.sigma2(x), WithinAbs(0.5 * s1(x) - 0.5 * x * tau(x), 1e-14));
    EHTSpec back = eht_from_sigmas(s.sigma1, s.sigma2, qp);
    CHECK((back.tau - s.tau).max_abs_coeff() < 1e-15);
    CHECK((back.sigma2 - s.sigma2).max_abs_coeff() < 1e-15);
}

TEST_CASE("equation construction rejects malformed input", "[eht]") {
    CHECK_THROWS_AS(make_eht(RealPolynomial{1.0, 0.0, 0.0, 1.0}, RealPolynomial{0.0, 1.0}, qp), Error);
    CHECK_THROWS_AS(make_eht(RealPolynomial{1.0}, RealPolynomial{2.0}, qp), Error);
    CHECK_THROWS_AS(eht_from_sigmas(RealPolynomial{1.0}, RealPolynomial{1.0, 1.0}, qp), Error);
    QParam bad;
    bad.q = 1.0;
    try {
        make_eht(RealPolynomial{1.0}, RealPolynomial{0.0, 1.0}, bad);
        FAIL("q = 1 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
}

TEST_CASE("roots are sorted, paired or doubled", "[eht]") {
    auto r = polynomial_roots(RealPolynomial{6.0, -5.0, 1.0});
    REQUIRE(r.real.size() == 2);
    CHECK_THAT(r.real[0], WithinRel(2.0, 1e-15));
    CHECK_THAT(r.real[1], WithinRel(3.0, 1e-15));
    auto c = polynomial_roots(RealPolynomial{5.0, -2.0, 1.0});
    REQUIRE(c.complex_pair);
    CHECK(c.complex_pair->real() == 1.0);
    CHECK(c.complex_pair->imag() == 2.0);
    CHECK(polynomial_roots(RealPolynomial{1.0, -2.0, 1.0}).double_root);
    CHECK(polynomial_roots(RealPolynomial{3.0}).empty());
}

TEST_CASE("lambda_n is minus the leading coefficient of the operator on x^n", "[eht]") {
    for (const auto& p : fixtures::all_positive())
        for (int n = 0; n <= 8; ++n) {
            RealPolynomial img = apply_operator(p.spec, RealPolynomial::monomial(n), 0.0);
            double lead = img.coeff(n);
            CHECK_THAT(lambda_n(p.spec, n), WithinAbs(-lead, 1e-12 * std::max(1.0, std::abs(lead))));
        }
}

TEST_CASE("monic solutions solve the equation", "[eht]") {
    for (const auto& p : fixtures::all_positive()) {
        INFO(p.name);
        for (int n = 0; n <= 6; ++n) {
            RealPolynomial P = monic_solution(p.spec, n);
            REQUIRE(P.degree() == n);
            CHECK(P.coeff(n) == 1.0);
            for (double x : {-1.7, -0.3, 0.45, 1.2, 2.9}) {
                CHECK(equation_residual(p.spec, P, lambda_n(p.spec, n), x) < 1e-12);
                CHECK(convenient_form_residual(p.spec, P, lambda_n(p.spec, n), x) < 1e-12);
            }
        }
    }
}

TEST_CASE("eigenvalue collisions are reported as degeneracy", "[eht]") {
    // q tau'(0) + (1+q) sigma1''(0)/2 = 0 makes lambda_2 = lambda_1
    EHTSpec s = make_eht(RealPolynomial{1.0, 0.0, -1.0 / 3.0}, RealPolynomial{0.0, 1.0}, qp);
    CHECK_THAT(lambda_n(s, 2), WithinRel(lambda_n(s, 1), 1e-14));
    try {
        monic_solution(s, 2);
        FAIL("collision accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degeneracy);
        CHECK(e.where() == 1.0);
    }
    CHECK_NOTHROW(monic_solution(s, 1));
}

TEST_CASE("reflection negates roots and keeps eigenvalues", "[eht]") {
    for (const auto& p : fixtures::all_positive()) {
        EHTSpec r = reflect(p.spec);
        EHTSpec rr = reflect(r);
        CHECK((rr.sigma1 - p.spec.sigma1).max_abs_coeff() == 0.0);
        CHECK((rr.tau - p.spec.tau).max_abs_coeff() == 0.0);
        for (std::size_t i = 0; i < p.spec.roots1.real.size(); ++i)
            CHECK_THAT(r.roots1.real[p.spec.roots1.real.size() - 1 - i], WithinAbs(-p.spec.roots1.real[i], 1e-14));
        for (int n = 0; n <= 6; ++n) CHECK_THAT(lambda_n(r, n), WithinRel(lambda_n(p.spec, n), 1e-14));
    }
}

TEST_CASE("Pearson ratio and its pole", "[eht]") {
    EHTSpec s = make_eht(RealPolynomial{-0.25, 1.0}, RealPolynomial{1.0, -2.0}, qp);
    for (double x : {-1.0, 0.3, 2.0})
        CHECK_THAT(pearson_ratio(s, x), WithinRel(s.sigma2(x) / (0.5 * s.sigma1(0.5 * x)), 1e-15));
    try {
        pearson_ratio(s, 0.5);
        FAIL("pole not reported");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::pole);
        CHECK(e.where() == 0.5);
    }
    CHECK_THAT(extended_ratio(s, 2.0, 2), WithinRel(0.5 * s.sigma2(2.0) / s.sigma1(2.0), 1e-15));
    CHECK_THROWS_AS(extended_ratio(s, 0.25, 0), Error);
}
