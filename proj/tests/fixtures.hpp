#pragma once

// Shared fixtures: every family region sample at q = 0.5, raw equations for
// the rules without a named family, and one equation per rejected
// configuration, built from root placements.

#include <qhahn/qhahn.hpp>

namespace fixtures {

using namespace qhahn;

inline constexpr double q0 = 0.5;

struct Positive {
    std::string name;
    EHTSpec spec;
    std::string rule;
    int kind = 0;
    HahnClass cls{};
    std::function<double(int)> dn2;   ///< monic-normalised display, may be empty
    const FamilyInfo* family = nullptr;
    Params params;
    bool extended = false;
};

struct Negative {
    std::string name;   ///< the negative rule it instantiates
    EHTSpec spec;
};

/// k (x - r_1)(x - r_2)...
inline RealPolynomial from_roots(double k, std::initializer_list<double> roots) {
    RealPolynomial p{k};
    for (double r : roots) p = p * RealPolynomial{-r, 1.0};
    return p;
}

/// sigma2 with the given roots scaled so that sigma2(0) = q sigma1(0).
inline RealPolynomial matching_sigma2(const RealPolynomial& s1, std::initializer_list<double> roots) {
    RealPolynomial p = from_roots(1.0, roots);
    return (q0 * s1(0.0) / p(0.0)) * p;
}

inline EHTSpec spec_of(const RealPolynomial& s1, const RealPolynomial& s2) {
    return eht_from_sigmas(s1, s2, make_qparam(q0));
}

inline std::vector<Positive> family_fixtures() {
    std::vector<Positive> out;
    const QParam qp = make_qparam(q0);
    for (const auto& f : list_families())
        for (const auto& r : f.regions) {
            FamilySpec fs = make_family(f.id, r.sample, qp);
            Positive p;
            p.name = f.id + "/" + r.name;
            p.spec = fs.spec;
            p.rule = r.rule_id;
            p.kind = f.kind;
            p.cls = f.cls;
            p.family = &f;
            p.params = r.sample;
            p.extended = r.kind == Region::extended;
            p.dn2 = monic_norm(fs).dn2;
            out.push_back(std::move(p));
        }
    return out;
}

/// Rules realised by no registered family.
inline std::vector<Positive> raw_fixtures() {
    using C = std::complex<double>;
    const double q = q0;
    std::vector<Positive> out;
    {
        // sigma2 with roots +-i alpha; the general d_n^2 of the two-sided case
        const double a1 = -0.5, b1 = 0.5, al = 1.0;
        RealPolynomial s1 = from_roots(1.0, {a1, b1});
        RealPolynomial s2 = (q * s1(0.0) / (al * al)) * RealPolynomial{al * al, 0.0, 1.0};
        Positive p{"complex-sigma2-two-sided", spec_of(s1, s2), "ejj.two-sided-complex-sigma2", 1,
                   HahnClass::empty_jacobi_jacobi};
        const C a2(0.0, al), b2(0.0, -al);
        p.dn2 = [=](int n) {
            auto qpc = [&](C z, int m) {
                C r = 1.0;
                for (int j = 0; j < m; ++j) r *= 1.0 - z * std::pow(q, j);
                return r;
            };
            const double r = a1 * b1 / (al * al);
            C v = (b1 - a1) * (1 - q) * std::pow(q, n * (n - 1) / 2.0) * std::pow(-a1 * b1, n) *
                  qpochhammer({q, r / q}, q, n) / qpochhammer({r / q, r}, q, 2 * n) * qpc(a1 / a2, n) *
                  qpc(b1 / a2, n) * qpc(a1 / b2, n) * qpc(b1 / b2, n);
            return v.real();
        };
        out.push_back(std::move(p));
    }
    {
        const double a1 = -0.5, a2 = -2.0, b2 = -1.0;
        RealPolynomial s1 = from_roots(1.0, {a1});
        Positive p{"half-line-negative-roots", spec_of(s1, matching_sigma2(s1, {a2, b2})),
                   "ejl.half-line-negative-roots", 4, HahnClass::empty_jacobi_laguerre};
        p.dn2 = [=](int n) {
            return (1 - q) * std::pow(q, -n * (2 * n - 1)) * std::pow(a2 * b2 / a1, 2 * n) *
                   qpochhammer({q, a1 / a2, a1 / b2}, q, n);
        };
        out.push_back(std::move(p));
    }
    {
        const double a1 = -0.5;
        RealPolynomial s1 = from_roots(1.0, {a1});
        RealPolynomial s2 = (q * s1(0.0)) * RealPolynomial{1.0, 0.0, 1.0};
        Positive p{"half-line-complex-sigma2", spec_of(s1, s2), "ejl.half-line-complex-sigma2", 4,
                   HahnClass::empty_jacobi_laguerre};
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<Positive> all_positive() {
    auto v = family_fixtures();
    for (auto& p : raw_fixtures()) v.push_back(std::move(p));
    return v;
}

/// One concrete equation inside each rejected configuration (q = 0.5).
inline std::vector<Negative> negative_fixtures() {
    std::vector<Negative> out;
    // ∅-J/J: q^2 Lambda = a1 b1 / (a2 b2) once sigma2(0) = q sigma1(0)
    auto ejj = [&](const char* id, double a1, double b1, double a2, double b2) {
        RealPolynomial s1 = from_roots(1.0, {a1, b1});
        out.push_back({id, spec_of(s1, matching_sigma2(s1, {a2, b2}))});
    };
    ejj("ejj.none.large-L-a2-below-a1q-below-b2", 1.2, 2.0, 1.0, 3.0);
    ejj("ejj.none.large-L-a2-below-a1q-b2-outer", 1.2, 1.5, 1.0, 4.0);
    ejj("ejj.none.large-L-sigma2-inside", 0.5, 4.0, 2.0, 3.0);
    ejj("ejj.none.large-L-negative-sigma2", 0.5, 1.5, -2.0, -1.0);
    ejj("ejj.none.small-L-sigma2-inside", 0.2, 4.0, 2.0, 3.0);
    ejj("ejj.none.small-L-sigma1-inside", 1.2, 1.5, 1.0, 8.0);
    ejj("ejj.none.small-L-sigma2-outer", 0.5, 1.0, 3.0, 4.0);
    ejj("ejj.none.small-L-negative-sigma2", 0.5, 1.0, -4.0, -3.0);
    ejj("ejj.none.negative-L-b2-outer", 0.5, 1.0, -1.0, 3.0);
    ejj("ejj.none.negative-L-b2-inner", 0.5, 1.0, -1.0, 0.4);
    // 0-J/J: sigma1 = x (x - a1), sigma2 = k2 x (x - a2), q^2 Lambda = k2 / q
    auto zjj = [&](const char* id, double a1, double a2, double q2L) {
        out.push_back({id, spec_of(from_roots(1.0, {0.0, a1}), from_roots(q0 * q2L, {0.0, a2}))});
    };
    zjj("zjj.none.small-L-a2-below-a1q", 1.0, 0.5, 0.2);
    zjj("zjj.none.large-L-a2-above-a1q", 1.0, 3.0, 0.5);
    zjj("zjj.none.large-L-negative-a1", -1.0, 1.0, 0.5);
    zjj("zjj.none.small-L-negative-a2", 1.0, -1.0, 0.2);
    // ∅-J/L: Lambda = k2 / ((q - 1) k1). Part of each range mirrors a positive
    // case under x -> -x (a2 < a1 resp. a2 > a1); the samples avoid it.
    auto ejl = [&](const char* id, double k1, double a1, double a2, double b2) {
        RealPolynomial s1 = from_roots(k1, {a1});
        out.push_back({id, spec_of(s1, matching_sigma2(s1, {a2, b2}))});
    };
    ejl("ejl.none.positive-L-straddle", -1.0, -1.0, -0.5, 0.5);
    ejl("ejl.none.positive-L-a1q-inside", 1.0, 1.0, 0.5, 3.0);
    // ∅-L/J: Lambda = -k2 / (q k1)
    auto elj = [&](const char* id, double a1, double b1, double a2) {
        RealPolynomial s1 = from_roots(1.0, {a1, b1});
        out.push_back({id, spec_of(s1, matching_sigma2(s1, {a2}))});
    };
    elj("elj.none.negative-L-a2-inside", -1.0, 1.0, 0.8);
    elj("elj.none.positive-L-a2-outer", 0.5, 1.0, 3.0);
    elj("elj.none.positive-L-a2-below", 1.0, 2.0, 0.5);
    elj("elj.none.negative-L-negative-a2", 1.0, 2.0, -1.0);
    // ∅-J/H: Lambda = k2 / ((q - 1) sigma1)
    out.push_back({"ejh.none.positive-L-straddle", spec_of(RealPolynomial{1.0}, matching_sigma2(RealPolynomial{1.0}, {-1.0, 1.0}))});
    // 0-B/J: q^2 Lambda = k2 / (q k1); k2 = q k1 would make tau constant
    out.push_back({"zbj.none.positive-L", spec_of(from_roots(1.0, {0.0, 1.0}), RealPolynomial{0.0, 0.0, 1.0})});
    return out;
}

} // namespace fixtures
