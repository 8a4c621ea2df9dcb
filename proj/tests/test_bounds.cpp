#include <doctest.h>

#include <cmath>

#include "sfe/bounds.hpp"

using namespace sfe;

TEST_SUITE("bounds") {

TEST_CASE("prop1 success probabilities") {
    auto perfect = prop1_success(0.0, 2);
    CHECK(perfect.simple == 1.0);
    CHECK(perfect.exact_chain == 1.0);

    auto small = prop1_success(1e-4, 2);
    CHECK(small.simple == doctest::Approx(0.92).epsilon(1e-12));
    CHECK(small.exact_chain == doctest::Approx(0.9397).epsilon(1e-12));

    // 1 - 2*16*(1/8) = -3, clamped to zero.
    CHECK(prop1_success(1.0 / 64, 4).simple == 0.0);

    // The chain value dominates the simple bound in the paper's regime.
    for (int m = 2; m <= 6; ++m)
        for (double eps : {0.0, 1e-6, 1e-4, 1e-3, 1.0 / 64}) {
            auto r = prop1_success(eps, m);
            CHECK(r.exact_chain >= r.simple - 1e-12);
        }

    // simple == 1 only at eps == 0 (checked down to the smallest eps whose
    // penalty is representable next to 1).
    CHECK(prop1_success(1e-30, 3).simple < 1.0);
    CHECK(prop1_success(0.0, 3).simple == 1.0);
}

TEST_CASE("thm1 threshold") {
    double threshold = thm1_threshold(4, 2);
    CHECK(threshold == doctest::Approx(9.690068058013743e-4).epsilon(1e-10));

    // Bisection oracle for 2 y^2 sqrt(e) + e = 1/x.
    auto gap = [](double e) { return 8.0 * std::sqrt(e) + e - 0.25; };
    double lo = 0, hi = 1;
    for (int i = 0; i < 200; ++i) (gap(0.5 * (lo + hi)) > 0 ? hi : lo) = 0.5 * (lo + hi);
    CHECK(std::abs(threshold - 0.5 * (lo + hi)) <= 1e-10);

    CHECK(thm1_threshold(4, 3) < threshold);  // decreasing in |Y|
    CHECK(thm1_threshold(8, 2) < threshold);  // decreasing in |X|
    CHECK_THROWS_AS(thm1_threshold(1, 2), Error);
}

TEST_CASE("thm2 resource bound") {
    auto at_zero = thm2_check(2.0, 1.0, 4, 2, 0.0);
    CHECK(at_zero.rhs == 1.0);
    CHECK(at_zero.lhs == 2.0);
    CHECK(at_zero.feasible);
    CHECK(at_zero.slack == doctest::Approx(1.0));

    auto impossible = thm2_check(0.0, 1.0, 4, 2, 0.0);
    CHECK(!impossible.feasible);

    // The proof variant penalizes more for eps > 0.
    double rhs_thm = thm2_check(2.0, 1.0, 4, 2, 1e-4, EpsPrimeVariant::Theorem).rhs;
    double rhs_proof = thm2_check(2.0, 1.0, 4, 2, 1e-4, EpsPrimeVariant::Proof).rhs;
    CHECK(rhs_proof < rhs_thm);

    // Monotone nonincreasing rhs while eps' stays below one.
    double prev = thm2_check(2.0, 1.0, 4, 2, 0.0).rhs;
    for (double eps = 1e-6; 2.0 * 4.0 * std::sqrt(eps) <= 1.0; eps *= 2) {
        double cur = thm2_check(2.0, 1.0, 4, 2, eps).rhs;
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }

    // Clamping is flagged.
    auto clamped = thm2_check(2.0, 1.0, 4, 2, 0.9);
    CHECK(clamped.notes.find("clamped") != std::string::npos);
}

TEST_CASE("cor3 extension bound") {
    auto res = cor3_check(2, 1, 0.0);
    CHECK(res.report.lhs == 0.0);
    CHECK(res.report.rhs == doctest::Approx(2.0));
    CHECK(!res.report.feasible);

    CHECK(res.minimal_eps > 0.0);
    // First crossing: feasible at minimal_eps, infeasible slightly below.
    CHECK(cor3_check(2, 1, res.minimal_eps * 1.0001).report.feasible);
    CHECK(!cor3_check(2, 1, res.minimal_eps * 0.9).report.feasible);

    // Theta(1/m) scaling of the minimal error.
    std::vector<double> scaled;
    for (int m : {1, 2, 4, 8}) scaled.push_back(m * cor3_check(2, m, 0.0).minimal_eps);
    for (double v : scaled) {
        CHECK(v <= 2.0 * scaled[0] + 1e-12);
        CHECK(v >= 0.5 * scaled[0] - 1e-12);
    }

    CHECK(res.chain_closed_form == doctest::Approx(1.0 / (3.0 * 108.0 * 108.0)));
}

TEST_CASE("cor4 choice-extension bound") {
    CHECK(cor4_min_m(4, 10, 0.0) == doctest::Approx(30.0 / 11.0).epsilon(1e-12));
    CHECK(cor4_min_m(2, 1, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    // Large k approaches n-1 from below.
    for (int n : {2, 4, 8}) {
        double raw = cor4_min_m(n, 64, 0.0);
        CHECK(raw < n - 1.0);
        CHECK(raw > n - 1.0 - double(n - 1) / 65.0 - 1e-12);
        CHECK(std::ceil(raw) == n - 1.0);
    }
}

TEST_CASE("cor5 inner-product bound") {
    CHECK(cor5_rhs(2, 0.0) == 1.0);
    CHECK(cor5_rhs(8, 0.0) == 7.0);
    CHECK(std::ceil(cor5_rhs(8, 0.0) / 2.0) == 4.0);  // m >= 4
    for (double eps : {0.0, 1e-6, 1e-4, 1e-2})
        CHECK(cor5_rhs(5, eps) <= 4.0 + 1e-12);

    auto report = cor5_check(8, 0.0, 4);
    CHECK(report.feasible);
    CHECK(!cor5_check(8, 0.0, 3).feasible);
}

TEST_CASE("cor6 equality bound") {
    CHECK(cor6_rhs(1, 0.0) == 0.0);
    CHECK(cor6_rhs(10, 0.0) == 9.0);
    CHECK(std::ceil(cor6_rhs(10, 0.0) / 2.0) == 5.0);  // m >= 5

    // Beyond eps = 2^{-2(2k+1)} the penalty term saturates; flagged, and the
    // rhs stops being meaningful.
    int k = 3;
    double eps_sat = std::pow(2.0, -2.0 * (2 * k + 1));
    auto report = cor6_check(k, 2.0 * eps_sat, 1);
    CHECK(report.notes.find("clamped") != std::string::npos);
}

TEST_CASE("bound reports keep the slack invariant") {
    for (auto& r : {thm2_check(2.0, 1.0, 4, 2, 1e-3), cor5_check(4, 1e-4, 2),
                    cor6_check(4, 1e-5, 3)}) {
        CHECK(r.slack == r.lhs - r.rhs);
        CHECK(r.feasible == (r.slack >= -1e-9));
    }
}

} // TEST_SUITE
