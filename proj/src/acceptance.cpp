#include "sfe/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "sfe/attack.hpp"
#include "sfe/bounds.hpp"
#include "sfe/entropy.hpp"
#include "sfe/functions.hpp"
#include "sfe/primitives.hpp"
#include "sfe/randomgen.hpp"

namespace sfe::acceptance {

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.tellp() > 0 ? "; " : "") << "FAILED: " << what;
        }
    }
    void note(const std::string& s) {
        detail << (detail.tellp() > 0 ? "; " : "") << s;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// 1. Uhlmann achievability on random pure-state pairs.
void uhlmann_achievability(std::uint64_t seed, Checker& c) {
    Rng rng(seed);
    double worst = 0;
    for (long d : {2L, 3L}) {
        RegisterLayout layout({{"A", d}, {"B", d}});
        for (int trial = 0; trial < 50; ++trial) {
            auto psi0 = random_pure(layout, rng);
            auto psi1 = random_pure(layout, rng);
            auto rot = uhlmann_rotation(psi0, psi1, {"B"});
            double fid = fidelity(marginal(psi0, {"A"}), marginal(psi1, {"A"}));
            worst = std::max(worst, std::abs(rot.achieved_overlap - fid));
        }
    }
    c.expect(worst <= 1e-9, "overlap vs marginal fidelity deviates by " + fmt(worst));
    c.note("100 pairs, worst deviation " + fmt(worst));
}

// 2. Gentle measurement disturbance bound.
void gentle_measurement(std::uint64_t seed, Checker& c) {
    Rng rng(seed + 1);
    for (double eps : {0.01, 0.04, 0.09}) {
        RegisterLayout xa({{"X", 2}, {"A", 2}});
        // Classical bit stored in A's computational or a rotated basis.
        for (int variant = 0; variant < 2; ++variant) {
            Matrix basis = variant == 0 ? Matrix(Matrix::Identity(2, 2))
                                        : random_unitary(2, rng);
            Matrix mat = Matrix::Zero(4, 4);
            for (int x = 0; x < 2; ++x) {
                Vector ket = basis.col(x);
                Matrix block = 0.5 * ket * ket.adjoint();
                mat.block(2 * x, 2 * x, 2, 2) = block;
            }
            // Detector with per-value success exactly 1 - eps.
            Matrix e0 = (1.0 - eps) * basis.col(0) * basis.col(0).adjoint() +
                        eps * basis.col(1) * basis.col(1).adjoint();
            Matrix e1 = eps * basis.col(0) * basis.col(0).adjoint() +
                        (1.0 - eps) * basis.col(1) * basis.col(1).adjoint();
            Measurement m;
            m.targets = {"A"};
            m.outcomes = {{"0", hermitian_sqrt(e0)}, {"1", hermitian_sqrt(e1)}};
            DensityOperator rho(xa, mat);
            auto res = gentle_post_state(rho, "X", m);
            double dist = trace_distance(res.post, rho);
            c.expect(dist <= std::sqrt(eps) + eps + 1e-12,
                     "D(post, pre) = " + fmt(dist) + " exceeds sqrt(eps)+eps at eps = " +
                         fmt(eps));
            c.expect(std::abs(res.pr_correct - (1.0 - eps)) <= 1e-9,
                     "pr_correct != 1-eps at eps = " + fmt(eps));
        }
    }
    c.note("eps in {0.01, 0.04, 0.09}, both bases");
}

// 3. Perfect-protocol extraction.
void perfect_extraction(std::uint64_t, Checker& c) {
    for (const char* name : {"ot(2,1)", "ip(3)", "eq_restricted(4,2)"}) {
        auto f = builtin_function(name);
        auto p = canonical_protocol(f, 0.0);
        auto res = extraction_attack(p, f.y_labels);
        c.expect(std::abs(res.joint_success - 1.0) <= 1e-9,
                 std::string(name) + ": joint_success = " + fmt(res.joint_success));
        c.expect(std::abs(res.extracted_x_accuracy - 1.0) <= 1e-9,
                 std::string(name) + ": extracted_x_accuracy = " + fmt(res.extracted_x_accuracy));
    }
    c.note("ot(2,1), ip(3), eq_restricted(4,2) over all of Y");
}

// 4. Quantitative extraction vs the closed-form lower bounds.
void prop1_quantitative(std::uint64_t, Checker& c) {
    auto f = ot_func(2, 1);
    for (double eta : {1e-4, 1e-3, 1e-2}) {
        auto p = canonical_protocol(f, eta);
        double eps_eff = std::max(check_correctness(p), check_bob_security(p));
        auto res = extraction_attack(p, f.y_labels);
        auto bounds = prop1_success(eps_eff, 2);
        c.expect(res.joint_success >= bounds.simple,
                 "joint " + fmt(res.joint_success) + " < simple bound " + fmt(bounds.simple) +
                     " at eta = " + fmt(eta));
        c.expect(res.joint_success >= bounds.exact_chain,
                 "joint " + fmt(res.joint_success) + " < chain bound " +
                     fmt(bounds.exact_chain) + " at eta = " + fmt(eta));
        c.note("eta " + fmt(eta) + ": joint " + fmt(res.joint_success) + " >= " +
               fmt(bounds.exact_chain));
    }
}

// 5. Entropy sums of oblivious keys.
void resource_entropy_sums(std::uint64_t, Checker& c) {
    for (int k = 1; k <= 3; ++k) {
        auto base = oblivious_key(2, k);
        for (int m = 1; m <= 3; ++m) {
            double sum = entropy_sum(power(base, m));
            c.expect(sum == double(m) * (k + 1),
                     "entropy_sum(otkey(2," + std::to_string(k) + ")^" + std::to_string(m) +
                         ") = " + fmt(sum));
        }
    }
    for (int n = 2; n <= 4; ++n) {
        double sum = entropy_sum(oblivious_key(n, 1));
        double expected = (n - 1) + log2_exact(n);
        c.expect(sum == expected,
                 "entropy_sum(otkey(" + std::to_string(n) + ",1)) = " + fmt(sum));
    }
    c.note("m(k+1) for k,m in {1,2,3}; (n-1)+log2(n) for n in {2,3,4}");
}

// 6. Concealment parameter values.
void concealment_values(std::uint64_t, Checker& c) {
    for (int n = 2; n <= 4; ++n)
        c.expect(std::abs(concealment_t(ip_func(n)) - (n - 1)) <= 1e-9,
                 "t(ip(" + std::to_string(n) + "))");
    for (auto [n, k] : {std::pair{2, 1}, {2, 2}, {3, 1}})
        c.expect(std::abs(concealment_t(ot_func(n, k)) - double(n - 1) * k) <= 1e-9,
                 "t(ot(" + std::to_string(n) + "," + std::to_string(k) + "))");
    double t_eq = concealment_t(eq_restricted_func(4, 2));
    double exact = 0.75 * std::log2(3.0);
    c.expect(std::abs(t_eq - exact) <= 1e-9, "t(eq_restricted(4,2)) = " + fmt(t_eq));
    c.note("t(eq_restricted(n,2)) = (3/4)log2(3) = " + fmt(exact) +
           "; the closed form (1-2^-k)k = 1.5 is strictly larger");
}

// 7. Bound calculators at eps = 0.
void bound_leading_constants(std::uint64_t, Checker& c) {
    c.expect(thm2_check(5.0, 3.25, 8, 4, 0.0).rhs == 3.25, "thm2 rhs != t at eps = 0");
    for (int n : {2, 4, 8}) {
        double raw = cor4_min_m(n, 64, 0.0);
        long m_required = static_cast<long>(std::ceil(raw - 1e-12));
        c.expect(m_required == n - 1,
                 "cor4 minimal m at (n=" + std::to_string(n) + ", k=64) is " +
                     std::to_string(m_required));
        c.note("cor4 n=" + std::to_string(n) + ": rhs " + fmt(raw) + " -> m >= " +
               std::to_string(m_required));
    }
    for (int n : {2, 3, 5, 8})
        c.expect(cor5_rhs(n, 0.0) == double(n - 1), "cor5 rhs != n-1");
    for (int k : {1, 5, 10})
        c.expect(cor6_rhs(k, 0.0) == double(k - 1), "cor6 rhs != k-1");
}

// 8. OT extension error scaling.
void cor3_scaling(std::uint64_t, Checker& c) {
    for (int n : {2, 3, 4}) {
        auto res = cor3_check(n, 1, 0.0);
        c.expect(!res.report.feasible,
                 "perfect extension not reported infeasible for n = " + std::to_string(n));
    }
    std::vector<double> scaled;
    for (int m : {1, 2, 4, 8}) scaled.push_back(m * cor3_check(2, m, 0.0).minimal_eps);
    double lo = *std::min_element(scaled.begin(), scaled.end());
    double hi = *std::max_element(scaled.begin(), scaled.end());
    c.expect(hi <= 4.0 * lo, "m * minimal_eps spans " + fmt(lo) + " .. " + fmt(hi));
    c.note("m*minimal_eps in [" + fmt(lo) + ", " + fmt(hi) + "], ratio " + fmt(hi / lo));
}

// 9. Theorem 1 threshold and the guessing-probability violation.
void thm1_threshold_check(std::uint64_t, Checker& c) {
    auto gap = [](double e) { return 2.0 * 4.0 * std::sqrt(e) + e - 0.25; };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) > 0 ? hi : lo) = mid;
    }
    double oracle = 0.5 * (lo + hi);
    double threshold = thm1_threshold(4, 2);
    c.expect(std::abs(threshold - oracle) <= 1e-10,
             "threshold " + fmt(threshold) + " vs bisection " + fmt(oracle));

    auto p = canonical_protocol(ot_func(2, 1), 0.0);
    for (const auto& y : p.f.y_labels) {
        auto g = alice_guessing(p, y);
        c.expect(std::abs(g.lower_bound - 1.0) <= 1e-9,
                 "alice_guessing(y=" + y + ") = " + fmt(g.lower_bound));
    }
    c.note("threshold " + fmt(threshold) + "; Bob guesses x with certainty");
}

// 10. Entropy-gap experiment on precomputed OT.
void thm2_gap(std::uint64_t, Checker& c) {
    auto resource = embed_pure(oblivious_key(2, 1));
    auto p = precomputed_ot_protocol(resource);
    auto exp = thm2_experiment(p, resource, "0");
    c.expect(exp.gap >= 1.0 - 1e-8 && exp.gap <= 2.0 + 1e-8,
             "gap " + fmt(exp.gap) + " outside [1, 2]");
    c.expect(exp.chain_ok, "gap exceeds entropy_sum");
    c.expect(exp.thm2_ok, "gap below thm2 rhs");
    c.note("H(X|B) = " + fmt(exp.h_x_given_b) + ", H(X|BB') = " + fmt(exp.h_x_given_bb) +
           ", gap = " + fmt(exp.gap) + " in [t, entropy_sum] = [" + fmt(exp.concealment) +
           ", " + fmt(exp.entropy_sum) + "]");
}

// 11. Entropy inequality battery.
void inequality_battery(std::uint64_t seed, Checker& c) {
    InequalityConfig cfg;
    cfg.trials = 100;
    cfg.seed = seed + 11;
    auto report = run_inequality_battery(cfg);
    for (const auto& check : report.checks)
        c.expect(check.violations == 0,
                 check.name + " violated (worst slack " + fmt(check.worst_slack) + ")");
    c.note("worst slack " + fmt(report.worst_slack()));
}

} // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::string& filter) {
    using Runner = std::function<void(std::uint64_t, Checker&)>;
    const std::vector<std::pair<std::string, Runner>> criteria = {
        {"uhlmann_achievability", uhlmann_achievability},
        {"gentle_measurement", gentle_measurement},
        {"perfect_extraction", perfect_extraction},
        {"prop1_quantitative", prop1_quantitative},
        {"resource_entropy_sums", resource_entropy_sums},
        {"concealment_values", concealment_values},
        {"bound_leading_constants", bound_leading_constants},
        {"cor3_scaling", cor3_scaling},
        {"thm1_threshold", thm1_threshold_check},
        {"thm2_entropy_gap", thm2_gap},
        {"inequality_battery", inequality_battery},
    };

    std::vector<CriterionResult> results;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& [name, runner] = criteria[i];
        if (!filter.empty() && name.find(filter) == std::string::npos) continue;
        CriterionResult r;
        r.number = static_cast<int>(i + 1);
        r.name = name;
        auto start = std::chrono::steady_clock::now();
        Checker checker;
        try {
            runner(seed, checker);
        } catch (const std::exception& e) {
            checker.ok = false;
            checker.detail << "exception: " << e.what();
        }
        r.passed = checker.ok;
        r.detail = checker.detail.str();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace sfe::acceptance
