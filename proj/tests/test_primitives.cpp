#include <doctest.h>

#include <cmath>

#include "sfe/primitives.hpp"
#include "sfe/randomgen.hpp"

using namespace sfe;

TEST_SUITE("primitives") {

TEST_CASE("oblivious key distribution") {
    auto p = oblivious_key(2, 1);
    CHECK(p.u_size() == 4);
    CHECK(p.v_size() == 4);
    CHECK(p.support() == 8);
    for (const auto& e : p.entries) CHECK(e.p == doctest::Approx(0.125));
    CHECK(entropy_sum(p) == 2.0);
    CHECK_THROWS_AS(oblivious_key(2, 20), Error);
}

TEST_CASE("oblivious key entropies match the dense path") {
    auto p = oblivious_key(4, 2);
    CHECK(entropy_sum(p) == 8.0);  // (n-1)k + log2 n = 6 + 2
    // Dense cross-check through the entropy module.
    CHECK(cond_max_entropy_u_given_v(p) == cond_max_entropy(p.bipartite()));
    CHECK(cond_max_entropy_v_given_u(p) == cond_max_entropy(p.bipartite().swapped()));
}

TEST_CASE("entropy sum closed form for oblivious keys") {
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k <= 3; ++k)
            CHECK(entropy_sum(oblivious_key(n, k)) == (n - 1.0) * k + log2_exact(n));
}

TEST_CASE("rabin key") {
    auto p = rabin_key(0.5, 1);
    CHECK(p.u_size() == 2);
    CHECK(p.v_size() == 3);
    CHECK(p.support() == 4);
    for (const auto& e : p.entries) CHECK(e.p == doctest::Approx(0.25));
    CHECK(p.v_labels.back() == kErasureLabel);
    CHECK(cond_max_entropy_u_given_v(p) == 1.0);  // conditioning on the erasure
    CHECK(cond_max_entropy_v_given_u(p) == 1.0);
    CHECK(cond_max_entropy_u_given_v(rabin_key(0.3, 3)) == 3.0);
}

TEST_CASE("minimum sufficient statistics") {
    // Duplicate u-rows merge.
    JointDistribution dup;
    dup.u_labels = {"a", "b", "c"};
    dup.v_labels = {"0", "1"};
    dup.entries = {{0, 0, 0.2}, {0, 1, 0.2}, {1, 0, 0.1}, {1, 1, 0.1}, {2, 0, 0.4}};
    auto reduced = min_sufficient_stat(dup);
    CHECK(reduced.u_size() == 2);  // a and b have identical conditionals

    // An oblivious key is already minimal.
    auto ok = min_sufficient_stat(oblivious_key(2, 1));
    CHECK(ok.u_size() == 4);
    CHECK(ok.v_size() == 4);

    // Independent product collapses to a point.
    JointDistribution indep;
    indep.u_labels = {"a", "b"};
    indep.v_labels = {"0", "1", "2"};
    for (long u = 0; u < 2; ++u)
        for (long v = 0; v < 3; ++v) indep.entries.push_back({u, v, 0.5 / 3});
    auto collapsed = min_sufficient_stat(indep);
    CHECK(collapsed.u_size() == 1);
    CHECK(collapsed.v_size() == 1);
}

TEST_CASE("minimum sufficient statistics is idempotent") {
    Rng rng(211);
    for (int trial = 0; trial < 20; ++trial) {
        JointDistribution p;
        p.u_labels = {"a", "b", "c", "d"};
        p.v_labels = {"0", "1", "2"};
        auto probs = random_distribution(12, rng);
        for (int i = 0; i < 12; ++i)
            if (probs[i] > 0.05) p.entries.push_back({i / 3, i % 3, probs[i]});
        double total = 0;
        for (auto& e : p.entries) total += e.p;
        for (auto& e : p.entries) e.p /= total;
        auto once = min_sufficient_stat(p);
        auto twice = min_sufficient_stat(once);
        CHECK(once.u_size() == twice.u_size());
        CHECK(once.v_size() == twice.v_size());
        CHECK(entropy_sum(once) <= entropy_sum(p) + 1e-12);
    }
}

TEST_CASE("purified embedding") {
    // Point mass gives a basis state.
    JointDistribution point;
    point.u_labels = {"u"};
    point.v_labels = {"v"};
    point.entries = {{0, 0, 1.0}};
    auto res = embed_pure(point);
    CHECK(res.state.amp[0] == Complexd(1.0, 0.0));

    // Oblivious key: eight equal terms.
    auto ok = embed_pure(oblivious_key(2, 1));
    long nonzero = 0;
    for (long i = 0; i < ok.state.amp.size(); ++i)
        if (std::abs(ok.state.amp[i]) > 0) {
            ++nonzero;
            CHECK(std::abs(ok.state.amp[i]) == doctest::Approx(std::sqrt(0.125)));
        }
    CHECK(nonzero == 8);

    // Tracing the environment recovers the classical joint distribution.
    auto rk = rabin_key(0.5, 1);
    auto emb = embed_pure(rk);
    auto uv = marginal(emb.state, {"U", "V"});
    auto table = rk.dense();
    for (long u = 0; u < rk.u_size(); ++u)
        for (long v = 0; v < rk.v_size(); ++v) {
            CHECK(uv.mat(u * rk.v_size() + v, u * rk.v_size() + v).real() ==
                  doctest::Approx(table(u, v)).epsilon(1e-12));
        }
    double offdiag = (uv.mat - Matrix(uv.mat.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    CHECK(offdiag <= 1e-12);

    CHECK_THROWS_AS(embed_pure(oblivious_key(2, 3)), Error);  // dimension guard
}

TEST_CASE("independent powers") {
    auto base = oblivious_key(2, 1);
    auto same = power(base, 1);
    CHECK(same.support() == base.support());

    auto squared = power(base, 2);
    CHECK(squared.support() == 64);
    for (const auto& e : squared.entries) CHECK(e.p == doctest::Approx(1.0 / 64));
    CHECK(squared.u_labels[0] == "(00,00)");

    for (int m = 1; m <= 3; ++m)
        CHECK(entropy_sum(power(base, m)) == m * entropy_sum(base));

    // Additivity across different resources.
    auto mixed = product(base, rabin_key(0.5, 1));
    CHECK(entropy_sum(mixed) == entropy_sum(base) + entropy_sum(rabin_key(0.5, 1)));
}

TEST_CASE("power nests through rendered tuple labels") {
    auto base = rabin_key(0.5, 1);
    auto nested = power(power(base, 2), 2);
    CHECK(nested.u_size() == 16);
    CHECK(nested.u_labels[0] == "((0,0),(0,0))");
    nested.validate();
}

TEST_CASE("joint distribution validation") {
    JointDistribution bad;
    bad.u_labels = {"a"};
    bad.v_labels = {"0"};
    bad.entries = {{0, 0, 0.5}};
    CHECK_THROWS_AS(bad.validate(), Error);
}

} // TEST_SUITE
