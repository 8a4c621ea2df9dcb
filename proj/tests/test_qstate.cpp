#include <doctest.h>

#include <cmath>

#include "sfe/qstate.hpp"
#include "sfe/randomgen.hpp"

using namespace sfe;

namespace {

const double kInvSqrt2 = std::sqrt(0.5);

PureState basis_state(const RegisterLayout& layout, long index) {
    Vector amp = Vector::Zero(layout.total_dim());
    amp[index] = 1.0;
    return PureState(layout, amp);
}

PureState plus_state(const std::string& label) {
    RegisterLayout layout({{label, 2}});
    Vector amp(2);
    amp << kInvSqrt2, kInvSqrt2;
    return PureState(layout, amp);
}

DensityOperator qubit_density(const std::string& label, const Matrix& m) {
    return DensityOperator(RegisterLayout({{label, 2}}), m);
}

Matrix ket_bra(const Vector& v) { return v * v.adjoint(); }

} // namespace

TEST_SUITE("qstate") {

TEST_CASE("tensor of basis states") {
    RegisterLayout a({{"A", 2}}), b({{"B", 2}});
    auto zero = basis_state(a, 0);
    auto one = basis_state(b, 1);
    auto joint = tensor(zero, one);
    CHECK(joint.layout.total_dim() == 4);
    CHECK(joint.amp[1] == Complexd(1.0, 0.0));
    CHECK(joint.amp[0] == Complexd(0.0, 0.0));
}

TEST_CASE("tensor with a trivial register is the identity") {
    Rng rng(7);
    auto rho = random_density(RegisterLayout({{"A", 3}}), rng);
    DensityOperator trivial(RegisterLayout({{"T", 1}}), Matrix::Identity(1, 1));
    auto out = tensor(rho, trivial);
    CHECK((out.mat - rho.mat).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("tensor of plus states is uniform") {
    auto joint = tensor(plus_state("A"), plus_state("B"));
    for (int i = 0; i < 4; ++i) CHECK(joint.amp[i].real() == doctest::Approx(0.5));
}

TEST_CASE("tensor rejects label collisions") {
    CHECK_THROWS_AS(tensor(plus_state("A"), plus_state("A")), Error);
}

TEST_CASE("partial trace of a product state") {
    RegisterLayout ab({{"A", 2}, {"B", 2}});
    auto rho = density_of(basis_state(ab, 1));  // |01>
    auto a = partial_trace(rho, {"A"});
    CHECK(a.mat(0, 0).real() == doctest::Approx(1.0));
    CHECK(a.mat(1, 1).real() == doctest::Approx(0.0));
}

TEST_CASE("partial trace of a maximally entangled state") {
    RegisterLayout ab({{"A", 2}, {"B", 2}});
    Vector amp = Vector::Zero(4);
    amp[0] = amp[3] = kInvSqrt2;
    auto b = partial_trace(density_of(PureState(ab, amp)), {"B"});
    CHECK((b.mat - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("partial trace rejects unknown labels") {
    RegisterLayout ab({{"A", 2}, {"B", 2}});
    auto rho = density_of(basis_state(ab, 0));
    CHECK_THROWS_AS(partial_trace(rho, {"C"}), Error);
}

TEST_CASE("purify round trip on random states") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto rho = random_density(RegisterLayout({{"A", 3}}), rng);
        auto psi = purify(rho, "anc");
        auto back = partial_trace(density_of(psi), {"A"});
        CHECK((back.mat - rho.mat).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("purification of a pure state is a product") {
    auto rho = qubit_density("A", (Matrix(2, 2) << 1, 0, 0, 0).finished());
    auto psi = purify(rho, "anc");
    CHECK(std::abs(psi.amp[0]) == doctest::Approx(1.0));
}

TEST_CASE("purification of the maximally mixed qubit is maximally entangled") {
    auto psi = purify(qubit_density("A", 0.5 * Matrix::Identity(2, 2)), "anc");
    auto anc = marginal(psi, {"anc"});
    CHECK((anc.mat - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("purification of a classical state is canonical") {
    auto rho = qubit_density("X", (Matrix(2, 2) << 0.25, 0, 0, 0.75).finished());
    auto psi = purify(rho, "Xp");
    CHECK(psi.amp[0].real() == doctest::Approx(0.5).epsilon(1e-12));         // sqrt(0.25)|00>
    CHECK(psi.amp[3].real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(std::abs(psi.amp[1]) <= 1e-12);
    CHECK(std::abs(psi.amp[2]) <= 1e-12);
}

TEST_CASE("purify rejects non-positive input") {
    Matrix bad(2, 2);
    bad << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(purify(qubit_density("A", bad), "anc"), Error);
}

TEST_CASE("trace distance basics") {
    auto zero = qubit_density("A", (Matrix(2, 2) << 1, 0, 0, 0).finished());
    auto one = qubit_density("A", (Matrix(2, 2) << 0, 0, 0, 1).finished());
    Vector plus(2);
    plus << kInvSqrt2, kInvSqrt2;
    auto plus_rho = qubit_density("A", ket_bra(plus));

    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
    CHECK(trace_distance(zero, plus_rho) == doctest::Approx(kInvSqrt2).epsilon(1e-9));
    CHECK_THROWS_AS(trace_distance(zero, qubit_density("B", ket_bra(plus))), Error);
}

TEST_CASE("fidelity basics") {
    auto zero = qubit_density("A", (Matrix(2, 2) << 1, 0, 0, 0).finished());
    auto one = qubit_density("A", (Matrix(2, 2) << 0, 0, 0, 1).finished());
    Vector plus(2);
    plus << kInvSqrt2, kInvSqrt2;
    CHECK(fidelity(zero, zero) == doctest::Approx(1.0));
    CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fidelity(zero, qubit_density("A", ket_bra(plus))) ==
          doctest::Approx(kInvSqrt2).epsilon(1e-9));
}

TEST_CASE("trace distance is a metric on random triples") {
    Rng rng(23);
    RegisterLayout layout({{"A", 3}});
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_density(layout, rng);
        auto b = random_density(layout, rng);
        auto c = random_density(layout, rng);
        double dab = trace_distance(a, b);
        CHECK(dab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
        CHECK(dab >= -1e-9);
        CHECK(dab <= trace_distance(a, c) + trace_distance(c, b) + 1e-9);
    }
}

TEST_CASE("channels cannot increase trace distance") {
    Rng rng(29);
    RegisterLayout layout({{"A", 3}});
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_density(layout, rng);
        auto b = random_density(layout, rng);
        // Projective measurement channel in a random basis, outcome kept in place.
        Matrix u = random_unitary(3, rng);
        Matrix ea = Matrix::Zero(3, 3), eb = Matrix::Zero(3, 3);
        for (int k = 0; k < 3; ++k) {
            Matrix p = u.col(k) * u.col(k).adjoint();
            ea += p * a.mat * p;
            eb += p * b.mat * p;
        }
        double before = trace_distance(a, b);
        double after = trace_distance(DensityOperator(layout, ea), DensityOperator(layout, eb));
        CHECK(after <= before + 1e-9);
    }
}

TEST_CASE("trace distance is unitarily invariant") {
    Rng rng(31);
    RegisterLayout layout({{"A", 4}});
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_density(layout, rng);
        auto b = random_density(layout, rng);
        Matrix u = random_unitary(4, rng);
        auto ua = DensityOperator(layout, u * a.mat * u.adjoint());
        auto ub = DensityOperator(layout, u * b.mat * u.adjoint());
        CHECK(trace_distance(ua, ub) ==
              doctest::Approx(trace_distance(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("uhlmann rotation achieves the marginal fidelity") {
    Rng rng(37);
    int instances = 0;
    for (long d : {2L, 3L, 4L}) {
        RegisterLayout layout({{"A", d}, {"B", d}});
        for (int trial = 0; trial < 34; ++trial, ++instances) {
            auto psi0 = random_pure(layout, rng);
            auto psi1 = random_pure(layout, rng);
            auto rot = uhlmann_rotation(psi0, psi1, {"B"});
            double fid = fidelity(marginal(psi0, {"A"}), marginal(psi1, {"A"}));
            CHECK(std::abs(rot.achieved_overlap - fid) <= 1e-9);
            // The rotated state realizes the claimed overlap.
            auto rotated = apply_on(psi0, rot.unitary, {"B"});
            CHECK(std::abs((psi1.amp.adjoint() * rotated.amp)(0)) ==
                  doctest::Approx(rot.achieved_overlap).epsilon(1e-9));
        }
    }
    CHECK(instances >= 100);
}

TEST_CASE("uhlmann rotation on identical states reaches overlap one") {
    Rng rng(41);
    RegisterLayout layout({{"A", 2}, {"B", 3}});
    auto psi = random_pure(layout, rng);
    auto rot = uhlmann_rotation(psi, psi, {"B"});
    CHECK(rot.achieved_overlap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uhlmann rotation undoes a local unitary exactly") {
    Rng rng(43);
    RegisterLayout layout({{"A", 3}, {"B", 3}});
    auto psi0 = random_pure(layout, rng);
    Matrix v = random_unitary(3, rng);
    auto psi1 = apply_on(psi0, v, {"B"});
    auto rot = uhlmann_rotation(psi0, psi1, {"B"});
    CHECK(rot.achieved_overlap == doctest::Approx(1.0).epsilon(1e-9));
    auto rotated = apply_on(psi0, rot.unitary, {"B"});
    CHECK(std::abs((psi1.amp.adjoint() * rotated.amp)(0)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uhlmann rotation rejects degenerate cuts") {
    Rng rng(47);
    RegisterLayout layout({{"A", 2}, {"B", 2}});
    auto psi = random_pure(layout, rng);
    CHECK_THROWS_AS(uhlmann_rotation(psi, psi, {}), Error);
    CHECK_THROWS_AS(uhlmann_rotation(psi, psi, {"A", "B"}), Error);
}

TEST_CASE("conditioned uhlmann with one transcript matches the plain rotation") {
    Rng rng(53);
    RegisterLayout layout({{"A", 2}, {"B", 2}});
    auto psi0 = random_pure(layout, rng);
    auto psi1 = random_pure(layout, rng);
    auto plain = uhlmann_rotation(psi0, psi1, {"B"});
    auto cond = conditioned_uhlmann({{"t", 1.0, psi0}}, {{"t", 1.0, psi1}}, {"B"});
    CHECK(cond.achieved_overlap == doctest::Approx(plain.achieved_overlap).epsilon(1e-12));
    CHECK((cond.blocks.at("t") - plain.unitary).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("conditioned uhlmann on identical branch states is exact per block") {
    Rng rng(59);
    RegisterLayout layout({{"A", 2}, {"B", 2}});
    auto a = random_pure(layout, rng);
    auto b = random_pure(layout, rng);
    std::vector<CqBranch> fam = {{"t0", 0.5, a}, {"t1", 0.5, b}};
    auto cond = conditioned_uhlmann(fam, fam, {"B"});
    CHECK(cond.achieved_overlap == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("conditioned uhlmann satisfies the cq closeness bound") {
    Rng rng(61);
    RegisterLayout layout({{"A", 2}, {"B", 2}});
    for (int trial = 0; trial < 25; ++trial) {
        auto w0 = random_distribution(2, rng);
        auto w1 = random_distribution(2, rng);
        std::vector<CqBranch> fam0 = {{"t0", w0[0], random_pure(layout, rng)},
                                      {"t1", w0[1], random_pure(layout, rng)}};
        std::vector<CqBranch> fam1 = {{"t0", w1[0], random_pure(layout, rng)},
                                      {"t1", w1[1], random_pure(layout, rng)}};
        double eps = cq_trace_distance(cq_marginals(fam0, {"A"}), cq_marginals(fam1, {"A"}));
        auto rot = conditioned_uhlmann(fam0, fam1, {"B"});
        auto rotated = apply_conditioned(rot, fam0);
        double dist = cq_trace_distance(cq_marginals(rotated, {"A", "B"}),
                                        cq_marginals(fam1, {"A", "B"}));
        CHECK(dist <= std::sqrt(2.0 * eps) + 1e-9);
    }
}

TEST_CASE("conditioned uhlmann rejects mismatched transcript alphabets") {
    Rng rng(67);
    RegisterLayout layout({{"A", 2}, {"B", 2}});
    std::vector<CqBranch> fam0 = {{"t0", 1.0, random_pure(layout, rng)}};
    std::vector<CqBranch> fam1 = {{"t1", 1.0, random_pure(layout, rng)}};
    CHECK_THROWS_AS(conditioned_uhlmann(fam0, fam1, {"B"}), Error);
}

TEST_CASE("computational measurement of the plus state") {
    auto psi = plus_state("A");
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {{"0", (Matrix(2, 2) << 1, 0, 0, 0).finished()},
                  {"1", (Matrix(2, 2) << 0, 0, 0, 1).finished()}};
    auto branches = measure(psi, m);
    REQUIRE(branches.size() == 2);
    CHECK(branches[0].prob == doctest::Approx(0.5));
    CHECK(branches[1].prob == doctest::Approx(0.5));
}

TEST_CASE("identity measurement leaves the state unchanged") {
    Rng rng(71);
    RegisterLayout layout({{"A", 3}});
    auto psi = random_pure(layout, rng);
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {{"only", Matrix::Identity(3, 3)}};
    auto branches = measure(psi, m);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].prob == doctest::Approx(1.0));
    CHECK((branches[0].state.amp - psi.amp).norm() <= 1e-12);
}

TEST_CASE("non-projective two-outcome measurement on |0>") {
    RegisterLayout layout({{"A", 2}});
    auto psi = basis_state(layout, 0);
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {
        {"0", (Matrix(2, 2) << std::sqrt(0.7), 0, 0, std::sqrt(0.2)).finished()},
        {"1", (Matrix(2, 2) << std::sqrt(0.3), 0, 0, std::sqrt(0.8)).finished()}};
    auto branches = measure(psi, m);
    REQUIRE(branches.size() == 2);
    CHECK(branches[0].prob == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(branches[1].prob == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("incomplete measurements are rejected") {
    auto psi = plus_state("A");
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {{"0", (Matrix(2, 2) << 1, 0, 0, 0).finished()}};
    CHECK_THROWS_AS(measure(psi, m), Error);
}

TEST_CASE("gentle measurement with a perfect detector is lossless") {
    RegisterLayout xa({{"X", 2}, {"A", 2}});
    Matrix mat = Matrix::Zero(4, 4);
    mat(0, 0) = 0.3;   // x=0, a=0
    mat(3, 3) = 0.7;   // x=1, a=1
    DensityOperator rho(xa, mat);
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {{"0", (Matrix(2, 2) << 1, 0, 0, 0).finished()},
                  {"1", (Matrix(2, 2) << 0, 0, 0, 1).finished()}};
    auto res = gentle_post_state(rho, "X", m);
    CHECK(res.pr_correct == doctest::Approx(1.0));
    CHECK(trace_distance(res.post, rho) <= 1e-12);
}

TEST_CASE("gentle measurement with a blind detector guesses at chance") {
    RegisterLayout xa({{"X", 2}, {"A", 2}});
    Matrix mat = Matrix::Zero(4, 4);
    mat(0, 0) = 0.5;
    mat(3, 3) = 0.5;
    DensityOperator rho(xa, mat);
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {{"0", kInvSqrt2 * Matrix::Identity(2, 2)},
                  {"1", kInvSqrt2 * Matrix::Identity(2, 2)}};
    auto res = gentle_post_state(rho, "X", m);
    CHECK(res.pr_correct == doctest::Approx(0.5));
}

TEST_CASE("gentle measurement damage respects the closeness bound") {
    for (double eps : {0.01, 0.04}) {
        RegisterLayout xa({{"X", 2}, {"A", 2}});
        Matrix mat = Matrix::Zero(4, 4);
        mat(0, 0) = 0.5;
        mat(3, 3) = 0.5;
        DensityOperator rho(xa, mat);
        Matrix e0 = (Matrix(2, 2) << 1 - eps, 0, 0, eps).finished();
        Matrix e1 = (Matrix(2, 2) << eps, 0, 0, 1 - eps).finished();
        Measurement m;
        m.targets = {"A"};
        m.outcomes = {{"0", hermitian_sqrt(e0)}, {"1", hermitian_sqrt(e1)}};
        auto res = gentle_post_state(rho, "X", m);
        CHECK(res.pr_correct == doctest::Approx(1.0 - eps).epsilon(1e-12));
        CHECK(trace_distance(res.post, rho) <= std::sqrt(eps) + eps + 1e-12);
    }
}

TEST_CASE("gentle measurement rejects an alphabet mismatch") {
    RegisterLayout xa({{"X", 3}, {"A", 2}});
    Matrix mat = Matrix::Zero(6, 6);
    mat(0, 0) = 1.0;
    DensityOperator rho(xa, mat);
    Measurement m;
    m.targets = {"A"};
    m.outcomes = {{"0", (Matrix(2, 2) << 1, 0, 0, 0).finished()},
                  {"1", (Matrix(2, 2) << 0, 0, 0, 1).finished()}};
    CHECK_THROWS_AS(gentle_post_state(rho, "X", m), Error);
}

} // TEST_SUITE
