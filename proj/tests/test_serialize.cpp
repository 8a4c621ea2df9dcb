#include <doctest.h>

#include "sfe/randomgen.hpp"
#include "sfe/serialize.hpp"

using namespace sfe;

TEST_SUITE("serialize") {

TEST_CASE("function table round trip") {
    auto f = ot_func(2, 1);
    auto j = to_json(f);
    auto back = function_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.x_labels == f.x_labels);
    CHECK(back.table == f.table);
}

TEST_CASE("joint distribution round trip keeps the erasure label") {
    auto p = rabin_key(0.5, 1);
    auto j = to_json(p);
    auto back = joint_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.v_labels.back() == kErasureLabel);
    CHECK(back.support() == p.support());
}

TEST_CASE("pure state and density operator round trips") {
    Rng rng(307);
    auto psi = random_pure(RegisterLayout({{"A", 2}, {"B", 3}}), rng);
    auto j = to_json(psi);
    auto back = pure_state_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK((back.amp - psi.amp).norm() == 0.0);

    auto rho = random_density(RegisterLayout({{"A", 3}}), rng);
    auto jr = to_json(rho);
    auto rho_back = density_from_json(jr);
    CHECK(to_json(rho_back).dump() == jr.dump());
}

TEST_CASE("protocol instance round trip") {
    auto p = canonical_protocol(ot_func(2, 1), 0.3);
    auto j = to_json(p);
    auto back = protocol_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.bob_registers == p.bob_registers);
    CHECK(check_correctness(back) == doctest::Approx(0.3).epsilon(1e-12));

    auto resource = embed_pure(oblivious_key(2, 1));
    auto beaver = precomputed_ot_protocol(resource);
    auto jb = to_json(beaver);
    auto beaver_back = protocol_from_json(jb);
    CHECK(to_json(beaver_back).dump() == jb.dump());
    CHECK(check_correctness(beaver_back) == doctest::Approx(0.0));
}

TEST_CASE("protocol with builtin function name") {
    auto p = canonical_protocol(ot_func(2, 1), 0.0);
    auto j = to_json(p);
    j["function"] = "ot(2,1)";
    auto back = protocol_from_json(j);
    CHECK(back.f.x_size() == 4);
}

TEST_CASE("malformed protocol files are rejected") {
    auto p = canonical_protocol(ot_func(2, 1), 0.0);
    auto j = to_json(p);
    j["measurement_targets"].erase("0");
    CHECK_THROWS_AS(protocol_from_json(j), std::exception);

    auto j2 = to_json(p);
    j2["branches"].erase(j2["branches"].begin().key());
    CHECK_THROWS_AS(protocol_from_json(j2), Error);
}

TEST_CASE("reports serialize losslessly") {
    auto report = thm2_check(2.0, 1.0, 4, 2, 1e-4);
    auto j = to_json(report);
    CHECK(j["lhs"].get<double>() == report.lhs);
    CHECK(j["rhs"].get<double>() == report.rhs);
    CHECK(j["feasible"].get<bool>() == report.feasible);

    auto res = extraction_attack(canonical_protocol(ot_func(2, 1), 0.0), {"0", "1"});
    auto ja = to_json(res);
    CHECK(ja["joint_success"].get<double>() == res.joint_success);
    CHECK(ja["order"].size() == 2);
}

} // TEST_SUITE
