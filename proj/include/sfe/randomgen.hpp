#pragma once

#include <random>

#include "sfe/qstate.hpp"

namespace sfe {

/// Deterministic source for the randomized batteries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::mt19937_64& engine() { return engine_; }
    double gaussian() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Vector random_unit_vector(long dim, Rng& rng);
PureState random_pure(const RegisterLayout& layout, Rng& rng);
Matrix random_density_matrix(long dim, Rng& rng, long rank = 0);  // 0 = full rank
DensityOperator random_density(const RegisterLayout& layout, Rng& rng, long rank = 0);
Matrix random_unitary(long dim, Rng& rng);
std::vector<double> random_distribution(long n, Rng& rng);

} // namespace sfe
