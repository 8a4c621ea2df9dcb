#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfe/qstate.hpp"

namespace sfe {

/// Probability vector over a labeled alphabet.
struct ClassicalDistribution {
    std::vector<std::string> labels;
    std::vector<double> probs;

    void validate(double tol = kDefaultTol) const;
};

/// Dense bivariate table P_XY.
struct BipartiteDistribution {
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    Eigen::MatrixXd probs;  // |X| rows, |Y| cols

    void validate(double tol = kDefaultTol) const;
    BipartiteDistribution swapped() const;
};

// All logarithms base 2; 0 log 0 = 0 throughout.

double binary_h(double p);
double g_func(double x);  // (1+x) h(x / (1+x))

/// log2 with an exact path for powers of two (keeps integer-valued entropies
/// exact in floating point).
double log2_exact(long n);

double shannon(const std::vector<double>& probs);
double cond_shannon(const BipartiteDistribution& p);      // H(X|Y)
double cond_max_entropy(const BipartiteDistribution& p);  // max_y log2 |supp P_{X|Y=y}|

double von_neumann(const DensityOperator& rho);
double cond_von_neumann(const DensityOperator& rho, const std::vector<std::string>& a,
                        const std::vector<std::string>& b);

double afw_bound(double eps, long x_dim);    // eps log2|X| + g(eps)
double fano_bound(double eps, long x_size);  // h(eps) + eps log2|X|

// ---------------------------------------------------------------------------
// Inequality battery: continuity (AFW), concavity, Fano, classical chain rule,
// and the projective-measurement bound. Slacks are lhs - rhs of each ">="
// inequality; a violation is a slack below -tol.

struct InequalityConfig {
    int trials = 100;
    std::uint64_t seed = kDefaultSeed;
    long dim_a = 2, dim_b = 2, dim_z = 2;
    double tol = 1e-8;
};

struct InequalityCheck {
    std::string name;
    int trials = 0;
    double worst_slack = 0;
    int violations = 0;
};

struct InequalityReport {
    std::vector<InequalityCheck> checks;
    bool all_ok() const;
    double worst_slack() const;
};

InequalityReport run_inequality_battery(const InequalityConfig& cfg);

/// Checks the chain rule, the projective-measurement bound and concavity on a
/// supplied state with designated registers (z must be a single classical
/// register for the chain rule / concavity checks).
InequalityReport check_state_inequalities(const DensityOperator& rho,
                                          const std::vector<std::string>& a,
                                          const std::vector<std::string>& b,
                                          const std::string& z, double tol = 1e-8);

} // namespace sfe
