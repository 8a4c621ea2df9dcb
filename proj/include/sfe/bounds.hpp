#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfe/entropy.hpp"

namespace sfe {

/// Which constant to use for eps' = c |Y|^2 sqrt(eps): the theorem statement
/// carries c = 2, the proof's derivation c = 3. Exposed for sensitivity runs.
enum class EpsPrimeVariant { Theorem, Proof };

struct BoundReport {
    std::string bound_name;
    std::vector<std::pair<std::string, double>> inputs;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;  // lhs - rhs
    bool feasible = false;
    std::string notes;

    static BoundReport make(std::string name,
                            std::vector<std::pair<std::string, double>> inputs, double lhs,
                            double rhs, std::string notes = "");
};

struct Prop1Success {
    double simple;       // max(0, 1 - 2 m^2 sqrt(eps))
    double exact_chain;  // max(0, 1 - [ (3 sqrt(eps)+eps)(m^2+m)/2 - 3 sqrt(eps) ])
};
Prop1Success prop1_success(double eps, int m);

/// Unique eps > 0 with 2 y^2 sqrt(eps) + eps = 1/x; below it no protocol can
/// satisfy the necessary conditions for a non-trivial function.
double thm1_threshold(int x_size, int y_size);

/// Resource bound H_max(U|V)+H_max(V|U) >= t - (eps+eps') log|X| - g(eps) - h(eps').
BoundReport thm2_check(double entropy_sum, double t, long x_size, long y_size, double eps,
                       EpsPrimeVariant variant = EpsPrimeVariant::Theorem);

struct Cor3Result {
    BoundReport report;   // lhs >= rhs is the non-contradiction inequality
    double minimal_eps;   // smallest eps satisfying it (bisection, 1e-12)
    double chain_closed_form;  // closed-form threshold from the proof's chain
};
/// Extension of 1-out-of-n bit OT: m+1 from m instances with error eps.
Cor3Result cor3_check(int n, int m, double eps);

/// Minimal (real-valued) number of OT(2,k) instances to build OT(n,k);
/// callers ceil to integers.
double cor4_min_m(int n, int k, double eps);

double cor5_rhs(int n, double eps);  // inner product: 2m >= rhs
BoundReport cor5_check(int n, double eps, int m);

double cor6_rhs(int k, double eps);  // equality: 2m >= rhs
BoundReport cor6_check(int k, double eps, int m);

/// Binary entropy clamped at 1 (the regime eps' > 1 is outside the paper's
/// assumptions; reports flag it).
double h_clamped(double x, bool* clamped = nullptr);

} // namespace sfe
