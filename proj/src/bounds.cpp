#include "sfe/bounds.hpp"

#include <cmath>

namespace sfe {

BoundReport BoundReport::make(std::string name,
                              std::vector<std::pair<std::string, double>> inputs,
                              double lhs, double rhs, std::string notes) {
    BoundReport r;
    r.bound_name = std::move(name);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = lhs - rhs;
    r.feasible = r.slack >= -kDefaultTol;
    r.notes = std::move(notes);
    return r;
}

double h_clamped(double x, bool* clamped) {
    if (clamped) *clamped = x > 1.0;
    return binary_h(std::min(x, 1.0));
}

Prop1Success prop1_success(double eps, int m) {
    require(eps >= 0.0 && eps <= 1.0, "prop1_success requires eps in [0,1]");
    require(m >= 2, "prop1_success requires m >= 2");
    const double root = std::sqrt(eps);
    const double simple = 1.0 - 2.0 * m * m * root;
    const double chain_fail = 0.5 * (3.0 * root + eps) * (m * m + m) - 3.0 * root;
    return {std::max(0.0, simple), std::max(0.0, 1.0 - chain_fail)};
}

double thm1_threshold(int x_size, int y_size) {
    require(x_size >= 2 && y_size >= 2, "thm1_threshold requires |X|,|Y| >= 2");
    // Quadratic in s = sqrt(eps): s^2 + 2 y^2 s - 1/x = 0.
    const double b = 2.0 * y_size * y_size;
    const double s = -b / 2.0 + std::sqrt(b * b / 4.0 + 1.0 / x_size);
    return s * s;
}

BoundReport thm2_check(double entropy_sum, double t, long x_size, long y_size, double eps,
                       EpsPrimeVariant variant) {
    require(eps >= 0.0 && eps <= 1.0, "thm2_check requires eps in [0,1]");
    const double c = variant == EpsPrimeVariant::Theorem ? 2.0 : 3.0;
    const double eps_prime = c * static_cast<double>(y_size) * y_size * std::sqrt(eps);
    bool clamped = false;
    const double rhs = t - (eps + eps_prime) * log2_exact(x_size) - g_func(eps) -
                       h_clamped(eps_prime, &clamped);
    std::string notes;
    if (variant == EpsPrimeVariant::Proof) notes = "eps' = 3|Y|^2 sqrt(eps) (proof variant)";
    if (clamped) notes += (notes.empty() ? "" : "; ") + std::string("h(eps') clamped at eps' = 1");
    return BoundReport::make(
        "thm2",
        {{"entropy_sum", entropy_sum}, {"t", t}, {"x", double(x_size)}, {"y", double(y_size)},
         {"eps", eps}, {"eps_prime", eps_prime}},
        entropy_sum, rhs, std::move(notes));
}

namespace {

// lhs of the extension contradiction: [g(et) + h(et')]/m + (et + et') 4n,
// with et = 3 m eps, et' = 3 n^2 sqrt(et).
double cor3_lhs(int n, int m, double eps) {
    const double et = 3.0 * m * eps;
    const double etp = 3.0 * n * n * std::sqrt(et);
    return (g_func(et) + h_clamped(etp)) / m + (et + etp) * 4.0 * n;
}

} // namespace

Cor3Result cor3_check(int n, int m, double eps) {
    require(n >= 2 && m >= 1, "cor3_check requires n >= 2, m >= 1");
    require(eps >= 0.0, "cor3_check requires eps >= 0");
    const double rhs = 3.0 * (n - 1) - log2_exact(n);
    auto report = BoundReport::make(
        "cor3", {{"n", double(n)}, {"m", double(m)}, {"eps", eps}}, cor3_lhs(n, m, eps), rhs,
        "feasible = the extension is not contradicted at this eps");

    // Smallest eps satisfying lhs >= rhs: bracket by doubling, then bisect.
    double hi = 1e-15;
    while (cor3_lhs(n, m, hi) < rhs) hi *= 2.0;
    double lo = hi / 2.0;
    if (cor3_lhs(n, m, lo) >= rhs) lo = 0.0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        (cor3_lhs(n, m, mid) >= rhs ? hi : lo) = mid;
    }
    // The proof's chain gives et >= 1/(27 n^2)^2, i.e. eps >= 1/(3m (27 n^2)^2);
    // the printed constant carries an extra m (flagged upstream).
    const double chain = 1.0 / (3.0 * m * std::pow(27.0 * n * n, 2.0));
    return {std::move(report), 0.5 * (lo + hi), chain};
}

double cor4_min_m(int n, int k, double eps) {
    require(n >= 2 && k >= 1, "cor4_min_m requires n >= 2, k >= 1");
    require(eps >= 0.0 && eps <= 1.0, "cor4_min_m requires eps in [0,1]");
    const double eps_prime = 2.0 * n * n * std::sqrt(eps);
    return (((1.0 - eps - eps_prime) * n - 1.0) * k - g_func(eps) - h_clamped(eps_prime)) /
           (k + 1.0);
}

double cor5_rhs(int n, double eps) {
    require(n >= 2, "cor5 requires n >= 2");
    require(eps >= 0.0 && eps <= 1.0, "cor5 requires eps in [0,1]");
    const double eps_prime = 2.0 * n * n * std::sqrt(eps);
    return (n - 1.0) - (eps + eps_prime) * n - g_func(eps) - h_clamped(eps_prime);
}

BoundReport cor5_check(int n, double eps, int m) {
    require(m >= 0, "cor5_check requires m >= 0");
    bool clamped = false;
    const double eps_prime = 2.0 * n * n * std::sqrt(eps);
    h_clamped(eps_prime, &clamped);
    return BoundReport::make("cor5", {{"n", double(n)}, {"eps", eps}, {"m", double(m)}},
                             2.0 * m, cor5_rhs(n, eps),
                             clamped ? "h(eps') clamped at eps' = 1" : "");
}

double cor6_rhs(int k, double eps) {
    require(k >= 1, "cor6 requires k >= 1");
    require(eps >= 0.0 && eps <= 1.0, "cor6 requires eps in [0,1]");
    const double eps_prime = std::pow(2.0, 2.0 * k + 1.0) * std::sqrt(eps);
    return (1.0 - eps - eps_prime) * k - g_func(eps) - h_clamped(eps_prime) - 1.0;
}

BoundReport cor6_check(int k, double eps, int m) {
    require(m >= 0, "cor6_check requires m >= 0");
    bool clamped = false;
    const double eps_prime = std::pow(2.0, 2.0 * k + 1.0) * std::sqrt(eps);
    h_clamped(eps_prime, &clamped);
    return BoundReport::make("cor6", {{"k", double(k)}, {"eps", eps}, {"m", double(m)}},
                             2.0 * m, cor6_rhs(k, eps),
                             clamped ? "h(eps') clamped at eps' = 1" : "");
}

} // namespace sfe
