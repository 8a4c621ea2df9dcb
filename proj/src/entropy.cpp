#include "sfe/entropy.hpp"

#include <bit>
#include <cmath>

#include "sfe/randomgen.hpp"

namespace sfe {

void ClassicalDistribution::validate(double tol) const {
    require(labels.size() == probs.size(), "label/probability size mismatch");
    double sum = 0;
    for (double p : probs) {
        require(p >= -tol, "probabilities must be nonnegative");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= tol, "probabilities must sum to one");
}

void BipartiteDistribution::validate(double tol) const {
    require(probs.rows() == static_cast<long>(x_labels.size()) &&
                probs.cols() == static_cast<long>(y_labels.size()),
            "table shape does not match alphabets");
    require(probs.minCoeff() >= -tol, "probabilities must be nonnegative");
    require(std::abs(probs.sum() - 1.0) <= tol, "probabilities must sum to one");
}

BipartiteDistribution BipartiteDistribution::swapped() const {
    return {y_labels, x_labels, probs.transpose()};
}

double binary_h(double p) {
    require(p >= 0.0 && p <= 1.0, "binary entropy argument out of [0,1]");
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double g_func(double x) {
    require(x >= 0.0, "g requires a nonnegative argument");
    if (x == 0.0) return 0.0;
    return (1.0 + x) * binary_h(x / (1.0 + x));
}

double log2_exact(long n) {
    require(n >= 1, "log2 of a nonpositive count");
    if ((n & (n - 1)) == 0) return static_cast<double>(std::bit_width(static_cast<unsigned long>(n)) - 1);
    return std::log2(static_cast<double>(n));
}

double shannon(const std::vector<double>& probs) {
    double h = 0;
    for (double p : probs)
        if (p > kProbCutoff) h -= p * std::log2(p);
    return h;
}

double cond_shannon(const BipartiteDistribution& p) {
    p.validate();
    double h_xy = 0, h_y = 0;
    for (long y = 0; y < p.probs.cols(); ++y) {
        double py = 0;
        for (long x = 0; x < p.probs.rows(); ++x) {
            double v = p.probs(x, y);
            py += v;
            if (v > kProbCutoff) h_xy -= v * std::log2(v);
        }
        if (py > kProbCutoff) h_y -= py * std::log2(py);
    }
    return h_xy - h_y;
}

double cond_max_entropy(const BipartiteDistribution& p) {
    p.validate();
    double best = 0;
    for (long y = 0; y < p.probs.cols(); ++y) {
        double py = p.probs.col(y).sum();
        if (py <= kProbCutoff) continue;
        long support = 0;
        for (long x = 0; x < p.probs.rows(); ++x)
            if (p.probs(x, y) / py > kProbCutoff) ++support;
        best = std::max(best, log2_exact(support));
    }
    return best;
}

double von_neumann(const DensityOperator& rho) {
    auto vals = hermitian_eigenvalues(rho.mat);
    double h = 0;
    for (long i = 0; i < vals.size(); ++i)
        if (vals[i] > kProbCutoff) h -= vals[i] * std::log2(vals[i]);
    return h;
}

double cond_von_neumann(const DensityOperator& rho, const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
    for (const auto& la : a)
        for (const auto& lb : b)
            require(la != lb, "conditional entropy register sets overlap: " + la);
    std::vector<std::string> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    double h_ab = von_neumann(partial_trace(rho, ab));
    if (b.empty()) return h_ab;
    return h_ab - von_neumann(partial_trace(rho, b));
}

double afw_bound(double eps, long x_dim) {
    require(eps >= 0.0, "afw_bound requires eps >= 0");
    return eps * log2_exact(x_dim) + g_func(eps);
}

double fano_bound(double eps, long x_size) {
    require(eps >= 0.0 && eps <= 1.0, "fano_bound requires eps in [0,1]");
    return binary_h(eps) + eps * log2_exact(x_size);
}

// ---------------------------------------------------------------------------

bool InequalityReport::all_ok() const {
    for (const auto& c : checks)
        if (c.violations > 0) return false;
    return true;
}

double InequalityReport::worst_slack() const {
    double w = 0;
    for (const auto& c : checks) w = std::min(w, c.worst_slack);
    return w;
}

namespace {

void record(InequalityCheck& check, double slack, double tol) {
    ++check.trials;
    if (check.trials == 1 || slack < check.worst_slack) check.worst_slack = slack;
    if (slack < -tol) ++check.violations;
}

DensityOperator random_cq(const RegisterLayout& layout, const std::string& classical,
                          Rng& rng) {
    auto idx = make_subset_index(layout, {classical});
    auto weights = random_distribution(idx.chosen_dim, rng);
    Matrix m = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (long x = 0; x < idx.chosen_dim; ++x) {
        Matrix block = random_density_matrix(idx.rest_dim, rng);
        for (long r1 = 0; r1 < idx.rest_dim; ++r1)
            for (long r2 = 0; r2 < idx.rest_dim; ++r2)
                m(idx.full(x, r1), idx.full(x, r2)) = weights[x] * block(r1, r2);
    }
    return DensityOperator(layout, std::move(m));
}

DensityOperator dephase(const DensityOperator& rho, const std::string& label) {
    auto idx = make_subset_index(rho.layout, {label});
    Matrix m = rho.mat;
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (idx.chosen_of[i] != idx.chosen_of[j]) m(i, j) = 0;
    return DensityOperator(rho.layout, std::move(m));
}

} // namespace

InequalityReport run_inequality_battery(const InequalityConfig& cfg) {
    Rng rng(cfg.seed);
    RegisterLayout xb({{"X", cfg.dim_a}, {"B", cfg.dim_b}});
    RegisterLayout ab({{"A", cfg.dim_a}, {"B", cfg.dim_b}});
    RegisterLayout abz({{"A", cfg.dim_a}, {"B", cfg.dim_b}, {"Z", cfg.dim_z}});
    RegisterLayout abc({{"A", cfg.dim_a}, {"B", cfg.dim_b}, {"C", cfg.dim_z}});

    InequalityCheck afw{"afw_continuity"};
    InequalityCheck concavity{"concavity"};
    InequalityCheck fano{"fano"};
    InequalityCheck chain{"chain_rule"};
    InequalityCheck lemma{"projective_measurement"};

    for (int trial = 0; trial < cfg.trials; ++trial) {
        // AFW continuity on a random cq pair.
        auto rho = random_cq(xb, "X", rng);
        auto sigma = random_cq(xb, "X", rng);
        double dist = trace_distance(rho, sigma);
        double gap = std::abs(cond_von_neumann(rho, {"X"}, {"B"}) -
                              cond_von_neumann(sigma, {"X"}, {"B"}));
        record(afw, afw_bound(dist, cfg.dim_a) - gap, cfg.tol);

        // Concavity of conditional entropy over a random ensemble.
        auto weights = random_distribution(cfg.dim_z, rng);
        Matrix mix = Matrix::Zero(ab.total_dim(), ab.total_dim());
        double avg = 0;
        for (long i = 0; i < cfg.dim_z; ++i) {
            DensityOperator part = random_density(ab, rng);
            mix += weights[i] * part.mat;
            avg += weights[i] * cond_von_neumann(part, {"A"}, {"B"});
        }
        record(concavity,
               cond_von_neumann(DensityOperator(ab, mix), {"A"}, {"B"}) - avg, cfg.tol);

        // Fano with the optimal (Helstrom) binary guessing error.
        RegisterLayout x2b({{"X", 2}, {"B", cfg.dim_b}});
        auto cq = random_cq(x2b, "X", rng);
        auto blocks = cq_blocks(cq, "X");
        double err = 0.5 * (1.0 -
                            hermitian_eigenvalues(blocks.blocks[0] - blocks.blocks[1])
                                .cwiseAbs()
                                .sum());
        record(fano, fano_bound(std::clamp(err, 0.0, 1.0), 2) -
                         cond_von_neumann(cq, {"X"}, {"B"}),
               cfg.tol);

        // Chain rule for an additional classical register.
        auto cqz = random_cq(abz, "Z", rng);
        record(chain,
               cond_von_neumann(cqz, {"A"}, {"B", "Z"}) -
                   (cond_von_neumann(cqz, {"A"}, {"B"}) - log2_exact(cfg.dim_z)),
               cfg.tol);

        // Projective measurement on C can raise H(A|BC) by at most log|Z|.
        auto tri = random_density(abc, rng);
        auto measured = dephase(tri, "C");
        record(lemma,
               cond_von_neumann(tri, {"A"}, {"B", "C"}) -
                   (cond_von_neumann(measured, {"A"}, {"B", "C"}) - log2_exact(cfg.dim_z)),
               cfg.tol);
    }
    return InequalityReport{{afw, concavity, fano, chain, lemma}};
}

InequalityReport check_state_inequalities(const DensityOperator& rho,
                                          const std::vector<std::string>& a,
                                          const std::vector<std::string>& b,
                                          const std::string& z, double tol) {
    for (const auto& l : a) rho.layout.position(l);
    for (const auto& l : b) rho.layout.position(l);
    const long dz = rho.layout.dim_of(z);

    InequalityCheck chain{"chain_rule"};
    InequalityCheck lemma{"projective_measurement"};
    InequalityCheck concavity{"concavity"};

    std::vector<std::string> bz = b;
    bz.push_back(z);

    // Lemma-style bound holds for any z register (dephasing = projective
    // measurement kept in place).
    auto measured = dephase(rho, z);
    record(lemma,
           cond_von_neumann(rho, a, bz) - (cond_von_neumann(measured, a, bz) - log2_exact(dz)),
           tol);

    // Chain rule and concavity need z to be classical.
    auto zb = cq_blocks(rho, z);
    if (zb.max_offblock <= kDefaultTol) {
        record(chain,
               cond_von_neumann(rho, a, bz) - (cond_von_neumann(rho, a, b) - log2_exact(dz)),
               tol);
        RegisterLayout rest = rho.layout.subset(rho.layout.complement({z}));
        double avg = 0;
        Matrix mix = Matrix::Zero(rest.total_dim(), rest.total_dim());
        for (const auto& block : zb.blocks) {
            double w = block.trace().real();
            if (w <= kProbCutoff) continue;
            avg += w * cond_von_neumann(DensityOperator(rest, block / w), a, b);
            mix += block;
        }
        record(concavity, cond_von_neumann(DensityOperator(rest, mix), a, b) - avg, tol);
    }

    return InequalityReport{{chain, lemma, concavity}};
}

} // namespace sfe
