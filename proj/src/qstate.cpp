#include "sfe/qstate.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace sfe {

namespace {

bool all_finite(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    return true;
}

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

} // namespace

PureState::PureState(RegisterLayout l, Vector a, double tol)
    : layout(std::move(l)), amp(std::move(a)) {
    require(amp.size() == layout.total_dim(), "amplitude vector size does not match layout");
    require(all_finite(amp), "amplitudes must be finite");
    require(std::abs(amp.norm() - 1.0) <= tol, "pure state must have unit norm");
}

DensityOperator::DensityOperator(RegisterLayout l, Matrix m, double tol)
    : layout(std::move(l)), mat(std::move(m)) {
    require(mat.rows() == layout.total_dim() && mat.cols() == layout.total_dim(),
            "matrix shape does not match layout");
    require(all_finite(mat), "matrix entries must be finite");
    require((mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol,
            "density operator must be Hermitian");
    require(std::abs(mat.trace().real() - 1.0) <= tol && std::abs(mat.trace().imag()) <= tol,
            "density operator must have unit trace");
}

void DensityOperator::validate_full(double tol) const {
    auto vals = hermitian_eigenvalues(mat);
    require(vals.minCoeff() >= -tol, "density operator must be positive semi-definite");
}

// ---------------------------------------------------------------------------

HermitianEig hermitian_eig(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    require(solver.info() == Eigen::Success, "eigendecomposition failed");
    const auto n = m.rows();
    HermitianEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    // Eigen returns ascending order; flip to descending and fix phases.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()[n - 1 - k];
        Vector v = solver.eigenvectors().col(n - 1 - k);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v[i]) > 1e-12) {
                v *= std::conj(v[i]) / std::abs(v[i]);
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, "eigendecomposition failed");
    return solver.eigenvalues().reverse();
}

Matrix hermitian_sqrt(const Matrix& m) {
    auto eig = hermitian_eig(m);
    Eigen::VectorXd s = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

Matrix hermitian_pinv_sqrt(const Matrix& m) {
    auto eig = hermitian_eig(m);
    Eigen::VectorXd s = eig.values;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        s[i] = s[i] > kProbCutoff ? 1.0 / std::sqrt(s[i]) : 0.0;
    return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

double trace_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

// ---------------------------------------------------------------------------

PureState tensor(const PureState& a, const PureState& b) {
    auto layout = RegisterLayout::concat(a.layout, b.layout);
    Vector amp(layout.total_dim());
    const long db = b.layout.total_dim();
    for (long i = 0; i < a.layout.total_dim(); ++i)
        for (long j = 0; j < db; ++j) amp[i * db + j] = a.amp[i] * b.amp[j];
    return PureState(std::move(layout), std::move(amp));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    auto layout = RegisterLayout::concat(a.layout, b.layout);
    const long da = a.layout.total_dim(), db = b.layout.total_dim();
    Matrix m(da * db, da * db);
    for (long i = 0; i < da; ++i)
        for (long k = 0; k < da; ++k)
            m.block(i * db, k * db, db, db) = a.mat(i, k) * b.mat;
    return DensityOperator(std::move(layout), std::move(m));
}

DensityOperator density_of(const PureState& psi) {
    return DensityOperator(psi.layout, psi.amp * psi.amp.adjoint());
}

Matrix marginal_matrix(const Vector& amp, const SubsetIndex& keep) {
    Matrix out = Matrix::Zero(keep.chosen_dim, keep.chosen_dim);
    for (long c1 = 0; c1 < keep.chosen_dim; ++c1)
        for (long c2 = 0; c2 < keep.chosen_dim; ++c2) {
            Complexd acc = 0;
            for (long r = 0; r < keep.rest_dim; ++r)
                acc += amp[keep.full(c1, r)] * std::conj(amp[keep.full(c2, r)]);
            out(c1, c2) = acc;
        }
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
    auto idx = make_subset_index(rho.layout, keep);
    Matrix out = Matrix::Zero(idx.chosen_dim, idx.chosen_dim);
    for (long c1 = 0; c1 < idx.chosen_dim; ++c1)
        for (long c2 = 0; c2 < idx.chosen_dim; ++c2) {
            Complexd acc = 0;
            for (long r = 0; r < idx.rest_dim; ++r)
                acc += rho.mat(idx.full(c1, r), idx.full(c2, r));
            out(c1, c2) = acc;
        }
    return DensityOperator(rho.layout.subset(keep), std::move(out));
}

DensityOperator marginal(const PureState& psi, const std::vector<std::string>& keep) {
    auto idx = make_subset_index(psi.layout, keep);
    return DensityOperator(psi.layout.subset(keep), marginal_matrix(psi.amp, idx));
}

PureState purify(const DensityOperator& rho, const std::string& anc_label) {
    require(!rho.layout.contains(anc_label), "ancilla label collides with layout");
    rho.validate_full();
    const long d = rho.layout.total_dim();
    Matrix root = hermitian_sqrt(rho.mat);
    auto layout = RegisterLayout::concat(rho.layout, RegisterLayout({{anc_label, d}}));
    Vector amp(d * d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) amp[i * d + j] = root(i, j);
    return PureState(std::move(layout), std::move(amp));
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    require(rho.layout.same_as(sigma.layout), "trace_distance: layouts differ");
    return 0.5 * hermitian_eigenvalues(rho.mat - sigma.mat).cwiseAbs().sum();
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    require(rho.layout.same_as(sigma.layout), "fidelity: layouts differ");
    return trace_norm(hermitian_sqrt(rho.mat) * hermitian_sqrt(sigma.mat));
}

// ---------------------------------------------------------------------------

Vector apply_subset(const Vector& amp, const Matrix& op, const SubsetIndex& idx) {
    require(op.rows() == idx.chosen_dim && op.cols() == idx.chosen_dim,
            "operator shape does not match target registers");
    Vector out = Vector::Zero(amp.size());
    for (long r = 0; r < idx.rest_dim; ++r)
        for (long c1 = 0; c1 < idx.chosen_dim; ++c1) {
            Complexd acc = 0;
            for (long c0 = 0; c0 < idx.chosen_dim; ++c0)
                acc += op(c1, c0) * amp[idx.full(c0, r)];
            out[idx.full(c1, r)] = acc;
        }
    return out;
}

Matrix conjugate_subset(const Matrix& m, const Matrix& op, const SubsetIndex& idx) {
    require(op.rows() == idx.chosen_dim && op.cols() == idx.chosen_dim,
            "operator shape does not match target registers");
    const long d = m.rows();
    Matrix tmp = Matrix::Zero(d, d);
    // rows: (op x 1) m
    for (long col = 0; col < d; ++col)
        for (long r = 0; r < idx.rest_dim; ++r)
            for (long c1 = 0; c1 < idx.chosen_dim; ++c1) {
                Complexd acc = 0;
                for (long c0 = 0; c0 < idx.chosen_dim; ++c0)
                    acc += op(c1, c0) * m(idx.full(c0, r), col);
                tmp(idx.full(c1, r), col) = acc;
            }
    // columns: tmp (op x 1)^dag
    Matrix out = Matrix::Zero(d, d);
    for (long row = 0; row < d; ++row)
        for (long r = 0; r < idx.rest_dim; ++r)
            for (long c1 = 0; c1 < idx.chosen_dim; ++c1) {
                Complexd acc = 0;
                for (long c0 = 0; c0 < idx.chosen_dim; ++c0)
                    acc += tmp(row, idx.full(c0, r)) * std::conj(op(c1, c0));
                out(row, idx.full(c1, r)) = acc;
            }
    return out;
}

PureState apply_on(const PureState& psi, const Matrix& op,
                   const std::vector<std::string>& targets) {
    require_layout_order(psi.layout, targets);
    auto idx = make_subset_index(psi.layout, targets);
    return PureState(psi.layout, apply_subset(psi.amp, op, idx));
}

DensityOperator apply_on(const DensityOperator& rho, const Matrix& op,
                         const std::vector<std::string>& targets) {
    require_layout_order(rho.layout, targets);
    auto idx = make_subset_index(rho.layout, targets);
    return DensityOperator(rho.layout, conjugate_subset(rho.mat, op, idx));
}

// ---------------------------------------------------------------------------

void Measurement::validate(const RegisterLayout& layout, double tol) const {
    require(!outcomes.empty(), "measurement must have at least one outcome");
    require_layout_order(layout, targets);
    auto idx = make_subset_index(layout, targets);
    Matrix sum = Matrix::Zero(idx.chosen_dim, idx.chosen_dim);
    for (const auto& o : outcomes) {
        require(o.kraus.rows() == idx.chosen_dim && o.kraus.cols() == idx.chosen_dim,
                "measurement operator shape does not match target registers");
        sum += o.kraus.adjoint() * o.kraus;
    }
    require((sum - Matrix::Identity(idx.chosen_dim, idx.chosen_dim)).cwiseAbs().maxCoeff() <=
                tol,
            "incomplete measurement: sum M^dag M != identity");
}

std::vector<PureOutcomeBranch> measure(const PureState& psi, const Measurement& m) {
    m.validate(psi.layout);
    auto idx = make_subset_index(psi.layout, m.targets);
    std::vector<PureOutcomeBranch> out;
    double total = 0;
    for (const auto& o : m.outcomes) {
        Vector post = apply_subset(psi.amp, o.kraus, idx);
        double p = post.squaredNorm();
        if (p < kProbCutoff) continue;
        total += p;
        out.push_back({o.label, p, PureState(psi.layout, post / std::sqrt(p))});
    }
    for (auto& b : out) b.prob /= total;
    return out;
}

std::vector<MixedOutcomeBranch> measure(const DensityOperator& rho, const Measurement& m) {
    m.validate(rho.layout);
    auto idx = make_subset_index(rho.layout, m.targets);
    std::vector<MixedOutcomeBranch> out;
    double total = 0;
    for (const auto& o : m.outcomes) {
        Matrix post = conjugate_subset(rho.mat, o.kraus, idx);
        double p = post.trace().real();
        if (p < kProbCutoff) continue;
        total += p;
        out.push_back({o.label, p, DensityOperator(rho.layout, post / p)});
    }
    for (auto& b : out) b.prob /= total;
    return out;
}

CqBlocks cq_blocks(const DensityOperator& rho, const std::string& x_label) {
    auto xidx = make_subset_index(rho.layout, {x_label});
    const long dx = rho.layout.dim_of(x_label);
    CqBlocks out;
    out.blocks.assign(dx, Matrix::Zero(xidx.rest_dim, xidx.rest_dim));
    for (long x1 = 0; x1 < dx; ++x1)
        for (long x2 = 0; x2 < dx; ++x2)
            for (long r1 = 0; r1 < xidx.rest_dim; ++r1)
                for (long r2 = 0; r2 < xidx.rest_dim; ++r2) {
                    Complexd v = rho.mat(xidx.full(x1, r1), xidx.full(x2, r2));
                    if (x1 == x2)
                        out.blocks[x1](r1, r2) = v;
                    else
                        out.max_offblock = std::max(out.max_offblock, std::abs(v));
                }
    return out;
}

GentleResult gentle_post_state(const DensityOperator& rho, const std::string& x_label,
                               const Measurement& m) {
    m.validate(rho.layout);
    for (const auto& t : m.targets)
        require(t != x_label, "measurement may not act on the classical register");
    const long dx = rho.layout.dim_of(x_label);
    require(static_cast<long>(m.outcomes.size()) == dx,
            "outcome alphabet does not match the classical register");

    auto cq = cq_blocks(rho, x_label);
    require(cq.max_offblock <= kDefaultTol, "state is not classical on register " + x_label);

    RegisterLayout rest_layout = rho.layout.subset(rho.layout.complement({x_label}));
    auto tidx = make_subset_index(rest_layout, m.targets);
    double pr_correct = 0;
    for (long x = 0; x < dx; ++x)
        pr_correct +=
            conjugate_subset(cq.blocks[x], m.outcomes[x].kraus, tidx).trace().real();

    auto full_tidx = make_subset_index(rho.layout, m.targets);
    Matrix post = Matrix::Zero(rho.mat.rows(), rho.mat.cols());
    for (const auto& o : m.outcomes) post += conjugate_subset(rho.mat, o.kraus, full_tidx);
    return {pr_correct, DensityOperator(rho.layout, std::move(post))};
}

// ---------------------------------------------------------------------------

UhlmannRotation uhlmann_rotation(const PureState& psi0, const PureState& psi1,
                                 const std::vector<std::string>& bob_side) {
    require(psi0.layout.same_as(psi1.layout), "uhlmann_rotation: layouts differ");
    require(!bob_side.empty(), "uhlmann_rotation: empty cut");
    require(bob_side.size() < psi0.layout.size(), "uhlmann_rotation: cut covers all registers");
    auto idx = make_subset_index(psi0.layout, bob_side);

    // Reshape across the cut: M_b(rest, chosen); the overlap under (1 x U) is
    // tr(U K) with K = M0^T conj(M1), maximized by the SVD unitary factor.
    Matrix k = Matrix::Zero(idx.chosen_dim, idx.chosen_dim);
    for (long b0 = 0; b0 < idx.chosen_dim; ++b0)
        for (long b1 = 0; b1 < idx.chosen_dim; ++b1) {
            Complexd acc = 0;
            for (long r = 0; r < idx.rest_dim; ++r)
                acc += psi0.amp[idx.full(b0, r)] * std::conj(psi1.amp[idx.full(b1, r)]);
            k(b0, b1) = acc;
        }
    Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix u = svd.matrixV() * svd.matrixU().adjoint();
    std::vector<std::string> canonical;
    for (auto p : idx.chosen_pos) canonical.push_back(psi0.layout.reg(p).label);
    return {std::move(canonical), std::move(u), svd.singularValues().sum()};
}

ConditionedUhlmann conditioned_uhlmann(const std::vector<CqBranch>& family0,
                                       const std::vector<CqBranch>& family1,
                                       const std::vector<std::string>& bob_side) {
    std::map<std::string, const CqBranch*> by_label0, by_label1;
    for (const auto& b : family0) by_label0[b.label] = &b;
    for (const auto& b : family1) by_label1[b.label] = &b;
    require(!family0.empty() && !family1.empty(), "conditioned_uhlmann: empty family");

    ConditionedUhlmann out;
    out.achieved_overlap = 0;
    for (const auto& [label, b0] : by_label0) {
        auto it = by_label1.find(label);
        require(it != by_label1.end(),
                "conditioned_uhlmann: transcript alphabets differ at " + label);
        auto rot = uhlmann_rotation(b0->state, it->second->state, bob_side);
        out.bob_side = rot.bob_side;
        out.achieved_overlap += std::sqrt(b0->prob * it->second->prob) * rot.achieved_overlap;
        out.blocks[label] = std::move(rot.unitary);
    }
    for (const auto& [label, b1] : by_label1)
        require(by_label0.count(label), "conditioned_uhlmann: transcript alphabets differ at " + label);
    return out;
}

std::vector<CqBranch> apply_conditioned(const ConditionedUhlmann& rot,
                                        const std::vector<CqBranch>& family) {
    std::vector<CqBranch> out;
    out.reserve(family.size());
    for (const auto& b : family) {
        auto it = rot.blocks.find(b.label);
        if (it == rot.blocks.end()) {
            out.push_back(b);
            continue;
        }
        out.push_back({b.label, b.prob, apply_on(b.state, it->second, rot.bob_side)});
    }
    return out;
}

double cq_trace_distance(const std::vector<CqDensityBranch>& a,
                         const std::vector<CqDensityBranch>& b) {
    std::map<std::string, Matrix> diff;
    for (const auto& br : a) {
        auto [it, fresh] = diff.try_emplace(br.label, br.weight * br.mat);
        if (!fresh) it->second += br.weight * br.mat;
    }
    for (const auto& br : b) {
        auto [it, fresh] = diff.try_emplace(br.label, -br.weight * br.mat);
        if (!fresh) it->second -= br.weight * br.mat;
    }
    double total = 0;
    for (const auto& [label, m] : diff)
        total += hermitian_eigenvalues(m).cwiseAbs().sum();
    return 0.5 * total;
}

std::vector<CqDensityBranch> cq_marginals(const std::vector<CqBranch>& family,
                                          const std::vector<std::string>& keep) {
    std::vector<CqDensityBranch> out;
    out.reserve(family.size());
    for (const auto& b : family) {
        auto idx = make_subset_index(b.state.layout, keep);
        out.push_back({b.label, b.prob, marginal_matrix(b.state.amp, idx)});
    }
    return out;
}

} // namespace sfe
