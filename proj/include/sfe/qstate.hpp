#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfe/layout.hpp"

namespace sfe {

using Complexd = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Normalized state vector over a register layout. Immutable value type:
/// every operation returns a fresh state.
struct PureState {
    RegisterLayout layout;
    Vector amp;

    PureState(RegisterLayout l, Vector a, double tol = kDefaultTol);
};

/// Trace-one Hermitian operator over a register layout. The constructor
/// checks Hermiticity and trace; positivity is checked by validate_full()
/// (and implicitly by spectral operations), since it costs a full
/// eigendecomposition.
struct DensityOperator {
    RegisterLayout layout;
    Matrix mat;

    DensityOperator(RegisterLayout l, Matrix m, double tol = kDefaultTol);
    void validate_full(double tol = kDefaultTol) const;
};

// ---------------------------------------------------------------------------
// Spectral helpers (deterministic ordering: descending eigenvalue, eigenvector
// phase fixed so the first component above 1e-12 is real positive).

struct HermitianEig {
    Eigen::VectorXd values;  // descending
    Matrix vectors;          // columns match values
};
HermitianEig hermitian_eig(const Matrix& m);
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);  // descending
Matrix hermitian_sqrt(const Matrix& m);       // eigenvalues clamped at 0
Matrix hermitian_pinv_sqrt(const Matrix& m);  // pseudo-inverse square root
double trace_norm(const Matrix& m);           // sum of singular values

// ---------------------------------------------------------------------------
// Core state operations.

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

DensityOperator density_of(const PureState& psi);

/// Marginal on the kept registers (layout order), trace preserved.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);
/// Marginal of a pure state without materializing the full density matrix.
DensityOperator marginal(const PureState& psi, const std::vector<std::string>& keep);
/// Same, but unnormalized and raw (used for cq block assembly).
Matrix marginal_matrix(const Vector& amp, const SubsetIndex& keep);

/// Purification with ancilla dimension equal to the full input dimension.
/// For a diagonal (classical) input this is the canonical sum_x sqrt(P(x))|x,x>.
PureState purify(const DensityOperator& rho, const std::string& anc_label);

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// Applies an operator on a register subset (labels in layout order).
PureState apply_on(const PureState& psi, const Matrix& op,
                   const std::vector<std::string>& targets);
DensityOperator apply_on(const DensityOperator& rho, const Matrix& op,
                         const std::vector<std::string>& targets);

// Raw subset application working on bare vectors/matrices.
Vector apply_subset(const Vector& amp, const Matrix& op, const SubsetIndex& idx);
Matrix conjugate_subset(const Matrix& m, const Matrix& op, const SubsetIndex& idx);

// ---------------------------------------------------------------------------
// Measurements.

struct MeasurementOutcome {
    std::string label;
    Matrix kraus;
};

/// Kraus measurement on a register subset. Targets must be listed in layout
/// order; completeness sum M^dag M = 1 is enforced by validate().
struct Measurement {
    std::vector<std::string> targets;
    std::vector<MeasurementOutcome> outcomes;

    void validate(const RegisterLayout& layout, double tol = kDefaultTol) const;
};

struct PureOutcomeBranch {
    std::string label;
    double prob;
    PureState state;
};
struct MixedOutcomeBranch {
    std::string label;
    double prob;
    DensityOperator state;
};

/// Outcome probabilities sum to one; branches below kProbCutoff are dropped
/// and the rest renormalized.
std::vector<PureOutcomeBranch> measure(const PureState& psi, const Measurement& m);
std::vector<MixedOutcomeBranch> measure(const DensityOperator& rho, const Measurement& m);

/// Diagonal blocks of a state along one register's basis, plus the largest
/// off-block magnitude (zero iff the state is classical on that register).
struct CqBlocks {
    std::vector<Matrix> blocks;  // indexed by the register's basis value
    double max_offblock = 0;
};
CqBlocks cq_blocks(const DensityOperator& rho, const std::string& x_label);

struct GentleResult {
    double pr_correct;      // Pr[measured label == classical X value]
    DensityOperator post;   // outcome-forgotten post-measurement state
};

/// Gentle-measurement step on a cq state: the state must be classical on
/// x_label and the measurement's outcome alphabet must match that register's
/// basis (outcome k detects basis value k). The post state stays within
/// sqrt(eps) + eps of the input, where eps = 1 - min_x tr(E_x rho^x).
GentleResult gentle_post_state(const DensityOperator& rho, const std::string& x_label,
                               const Measurement& m);

// ---------------------------------------------------------------------------
// Uhlmann rotations.

struct UhlmannRotation {
    std::vector<std::string> bob_side;  // in layout order
    Matrix unitary;
    double achieved_overlap;
};

/// Unitary on bob_side maximizing |<psi1|(1 x U)|psi0>|; the achieved overlap
/// equals the fidelity of the complementary marginals (Uhlmann's theorem,
/// for cuts where bob_side is at least as large as the complement's rank).
UhlmannRotation uhlmann_rotation(const PureState& psi0, const PureState& psi1,
                                 const std::vector<std::string>& bob_side);

/// One labeled branch of a cq family: classical label, probability, pure state.
struct CqBranch {
    std::string label;
    double prob;
    PureState state;
};

struct ConditionedUhlmann {
    std::vector<std::string> bob_side;
    std::map<std::string, Matrix> blocks;  // per classical label
    double achieved_overlap;               // sum_t sqrt(p0 p1) * overlap_t
};

/// Per-label Uhlmann rotations assembled block-diagonally over the classical
/// register copy held by the rotating side. Both families must be indexed by
/// the same label alphabet. Labels missing a counterpart keep an identity
/// block.
ConditionedUhlmann conditioned_uhlmann(const std::vector<CqBranch>& family0,
                                       const std::vector<CqBranch>& family1,
                                       const std::vector<std::string>& bob_side);

/// Applies the block of each branch's label to the branch state.
std::vector<CqBranch> apply_conditioned(const ConditionedUhlmann& rot,
                                        const std::vector<CqBranch>& family);

/// One labeled block of a cq density family; weight is the (unnormalized)
/// probability mass, mat has unit trace.
struct CqDensityBranch {
    std::string label;
    double weight;
    Matrix mat;
};

/// Exact trace distance between two cq states given as labeled block families
/// (blocks with the same label compared jointly, unmatched labels contribute
/// their full mass).
double cq_trace_distance(const std::vector<CqDensityBranch>& a,
                         const std::vector<CqDensityBranch>& b);

std::vector<CqDensityBranch> cq_marginals(const std::vector<CqBranch>& family,
                                          const std::vector<std::string>& keep);

} // namespace sfe
