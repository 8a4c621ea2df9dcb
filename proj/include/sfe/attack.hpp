#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfe/bounds.hpp"
#include "sfe/functions.hpp"
#include "sfe/primitives.hpp"
#include "sfe/qstate.hpp"

namespace sfe {

/// One final-state branch: a classical transcript label, its probability,
/// and the pure post-protocol state conditioned on it.
struct Branch {
    std::string transcript;
    double prob;
    PureState state;
};

/// Final-state model of an SFE protocol: per-(x,y) families of transcript-
/// conditioned pure states over a fixed register layout, with each register
/// assigned to Alice, Bob, or the environment, plus Bob's honest measurement
/// per input y. Alice's input is uniform, and her registers are assumed to
/// record it (orthogonal states across x), which makes the per-transcript
/// x-superposed global states valid purifications.
struct ProtocolInstance {
    FunctionTable f;
    RegisterLayout layout;
    std::vector<std::string> alice_registers;
    std::vector<std::string> bob_registers;
    std::vector<std::vector<std::vector<Branch>>> branches;  // [x][y]
    std::vector<std::optional<Measurement>> honest;          // [y]

    void validate(double tol = kDefaultTol) const;
    std::vector<std::string> env_registers() const;
};

/// Condition 1(a): worst-case probability over (x,y) that the honest
/// measurement misses f(x,y).
double check_correctness(const ProtocolInstance& p);

/// Condition 1(c): minimal eps_B with D(rho_A^y, rho_A^y') <= 2 eps_B for all
/// pairs; Alice's marginal includes her input and transcript as classical
/// registers.
double check_bob_security(const ProtocolInstance& p);

/// Condition 1(b)'s testable part: the X-marginal of the ideal state given
/// (y, z) is uniform over the compatible inputs.
ClassicalDistribution ideal_alice_marginal(const FunctionTable& f, const std::string& y,
                                           const std::string& z);

struct GuessingResult {
    double lower_bound;                  // pretty-good-measurement success
    std::optional<double> exact_binary;  // Helstrom value when |X| = 2
};
/// Bob's probability of guessing Alice's input from his final state for
/// input y.
GuessingResult alice_guessing(const ProtocolInstance& p, const std::string& y);

/// Reference instance: Alice keeps |x>, Bob holds a copy (or, with
/// probability eta, a flagged dummy); honest measurements read the copy.
/// Correctness error is exactly eta for non-constant f, Bob-security error 0.
ProtocolInstance canonical_protocol(const FunctionTable& f, double noise);

/// Precomputed-OT protocol for ot(2,1) from one oblivious_key(2,1): Alice
/// masks her strings with her key, Bob unmasks with his; registers U (Alice),
/// V and M (Bob), E (environment).
ProtocolInstance precomputed_ot_protocol(const ResourceState& resource);

/// Hands the environment registers of the embedded resource to Bob
/// (B' := B + {V, E}); measurements unchanged.
ProtocolInstance give_purification(const ProtocolInstance& p, const ResourceState& resource);

struct AttackResult {
    std::vector<std::string> order;
    std::vector<double> per_step_fail;    // marginal failure probability per step
    double joint_success = 0;             // all extracted values correct
    double extracted_x_accuracy = 0;      // extracted tuple pins down x
    std::vector<double> rotation_overlaps;  // conditioned-Uhlmann overlap per step

    void validate() const;  // union-bound consistency
};

/// Exact simulation of the sequential extraction attack: honest measurement
/// for each y in order, interleaved with the block-diagonal Uhlmann rotations
/// between consecutive ideal state families; the full outcome tree is
/// enumerated per Alice input. The closed-form success guarantees apply to
/// two-party instances (no environment registers), where the conditioned
/// final states are bipartite pure; an instance with a live environment can
/// legitimately resist the attack until give_purification hands it to Bob.
AttackResult extraction_attack(const ProtocolInstance& p,
                               const std::vector<std::string>& order);

/// Per-transcript global pure states for Bob input y (x-superposed).
std::vector<CqBranch> ideal_family(const ProtocolInstance& p, int y_index);

/// H(X | transcript, side registers) for Bob input y, computed exactly from
/// the cq block structure.
double cond_entropy_x_given(const ProtocolInstance& p, int y_index,
                            const std::vector<std::string>& side);

/// Explicitly assembled cq state over registers (x_label, t_label, side);
/// test oracle for the block-structured entropy path. Guarded by kMaxStateDim.
DensityOperator assemble_cq_state(const ProtocolInstance& p, int y_index,
                                  const std::vector<std::string>& side,
                                  const std::string& x_label = "X",
                                  const std::string& t_label = "T");

struct Thm2Experiment {
    double h_x_given_b = 0;
    double h_x_given_bb = 0;
    double gap = 0;           // H(X|B) - H(X|BB')
    double entropy_sum = 0;   // H_max(U|V) + H_max(V|U) of the resource
    double concealment = 0;   // t of the implemented function
    double eps = 0;           // max(correctness, Bob-security error)
    double thm2_rhs = 0;
    bool chain_ok = false;    // gap <= entropy_sum + 1e-8
    bool thm2_ok = false;     // gap >= thm2_rhs - 1e-8
};

/// Entropy-gap experiment: compares Bob's uncertainty about X with and
/// without the resource purification handed over.
Thm2Experiment thm2_experiment(const ProtocolInstance& p, const ResourceState& resource,
                               const std::string& fixed_y,
                               EpsPrimeVariant variant = EpsPrimeVariant::Theorem);

} // namespace sfe
