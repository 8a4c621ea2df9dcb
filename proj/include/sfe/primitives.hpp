#pragma once

#include <string>
#include <vector>

#include "sfe/entropy.hpp"
#include "sfe/qstate.hpp"

namespace sfe {

/// Trusted-randomness distribution P_UV, stored sparsely by support entry.
/// Entries are sorted by (u, v) and carry strictly positive mass.
struct JointDistribution {
    struct Entry {
        long u, v;
        double p;
    };

    std::vector<std::string> u_labels, v_labels;
    std::vector<Entry> entries;

    void validate(double tol = kDefaultTol) const;
    long u_size() const { return static_cast<long>(u_labels.size()); }
    long v_size() const { return static_cast<long>(v_labels.size()); }
    long support() const { return static_cast<long>(entries.size()); }

    Eigen::MatrixXd dense() const;  // guarded by kMaxSupport cells
    static JointDistribution from_dense(std::vector<std::string> u_labels,
                                        std::vector<std::string> v_labels,
                                        const Eigen::MatrixXd& table,
                                        double tol = kDefaultTol);
    BipartiteDistribution bipartite() const;  // dense view (u as X, v as Y)
    JointDistribution swapped() const;
};

/// Oblivious key for 1-out-of-n OT of k-bit strings:
/// P((x_0..x_{n-1}), (c, y)) = 1/(n 2^{nk}) iff y = x_c.
JointDistribution oblivious_key(int n, int k);

/// Rabin-style key: U uniform over k-bit strings, V = U with probability p,
/// erasure symbol otherwise.
JointDistribution rabin_key(double p, int k);
inline const std::string kErasureLabel = "⊥";

/// Merges u-values with identical conditional rows P_{V|U=u} (L1 < 1e-9),
/// then v-values symmetrically, iterating to a fixpoint.
JointDistribution min_sufficient_stat(const JointDistribution& p);

/// Purified embedding |psi>_UVE = sum sqrt(P(u,v)) |u,v>_UV |u,v>_E.
struct ResourceState {
    JointDistribution dist;
    PureState state;  // registers U, V, E
};
ResourceState embed_pure(const JointDistribution& p);

double cond_max_entropy_u_given_v(const JointDistribution& p);
double cond_max_entropy_v_given_u(const JointDistribution& p);
/// H_max(U|V) + H_max(V|U).
double entropy_sum(const JointDistribution& p);

/// Product of independent resources; labels become rendered tuples.
JointDistribution product(const JointDistribution& a, const JointDistribution& b);
/// m-fold independent power with flat tuple labels "(a,b,...)".
JointDistribution power(const JointDistribution& p, int m);

} // namespace sfe
