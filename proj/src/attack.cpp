#include "sfe/attack.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sfe {

namespace {

double uniform_prior(const ProtocolInstance& p) { return 1.0 / p.f.x_size(); }

std::map<std::string, const Matrix*> kraus_by_label(const Measurement& m) {
    std::map<std::string, const Matrix*> out;
    for (const auto& o : m.outcomes) out[o.label] = &o.kraus;
    return out;
}

double block_entropy(const Matrix& m) {
    auto vals = hermitian_eigenvalues(m);
    double h = 0;
    for (long i = 0; i < vals.size(); ++i)
        if (vals[i] > kProbCutoff) h -= vals[i] * std::log2(vals[i]);
    return h;
}

} // namespace

void ProtocolInstance::validate(double tol) const {
    f.validate();
    require(branches.size() == static_cast<std::size_t>(f.x_size()),
            "branch table does not cover X");
    std::set<std::string> alice(alice_registers.begin(), alice_registers.end());
    std::set<std::string> bob(bob_registers.begin(), bob_registers.end());
    require(alice.size() == alice_registers.size() && bob.size() == bob_registers.size(),
            "duplicate register in side assignment");
    for (const auto& l : alice_registers) {
        layout.position(l);
        require(!bob.count(l), "register assigned to both sides: " + l);
    }
    for (const auto& l : bob_registers) layout.position(l);

    for (long x = 0; x < f.x_size(); ++x) {
        require(branches[x].size() == static_cast<std::size_t>(f.y_size()),
                "branch table does not cover Y");
        for (long y = 0; y < f.y_size(); ++y) {
            double total = 0;
            std::set<std::string> transcripts;
            for (const auto& b : branches[x][y]) {
                require(b.prob > 0, "branch probabilities must be positive");
                require(b.state.layout.same_as(layout), "branch state layout mismatch");
                require(transcripts.insert(b.transcript).second,
                        "duplicate transcript in a branch family");
                total += b.prob;
            }
            require(std::abs(total - 1.0) <= tol, "branch probabilities must sum to one");
        }
    }
    require(honest.size() == static_cast<std::size_t>(f.y_size()),
            "honest measurement table does not cover Y");
    for (const auto& m : honest) {
        if (!m) continue;
        m->validate(layout, tol);
        for (const auto& t : m->targets)
            require(bob.count(t), "honest measurement acts outside Bob's registers: " + t);
    }
}

std::vector<std::string> ProtocolInstance::env_registers() const {
    std::set<std::string> used(alice_registers.begin(), alice_registers.end());
    used.insert(bob_registers.begin(), bob_registers.end());
    std::vector<std::string> env;
    for (const auto& r : layout.registers())
        if (!used.count(r.label)) env.push_back(r.label);
    return env;
}

double check_correctness(const ProtocolInstance& p) {
    p.validate();
    double worst = 1.0;
    for (long y = 0; y < p.f.y_size(); ++y) {
        require(p.honest[y].has_value(), "missing honest measurement for y = " + p.f.y_labels[y]);
        auto kraus = kraus_by_label(*p.honest[y]);
        auto idx = make_subset_index(p.layout, p.honest[y]->targets);
        for (long x = 0; x < p.f.x_size(); ++x) {
            const std::string& zstar = p.f.z_labels[p.f.value(x, y)];
            double success = 0;
            auto it = kraus.find(zstar);
            if (it != kraus.end())
                for (const auto& b : p.branches[x][y])
                    success += b.prob * apply_subset(b.state.amp, *it->second, idx).squaredNorm();
            worst = std::min(worst, success);
        }
    }
    return 1.0 - worst;
}

double check_bob_security(const ProtocolInstance& p) {
    p.validate();
    require(!p.alice_registers.empty(), "Alice has no registers");
    // Alice's marginal of the purified final state: her input register stays
    // coherent (a malicious Alice may keep her input in superposition), the
    // transcript copy is a classical register. This is the distance the
    // extraction attack's rotations consume.
    std::vector<std::vector<CqDensityBranch>> views;
    for (long y = 0; y < p.f.y_size(); ++y)
        views.push_back(cq_marginals(ideal_family(p, static_cast<int>(y)),
                                     p.alice_registers));
    double worst = 0;
    for (long y = 0; y < p.f.y_size(); ++y)
        for (long y2 = y + 1; y2 < p.f.y_size(); ++y2)
            worst = std::max(worst, cq_trace_distance(views[y], views[y2]));
    return 0.5 * worst;
}

ClassicalDistribution ideal_alice_marginal(const FunctionTable& f, const std::string& y,
                                           const std::string& z) {
    f.validate();
    const int yi = f.y_index(y);
    auto it = std::find(f.z_labels.begin(), f.z_labels.end(), z);
    require(it != f.z_labels.end(), "unknown z label: " + z);
    const int zi = static_cast<int>(it - f.z_labels.begin());
    long count = 0;
    for (long x = 0; x < f.x_size(); ++x)
        if (f.value(x, yi) == zi) ++count;
    require(count > 0, "no input is compatible with (y, z)");
    ClassicalDistribution out;
    out.labels = f.x_labels;
    out.probs.assign(f.x_size(), 0.0);
    for (long x = 0; x < f.x_size(); ++x)
        if (f.value(x, yi) == zi) out.probs[x] = 1.0 / count;
    return out;
}

GuessingResult alice_guessing(const ProtocolInstance& p, const std::string& y) {
    p.validate();
    require(!p.bob_registers.empty(), "Bob has no registers");
    const long yi = p.f.y_index(y);
    auto idx = make_subset_index(p.layout, p.bob_registers);
    const double prior = uniform_prior(p);

    // Weighted Bob-side blocks per transcript, one per Alice input.
    std::map<std::string, std::vector<Matrix>> per_t;
    for (long x = 0; x < p.f.x_size(); ++x)
        for (const auto& b : p.branches[x][yi]) {
            auto [it, fresh] = per_t.try_emplace(
                b.transcript,
                std::vector<Matrix>(p.f.x_size(),
                                    Matrix::Zero(idx.chosen_dim, idx.chosen_dim)));
            it->second[x] += prior * b.prob * marginal_matrix(b.state.amp, idx);
        }

    double pgm = 0;
    for (const auto& [t, mats] : per_t) {
        Matrix avg = Matrix::Zero(idx.chosen_dim, idx.chosen_dim);
        for (const auto& m : mats) avg += m;
        Matrix w = hermitian_pinv_sqrt(avg);
        for (const auto& m : mats) pgm += (w * m * w * m).trace().real();
    }

    GuessingResult out{pgm, std::nullopt};
    if (p.f.x_size() == 2) {
        double dist = 0;
        for (const auto& [t, mats] : per_t)
            dist += hermitian_eigenvalues(mats[0] - mats[1]).cwiseAbs().sum();
        out.exact_binary = 0.5 * (1.0 + dist);
    }
    return out;
}

ProtocolInstance canonical_protocol(const FunctionTable& f, double noise) {
    f.validate();
    require(noise >= 0.0 && noise <= 1.0, "noise must be in [0,1]");
    const long dx = f.x_size();
    ProtocolInstance p;
    p.f = f;
    p.layout = RegisterLayout({{"A", dx}, {"B", dx + 1}});
    p.alice_registers = {"A"};
    p.bob_registers = {"B"};
    p.branches.assign(dx, std::vector<std::vector<Branch>>(f.y_size()));
    for (long x = 0; x < dx; ++x)
        for (long y = 0; y < f.y_size(); ++y) {
            auto& fam = p.branches[x][y];
            if (noise < 1.0) {
                Vector amp = Vector::Zero(dx * (dx + 1));
                amp[x * (dx + 1) + x] = 1.0;
                fam.push_back({"main", 1.0 - noise, PureState(p.layout, std::move(amp))});
            }
            if (noise > 0.0) {
                Vector amp = Vector::Zero(dx * (dx + 1));
                amp[x * (dx + 1) + dx] = 1.0;
                fam.push_back({"noise", noise, PureState(p.layout, std::move(amp))});
            }
        }
    // Honest measurement: read the copy; the dummy row maps to the first
    // output label to keep the measurement complete.
    for (long y = 0; y < f.y_size(); ++y) {
        Measurement m;
        m.targets = {"B"};
        for (long z = 0; z < f.z_size(); ++z) {
            Matrix proj = Matrix::Zero(dx + 1, dx + 1);
            for (long x = 0; x < dx; ++x)
                if (f.value(x, y) == z) proj(x, x) = 1.0;
            if (z == 0) proj(dx, dx) = 1.0;
            m.outcomes.push_back({f.z_labels[z], std::move(proj)});
        }
        p.honest.emplace_back(std::move(m));
    }
    return p;
}

ProtocolInstance precomputed_ot_protocol(const ResourceState& resource) {
    const auto& dist = resource.dist;
    require(dist.u_size() == 4 && dist.v_size() == 4 && dist.support() == 8,
            "precomputed_ot_protocol expects oblivious_key(2,1)");
    for (const auto& e : dist.entries)
        require(std::abs(e.p - 0.125) <= kDefaultTol,
                "precomputed_ot_protocol expects oblivious_key(2,1)");

    ProtocolInstance p;
    p.f = ot_func(2, 1);
    p.layout = RegisterLayout({{"U", 4}, {"V", 4}, {"M", 4}, {"E", 16}});
    p.alice_registers = {"U"};
    p.bob_registers = {"V", "M"};
    p.branches.assign(4, std::vector<std::vector<Branch>>(2));

    auto bit = [](long w, int i) { return (w >> (1 - i)) & 1; };  // two-bit big-endian
    for (long x = 0; x < 4; ++x)
        for (int c = 0; c < 2; ++c) {
            auto& fam = p.branches[x][c];
            for (long u = 0; u < 4; ++u)
                for (int d = 0; d < 2; ++d) {
                    const long rd = bit(u, d);
                    const long v = 2 * d + rd;
                    const int e = c ^ d;
                    const long a0 = bit(x, 0) ^ bit(u, 0 ^ e);
                    const long a1 = bit(x, 1) ^ bit(u, 1 ^ e);
                    const long m = 2 * a0 + a1;
                    Vector amp = Vector::Zero(p.layout.total_dim());
                    amp[((u * 4 + v) * 4 + m) * 16 + (u * 4 + v)] = 1.0;
                    fam.push_back({"e" + std::to_string(e) + ":a" + std::to_string(a0) +
                                       std::to_string(a1),
                                   0.125, PureState(p.layout, std::move(amp))});
                }
        }
    // Bob's honest output is a_c xor r_d, read off (V, M).
    for (int c = 0; c < 2; ++c) {
        Measurement meas;
        meas.targets = {"V", "M"};
        for (long z = 0; z < 2; ++z) {
            Matrix proj = Matrix::Zero(16, 16);
            for (long v = 0; v < 4; ++v)
                for (long m = 0; m < 4; ++m) {
                    const long rd = v & 1;
                    const long ac = bit(m, c);
                    if ((ac ^ rd) == z) proj(v * 4 + m, v * 4 + m) = 1.0;
                }
            meas.outcomes.push_back({p.f.z_labels[z], std::move(proj)});
        }
        p.honest.emplace_back(std::move(meas));
    }
    return p;
}

ProtocolInstance give_purification(const ProtocolInstance& p, const ResourceState& resource) {
    for (const auto& r : resource.state.layout.registers())
        require(p.layout.contains(r.label),
                "protocol does not reference resource register " + r.label);
    ProtocolInstance out = p;
    for (const std::string label : {"V", "E"}) {
        auto& alice = out.alice_registers;
        alice.erase(std::remove(alice.begin(), alice.end(), label), alice.end());
        if (std::find(out.bob_registers.begin(), out.bob_registers.end(), label) ==
            out.bob_registers.end())
            out.bob_registers.push_back(label);
    }
    return out;
}

std::vector<CqBranch> ideal_family(const ProtocolInstance& p, int y_index) {
    const double prior = uniform_prior(p);
    std::map<std::string, Vector> amp;
    std::map<std::string, double> prob;
    for (long x = 0; x < p.f.x_size(); ++x)
        for (const auto& b : p.branches[x][y_index]) {
            auto [it, fresh] =
                amp.try_emplace(b.transcript, Vector::Zero(p.layout.total_dim()));
            it->second += std::sqrt(prior * b.prob) * b.state.amp;
            prob[b.transcript] += prior * b.prob;
        }
    std::vector<CqBranch> out;
    for (auto& [t, a] : amp) {
        if (prob[t] < kProbCutoff) continue;
        out.push_back({t, prob[t], PureState(p.layout, a / a.norm())});
    }
    return out;
}

void AttackResult::validate() const {
    require(joint_success >= -kDefaultTol && joint_success <= 1.0 + kDefaultTol,
            "joint_success out of range");
    double total_fail = 0;
    for (double f : per_step_fail) total_fail += f;
    require(joint_success >= 1.0 - total_fail - kDefaultTol,
            "union-bound consistency violated");
}

AttackResult extraction_attack(const ProtocolInstance& p,
                               const std::vector<std::string>& order) {
    p.validate();
    require(order.size() >= 2, "attack order must list at least two inputs");
    std::vector<long> ys;
    for (const auto& label : order) {
        long y = p.f.y_index(label);
        require(p.honest[y].has_value(), "missing honest measurement for y = " + label);
        ys.push_back(y);
    }

    // Block-diagonal rotations between consecutive ideal families.
    std::vector<ConditionedUhlmann> rotations;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
        rotations.push_back(conditioned_uhlmann(ideal_family(p, ys[i]),
                                                ideal_family(p, ys[i + 1]),
                                                p.bob_registers));

    AttackResult result;
    result.order = order;
    result.per_step_fail.assign(order.size(), 0.0);
    for (const auto& r : rotations) result.rotation_overlaps.push_back(r.achieved_overlap);

    struct Node {
        std::string transcript;
        double prob;
        Vector amp;
        std::vector<int> extracted;  // z index per step
    };

    const double prior = uniform_prior(p);
    double joint = 0, accuracy = 0;
    for (long x = 0; x < p.f.x_size(); ++x) {
        std::vector<Node> nodes;
        for (const auto& b : p.branches[x][ys[0]])
            nodes.push_back({b.transcript, b.prob, b.state.amp, {}});

        for (std::size_t step = 0; step < ys.size(); ++step) {
            const long y = ys[step];
            const auto& m = *p.honest[y];
            auto idx = make_subset_index(p.layout, m.targets);
            const int zstar = p.f.value(x, y);
            std::vector<Node> next;
            for (auto& node : nodes) {
                for (const auto& o : m.outcomes) {
                    Vector post = apply_subset(node.amp, o.kraus, idx);
                    const double q = post.squaredNorm();
                    if (q < kProbCutoff) continue;
                    auto it = std::find(p.f.z_labels.begin(), p.f.z_labels.end(), o.label);
                    require(it != p.f.z_labels.end(),
                            "measurement outcome is not an output label: " + o.label);
                    const int z = static_cast<int>(it - p.f.z_labels.begin());
                    if (z != zstar) result.per_step_fail[step] += prior * node.prob * q;
                    Node child{node.transcript, node.prob * q, post / std::sqrt(q),
                               node.extracted};
                    child.extracted.push_back(z);
                    next.push_back(std::move(child));
                }
            }
            nodes = std::move(next);
            if (step + 1 < ys.size()) {
                const auto& rot = rotations[step];
                auto bidx = make_subset_index(p.layout, rot.bob_side);
                for (auto& node : nodes) {
                    auto it = rot.blocks.find(node.transcript);
                    if (it != rot.blocks.end())
                        node.amp = apply_subset(node.amp, it->second, bidx);
                }
            }
        }

        for (const auto& node : nodes) {
            bool all_correct = true;
            for (std::size_t i = 0; i < ys.size(); ++i)
                if (node.extracted[i] != p.f.value(x, ys[i])) all_correct = false;
            if (all_correct) joint += prior * node.prob;

            long candidates = 0;
            bool contains_x = false;
            for (long xc = 0; xc < p.f.x_size(); ++xc) {
                bool match = true;
                for (std::size_t i = 0; i < ys.size(); ++i)
                    if (p.f.value(xc, ys[i]) != node.extracted[i]) match = false;
                if (match) {
                    ++candidates;
                    if (xc == x) contains_x = true;
                }
            }
            if (candidates == 1 && contains_x) accuracy += prior * node.prob;
        }
    }
    result.joint_success = joint;
    result.extracted_x_accuracy = accuracy;
    result.validate();
    return result;
}

double cond_entropy_x_given(const ProtocolInstance& p, int y_index,
                            const std::vector<std::string>& side) {
    require(!side.empty(), "side register set must be nonempty");
    auto idx = make_subset_index(p.layout, side);
    const double prior = uniform_prior(p);

    std::vector<double> joint_weights;
    double h_blocks_joint = 0;
    std::map<std::string, Matrix> per_t;
    std::map<std::string, double> prob_t;
    for (long x = 0; x < p.f.x_size(); ++x)
        for (const auto& b : p.branches[x][y_index]) {
            const double w = prior * b.prob;
            Matrix sigma = marginal_matrix(b.state.amp, idx);
            joint_weights.push_back(w);
            h_blocks_joint += w * block_entropy(sigma);
            auto [it, fresh] =
                per_t.try_emplace(b.transcript, Matrix::Zero(idx.chosen_dim, idx.chosen_dim));
            it->second += w * sigma;
            prob_t[b.transcript] += w;
        }

    const double h_xts = shannon(joint_weights) + h_blocks_joint;
    double h_ts = 0;
    std::vector<double> t_weights;
    for (const auto& [t, acc] : per_t) {
        const double w = prob_t[t];
        t_weights.push_back(w);
        if (w > kProbCutoff) h_ts += w * block_entropy(acc / w);
    }
    h_ts += shannon(t_weights);
    return h_xts - h_ts;
}

DensityOperator assemble_cq_state(const ProtocolInstance& p, int y_index,
                                  const std::vector<std::string>& side,
                                  const std::string& x_label, const std::string& t_label) {
    require(!p.layout.contains(x_label) && !p.layout.contains(t_label),
            "synthesized register labels collide with the layout");
    std::set<std::string> transcripts;
    for (long x = 0; x < p.f.x_size(); ++x)
        for (const auto& b : p.branches[x][y_index]) transcripts.insert(b.transcript);
    std::vector<std::string> t_order(transcripts.begin(), transcripts.end());

    auto idx = make_subset_index(p.layout, side);
    RegisterLayout layout = RegisterLayout::concat(
        RegisterLayout({{x_label, p.f.x_size()}, {t_label, static_cast<long>(t_order.size())}}),
        p.layout.subset(side));

    const double prior = uniform_prior(p);
    Matrix mat = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (long x = 0; x < p.f.x_size(); ++x)
        for (const auto& b : p.branches[x][y_index]) {
            const long t = std::find(t_order.begin(), t_order.end(), b.transcript) -
                           t_order.begin();
            Matrix sigma = marginal_matrix(b.state.amp, idx);
            const long base = (x * static_cast<long>(t_order.size()) + t) * idx.chosen_dim;
            mat.block(base, base, idx.chosen_dim, idx.chosen_dim) += prior * b.prob * sigma;
        }
    return DensityOperator(std::move(layout), std::move(mat));
}

Thm2Experiment thm2_experiment(const ProtocolInstance& p, const ResourceState& resource,
                               const std::string& fixed_y, EpsPrimeVariant variant) {
    const int y = p.f.y_index(fixed_y);
    Thm2Experiment out;
    out.eps = std::max(check_correctness(p), check_bob_security(p));
    out.h_x_given_b = cond_entropy_x_given(p, y, p.bob_registers);
    ProtocolInstance handed = give_purification(p, resource);
    out.h_x_given_bb = cond_entropy_x_given(handed, y, handed.bob_registers);
    out.gap = out.h_x_given_b - out.h_x_given_bb;
    out.entropy_sum = entropy_sum(resource.dist);
    out.concealment = concealment_t(p.f);
    out.thm2_rhs = thm2_check(out.entropy_sum, out.concealment, p.f.x_size(), p.f.y_size(),
                              out.eps, variant)
                       .rhs;
    out.chain_ok = out.gap <= out.entropy_sum + 1e-8;
    out.thm2_ok = out.gap >= out.thm2_rhs - 1e-8;
    return out;
}

} // namespace sfe
