#include "sfe/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sfe {

namespace {

std::vector<std::string> bit_strings(int n) {
    std::vector<std::string> out;
    out.reserve(1L << n);
    for (long v = 0; v < (1L << n); ++v) {
        std::string s(n, '0');
        for (int b = 0; b < n; ++b)
            if (v & (1L << (n - 1 - b))) s[b] = '1';
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

void JointDistribution::validate(double tol) const {
    double sum = 0;
    long prev_key = -1;
    for (const auto& e : entries) {
        require(e.u >= 0 && e.u < u_size() && e.v >= 0 && e.v < v_size(),
                "support entry out of range");
        long key = e.u * v_size() + e.v;
        require(key > prev_key, "support entries must be sorted and unique");
        prev_key = key;
        require(e.p > 0, "support entries must have positive mass");
        sum += e.p;
    }
    require(std::abs(sum - 1.0) <= tol, "distribution must sum to one");
}

Eigen::MatrixXd JointDistribution::dense() const {
    require(u_size() > 0 && v_size() > 0 && u_size() <= kMaxSupport / v_size(),
            "dense table exceeds the size guard");
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(u_size(), v_size());
    for (const auto& e : entries) table(e.u, e.v) = e.p;
    return table;
}

JointDistribution JointDistribution::from_dense(std::vector<std::string> u_labels,
                                                std::vector<std::string> v_labels,
                                                const Eigen::MatrixXd& table, double tol) {
    JointDistribution out;
    out.u_labels = std::move(u_labels);
    out.v_labels = std::move(v_labels);
    require(table.rows() == out.u_size() && table.cols() == out.v_size(),
            "table shape does not match alphabets");
    for (long u = 0; u < table.rows(); ++u)
        for (long v = 0; v < table.cols(); ++v) {
            require(table(u, v) >= -tol, "probabilities must be nonnegative");
            if (table(u, v) > 0) out.entries.push_back({u, v, table(u, v)});
        }
    out.validate(tol);
    return out;
}

BipartiteDistribution JointDistribution::bipartite() const {
    return {u_labels, v_labels, dense()};
}

JointDistribution JointDistribution::swapped() const {
    JointDistribution out;
    out.u_labels = v_labels;
    out.v_labels = u_labels;
    out.entries.reserve(entries.size());
    for (const auto& e : entries) out.entries.push_back({e.v, e.u, e.p});
    std::sort(out.entries.begin(), out.entries.end(), [&](const Entry& a, const Entry& b) {
        return a.u * out.v_size() + a.v < b.u * out.v_size() + b.v;
    });
    return out;
}

JointDistribution oblivious_key(int n, int k) {
    require(n >= 2 && k >= 1, "oblivious_key requires n >= 2, k >= 1");
    require(static_cast<long>(n) * k <= 24, "oblivious_key exceeds the size guard");
    const long u_count = 1L << (static_cast<long>(n) * k);
    require(n <= kMaxSupport / u_count, "oblivious_key exceeds the size guard");

    JointDistribution p;
    auto strings = bit_strings(k);
    p.u_labels.reserve(u_count);
    for (long u = 0; u < u_count; ++u) {
        std::string label;
        for (int i = 0; i < n; ++i)
            label += strings[(u >> ((n - 1 - i) * k)) & ((1L << k) - 1)];
        p.u_labels.push_back(std::move(label));
    }
    for (int c = 0; c < n; ++c)
        for (const auto& s : strings) p.v_labels.push_back(std::to_string(c) + ":" + s);

    const double mass = 1.0 / (static_cast<double>(n) * static_cast<double>(u_count));
    const long per_c = 1L << k;
    p.entries.reserve(u_count * n);
    for (long u = 0; u < u_count; ++u)
        for (int c = 0; c < n; ++c) {
            long y = (u >> ((n - 1 - c) * k)) & ((1L << k) - 1);
            p.entries.push_back({u, c * per_c + y, mass});
        }
    std::sort(p.entries.begin(), p.entries.end(),
              [&](const JointDistribution::Entry& a, const JointDistribution::Entry& b) {
                  return a.u * p.v_size() + a.v < b.u * p.v_size() + b.v;
              });
    return p;
}

JointDistribution rabin_key(double prob, int k) {
    require(prob > 0.0 && prob < 1.0, "rabin_key requires p in (0,1)");
    require(k >= 1 && k <= 20, "rabin_key requires 1 <= k <= 20");
    JointDistribution p;
    p.u_labels = bit_strings(k);
    p.v_labels = p.u_labels;
    p.v_labels.push_back(kErasureLabel);
    const long count = 1L << k;
    const double uniform = 1.0 / static_cast<double>(count);
    for (long u = 0; u < count; ++u) {
        p.entries.push_back({u, u, prob * uniform});
        p.entries.push_back({u, count, (1.0 - prob) * uniform});
    }
    return p;
}

namespace {

// Groups indices whose normalized conditional rows agree within L1 1e-9.
// Rows are first bucketed by a quantized key, then buckets are merged by
// exact pairwise comparison of representatives.
std::vector<long> group_rows(const std::vector<std::vector<std::pair<long, double>>>& rows) {
    const double grain = 1e-10;
    std::map<std::vector<std::pair<long, long>>, long> buckets;
    std::vector<long> group_of(rows.size());
    std::vector<long> representative;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::pair<long, long>> key;
        key.reserve(rows[i].size());
        for (const auto& [v, p] : rows[i]) key.emplace_back(v, std::llround(p / grain));
        auto [it, fresh] = buckets.try_emplace(key, static_cast<long>(representative.size()));
        if (fresh) representative.push_back(static_cast<long>(i));
        group_of[i] = it->second;
    }
    // Merge buckets whose representatives are within tolerance.
    auto l1 = [&](long a, long b) {
        double d = 0;
        std::size_t ia = 0, ib = 0;
        const auto& ra = rows[a];
        const auto& rb = rows[b];
        while (ia < ra.size() || ib < rb.size()) {
            if (ib == rb.size() || (ia < ra.size() && ra[ia].first < rb[ib].first))
                d += ra[ia++].second;
            else if (ia == ra.size() || rb[ib].first < ra[ia].first)
                d += rb[ib++].second;
            else {
                d += std::abs(ra[ia].second - rb[ib].second);
                ++ia, ++ib;
            }
        }
        return d;
    };
    std::vector<long> remap(representative.size());
    std::iota(remap.begin(), remap.end(), 0);
    if (representative.size() <= 4096) {
        for (std::size_t g = 0; g < representative.size(); ++g)
            for (std::size_t h = 0; h < g; ++h)
                if (remap[h] == static_cast<long>(h) &&
                    l1(representative[g], representative[h]) < 1e-9) {
                    remap[g] = static_cast<long>(h);
                    break;
                }
    }
    for (auto& g : group_of) g = remap[g];
    return group_of;
}

JointDistribution merge_u(const JointDistribution& p) {
    std::vector<std::vector<std::pair<long, double>>> rows(p.u_size());
    std::vector<double> mass(p.u_size(), 0);
    for (const auto& e : p.entries) {
        rows[e.u].emplace_back(e.v, e.p);
        mass[e.u] += e.p;
    }
    for (long u = 0; u < p.u_size(); ++u)
        for (auto& [v, q] : rows[u])
            if (mass[u] > 0) q /= mass[u];
    auto group_of = group_rows(rows);

    // Keep the first member's label of each group, in first-seen order.
    std::map<long, long> first_of_group;
    std::vector<long> new_index(p.u_size());
    JointDistribution out;
    for (long u = 0; u < p.u_size(); ++u) {
        auto [it, fresh] = first_of_group.try_emplace(group_of[u],
                                                      static_cast<long>(out.u_labels.size()));
        if (fresh) out.u_labels.push_back(p.u_labels[u]);
        new_index[u] = it->second;
    }
    out.v_labels = p.v_labels;
    std::map<std::pair<long, long>, double> acc;
    for (const auto& e : p.entries) acc[{new_index[e.u], e.v}] += e.p;
    for (const auto& [uv, q] : acc) out.entries.push_back({uv.first, uv.second, q});
    return out;
}

} // namespace

JointDistribution min_sufficient_stat(const JointDistribution& p) {
    p.validate();
    JointDistribution cur = p;
    for (int pass = 0; pass < 64; ++pass) {
        JointDistribution next = merge_u(cur);
        next = merge_u(next.swapped()).swapped();
        bool stable = next.u_size() == cur.u_size() && next.v_size() == cur.v_size();
        cur = std::move(next);
        if (stable) break;
    }
    return cur;
}

ResourceState embed_pure(const JointDistribution& p) {
    p.validate();
    const long du = p.u_size(), dv = p.v_size();
    const long total = du * dv * du * dv;
    require(du * dv <= kMaxStateDim && total <= kMaxStateDim,
            "embedded resource exceeds the dimension guard");
    RegisterLayout layout({{"U", du}, {"V", dv}, {"E", du * dv}});
    Vector amp = Vector::Zero(total);
    for (const auto& e : p.entries) {
        long env = e.u * dv + e.v;
        amp[(e.u * dv + e.v) * (du * dv) + env] = std::sqrt(e.p);
    }
    return {p, PureState(std::move(layout), std::move(amp))};
}

double cond_max_entropy_u_given_v(const JointDistribution& p) {
    std::vector<double> v_mass(p.v_size(), 0);
    for (const auto& e : p.entries) v_mass[e.v] += e.p;
    std::vector<long> count(p.v_size(), 0);
    for (const auto& e : p.entries)
        if (v_mass[e.v] > kProbCutoff && e.p / v_mass[e.v] > kProbCutoff) ++count[e.v];
    long best = 1;
    for (long c : count) best = std::max(best, c);
    return log2_exact(best);
}

double cond_max_entropy_v_given_u(const JointDistribution& p) {
    return cond_max_entropy_u_given_v(p.swapped());
}

double entropy_sum(const JointDistribution& p) {
    p.validate();
    return cond_max_entropy_u_given_v(p) + cond_max_entropy_v_given_u(p);
}

namespace {

std::string tuple_label(const std::vector<std::string>& parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    out += ")";
    return out;
}

std::vector<std::string> tuple_labels(const std::vector<std::string>& base, int m) {
    double count = std::pow(static_cast<double>(base.size()), m);
    require(count <= static_cast<double>(kMaxSupport), "power exceeds the size guard");
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<std::size_t> odo(m, 0);
    std::vector<std::string> parts(m);
    while (true) {
        for (int i = 0; i < m; ++i) parts[i] = base[odo[i]];
        out.push_back(tuple_label(parts));
        int pos = m - 1;
        while (pos >= 0 && ++odo[pos] == base.size()) odo[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

} // namespace

JointDistribution product(const JointDistribution& a, const JointDistribution& b) {
    double support = static_cast<double>(a.support()) * b.support();
    require(support <= static_cast<double>(kMaxSupport), "product exceeds the size guard");
    JointDistribution out;
    for (const auto& la : a.u_labels)
        for (const auto& lb : b.u_labels) out.u_labels.push_back(tuple_label({la, lb}));
    for (const auto& la : a.v_labels)
        for (const auto& lb : b.v_labels) out.v_labels.push_back(tuple_label({la, lb}));
    out.entries.reserve(a.support() * b.support());
    for (const auto& ea : a.entries)
        for (const auto& eb : b.entries)
            out.entries.push_back({ea.u * b.u_size() + eb.u, ea.v * b.v_size() + eb.v,
                                   ea.p * eb.p});
    std::sort(out.entries.begin(), out.entries.end(),
              [&](const JointDistribution::Entry& x, const JointDistribution::Entry& y) {
                  return x.u * out.v_size() + x.v < y.u * out.v_size() + y.v;
              });
    return out;
}

JointDistribution power(const JointDistribution& p, int m) {
    require(m >= 1, "power requires m >= 1");
    if (m == 1) return p;
    double support = std::pow(static_cast<double>(p.support()), m);
    require(support <= static_cast<double>(kMaxSupport), "power exceeds the size guard");

    JointDistribution out;
    out.u_labels = tuple_labels(p.u_labels, m);
    out.v_labels = tuple_labels(p.v_labels, m);
    out.entries.reserve(static_cast<std::size_t>(support));
    std::vector<std::size_t> odo(m, 0);
    while (true) {
        long u = 0, v = 0;
        double q = 1;
        for (int i = 0; i < m; ++i) {
            const auto& e = p.entries[odo[i]];
            u = u * p.u_size() + e.u;
            v = v * p.v_size() + e.v;
            q *= e.p;
        }
        out.entries.push_back({u, v, q});
        int pos = m - 1;
        while (pos >= 0 && ++odo[pos] == p.entries.size()) odo[pos--] = 0;
        if (pos < 0) break;
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [&](const JointDistribution::Entry& x, const JointDistribution::Entry& y) {
                  return x.u * out.v_size() + x.v < y.u * out.v_size() + y.v;
              });
    return out;
}

} // namespace sfe
