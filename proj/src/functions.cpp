#include "sfe/functions.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <set>

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

void check_cells_guard(long x, long y) {
    require(x >= 1 && y >= 1 && x <= kMaxFunctionCells / y,
            "function table exceeds the size guard");
}

} // namespace

void FunctionTable::validate() const {
    require(!x_labels.empty() && !y_labels.empty() && !z_labels.empty(),
            "function alphabets must be nonempty");
    require(table.size() == x_labels.size(), "table row count does not match |X|");
    for (const auto& row : table) {
        require(row.size() == y_labels.size(), "table column count does not match |Y|");
        for (int z : row)
            require(z >= 0 && z < z_size(), "table entry is not a valid z-index");
    }
}

int FunctionTable::x_index(const std::string& label) const {
    auto it = std::find(x_labels.begin(), x_labels.end(), label);
    require(it != x_labels.end(), "unknown x label: " + label);
    return static_cast<int>(it - x_labels.begin());
}

int FunctionTable::y_index(const std::string& label) const {
    auto it = std::find(y_labels.begin(), y_labels.end(), label);
    require(it != y_labels.end(), "unknown y label: " + label);
    return static_cast<int>(it - y_labels.begin());
}

TrivialityResult is_non_trivial(const FunctionTable& f) {
    f.validate();
    for (long y = 0; y < f.y_size(); ++y) {
        std::set<int> seen;
        bool repeated = false;
        for (long x = 0; x < f.x_size(); ++x)
            if (!seen.insert(f.value(x, y)).second) {
                repeated = true;
                break;
            }
        if (!repeated) return {false, f.y_labels[y]};
    }
    return {true, std::nullopt};
}

RedundancyResult is_non_redundant(const FunctionTable& f) {
    f.validate();
    std::map<std::vector<int>, long> seen;
    for (long x = 0; x < f.x_size(); ++x) {
        auto [it, fresh] = seen.try_emplace(f.table[x], x);
        if (!fresh)
            return {false, std::make_pair(f.x_labels[it->second], f.x_labels[x])};
    }
    return {true, std::nullopt};
}

FunctionTable remove_redundant(const FunctionTable& f) {
    f.validate();
    // Pick the lexicographically smallest label of each duplicate-row class.
    std::map<std::vector<int>, long> keeper;
    for (long x = 0; x < f.x_size(); ++x) {
        auto [it, fresh] = keeper.try_emplace(f.table[x], x);
        if (!fresh && f.x_labels[x] < f.x_labels[it->second]) it->second = x;
    }
    std::set<long> kept;
    for (const auto& [row, x] : keeper) kept.insert(x);
    FunctionTable out;
    out.y_labels = f.y_labels;
    out.z_labels = f.z_labels;
    for (long x : kept) {
        out.x_labels.push_back(f.x_labels[x]);
        out.table.push_back(f.table[x]);
    }
    return out;
}

std::pair<double, std::string> concealment_t_argmin(const FunctionTable& f) {
    f.validate();
    double best = 0;
    std::string arg;
    for (long y = 0; y < f.y_size(); ++y) {
        // Uniform X: H(X | f(X,y)) = sum_z (|preimage_z| / |X|) log2 |preimage_z|.
        std::vector<long> count(f.z_size(), 0);
        for (long x = 0; x < f.x_size(); ++x) ++count[f.value(x, y)];
        double h = 0;
        for (long c : count)
            if (c > 0) h += static_cast<double>(c) / f.x_size() * log2_exact(c);
        if (y == 0 || h < best) {
            best = h;
            arg = f.y_labels[y];
        }
    }
    return {best, arg};
}

double concealment_t(const FunctionTable& f) { return concealment_t_argmin(f).first; }

FunctionTable ip_func(int n) {
    require(n >= 1, "ip requires n >= 1");
    check_cells_guard(1L << n, 1L << n);
    FunctionTable f;
    f.x_labels = bit_strings(n);
    f.y_labels = f.x_labels;
    f.z_labels = {"0", "1"};
    f.table.assign(1L << n, std::vector<int>(1L << n));
    for (long x = 0; x < (1L << n); ++x)
        for (long y = 0; y < (1L << n); ++y)
            f.table[x][y] = static_cast<int>(std::popcount(static_cast<unsigned long>(x & y)) & 1);
    return f;
}

FunctionTable eq_func(int n) {
    require(n >= 1, "eq requires n >= 1");
    check_cells_guard(1L << n, 1L << n);
    FunctionTable f;
    f.x_labels = bit_strings(n);
    f.y_labels = f.x_labels;
    f.z_labels = {"0", "1"};
    f.table.assign(1L << n, std::vector<int>(1L << n, 0));
    for (long x = 0; x < (1L << n); ++x) f.table[x][x] = 1;
    return f;
}

FunctionTable eq_restricted_func(int n, int k) {
    require(k >= 1 && k <= n, "eq_restricted requires 1 <= k <= n");
    auto full = eq_func(n);
    const long m = 1L << k;
    FunctionTable f;
    f.x_labels.assign(full.x_labels.begin(), full.x_labels.begin() + m);
    f.y_labels = f.x_labels;
    f.z_labels = full.z_labels;
    f.table.assign(m, std::vector<int>(m, 0));
    for (long x = 0; x < m; ++x) f.table[x][x] = 1;
    return f;
}

FunctionTable ot_func(int n, int k) {
    require(n >= 2 && k >= 1, "ot requires n >= 2, k >= 1");
    require(static_cast<long>(n) * k <= 20, "ot table exceeds the size guard");
    check_cells_guard(1L << (n * k), n);
    FunctionTable f;
    auto strings = bit_strings(k);
    // x label: concatenated strings; y label: the choice index.
    for (long u = 0; u < (1L << (n * k)); ++u) {
        std::string label;
        for (int i = 0; i < n; ++i) {
            long part = (u >> ((n - 1 - i) * k)) & ((1L << k) - 1);
            label += strings[part];
        }
        f.x_labels.push_back(std::move(label));
    }
    for (int c = 0; c < n; ++c) f.y_labels.push_back(std::to_string(c));
    f.z_labels = strings;
    f.table.assign(1L << (n * k), std::vector<int>(n));
    for (long u = 0; u < (1L << (n * k)); ++u)
        for (int c = 0; c < n; ++c)
            f.table[u][c] = static_cast<int>((u >> ((n - 1 - c) * k)) & ((1L << k) - 1));
    return f;
}

FunctionTable builtin_function(const std::string& name) {
    int n = 0, k = 0;
    if (std::sscanf(name.c_str(), "ip(%d)", &n) == 1) return ip_func(n);
    if (std::sscanf(name.c_str(), "eq_restricted(%d,%d)", &n, &k) == 2)
        return eq_restricted_func(n, k);
    if (std::sscanf(name.c_str(), "eq(%d)", &n) == 1) return eq_func(n);
    if (std::sscanf(name.c_str(), "ot(%d,%d)", &n, &k) == 2) return ot_func(n, k);
    fail("unknown builtin function: " + name);
}

} // namespace sfe
