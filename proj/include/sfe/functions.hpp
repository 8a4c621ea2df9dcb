#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfe/entropy.hpp"

namespace sfe {

/// Finite bivariate function f: X x Y -> Z as a table of z-indices.
struct FunctionTable {
    std::vector<std::string> x_labels, y_labels, z_labels;
    std::vector<std::vector<int>> table;  // [x][y] -> z index

    void validate() const;
    int value(int x, int y) const { return table[x][y]; }
    long x_size() const { return static_cast<long>(x_labels.size()); }
    long y_size() const { return static_cast<long>(y_labels.size()); }
    long z_size() const { return static_cast<long>(z_labels.size()); }
    int x_index(const std::string& label) const;
    int y_index(const std::string& label) const;
};

struct TrivialityResult {
    bool non_trivial;
    std::optional<std::string> witness_y;  // set when non_trivial is false
};
/// Non-trivial (partially concealing): every column has a repeated value.
TrivialityResult is_non_trivial(const FunctionTable& f);

struct RedundancyResult {
    bool non_redundant;
    std::optional<std::pair<std::string, std::string>> witness;  // duplicate rows
};
/// Non-redundant: all rows pairwise distinct.
RedundancyResult is_non_redundant(const FunctionTable& f);

/// Drops duplicate rows, keeping the lexicographically smallest input label of
/// each duplicate class.
FunctionTable remove_redundant(const FunctionTable& f);

/// Concealment parameter t = min_y H(X | f(X,y)) under a uniform X.
double concealment_t(const FunctionTable& f);
/// Same, also reporting which column attains the minimum.
std::pair<double, std::string> concealment_t_argmin(const FunctionTable& f);

// Built-in tables.
FunctionTable ip_func(int n);                     // inner product mod 2 on n-bit strings
FunctionTable eq_func(int n);                     // equality on n-bit strings
FunctionTable eq_restricted_func(int n, int k);   // equality, both sides cut to first 2^k inputs
FunctionTable ot_func(int n, int k);              // f((x_0..x_{n-1}), c) = x_c, k-bit strings

/// Parses "ip(3)", "eq(2)", "eq_restricted(4,2)", "ot(2,1)".
FunctionTable builtin_function(const std::string& name);

} // namespace sfe
