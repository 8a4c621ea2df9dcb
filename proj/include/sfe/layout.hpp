#pragma once

#include <string>
#include <vector>

#include "sfe/config.hpp"
#include "sfe/errors.hpp"

namespace sfe {

struct Register {
    std::string label;
    long dim = 0;
};

/// Ordered list of labeled registers. Register 0 is the most significant
/// factor of the tensor product: a flat index decomposes big-endian.
class RegisterLayout {
public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> regs);

    long total_dim() const { return total_; }
    std::size_t size() const { return regs_.size(); }
    const Register& reg(std::size_t i) const { return regs_[i]; }
    const std::vector<Register>& registers() const { return regs_; }

    bool contains(const std::string& label) const;
    /// Position of a register; throws on unknown label.
    std::size_t position(const std::string& label) const;
    long dim_of(const std::string& label) const { return regs_[position(label)].dim; }

    /// Positions of the given labels, sorted into layout order.
    /// Throws on unknown or duplicate labels.
    std::vector<std::size_t> positions_of(const std::vector<std::string>& labels) const;

    /// Labels not in the given set, in layout order.
    std::vector<std::string> complement(const std::vector<std::string>& labels) const;

    /// Sub-layout of the given labels, in layout order.
    RegisterLayout subset(const std::vector<std::string>& labels) const;

    /// Concatenation; throws on label collision.
    static RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b);

    bool same_as(const RegisterLayout& other) const;

    void decompose(long flat, std::vector<long>& digits) const;
    long compose(const std::vector<long>& digits) const;

private:
    std::vector<Register> regs_;
    std::vector<long> strides_;
    long total_ = 1;
};

/// Index bookkeeping for a register subset: every flat index i of the full
/// space factors as (chosen part c, rest part r), both in layout order.
struct SubsetIndex {
    std::vector<std::size_t> chosen_pos;
    long chosen_dim = 1;
    long rest_dim = 1;
    std::vector<long> chosen_of;  // flat -> chosen part
    std::vector<long> rest_of;    // flat -> rest part
    std::vector<long> full_of;    // c * rest_dim + r -> flat

    long full(long c, long r) const { return full_of[c * rest_dim + r]; }
};

SubsetIndex make_subset_index(const RegisterLayout& layout,
                              const std::vector<std::string>& chosen_labels);

/// Requires the labels to appear in layout order (operator bases stay
/// unambiguous); throws otherwise.
void require_layout_order(const RegisterLayout& layout,
                          const std::vector<std::string>& labels);

} // namespace sfe
