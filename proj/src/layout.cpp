#include "sfe/layout.hpp"

#include <algorithm>
#include <set>

namespace sfe {

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    std::set<std::string> seen;
    total_ = 1;
    for (const auto& r : regs_) {
        require(!r.label.empty(), "register label must be nonempty");
        require(r.dim >= 1, "register dimension must be >= 1: " + r.label);
        require(seen.insert(r.label).second, "duplicate register label: " + r.label);
        require(total_ <= kMaxStateDim / r.dim, "layout exceeds the dimension guard");
        total_ *= r.dim;
    }
    strides_.assign(regs_.size(), 1);
    for (std::size_t i = regs_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * regs_[i].dim;
}

bool RegisterLayout::contains(const std::string& label) const {
    return std::any_of(regs_.begin(), regs_.end(),
                       [&](const Register& r) { return r.label == label; });
}

std::size_t RegisterLayout::position(const std::string& label) const {
    for (std::size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].label == label) return i;
    fail("unknown register label: " + label);
}

std::vector<std::size_t> RegisterLayout::positions_of(
    const std::vector<std::string>& labels) const {
    std::vector<std::size_t> pos;
    pos.reserve(labels.size());
    for (const auto& l : labels) pos.push_back(position(l));
    std::sort(pos.begin(), pos.end());
    require(std::adjacent_find(pos.begin(), pos.end()) == pos.end(),
            "duplicate register label in selection");
    return pos;
}

std::vector<std::string> RegisterLayout::complement(
    const std::vector<std::string>& labels) const {
    auto pos = positions_of(labels);
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < regs_.size(); ++i)
        if (!std::binary_search(pos.begin(), pos.end(), i)) rest.push_back(regs_[i].label);
    return rest;
}

RegisterLayout RegisterLayout::subset(const std::vector<std::string>& labels) const {
    std::vector<Register> regs;
    for (auto p : positions_of(labels)) regs.push_back(regs_[p]);
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& a, const RegisterLayout& b) {
    std::vector<Register> regs = a.regs_;
    for (const auto& r : b.regs_) {
        require(!a.contains(r.label), "register label collision: " + r.label);
        regs.push_back(r);
    }
    return RegisterLayout(std::move(regs));
}

bool RegisterLayout::same_as(const RegisterLayout& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (std::size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].label != other.regs_[i].label || regs_[i].dim != other.regs_[i].dim)
            return false;
    return true;
}

void RegisterLayout::decompose(long flat, std::vector<long>& digits) const {
    digits.resize(regs_.size());
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        digits[i] = flat / strides_[i];
        flat %= strides_[i];
    }
}

long RegisterLayout::compose(const std::vector<long>& digits) const {
    long flat = 0;
    for (std::size_t i = 0; i < regs_.size(); ++i) flat += digits[i] * strides_[i];
    return flat;
}

SubsetIndex make_subset_index(const RegisterLayout& layout,
                              const std::vector<std::string>& chosen_labels) {
    require(!chosen_labels.empty(), "register selection must be nonempty");
    SubsetIndex idx;
    idx.chosen_pos = layout.positions_of(chosen_labels);
    std::vector<bool> is_chosen(layout.size(), false);
    for (auto p : idx.chosen_pos) is_chosen[p] = true;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (is_chosen[i])
            idx.chosen_dim *= layout.reg(i).dim;
        else
            idx.rest_dim *= layout.reg(i).dim;
    }
    const long total = layout.total_dim();
    idx.chosen_of.resize(total);
    idx.rest_of.resize(total);
    idx.full_of.resize(total);
    std::vector<long> digits;
    for (long flat = 0; flat < total; ++flat) {
        layout.decompose(flat, digits);
        long c = 0, r = 0;
        for (std::size_t i = 0; i < layout.size(); ++i) {
            if (is_chosen[i])
                c = c * layout.reg(i).dim + digits[i];
            else
                r = r * layout.reg(i).dim + digits[i];
        }
        idx.chosen_of[flat] = c;
        idx.rest_of[flat] = r;
        idx.full_of[c * idx.rest_dim + r] = flat;
    }
    return idx;
}

void require_layout_order(const RegisterLayout& layout,
                          const std::vector<std::string>& labels) {
    std::size_t prev = 0;
    bool first = true;
    for (const auto& l : labels) {
        auto p = layout.position(l);
        require(first || p > prev, "register labels must be listed in layout order");
        prev = p;
        first = false;
    }
}

} // namespace sfe
