#pragma once

#include "mbqc/ids.hpp"

#include <functional>
#include <map>

namespace mbqc {

/// XOR of recorded measurement outcomes s_j over `outcomes`, XOR `constant`.
/// The outcome set is kept sorted and duplicate-free; XOR-ing a signal in
/// twice cancels it.
struct Signal {
    std::vector<QubitId> outcomes;
    bool constant = false;

    Signal() = default;
    explicit Signal(std::vector<QubitId> qs, bool c = false) : outcomes(std::move(qs)), constant(c) {
        sort_unique(outcomes);
    }
    static Signal one() { return Signal({}, true); }

    bool trivial() const { return outcomes.empty() && !constant; }
    std::size_t width() const { return outcomes.size(); }

    /// XOR composition: symmetric difference of outcome sets, XOR of constants.
    Signal operator^(const Signal& other) const;
    Signal& operator^=(const Signal& other) {
        *this = *this ^ other;
        return *this;
    }

    bool reads(QubitId q) const { return contains(outcomes, q); }

    /// Evaluate over recorded outcomes; throws if an outcome is missing.
    bool evaluate(const std::map<QubitId, int>& recorded) const;

    bool operator==(const Signal& other) const = default;
};

} // namespace mbqc
