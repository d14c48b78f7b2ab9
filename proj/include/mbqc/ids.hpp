#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbqc {

/// Qubit label. Positive and unique within a register.
using QubitId = int;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Sorted-unique register helpers. Registers are kept as ascending vectors.
inline void sort_unique(std::vector<QubitId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline bool contains(const std::vector<QubitId>& v, QubitId q) {
    return std::binary_search(v.begin(), v.end(), q);
}

/// Position of q in a sorted register; throws if absent.
inline std::size_t index_of(const std::vector<QubitId>& v, QubitId q) {
    auto it = std::lower_bound(v.begin(), v.end(), q);
    if (it == v.end() || *it != q) throw Error("qubit " + std::to_string(q) + " not in register");
    return static_cast<std::size_t>(it - v.begin());
}

inline bool is_subset(const std::vector<QubitId>& sub, const std::vector<QubitId>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

/// Monotone source of unused qubit ids.
class FreshIds {
public:
    explicit FreshIds(QubitId first_free) : next_(first_free) {}
    QubitId take() { return next_++; }
    QubitId peek() const { return next_; }

private:
    QubitId next_;
};

} // namespace mbqc
