#pragma once

#include "mbqc/ids.hpp"

#include <cstddef>

namespace mbqc {

/// Ordered partition of command (or gate) indices into dependency layers.
/// An item's layer is 1 + the maximum layer among earlier items it depends
/// on, so depth() is the length of the longest chain of dependent items.
struct Layering {
    std::vector<std::vector<std::size_t>> layers;
    std::vector<int> layer_of; // 1-based; index by item position

    int depth() const { return static_cast<int>(layers.size()); }
};

/// Per-item dependency footprint. An earlier item u precedes a later item v
/// when they touch a common qubit quantumly, or when v reads the outcome u
/// measures. Two items that merely read the same outcome are independent:
/// classical fan-out of a recorded bit imposes no quantum ordering.
struct DependencyFootprint {
    std::vector<QubitId> acted;   // qubits acted on quantumly
    std::vector<QubitId> reads;   // outcomes consumed by signals
    QubitId measures = -1;        // measured qubit, or -1
};

Layering layer_by_dependency(const std::vector<DependencyFootprint>& items);

/// Layering by plain domain overlap (acted + read qubits, symmetric). Used by
/// the reorder pass, which must preserve the order of any two commands whose
/// domains intersect.
Layering layer_by_domain_overlap(const std::vector<std::vector<QubitId>>& domains);

} // namespace mbqc
