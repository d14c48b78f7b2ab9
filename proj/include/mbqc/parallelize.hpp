#pragma once

#include "mbqc/circuit.hpp"
#include "mbqc/signal.hpp"

namespace mbqc {

/// One classically-described controlled-phase gate: apply Z (or HZH = X) on
/// `target` iff the XOR over `controls` is 1. The controls signal reads
/// circuit lines; a set constant bit makes the gate unconditional.
struct DiagonalItem {
    Signal controls;
    QubitId target = 0;
    bool x_basis = false; // true: X-conjugated-Z (Hadamard basis change on the target)
};

/// A set of pairwise-commuting controlled-phase gates applied as one
/// constant-depth fragment. Targets are pairwise distinct and an X-basis
/// target may not appear as a control elsewhere in the batch.
struct DiagonalBatch {
    std::vector<DiagonalItem> items;
};

/// Constant-depth realization: basis-change layer, one fan-out layer copying
/// every multiply-used qubit into fresh |0> ancillas, one layer of disjoint
/// controlled-Z / RotZ(pi) gates, then the two inverse layers. At most five
/// layers regardless of batch size; ancillas return to |0>.
struct DiagonalFragment {
    std::vector<Gate> gates;
    std::vector<QubitId> ancillas;
};

DiagonalFragment parallelize_commuting_diagonal(const DiagonalBatch& batch, FreshIds& fresh);

/// Wrap a fragment into a standalone circuit over the given register (plus
/// the fragment's ancillas) for direct inspection and simulation.
Circuit fragment_as_circuit(const DiagonalFragment& fragment, std::vector<QubitId> qubits);

} // namespace mbqc
