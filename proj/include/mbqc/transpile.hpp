#pragma once

#include "mbqc/circuit.hpp"
#include "mbqc/gadgets.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

struct TranslationReport {
    int input_size = 0;
    int input_depth = 0;
    int output_size = 0;
    int output_depth = 0;

    double size_ratio() const {
        return input_size == 0 ? 0.0 : static_cast<double>(output_size) / input_size;
    }
    double depth_ratio() const {
        return input_depth == 0 ? 0.0 : static_cast<double>(output_depth) / input_depth;
    }
};

struct PatternTranslation {
    Pattern pattern;
    TranslationReport report;
};

struct CircuitTranslation {
    Circuit circuit;
    TranslationReport report;
};

/// Gadget substitution along the circuit's wires: every gate becomes its
/// template pattern, fan-out gates become fanout_pattern, non-input lines are
/// prepared to |0> and discarded lines are read out in the standard basis via
/// an H step. Channel-preserving; size O(size(c)^3), depth O(depth(c)).
PatternTranslation circuit_to_pattern(const Circuit& c);

/// Remove measurement-angle dependencies for angles that are multiples of
/// pi/2 by reinterpreting outcomes classically. Pending corrections are
/// pushed through entangles (picking up Z's on neighbours) and either
/// absorbed into Pauli measurements as outcome flips (substituted through
/// all later signals), folded into the sigma/tau of non-Pauli measurements,
/// or left as trailing corrections on the outputs. Channel-exact.
Pattern pauli_flatten(const Pattern& t);

/// Constant-depth pattern writing the XOR of all n wires onto wire n,
/// built from controlled-NOT gadgets along a balanced tree and flattened.
/// Depth is independent of n; the channel equals the parity permutation.
Pattern parity_pattern(int n);

/// Constant-depth pattern for the fan-out gate on n wires (control last):
/// H-gadgets on every wire around parity_pattern(n).
Pattern fanout_pattern(int n);

/// Layer-by-layer emission into a fan-out circuit: entangles become CZs,
/// a measurement at angle a becomes RotZ(-a) then H with the standard-basis
/// readout deferred to circuit end, and correction layers become
/// constant-depth fragments via parallelize_commuting_diagonal (X via
/// Hadamard basis change). Requires a standardized pattern.
CircuitTranslation pattern_to_fanout_circuit(const Pattern& t);

/// pattern_to_fanout_circuit followed by expand_fanout; depth gains a
/// log(size) factor, no fan-out gates remain.
CircuitTranslation pattern_to_strict_circuit(const Pattern& t);

} // namespace mbqc
