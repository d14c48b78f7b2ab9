#pragma once

#include "mbqc/angle.hpp"
#include "mbqc/layering.hpp"

#include <variant>

namespace mbqc {

struct Hadamard {
    QubitId q = 0;
    bool operator==(const Hadamard&) const = default;
};

struct RotZ {
    QubitId q = 0;
    Angle angle;
    bool operator==(const RotZ&) const = default;
};

struct ControlledZ {
    QubitId a = 0;
    QubitId b = 0;
    bool operator==(const ControlledZ&) const = default;
};

/// Unbounded fan-out: XORs the control's computational value into every
/// target, |t_1,...,t_k, c> -> |t_1 xor c, ..., t_k xor c, c>. Counts as one
/// gate of size 1 + #targets.
struct FanOut {
    QubitId control = 0;
    std::vector<QubitId> targets;
    bool operator==(const FanOut&) const = default;
};

using Gate = std::variant<Hadamard, RotZ, ControlledZ, FanOut>;

std::vector<QubitId> gate_qubits(const Gate& g);
int gate_size(const Gate& g);

/// Gate list over register V with input and output subsets. Non-input qubits
/// start in |0>; non-output qubits are measured in the standard basis at the
/// end and discarded.
struct Circuit {
    std::vector<QubitId> qubits;
    std::vector<QubitId> inputs;
    std::vector<QubitId> outputs;
    std::vector<Gate> gates;

    QubitId max_id() const;
    bool operator==(const Circuit&) const = default;
};

struct CircuitViolation {
    std::size_t gate_index;
    std::string detail;
};

std::vector<CircuitViolation> validate_circuit(const Circuit& c);
void require_valid_circuit(const Circuit& c, const char* where);

int circuit_size(const Circuit& c);
Layering circuit_layers(const Circuit& c);
int circuit_depth(const Circuit& c);

/// H^{(x)n} . fanout . H^{(x)n} on n qubits: writes the XOR of all inputs
/// onto the last qubit. Depth exactly 3 for n >= 2; identity for n = 1.
Circuit build_parity_via_fanout(int n);

/// Replace every fan-out gate by a balanced copy tree of controlled-NOTs
/// (each H.CZ.H) through fresh |0> ancillas, depth O(log arity). The circuit
/// register grows by the ancillas; they end in |0> and are measured off.
Circuit expand_fanout(const Circuit& c);

Circuit canonical_ids(const Circuit& c);

} // namespace mbqc
