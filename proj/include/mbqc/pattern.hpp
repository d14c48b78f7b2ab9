#pragma once

#include "mbqc/angle.hpp"
#include "mbqc/layering.hpp"
#include "mbqc/signal.hpp"

#include <optional>
#include <variant>

namespace mbqc {

/// Entangling command: controlled-Z between qubits a and b.
struct Entangle {
    QubitId a = 0;
    QubitId b = 0;
    bool operator==(const Entangle&) const = default;
};

/// Measurement of qubit q in the basis {|+_a'>, |-_a'>} with
/// a' = (-1)^sigma * angle + tau * pi. Empty sigma and tau denote a plain
/// measurement. The qubit is destroyed by the measurement.
struct Measure {
    QubitId q = 0;
    Angle angle;
    Signal sigma;
    Signal tau;
    bool dependent() const { return !sigma.trivial() || !tau.trivial(); }
    bool operator==(const Measure&) const = default;
};

/// Pauli X on q, applied iff the signal evaluates to 1.
struct CorrectX {
    QubitId q = 0;
    Signal signal;
    bool operator==(const CorrectX&) const = default;
};

/// Pauli Z on q, applied iff the signal evaluates to 1.
struct CorrectZ {
    QubitId q = 0;
    Signal signal;
    bool operator==(const CorrectZ&) const = default;
};

using Command = std::variant<Entangle, Measure, CorrectX, CorrectZ>;

/// Qubits a command acts on quantumly.
std::vector<QubitId> acted_qubits(const Command& c);
/// Outcomes a command's signals read.
std::vector<QubitId> read_qubits(const Command& c);
/// The measured qubit, if the command is a measurement.
std::optional<QubitId> measured_qubit(const Command& c);
/// Number of qubits affected: 2 for an entangle, 1 otherwise.
int command_size(const Command& c);

/// A measurement-calculus program: register V, inputs I, outputs O and a
/// command sequence stored in execution order (first command runs first).
struct Pattern {
    std::vector<QubitId> qubits;
    std::vector<QubitId> inputs;
    std::vector<QubitId> outputs;
    std::vector<Command> commands;

    static Pattern identity(const std::vector<QubitId>& wires);
    QubitId max_id() const;
    bool operator==(const Pattern&) const = default;
};

struct Violation {
    std::size_t command_index; // SIZE_MAX for register-level violations
    std::string rule;
    std::string detail;
};

/// Well-formedness report; empty when the pattern is valid.
std::vector<Violation> validate(const Pattern& p);
bool is_well_formed(const Pattern& p);
/// Throws Error listing the first violations when invalid.
void require_well_formed(const Pattern& p, const char* where);

/// Total size: sum of command sizes.
int pattern_size(const Pattern& p);

/// Dependency layering (see layering.hpp for the precedence rule).
Layering pattern_layers(const Pattern& p);
int pattern_depth(const Pattern& p);

/// Drop corrections whose signal is trivial (X^0 = Z^0 = identity).
Pattern normalized(Pattern p);

/// Sequential composition t2 after t1. Outputs of t1 are glued to inputs of
/// t2 in ascending order unless an explicit glue map (output of t1 -> input
/// of t2) is given. Qubits of t2 outside its inputs are relabeled fresh above
/// max_id(t1).
Pattern compose_seq(const Pattern& t1, const Pattern& t2);
Pattern compose_seq(const Pattern& t1, const Pattern& t2,
                    const std::vector<std::pair<QubitId, QubitId>>& glue);

/// Parallel (tensor) composition; t2 is relabeled fresh above max_id(t1).
Pattern compose_par(const Pattern& t1, const Pattern& t2);

/// Rewrite away dependent measurements. A sigma dependency becomes an X
/// correction before the measurement; a tau dependency becomes a classical
/// reinterpretation of the outcome (Z before a measurement in the X-Y plane
/// only flips which basis vector was seen), propagated through all later
/// signals. Channel-exact; size at most 3x, depth at most 2x.
Pattern standardize_dependent_measurements(const Pattern& t);

/// Greedy scheduler: stable-sorts commands by domain-overlap layer. Only
/// adjacent commands with disjoint domains ever swap, so the channel is
/// unchanged and the depth never grows.
Pattern reorder_disjoint(const Pattern& t);

/// Relabel qubits to the contiguous range 1..n preserving order.
Pattern canonical_ids(const Pattern& p);

} // namespace mbqc
