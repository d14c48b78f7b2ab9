#pragma once

#include "mbqc/circuit.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

// Per-gate measurement-pattern templates. Wire qubits are numbered so that
// sorted inputs and sorted outputs correspond wire by wire.
//
// Sign convention: measuring a teleportation step at angle b realizes
// H.Rz(-b), so the rotation template for RotZ(a) measures at -a. Fixed once
// against the channel oracle in the tests.

/// t_H: ({1,2},{1},{2}, E12 M1^0 X2^{s1}).
Pattern hadamard_gadget();

/// Rotation template: E12 M1^{-a} X2^{s1} E23 M2^0 X3^{s2}; channel Rz(a).
Pattern rotz_gadget(const Angle& angle);

/// t_CZ: ({1,2},{1,2},{1,2}, E12).
Pattern controlled_z_gadget();

/// Template for a gate in the fixed basis; fan-out is handled by
/// fanout_pattern in the transpiler.
Pattern gate_gadget(const Gate& g);

} // namespace mbqc
