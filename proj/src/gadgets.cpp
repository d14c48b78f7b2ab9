#include "mbqc/gadgets.hpp"

namespace mbqc {

Pattern hadamard_gadget() {
    Pattern p;
    p.qubits = {1, 2};
    p.inputs = {1};
    p.outputs = {2};
    p.commands = {Entangle{1, 2}, Measure{1, Angle::zero(), {}, {}}, CorrectX{2, Signal({1})}};
    return p;
}

Pattern rotz_gadget(const Angle& angle) {
    Pattern p;
    p.qubits = {1, 2, 3};
    p.inputs = {1};
    p.outputs = {3};
    p.commands = {Entangle{1, 2},
                  Measure{1, angle.negated(), {}, {}},
                  CorrectX{2, Signal({1})},
                  Entangle{2, 3},
                  Measure{2, Angle::zero(), {}, {}},
                  CorrectX{3, Signal({2})}};
    return p;
}

Pattern controlled_z_gadget() {
    Pattern p;
    p.qubits = {1, 2};
    p.inputs = {1, 2};
    p.outputs = {1, 2};
    p.commands = {Entangle{1, 2}};
    return p;
}

Pattern gate_gadget(const Gate& g) {
    return std::visit(
        [](const auto& gate) -> Pattern {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, Hadamard>) {
                return hadamard_gadget();
            } else if constexpr (std::is_same_v<T, RotZ>) {
                return rotz_gadget(gate.angle);
            } else if constexpr (std::is_same_v<T, ControlledZ>) {
                return controlled_z_gadget();
            } else {
                throw Error("gate_gadget: fan-out has no fixed-size template; use fanout_pattern");
            }
        },
        g);
}

} // namespace mbqc
