#include "mbqc/parallelize.hpp"

#include <map>
#include <set>

namespace mbqc {

namespace {

void validate_batch(const DiagonalBatch& batch) {
    std::set<QubitId> targets;
    std::set<QubitId> x_targets;
    std::set<QubitId> controls;
    for (const DiagonalItem& item : batch.items) {
        if (!targets.insert(item.target).second)
            throw Error("parallelize_commuting_diagonal: overlapping targets in one batch");
        if (item.x_basis) x_targets.insert(item.target);
        for (QubitId q : item.controls.outcomes) {
            if (q == item.target)
                throw Error("parallelize_commuting_diagonal: item controls its own target");
            controls.insert(q);
        }
    }
    for (QubitId q : x_targets)
        if (controls.count(q))
            throw Error("parallelize_commuting_diagonal: X-basis target used as a control; "
                        "items would not commute");
}

} // namespace

DiagonalFragment parallelize_commuting_diagonal(const DiagonalBatch& batch, FreshIds& fresh) {
    validate_batch(batch);
    DiagonalFragment frag;

    // Endpoint demand per qubit: every controlled-Z pair (control, target)
    // consumes one instance of each side; an unconditional phase consumes one
    // instance of the target.
    std::map<QubitId, int> demand;
    for (const DiagonalItem& item : batch.items) {
        if (item.controls.trivial()) continue;
        for (QubitId q : item.controls.outcomes) {
            ++demand[q];
            ++demand[item.target];
        }
        if (item.controls.constant) ++demand[item.target];
    }

    // Layer 1: Hadamard basis change for X-basis targets.
    std::vector<Gate> h_layer;
    for (const DiagonalItem& item : batch.items)
        if (item.x_basis && !item.controls.trivial()) h_layer.push_back(Hadamard{item.target});

    // Layer 2: fan each multiply-used qubit into fresh |0> carriers.
    std::map<QubitId, std::vector<QubitId>> instances;
    std::vector<Gate> fan_layer;
    for (auto [q, uses] : demand) {
        std::vector<QubitId> inst{q};
        if (uses > 1) {
            FanOut f{q, {}};
            for (int i = 1; i < uses; ++i) {
                const QubitId a = fresh.take();
                f.targets.push_back(a);
                frag.ancillas.push_back(a);
                inst.push_back(a);
            }
            fan_layer.push_back(std::move(f));
        }
        instances[q] = std::move(inst);
    }

    // Layer 3: pairwise-disjoint phase gates.
    std::map<QubitId, std::size_t> used;
    auto take_instance = [&](QubitId q) {
        const std::size_t i = used[q]++;
        return instances.at(q)[i];
    };
    std::vector<Gate> phase_layer;
    for (const DiagonalItem& item : batch.items) {
        if (item.controls.trivial()) continue;
        for (QubitId q : item.controls.outcomes)
            phase_layer.push_back(ControlledZ{take_instance(q), take_instance(item.target)});
        if (item.controls.constant)
            phase_layer.push_back(RotZ{take_instance(item.target), Angle::pi()});
    }

    frag.gates = h_layer;
    frag.gates.insert(frag.gates.end(), fan_layer.begin(), fan_layer.end());
    frag.gates.insert(frag.gates.end(), phase_layer.begin(), phase_layer.end());
    // Fan-out is self-inverse: the same layer returns every carrier to |0>.
    frag.gates.insert(frag.gates.end(), fan_layer.begin(), fan_layer.end());
    frag.gates.insert(frag.gates.end(), h_layer.begin(), h_layer.end());
    return frag;
}

Circuit fragment_as_circuit(const DiagonalFragment& fragment, std::vector<QubitId> qubits) {
    Circuit c;
    c.qubits = std::move(qubits);
    c.inputs = c.qubits;
    c.outputs = c.qubits;
    c.qubits.insert(c.qubits.end(), fragment.ancillas.begin(), fragment.ancillas.end());
    sort_unique(c.qubits);
    c.gates = fragment.gates;
    return c;
}

} // namespace mbqc
