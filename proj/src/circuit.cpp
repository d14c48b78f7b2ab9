#include "mbqc/circuit.hpp"

#include <map>
#include <set>

namespace mbqc {

std::vector<QubitId> gate_qubits(const Gate& g) {
    return std::visit(
        [](const auto& gate) -> std::vector<QubitId> {
            using T = std::decay_t<decltype(gate)>;
            if constexpr (std::is_same_v<T, Hadamard>) {
                return {gate.q};
            } else if constexpr (std::is_same_v<T, RotZ>) {
                return {gate.q};
            } else if constexpr (std::is_same_v<T, ControlledZ>) {
                std::vector<QubitId> v{gate.a, gate.b};
                sort_unique(v);
                return v;
            } else {
                std::vector<QubitId> v = gate.targets;
                v.push_back(gate.control);
                sort_unique(v);
                return v;
            }
        },
        g);
}

int gate_size(const Gate& g) {
    if (const auto* f = std::get_if<FanOut>(&g)) return 1 + static_cast<int>(f->targets.size());
    return std::holds_alternative<ControlledZ>(g) ? 2 : 1;
}

QubitId Circuit::max_id() const {
    QubitId m = 0;
    for (QubitId q : qubits) m = std::max(m, q);
    return m;
}

std::vector<CircuitViolation> validate_circuit(const Circuit& c) {
    std::vector<CircuitViolation> out;
    constexpr std::size_t kGlobal = static_cast<std::size_t>(-1);
    if (!std::is_sorted(c.qubits.begin(), c.qubits.end()) ||
        std::adjacent_find(c.qubits.begin(), c.qubits.end()) != c.qubits.end())
        out.push_back({kGlobal, "register must be sorted and duplicate-free"});
    if (!is_subset(c.inputs, c.qubits)) out.push_back({kGlobal, "inputs not within register"});
    if (!is_subset(c.outputs, c.qubits)) out.push_back({kGlobal, "outputs not within register"});
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        for (QubitId q : gate_qubits(g))
            if (!contains(c.qubits, q))
                out.push_back({i, "gate acts on qubit " + std::to_string(q) + " outside register"});
        if (const auto* cz = std::get_if<ControlledZ>(&g)) {
            if (cz->a == cz->b) out.push_back({i, "controlled-Z requires two distinct qubits"});
        }
        if (const auto* f = std::get_if<FanOut>(&g)) {
            std::set<QubitId> ts(f->targets.begin(), f->targets.end());
            if (ts.size() != f->targets.size())
                out.push_back({i, "fan-out targets must be distinct"});
            if (ts.count(f->control)) out.push_back({i, "fan-out control cannot be a target"});
            if (f->targets.empty()) out.push_back({i, "fan-out requires at least one target"});
        }
    }
    return out;
}

void require_valid_circuit(const Circuit& c, const char* where) {
    auto report = validate_circuit(c);
    if (report.empty()) return;
    throw Error(std::string(where) + ": invalid circuit: " + report.front().detail);
}

int circuit_size(const Circuit& c) {
    int total = 0;
    for (const Gate& g : c.gates) total += gate_size(g);
    return total;
}

Layering circuit_layers(const Circuit& c) {
    require_valid_circuit(c, "circuit_layers");
    std::vector<DependencyFootprint> items;
    items.reserve(c.gates.size());
    for (const Gate& g : c.gates) {
        DependencyFootprint f;
        f.acted = gate_qubits(g);
        items.push_back(std::move(f));
    }
    return layer_by_dependency(items);
}

int circuit_depth(const Circuit& c) { return circuit_layers(c).depth(); }

Circuit build_parity_via_fanout(int n) {
    if (n < 1) throw Error("build_parity_via_fanout: n must be >= 1");
    Circuit c;
    for (QubitId q = 1; q <= n; ++q) c.qubits.push_back(q);
    c.inputs = c.qubits;
    c.outputs = c.qubits;
    if (n == 1) return c;
    std::vector<QubitId> targets;
    for (QubitId q = 1; q < n; ++q) targets.push_back(q);
    for (QubitId q = 1; q <= n; ++q) c.gates.push_back(Hadamard{q});
    c.gates.push_back(FanOut{n, targets});
    for (QubitId q = 1; q <= n; ++q) c.gates.push_back(Hadamard{q});
    return c;
}

namespace {

void emit_cnot(Circuit& c, QubitId control, QubitId target) {
    c.gates.push_back(Hadamard{target});
    c.gates.push_back(ControlledZ{control, target});
    c.gates.push_back(Hadamard{target});
}

// Copy layers of a balanced doubling tree: sources currently carrying the
// control's value fan into fresh carriers, doubling per layer.
std::vector<std::pair<QubitId, QubitId>> copy_tree_edges(QubitId root,
                                                         const std::vector<QubitId>& carriers) {
    std::vector<std::pair<QubitId, QubitId>> edges;
    std::vector<QubitId> sources{root};
    std::size_t next = 0;
    while (next < carriers.size()) {
        std::vector<QubitId> added;
        for (QubitId s : sources) {
            if (next >= carriers.size()) break;
            edges.emplace_back(s, carriers[next]);
            added.push_back(carriers[next]);
            ++next;
        }
        sources.insert(sources.end(), added.begin(), added.end());
    }
    return edges;
}

} // namespace

Circuit expand_fanout(const Circuit& c) {
    require_valid_circuit(c, "expand_fanout");
    Circuit out;
    out.qubits = c.qubits;
    out.inputs = c.inputs;
    out.outputs = c.outputs;
    FreshIds fresh(c.max_id() + 1);

    for (const Gate& g : c.gates) {
        const auto* f = std::get_if<FanOut>(&g);
        if (!f) {
            out.gates.push_back(g);
            continue;
        }
        if (f->targets.size() == 1) {
            emit_cnot(out, f->control, f->targets.front());
            continue;
        }
        // Copy the control into one |0> carrier per target, XOR carriers into
        // the targets in a single disjoint layer, then uncopy.
        std::vector<QubitId> carriers;
        for (std::size_t i = 0; i < f->targets.size(); ++i) {
            QubitId a = fresh.take();
            carriers.push_back(a);
            out.qubits.push_back(a);
        }
        sort_unique(out.qubits);
        auto edges = copy_tree_edges(f->control, carriers);
        for (auto [src, dst] : edges) emit_cnot(out, src, dst);
        for (std::size_t i = 0; i < f->targets.size(); ++i)
            emit_cnot(out, carriers[i], f->targets[i]);
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) emit_cnot(out, it->first, it->second);
    }
    return out;
}

Circuit canonical_ids(const Circuit& c) {
    std::map<QubitId, QubitId> m;
    QubitId next = 1;
    for (QubitId q : c.qubits) m[q] = next++;
    auto ren = [&](QubitId q) { return m.at(q); };
    Circuit out;
    for (QubitId q : c.qubits) out.qubits.push_back(ren(q));
    for (QubitId q : c.inputs) out.inputs.push_back(ren(q));
    for (QubitId q : c.outputs) out.outputs.push_back(ren(q));
    sort_unique(out.qubits);
    sort_unique(out.inputs);
    sort_unique(out.outputs);
    for (const Gate& g : c.gates) {
        out.gates.push_back(std::visit(
            [&](const auto& gate) -> Gate {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, Hadamard>) {
                    return Hadamard{ren(gate.q)};
                } else if constexpr (std::is_same_v<T, RotZ>) {
                    return RotZ{ren(gate.q), gate.angle};
                } else if constexpr (std::is_same_v<T, ControlledZ>) {
                    return ControlledZ{ren(gate.a), ren(gate.b)};
                } else {
                    FanOut fo{ren(gate.control), {}};
                    for (QubitId t : gate.targets) fo.targets.push_back(ren(t));
                    return fo;
                }
            },
            g));
    }
    return out;
}

} // namespace mbqc
