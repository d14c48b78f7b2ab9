#include "mbqc/transpile.hpp"

#include "mbqc/parallelize.hpp"

#include <map>
#include <set>

namespace mbqc {

namespace {

/// Builds a pattern wire by wire. Each external line carries a current head
/// qubit; gadgets are instantiated with fresh internal qubits and bound to
/// line heads input-to-output in sorted order.
class WireWeaver {
public:
    WireWeaver() : fresh_(1) {}

    void open_wire(QubitId line, bool is_input) {
        const QubitId q = fresh_.take();
        head_[line] = q;
        pattern_.qubits.push_back(q);
        if (is_input) {
            pattern_.inputs.push_back(q);
            wire_input_[line] = q;
        }
        open_order_.push_back(line);
    }

    void splice(const Pattern& gadget, const std::vector<QubitId>& lines) {
        if (gadget.inputs.size() != lines.size())
            throw Error("splice: gadget arity does not match wire count");
        std::map<QubitId, QubitId> m;
        for (std::size_t i = 0; i < lines.size(); ++i) m[gadget.inputs[i]] = head_.at(lines[i]);
        for (QubitId q : gadget.qubits)
            if (!m.count(q)) {
                m[q] = fresh_.take();
                pattern_.qubits.push_back(m[q]);
            }
        auto ren = [&](QubitId q) { return m.at(q); };
        auto ren_sig = [&](const Signal& s) {
            std::vector<QubitId> qs;
            for (QubitId q : s.outcomes) qs.push_back(ren(q));
            return Signal(std::move(qs), s.constant);
        };
        for (const Command& c : gadget.commands) {
            pattern_.commands.push_back(std::visit(
                [&](const auto& cmd) -> Command {
                    using T = std::decay_t<decltype(cmd)>;
                    if constexpr (std::is_same_v<T, Entangle>) {
                        return Entangle{ren(cmd.a), ren(cmd.b)};
                    } else if constexpr (std::is_same_v<T, Measure>) {
                        return Measure{ren(cmd.q), cmd.angle, ren_sig(cmd.sigma), ren_sig(cmd.tau)};
                    } else if constexpr (std::is_same_v<T, CorrectX>) {
                        return CorrectX{ren(cmd.q), ren_sig(cmd.signal)};
                    } else {
                        return CorrectZ{ren(cmd.q), ren_sig(cmd.signal)};
                    }
                },
                c));
        }
        for (std::size_t i = 0; i < lines.size(); ++i) head_[lines[i]] = ren(gadget.outputs[i]);
    }

    void entangle(QubitId line_a, QubitId line_b) {
        pattern_.commands.push_back(Entangle{head_.at(line_a), head_.at(line_b)});
    }

    /// Measure the wire head; the wire is closed afterwards.
    void measure_head(QubitId line, const Angle& angle) {
        pattern_.commands.push_back(Measure{head_.at(line), angle, {}, {}});
        head_.erase(line);
    }

    /// Close the weave. Qubits are renumbered so that both the sorted input
    /// register and the sorted output register list the wires in their
    /// opening order: each wire's input qubit, then its surviving head, take
    /// the next low ids; internals move to a top block.
    Pattern finish(const std::vector<QubitId>& output_lines) {
        for (QubitId line : output_lines) pattern_.outputs.push_back(head_.at(line));
        sort_unique(pattern_.qubits);
        sort_unique(pattern_.inputs);
        sort_unique(pattern_.outputs);

        std::map<QubitId, QubitId> ren;
        QubitId next = 1;
        std::set<QubitId> out_lines(output_lines.begin(), output_lines.end());
        for (QubitId line : open_order_) {
            auto in = wire_input_.find(line);
            if (in != wire_input_.end()) ren[in->second] = next++;
            if (out_lines.count(line)) {
                const QubitId h = head_.at(line);
                if (!ren.count(h)) ren[h] = next++;
            }
        }
        for (QubitId q : pattern_.qubits)
            if (!ren.count(q)) ren[q] = next++;
        return apply_relabel(ren);
    }

private:
    Pattern apply_relabel(const std::map<QubitId, QubitId>& ren) {
        auto r = [&](QubitId q) { return ren.at(q); };
        auto rsig = [&](const Signal& s) {
            std::vector<QubitId> qs;
            for (QubitId q : s.outcomes) qs.push_back(r(q));
            return Signal(std::move(qs), s.constant);
        };
        Pattern out;
        for (QubitId q : pattern_.qubits) out.qubits.push_back(r(q));
        for (QubitId q : pattern_.inputs) out.inputs.push_back(r(q));
        for (QubitId q : pattern_.outputs) out.outputs.push_back(r(q));
        sort_unique(out.qubits);
        sort_unique(out.inputs);
        sort_unique(out.outputs);
        for (const Command& c : pattern_.commands) {
            out.commands.push_back(std::visit(
                [&](const auto& cmd) -> Command {
                    using T = std::decay_t<decltype(cmd)>;
                    if constexpr (std::is_same_v<T, Entangle>) {
                        return Entangle{r(cmd.a), r(cmd.b)};
                    } else if constexpr (std::is_same_v<T, Measure>) {
                        return Measure{r(cmd.q), cmd.angle, rsig(cmd.sigma), rsig(cmd.tau)};
                    } else if constexpr (std::is_same_v<T, CorrectX>) {
                        return CorrectX{r(cmd.q), rsig(cmd.signal)};
                    } else {
                        return CorrectZ{r(cmd.q), rsig(cmd.signal)};
                    }
                },
                c));
        }
        return out;
    }

    FreshIds fresh_;
    std::map<QubitId, QubitId> head_;
    std::map<QubitId, QubitId> wire_input_;
    std::vector<QubitId> open_order_;
    Pattern pattern_;
};

/// Move all entangle commands to the front, grouped into greedy color
/// classes of pairwise-disjoint commands. Entangles mutually commute and in
/// a flattened pattern every other command that shares a qubit with an
/// entangle comes after it, so the move is channel-preserving; the grouping
/// caps every dependent chain through the entangling phase at the number of
/// classes (bounded by the entanglement graph degree).
Pattern regroup_entangles(const Pattern& t) {
    std::vector<Entangle> entangles;
    std::vector<Command> rest;
    for (const Command& c : t.commands) {
        if (const auto* e = std::get_if<Entangle>(&c))
            entangles.push_back(*e);
        else
            rest.push_back(c);
    }
    std::vector<std::vector<Entangle>> classes;
    std::vector<std::set<QubitId>> used;
    for (const Entangle& e : entangles) {
        bool placed = false;
        for (std::size_t k = 0; k < classes.size() && !placed; ++k) {
            if (!used[k].count(e.a) && !used[k].count(e.b)) {
                classes[k].push_back(e);
                used[k].insert(e.a);
                used[k].insert(e.b);
                placed = true;
            }
        }
        if (!placed) {
            classes.push_back({e});
            used.push_back({e.a, e.b});
        }
    }
    Pattern out;
    out.qubits = t.qubits;
    out.inputs = t.inputs;
    out.outputs = t.outputs;
    for (const auto& cls : classes)
        for (const Entangle& e : cls) out.commands.push_back(e);
    out.commands.insert(out.commands.end(), rest.begin(), rest.end());
    return out;
}

} // namespace

Pattern pauli_flatten(const Pattern& t) {
    require_well_formed(t, "pauli_flatten");

    struct Frame {
        Signal x;
        Signal z;
    };
    std::map<QubitId, Frame> frame;
    std::map<QubitId, Signal> flips; // reading s_q now means s_q xor flips[q]

    auto substituted = [&](const Signal& s) {
        Signal r = s;
        for (QubitId q : s.outcomes) {
            auto it = flips.find(q);
            if (it != flips.end()) r ^= it->second;
        }
        return r;
    };

    Pattern out;
    out.qubits = t.qubits;
    out.inputs = t.inputs;
    out.outputs = t.outputs;

    for (const Command& c : t.commands) {
        if (const auto* e = std::get_if<Entangle>(&c)) {
            // E posts pending X's as Z's on the opposite endpoint.
            const Signal ax = frame[e->a].x;
            const Signal bx = frame[e->b].x;
            frame[e->b].z ^= ax;
            frame[e->a].z ^= bx;
            out.commands.push_back(*e);
        } else if (const auto* m = std::get_if<Measure>(&c)) {
            const Signal sigma = substituted(m->sigma) ^ frame[m->q].x;
            const Signal tau = substituted(m->tau) ^ frame[m->q].z;
            frame.erase(m->q);
            if (m->angle.is_pauli()) {
                out.commands.push_back(Measure{m->q, m->angle, {}, {}});
                const Signal flip = m->angle.is_real_axis() ? tau : sigma ^ tau;
                if (!flip.trivial()) flips[m->q] = flip;
            } else {
                // Non-Pauli measurements keep their adaptivity.
                out.commands.push_back(Measure{m->q, m->angle, sigma, tau});
            }
        } else if (const auto* xc = std::get_if<CorrectX>(&c)) {
            frame[xc->q].x ^= substituted(xc->signal);
        } else if (const auto* zc = std::get_if<CorrectZ>(&c)) {
            frame[zc->q].z ^= substituted(zc->signal);
        }
    }
    // Trailing corrections. X and Z on one qubit reorder freely (global
    // phase only); emitting the one whose sources settle earlier first keeps
    // the depth minimal.
    std::vector<DependencyFootprint> items;
    for (const Command& c : out.commands) {
        DependencyFootprint f;
        f.acted = acted_qubits(c);
        f.reads = read_qubits(c);
        f.measures = measured_qubit(c).value_or(-1);
        items.push_back(std::move(f));
    }
    const Layering prefix = layer_by_dependency(items);
    std::map<QubitId, int> meas_layer;
    std::map<QubitId, int> wire_layer;
    for (std::size_t i = 0; i < out.commands.size(); ++i) {
        if (auto mq = measured_qubit(out.commands[i])) meas_layer[*mq] = prefix.layer_of[i];
        for (QubitId q : acted_qubits(out.commands[i]))
            wire_layer[q] = std::max(wire_layer[q], prefix.layer_of[i]);
    }
    auto read_layer = [&](const Signal& s) {
        int l = 0;
        for (QubitId q : s.outcomes) l = std::max(l, meas_layer[q]);
        return l;
    };
    for (QubitId q : t.outputs) {
        auto it = frame.find(q);
        if (it == frame.end()) continue;
        const Signal& x = it->second.x;
        const Signal& z = it->second.z;
        if (x.trivial() && z.trivial()) continue;
        if (x.trivial()) {
            out.commands.push_back(CorrectZ{q, z});
        } else if (z.trivial()) {
            out.commands.push_back(CorrectX{q, x});
        } else if (read_layer(x) <= read_layer(z)) {
            out.commands.push_back(CorrectX{q, x});
            out.commands.push_back(CorrectZ{q, z});
        } else {
            out.commands.push_back(CorrectZ{q, z});
            out.commands.push_back(CorrectX{q, x});
        }
    }
    return normalized(std::move(out));
}

Pattern parity_pattern(int n) {
    if (n < 1) throw Error("parity_pattern: n must be >= 1");
    if (n == 1) return Pattern::identity({1});

    WireWeaver w;
    const Pattern th = hadamard_gadget();
    for (QubitId line = 1; line <= n; ++line) w.open_wire(line, true);

    // Pad the leaf list to a power of two (at least 4) with |0> dummy wires
    // so every size shares the same local tree shape, including an
    // internal-to-internal level; the realized depth is then identical for
    // every n >= 2.
    std::vector<QubitId> level;
    for (QubitId line = 1; line <= n - 1; ++line) level.push_back(line);
    std::size_t padded = 4;
    while (padded < level.size()) padded *= 2;
    QubitId next_line = n + 1;
    std::vector<QubitId> helper_lines;
    while (level.size() < padded) {
        const QubitId d = next_line++;
        w.open_wire(d, false);
        w.splice(th, {d}); // |+> -> |0>
        helper_lines.push_back(d);
        level.push_back(d);
    }

    // Compute phase: combine pairs into fresh |0> wires, bottom-up. Each
    // combine is the batched pair of controlled-NOTs H.CZ.CZ.H on the node.
    std::vector<std::array<QubitId, 3>> nodes; // node, left child, right child
    while (level.size() > 1) {
        std::vector<QubitId> above;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            const QubitId node = next_line++;
            w.open_wire(node, false);
            w.splice(th, {node});
            w.splice(th, {node});
            w.entangle(level[i], node);
            w.entangle(level[i + 1], node);
            w.splice(th, {node});
            nodes.push_back({node, level[i], level[i + 1]});
            helper_lines.push_back(node);
            above.push_back(node);
        }
        level = above;
    }

    // Fold the root into the accumulator wire n.
    w.splice(th, {n});
    w.entangle(level.front(), n);
    w.splice(th, {n});

    // Uncompute top-down so every helper wire returns to |0>.
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
        const auto [node, left, right] = *it;
        w.splice(th, {node});
        w.entangle(left, node);
        w.entangle(right, node);
        w.splice(th, {node});
    }
    for (QubitId line : helper_lines) w.measure_head(line, Angle::zero());

    std::vector<QubitId> outs;
    for (QubitId line = 1; line <= n; ++line) outs.push_back(line);
    Pattern p = w.finish(outs);
    return reorder_disjoint(regroup_entangles(pauli_flatten(p)));
}

Pattern fanout_pattern(int n) {
    if (n < 1) throw Error("fanout_pattern: n must be >= 1");
    if (n == 1) return Pattern::identity({1});
    Pattern h_layer = hadamard_gadget();
    for (int i = 1; i < n; ++i) h_layer = compose_par(h_layer, hadamard_gadget());
    Pattern p = compose_seq(compose_seq(h_layer, parity_pattern(n)), h_layer);
    return reorder_disjoint(regroup_entangles(pauli_flatten(p)));
}

PatternTranslation circuit_to_pattern(const Circuit& c) {
    require_valid_circuit(c, "circuit_to_pattern");
    WireWeaver w;
    const Pattern th = hadamard_gadget();
    for (QubitId line : c.qubits) {
        const bool is_input = contains(c.inputs, line);
        w.open_wire(line, is_input);
        if (!is_input) w.splice(th, {line}); // |+> -> |0>
    }
    for (const Gate& g : c.gates) {
        if (const auto* h = std::get_if<Hadamard>(&g)) {
            w.splice(th, {h->q});
        } else if (const auto* r = std::get_if<RotZ>(&g)) {
            w.splice(rotz_gadget(r->angle), {r->q});
        } else if (const auto* cz = std::get_if<ControlledZ>(&g)) {
            w.entangle(cz->a, cz->b);
        } else if (const auto* f = std::get_if<FanOut>(&g)) {
            std::vector<QubitId> lines = f->targets;
            lines.push_back(f->control);
            w.splice(fanout_pattern(static_cast<int>(lines.size())), lines);
        }
    }
    // Discarded lines are read out in the standard basis: H then an X-Y
    // plane measurement at angle 0.
    for (QubitId line : c.qubits) {
        if (contains(c.outputs, line)) continue;
        w.splice(th, {line});
        w.measure_head(line, Angle::zero());
    }
    PatternTranslation out;
    out.pattern = w.finish(c.outputs);
    out.report.input_size = circuit_size(c);
    out.report.input_depth = circuit_depth(c);
    out.report.output_size = pattern_size(out.pattern);
    out.report.output_depth = pattern_depth(out.pattern);
    return out;
}

CircuitTranslation pattern_to_fanout_circuit(const Pattern& t) {
    require_well_formed(t, "pattern_to_fanout_circuit");
    for (const Command& c : t.commands)
        if (const auto* m = std::get_if<Measure>(&c))
            if (m->dependent())
                throw Error("pattern_to_fanout_circuit: dependent measurements present; "
                            "standardize the pattern first");

    Circuit out;
    out.qubits = t.qubits;
    out.inputs = t.inputs;
    out.outputs = t.outputs;
    FreshIds fresh(t.max_id() + 1);

    // Non-input pattern qubits start in |+>.
    for (QubitId q : t.qubits)
        if (!contains(t.inputs, q)) out.gates.push_back(Hadamard{q});

    const Layering layers = pattern_layers(t);
    for (const auto& layer : layers.layers) {
        DiagonalBatch zbatch, xbatch;
        std::vector<const Measure*> measures;
        for (std::size_t idx : layer) {
            const Command& c = t.commands[idx];
            if (const auto* e = std::get_if<Entangle>(&c)) {
                out.gates.push_back(ControlledZ{e->a, e->b});
            } else if (const auto* m = std::get_if<Measure>(&c)) {
                measures.push_back(m);
            } else if (const auto* xc = std::get_if<CorrectX>(&c)) {
                xbatch.items.push_back(DiagonalItem{xc->signal, xc->q, true});
            } else if (const auto* zc = std::get_if<CorrectZ>(&c)) {
                zbatch.items.push_back(DiagonalItem{zc->signal, zc->q, false});
            }
        }
        for (const Measure* m : measures) {
            if (!m->angle.is_zero()) out.gates.push_back(RotZ{m->q, m->angle.negated()});
            out.gates.push_back(Hadamard{m->q});
            // The standard-basis readout of this line is deferred to the end
            // of the circuit; every later use of s_q is a quantum control.
        }
        for (DiagonalBatch* batch : {&zbatch, &xbatch}) {
            if (batch->items.empty()) continue;
            DiagonalFragment frag = parallelize_commuting_diagonal(*batch, fresh);
            out.qubits.insert(out.qubits.end(), frag.ancillas.begin(), frag.ancillas.end());
            out.gates.insert(out.gates.end(), frag.gates.begin(), frag.gates.end());
        }
    }
    sort_unique(out.qubits);

    CircuitTranslation res;
    res.circuit = std::move(out);
    res.report.input_size = pattern_size(t);
    res.report.input_depth = layers.depth();
    res.report.output_size = circuit_size(res.circuit);
    res.report.output_depth = circuit_depth(res.circuit);
    return res;
}

CircuitTranslation pattern_to_strict_circuit(const Pattern& t) {
    CircuitTranslation fan = pattern_to_fanout_circuit(t);
    CircuitTranslation res;
    res.circuit = expand_fanout(fan.circuit);
    res.report = fan.report;
    res.report.output_size = circuit_size(res.circuit);
    res.report.output_depth = circuit_depth(res.circuit);
    return res;
}

} // namespace mbqc
