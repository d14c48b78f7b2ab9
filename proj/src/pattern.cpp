#include "mbqc/pattern.hpp"

#include <map>
#include <set>
#include <sstream>

namespace mbqc {

std::vector<QubitId> acted_qubits(const Command& c) {
    return std::visit(
        [](const auto& cmd) -> std::vector<QubitId> {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, Entangle>) {
                std::vector<QubitId> v{cmd.a, cmd.b};
                sort_unique(v);
                return v;
            } else {
                return {cmd.q};
            }
        },
        c);
}

std::vector<QubitId> read_qubits(const Command& c) {
    return std::visit(
        [](const auto& cmd) -> std::vector<QubitId> {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, Entangle>) {
                return {};
            } else if constexpr (std::is_same_v<T, Measure>) {
                std::vector<QubitId> v = cmd.sigma.outcomes;
                v.insert(v.end(), cmd.tau.outcomes.begin(), cmd.tau.outcomes.end());
                sort_unique(v);
                return v;
            } else {
                return cmd.signal.outcomes;
            }
        },
        c);
}

std::optional<QubitId> measured_qubit(const Command& c) {
    if (const auto* m = std::get_if<Measure>(&c)) return m->q;
    return std::nullopt;
}

int command_size(const Command& c) { return std::holds_alternative<Entangle>(c) ? 2 : 1; }

Pattern Pattern::identity(const std::vector<QubitId>& wires) {
    Pattern p;
    p.qubits = wires;
    sort_unique(p.qubits);
    p.inputs = p.qubits;
    p.outputs = p.qubits;
    return p;
}

QubitId Pattern::max_id() const {
    QubitId m = 0;
    for (QubitId q : qubits) m = std::max(m, q);
    return m;
}

std::vector<Violation> validate(const Pattern& p) {
    std::vector<Violation> out;
    constexpr std::size_t kGlobal = static_cast<std::size_t>(-1);

    std::vector<QubitId> reg = p.qubits;
    if (!std::is_sorted(reg.begin(), reg.end()) ||
        std::adjacent_find(reg.begin(), reg.end()) != reg.end())
        out.push_back({kGlobal, "register", "register must be sorted and duplicate-free"});
    for (QubitId q : reg)
        if (q <= 0) out.push_back({kGlobal, "register", "qubit ids must be positive"});
    if (!is_subset(p.inputs, reg)) out.push_back({kGlobal, "inputs", "inputs not within register"});
    if (!is_subset(p.outputs, reg)) out.push_back({kGlobal, "outputs", "outputs not within register"});

    std::set<QubitId> measured;
    for (std::size_t i = 0; i < p.commands.size(); ++i) {
        const Command& c = p.commands[i];
        for (QubitId q : acted_qubits(c))
            if (!contains(reg, q))
                out.push_back({i, "register", "command acts on qubit " + std::to_string(q) +
                                                  " outside the register"});
        for (QubitId q : acted_qubits(c))
            if (measured.count(q))
                out.push_back({i, "measured-qubit",
                               "command on measured qubit " + std::to_string(q)});
        for (QubitId q : read_qubits(c)) {
            if (!contains(reg, q))
                out.push_back({i, "register", "signal reads qubit " + std::to_string(q) +
                                                  " outside the register"});
            else if (!measured.count(q))
                out.push_back({i, "signal-order",
                               "signal references unmeasured qubit " + std::to_string(q)});
        }
        if (const auto* e = std::get_if<Entangle>(&c)) {
            if (e->a == e->b)
                out.push_back({i, "entangle", "entangle requires two distinct qubits"});
        }
        if (const auto* m = std::get_if<Measure>(&c)) {
            if (contains(p.outputs, m->q))
                out.push_back({i, "output-measured",
                               "output qubit " + std::to_string(m->q) + " is measured"});
            measured.insert(m->q);
        }
    }
    for (QubitId q : reg)
        if (!contains(p.outputs, q) && !measured.count(q))
            out.push_back(
                {kGlobal, "unmeasured", "non-output qubit " + std::to_string(q) + " never measured"});
    return out;
}

bool is_well_formed(const Pattern& p) { return validate(p).empty(); }

void require_well_formed(const Pattern& p, const char* where) {
    auto report = validate(p);
    if (report.empty()) return;
    std::ostringstream os;
    os << where << ": ill-formed pattern:";
    std::size_t shown = 0;
    for (const auto& v : report) {
        os << " [" << v.rule << "] " << v.detail << ";";
        if (++shown == 4) break;
    }
    throw Error(os.str());
}

int pattern_size(const Pattern& p) {
    int total = 0;
    for (const Command& c : p.commands) total += command_size(c);
    return total;
}

Layering pattern_layers(const Pattern& p) {
    require_well_formed(p, "pattern_layers");
    std::vector<DependencyFootprint> items;
    items.reserve(p.commands.size());
    for (const Command& c : p.commands) {
        DependencyFootprint f;
        f.acted = acted_qubits(c);
        f.reads = read_qubits(c);
        f.measures = measured_qubit(c).value_or(-1);
        items.push_back(std::move(f));
    }
    return layer_by_dependency(items);
}

int pattern_depth(const Pattern& p) { return pattern_layers(p).depth(); }

Pattern normalized(Pattern p) {
    std::vector<Command> kept;
    kept.reserve(p.commands.size());
    for (Command& c : p.commands) {
        if (const auto* x = std::get_if<CorrectX>(&c); x && x->signal.trivial()) continue;
        if (const auto* z = std::get_if<CorrectZ>(&c); z && z->signal.trivial()) continue;
        kept.push_back(std::move(c));
    }
    p.commands = std::move(kept);
    return p;
}

namespace {

QubitId mapped(const std::map<QubitId, QubitId>& m, QubitId q) {
    auto it = m.find(q);
    return it == m.end() ? q : it->second;
}

Signal relabel(const Signal& s, const std::map<QubitId, QubitId>& m) {
    std::vector<QubitId> qs;
    qs.reserve(s.outcomes.size());
    for (QubitId q : s.outcomes) qs.push_back(mapped(m, q));
    return Signal(std::move(qs), s.constant);
}

Command relabel(const Command& c, const std::map<QubitId, QubitId>& m) {
    return std::visit(
        [&](const auto& cmd) -> Command {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, Entangle>) {
                return Entangle{mapped(m, cmd.a), mapped(m, cmd.b)};
            } else if constexpr (std::is_same_v<T, Measure>) {
                return Measure{mapped(m, cmd.q), cmd.angle, relabel(cmd.sigma, m),
                               relabel(cmd.tau, m)};
            } else if constexpr (std::is_same_v<T, CorrectX>) {
                return CorrectX{mapped(m, cmd.q), relabel(cmd.signal, m)};
            } else {
                return CorrectZ{mapped(m, cmd.q), relabel(cmd.signal, m)};
            }
        },
        c);
}

Pattern relabel(const Pattern& p, const std::map<QubitId, QubitId>& m) {
    Pattern out;
    for (QubitId q : p.qubits) out.qubits.push_back(mapped(m, q));
    for (QubitId q : p.inputs) out.inputs.push_back(mapped(m, q));
    for (QubitId q : p.outputs) out.outputs.push_back(mapped(m, q));
    sort_unique(out.qubits);
    sort_unique(out.inputs);
    sort_unique(out.outputs);
    for (const Command& c : p.commands) out.commands.push_back(relabel(c, m));
    return out;
}

} // namespace

Pattern canonical_ids(const Pattern& p) {
    std::map<QubitId, QubitId> m;
    QubitId next = 1;
    for (QubitId q : p.qubits) m[q] = next++;
    return relabel(p, m);
}

Pattern compose_seq(const Pattern& t1, const Pattern& t2) {
    if (t1.outputs.size() != t2.inputs.size())
        throw Error("compose_seq: |outputs| of first operand (" +
                    std::to_string(t1.outputs.size()) + ") != |inputs| of second (" +
                    std::to_string(t2.inputs.size()) + ")");
    std::vector<std::pair<QubitId, QubitId>> glue;
    for (std::size_t i = 0; i < t1.outputs.size(); ++i)
        glue.emplace_back(t1.outputs[i], t2.inputs[i]);
    return compose_seq(t1, t2, glue);
}

Pattern compose_seq(const Pattern& t1, const Pattern& t2,
                    const std::vector<std::pair<QubitId, QubitId>>& glue) {
    if (glue.size() != t1.outputs.size() || glue.size() != t2.inputs.size())
        throw Error("compose_seq: glue must be a bijection between outputs and inputs");
    std::map<QubitId, QubitId> m;
    {
        std::set<QubitId> seen_out, seen_in;
        for (auto [o, i] : glue) {
            if (!contains(t1.outputs, o) || !contains(t2.inputs, i))
                throw Error("compose_seq: glue pairs must map outputs of t1 to inputs of t2");
            if (!seen_out.insert(o).second || !seen_in.insert(i).second)
                throw Error("compose_seq: glue must be a bijection between outputs and inputs");
            m[i] = o;
        }
    }
    const QubitId offset = t1.max_id();
    for (QubitId q : t2.qubits)
        if (!m.count(q)) m[q] = q + offset;

    Pattern r2 = relabel(t2, m);
    Pattern out;
    out.qubits = t1.qubits;
    out.qubits.insert(out.qubits.end(), r2.qubits.begin(), r2.qubits.end());
    sort_unique(out.qubits);
    out.inputs = t1.inputs;
    out.outputs = r2.outputs;
    out.commands = t1.commands;
    out.commands.insert(out.commands.end(), r2.commands.begin(), r2.commands.end());
    return out;
}

Pattern compose_par(const Pattern& t1, const Pattern& t2) {
    std::map<QubitId, QubitId> m;
    const QubitId offset = t1.max_id();
    for (QubitId q : t2.qubits) m[q] = q + offset;
    Pattern r2 = relabel(t2, m);

    Pattern out;
    out.qubits = t1.qubits;
    out.qubits.insert(out.qubits.end(), r2.qubits.begin(), r2.qubits.end());
    out.inputs = t1.inputs;
    out.inputs.insert(out.inputs.end(), r2.inputs.begin(), r2.inputs.end());
    out.outputs = t1.outputs;
    out.outputs.insert(out.outputs.end(), r2.outputs.begin(), r2.outputs.end());
    sort_unique(out.qubits);
    sort_unique(out.inputs);
    sort_unique(out.outputs);
    out.commands = t1.commands;
    out.commands.insert(out.commands.end(), r2.commands.begin(), r2.commands.end());
    return out;
}

Pattern standardize_dependent_measurements(const Pattern& t) {
    require_well_formed(t, "standardize_dependent_measurements");
    Pattern out;
    out.qubits = t.qubits;
    out.inputs = t.inputs;
    out.outputs = t.outputs;

    // Reinterpretation of outcomes: reading s_q afterwards means reading
    // s_q XOR flips[q].
    std::map<QubitId, Signal> flips;
    auto substituted = [&](const Signal& s) {
        Signal r = s;
        for (QubitId q : s.outcomes) {
            auto it = flips.find(q);
            if (it != flips.end()) r ^= it->second;
        }
        return r;
    };

    for (const Command& c : t.commands) {
        if (const auto* m = std::get_if<Measure>(&c)) {
            const Signal sigma = substituted(m->sigma);
            const Signal tau = substituted(m->tau);
            if (!sigma.trivial()) out.commands.push_back(CorrectX{m->q, sigma});
            out.commands.push_back(Measure{m->q, m->angle, {}, {}});
            // Z^tau before an X-Y plane measurement only swaps which basis
            // vector is observed, so it becomes an outcome reinterpretation.
            if (!tau.trivial()) flips[m->q] = tau;
        } else if (const auto* x = std::get_if<CorrectX>(&c)) {
            Signal s = substituted(x->signal);
            if (!s.trivial()) out.commands.push_back(CorrectX{x->q, s});
        } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
            Signal s = substituted(z->signal);
            if (!s.trivial()) out.commands.push_back(CorrectZ{z->q, s});
        } else {
            out.commands.push_back(c);
        }
    }
    return out;
}

Pattern reorder_disjoint(const Pattern& t) {
    require_well_formed(t, "reorder_disjoint");
    std::vector<std::vector<QubitId>> domains;
    domains.reserve(t.commands.size());
    for (const Command& c : t.commands) {
        std::vector<QubitId> dom = acted_qubits(c);
        std::vector<QubitId> reads = read_qubits(c);
        dom.insert(dom.end(), reads.begin(), reads.end());
        sort_unique(dom);
        domains.push_back(std::move(dom));
    }
    const Layering layers = layer_by_domain_overlap(domains);

    std::vector<std::size_t> order(t.commands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return layers.layer_of[a] < layers.layer_of[b];
    });

    Pattern out;
    out.qubits = t.qubits;
    out.inputs = t.inputs;
    out.outputs = t.outputs;
    out.commands.reserve(t.commands.size());
    for (std::size_t i : order) out.commands.push_back(t.commands[i]);
    return out;
}

} // namespace mbqc
