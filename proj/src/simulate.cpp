#include "mbqc/simulate.hpp"

#include "mbqc/kernels.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <set>

namespace mbqc::sim {

namespace {

constexpr double kZeroBranch = 1e-12;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97f4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

} // namespace

OutcomeOracle OutcomeOracle::forced(std::vector<int> bits) {
    OutcomeOracle o;
    o.forced_ = true;
    o.bits_ = std::move(bits);
    return o;
}

OutcomeOracle OutcomeOracle::seeded(std::uint64_t seed) {
    OutcomeOracle o;
    o.forced_ = false;
    o.rng_state_ = seed ^ 0xA5A5A5A5DEADBEEFULL;
    return o;
}

int OutcomeOracle::next(double p0, const std::string& site) {
    if (forced_) {
        if (used_ >= bits_.size()) throw Error("outcome oracle exhausted at " + site);
        return bits_[used_++] ? 1 : 0;
    }
    return uniform01(rng_state_) < p0 ? 0 : 1;
}

StateVector product_state(const std::vector<QubitId>& qubits, const std::string& spec) {
    if (qubits.size() != spec.size())
        throw Error("product_state: one character per qubit expected");
    StateVector s;
    s.qubits = qubits;
    s.amps = {1.0};
    const double r = 1.0 / std::sqrt(2.0);
    for (char ch : spec) {
        cplx a0, a1;
        switch (ch) {
            case '0': a0 = 1.0; a1 = 0.0; break;
            case '1': a0 = 0.0; a1 = 1.0; break;
            case '+': a0 = r; a1 = r; break;
            case '-': a0 = r; a1 = -r; break;
            default: throw Error(std::string("product_state: unknown state character '") + ch + "'");
        }
        std::vector<cplx> out(s.amps.size() * 2);
        kernels::append_qubit(s.amps.data(), s.amps.size(), 1, a0, a1, out.data());
        s.amps = std::move(out);
    }
    return s;
}

namespace {

/// Dense execution buffer over an ordered qubit list (first qubit = most
/// significant bit) with `cols` simultaneous columns.
class Engine {
public:
    Engine(std::size_t cols, bool renormalize, const SimOptions& opt)
        : cols_(cols), renormalize_(renormalize), opt_(opt) {
        a_ = {1.0};
        if (cols_ > 1) {
            a_.assign(cols_ * cols_, cplx{});
        }
    }

    /// Start from an identity operator over `qubits` (cols = 2^n).
    void init_operator(const std::vector<QubitId>& qubits) {
        order_ = qubits;
        const std::size_t n = std::size_t{1} << qubits.size();
        if (n != cols_) throw Error("engine: operator init dimension mismatch");
        a_.assign(n * cols_, cplx{});
        for (std::size_t r = 0; r < n; ++r) a_[r * cols_ + r] = 1.0;
    }

    void init_state(const std::vector<QubitId>& qubits, std::vector<cplx> amps) {
        order_ = qubits;
        a_ = std::move(amps);
        if (a_.size() != (std::size_t{1} << qubits.size()))
            throw Error("engine: state length does not match qubit count");
    }

    bool has(QubitId q) const {
        return std::find(order_.begin(), order_.end(), q) != order_.end();
    }

    void intro(QubitId q, cplx a0, cplx a1) {
        if (has(q)) throw Error("engine: qubit already present");
        const std::size_t rows = a_.size() / cols_;
        if (rows * 2 * cols_ > opt_.max_amplitudes)
            throw Error("register too large: dense buffer would exceed " +
                        std::to_string(opt_.max_amplitudes) + " amplitudes");
        std::vector<cplx> out(a_.size() * 2);
        kernels::append_qubit(a_.data(), rows, cols_, a0, a1, out.data());
        a_ = std::move(out);
        order_.push_back(q);
    }

    void h(QubitId q) {
        const double s = 1.0 / std::sqrt(2.0);
        one_qubit(q, s, s, s, -s);
    }
    void rz(QubitId q, double alpha) { one_qubit(q, 1.0, 0.0, 0.0, std::exp(cplx(0, alpha))); }
    void x(QubitId q) { one_qubit(q, 0.0, 1.0, 1.0, 0.0); }
    void z(QubitId q) { one_qubit(q, 1.0, 0.0, 0.0, -1.0); }

    void cz(QubitId q1, QubitId q2) {
        kernels::apply_cz(a_.data(), rows(), cols_, bit_of(q1), bit_of(q2));
    }

    void fanout(QubitId control, const std::vector<QubitId>& targets) {
        std::size_t mask = 0;
        for (QubitId t : targets) mask |= bit_of(t);
        kernels::apply_fanout(a_.data(), rows(), cols_, bit_of(control), mask);
    }

    /// Project qubit q onto the X-Y plane basis at `alpha`, remove it and
    /// return (outcome, relative branch probability).
    std::pair<int, double> measure_xy(QubitId q, double alpha, OutcomeOracle& oracle,
                                      const std::string& site) {
        const double s = 1.0 / std::sqrt(2.0);
        const cplx e = std::exp(cplx(0, -alpha));
        return measure_with_bras(q, {s, s * e}, {s, -s * e}, oracle, site);
    }

    /// Standard-basis projection (bras <0| and <1|).
    std::pair<int, double> measure_standard(QubitId q, OutcomeOracle& oracle,
                                            const std::string& site) {
        return measure_with_bras(q, {1.0, 0.0}, {0.0, 1.0}, oracle, site);
    }

    double norm2() const { return kernels::norm2(a_.data(), a_.size()); }

    /// Reorder qubits and return the buffer as a matrix of rows 2^n x cols.
    Mat take_matrix(const std::vector<QubitId>& desired) {
        reorder(desired);
        Mat m(rows(), cols_);
        m.a = a_;
        return m;
    }

    std::vector<cplx> take_state(const std::vector<QubitId>& desired) {
        reorder(desired);
        return a_;
    }

    const std::vector<QubitId>& order() const { return order_; }

private:
    std::size_t rows() const { return a_.size() / cols_; }

    std::size_t bit_of(QubitId q) const {
        for (std::size_t p = 0; p < order_.size(); ++p)
            if (order_[p] == q) return std::size_t{1} << (order_.size() - 1 - p);
        throw Error("engine: qubit " + std::to_string(q) + " not active");
    }

    void one_qubit(QubitId q, cplx m00, cplx m01, cplx m10, cplx m11) {
        kernels::apply_1q(a_.data(), rows(), cols_, bit_of(q), m00, m01, m10, m11);
    }

    std::pair<int, double> measure_with_bras(QubitId q, std::pair<cplx, cplx> bra0,
                                             std::pair<cplx, cplx> bra1, OutcomeOracle& oracle,
                                             const std::string& site) {
        const std::size_t bit = bit_of(q);
        const double total = norm2();
        if (total <= 0.0) {
            // Dead branch during enumeration; keep contracting with outcome 0.
            contract(q, bit, bra0);
            return {oracle.next(1.0, site) /* consumes a forced bit */, 0.0};
        }
        std::vector<cplx> scratch(a_.size() / 2);
        kernels::contract_qubit(a_.data(), rows(), cols_, bit, bra0.first, bra0.second,
                                scratch.data());
        const double n0 = kernels::norm2(scratch.data(), scratch.size());
        const double p0 = std::min(1.0, std::max(0.0, n0 / total));
        const int outcome = oracle.next(p0, site);
        const double p = outcome == 0 ? p0 : 1.0 - p0;
        if (oracle.forced_mode() && renormalize_ && p < kZeroBranch)
            throw Error("zero-probability branch forced at " + site);
        if (outcome == 0) {
            a_ = std::move(scratch);
        } else {
            kernels::contract_qubit(a_.data(), rows() , cols_, bit, bra1.first, bra1.second,
                                    scratch.data());
            a_ = std::move(scratch);
        }
        remove_from_order(q);
        if (renormalize_) {
            const double n = kernels::norm2(a_.data(), a_.size());
            if (n > 0.0) kernels::scale(a_.data(), a_.size(), 1.0 / std::sqrt(n));
        }
        return {outcome, p};
    }

    void contract(QubitId q, std::size_t bit, std::pair<cplx, cplx> bra) {
        std::vector<cplx> scratch(a_.size() / 2);
        kernels::contract_qubit(a_.data(), rows(), cols_, bit, bra.first, bra.second,
                                scratch.data());
        a_ = std::move(scratch);
        remove_from_order(q);
    }

    void remove_from_order(QubitId q) {
        order_.erase(std::find(order_.begin(), order_.end(), q));
    }

    void reorder(const std::vector<QubitId>& desired) {
        if (desired == order_) return;
        if (desired.size() != order_.size())
            throw Error("engine: reorder with mismatched qubit set");
        const std::size_t n = order_.size();
        std::vector<std::size_t> src_bits(n), dst_bits(n);
        for (std::size_t p = 0; p < n; ++p) {
            src_bits[p] = std::size_t{1} << (n - 1 - p);
            const std::size_t dp = index_of_in(desired, order_[p]);
            dst_bits[p] = std::size_t{1} << (n - 1 - dp);
        }
        std::vector<cplx> out(a_.size());
        kernels::permute_bits(a_.data(), rows(), cols_, src_bits, dst_bits, out.data());
        a_ = std::move(out);
        order_ = desired;
    }

    static std::size_t index_of_in(const std::vector<QubitId>& v, QubitId q) {
        auto it = std::find(v.begin(), v.end(), q);
        if (it == v.end()) throw Error("engine: qubit missing in desired order");
        return static_cast<std::size_t>(it - v.begin());
    }

    std::size_t cols_;
    bool renormalize_;
    SimOptions opt_;
    std::vector<QubitId> order_;
    std::vector<cplx> a_;
};

struct OpRun {
    Mat op;
    std::map<QubitId, int> outcomes;
    double weight = 0.0;
};

/// Execution order for simulation: any topological order of the true
/// dependency DAG (wire conflicts and measure-to-read edges) realizes the
/// same channel, and one that measures early keeps the dense buffer narrow.
/// Greedy: prefer measurements, then corrections, then entangles that
/// introduce the fewest new qubits; ties break on the original index.
std::vector<std::size_t> pattern_schedule(const Pattern& p) {
    const std::size_t n = p.commands.size();
    std::vector<std::vector<QubitId>> acted(n), reads(n);
    std::vector<QubitId> measures(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        acted[i] = acted_qubits(p.commands[i]);
        reads[i] = read_qubits(p.commands[i]);
        measures[i] = measured_qubit(p.commands[i]).value_or(-1);
    }
    auto overlap = [](const std::vector<QubitId>& a, const std::vector<QubitId>& b) {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j) return true;
            (*i < *j) ? void(++i) : void(++j);
        }
        return false;
    };
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<int> indeg(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < v; ++u) {
            const bool edge = overlap(acted[u], acted[v]) ||
                              (measures[u] >= 0 && contains(reads[v], measures[u]));
            if (edge) {
                succ[u].push_back(v);
                ++indeg[v];
            }
        }
    std::map<QubitId, long> active; // qubit -> last touch timestamp
    for (QubitId q : p.inputs) active[q] = 0;
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        long best_score = std::numeric_limits<long>::min();
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || indeg[v] != 0) continue;
            long score;
            if (measures[v] >= 0)
                score = active.count(measures[v]) ? 4000000000L : 3000000000L;
            else if (!std::holds_alternative<Entangle>(p.commands[v]))
                score = active.count(acted[v].front()) ? 2000000000L : 1000000000L;
            else {
                // Few introductions first; among equals stay on the wires
                // touched most recently to finish gadgets before opening new
                // ones.
                long intros = 0;
                long recency = 0;
                for (QubitId q : acted[v]) {
                    auto it = active.find(q);
                    if (it == active.end())
                        ++intros;
                    else
                        recency = std::max(recency, it->second);
                }
                score = -intros * 1000000000L + recency;
            }
            if (score > best_score) {
                best_score = score;
                best = v;
            }
        }
        done[best] = true;
        order.push_back(best);
        for (QubitId q : acted[best]) active[q] = static_cast<long>(step) + 1;
        if (measures[best] >= 0) active.erase(measures[best]);
        for (std::size_t s : succ[best]) --indeg[s];
    }
    return order;
}

void run_pattern_commands(const Pattern& p, Engine& eng, OutcomeOracle& oracle,
                          std::map<QubitId, int>& outcomes, double& probability,
                          const SimOptions& opt) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto ensure = [&](QubitId q, std::size_t i) {
        if (eng.has(q)) return;
        if (contains(p.inputs, q)) throw Error("engine: input qubit missing at command " +
                                               std::to_string(i));
        eng.intro(q, inv_sqrt2, inv_sqrt2);
    };
    for (std::size_t i : pattern_schedule(p)) {
        const Command& c = p.commands[i];
        for (QubitId q : acted_qubits(c)) ensure(q, i);
        if (const auto* e = std::get_if<Entangle>(&c)) {
            eng.cz(e->a, e->b);
        } else if (const auto* m = std::get_if<Measure>(&c)) {
            double alpha = m->angle.value(opt.alpha0);
            if (m->sigma.evaluate(outcomes)) alpha = -alpha;
            if (m->tau.evaluate(outcomes)) alpha += M_PI;
            auto [s, prob] = eng.measure_xy(m->q, alpha, oracle,
                                            "measurement of qubit " + std::to_string(m->q));
            outcomes[m->q] = s;
            probability *= prob;
        } else if (const auto* xc = std::get_if<CorrectX>(&c)) {
            if (xc->signal.evaluate(outcomes)) eng.x(xc->q);
        } else if (const auto* zc = std::get_if<CorrectZ>(&c)) {
            if (zc->signal.evaluate(outcomes)) eng.z(zc->q);
        }
    }
    // Outputs never touched by any command still join the register.
    for (QubitId q : p.outputs)
        if (!eng.has(q)) {
            if (contains(p.inputs, q)) throw Error("engine: output input qubit lost");
            eng.intro(q, inv_sqrt2, inv_sqrt2);
        }
}

OpRun run_pattern_operator(const Pattern& p, OutcomeOracle oracle, const SimOptions& opt) {
    Engine eng(std::size_t{1} << p.inputs.size(), /*renormalize=*/false, opt);
    eng.init_operator(p.inputs);
    OpRun run;
    double probability = 1.0;
    run_pattern_commands(p, eng, oracle, run.outcomes, probability, opt);
    run.op = eng.take_matrix(p.outputs);
    run.weight = frobenius_norm(run.op);
    run.weight *= run.weight;
    run.weight /= static_cast<double>(std::size_t{1} << p.inputs.size());
    return run;
}

int count_measurements(const Pattern& p) {
    int m = 0;
    for (const Command& c : p.commands)
        if (std::holds_alternative<Measure>(c)) ++m;
    return m;
}

std::vector<int> bits_of(std::size_t value, int count) {
    std::vector<int> bits(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) bits[static_cast<std::size_t>(k)] = (value >> k) & 1;
    return bits;
}

void accumulate_choi(Mat& choi, const Mat& k) {
    const std::size_t d_out = k.rows;
    const std::size_t d_in = k.cols;
    std::vector<cplx> v(d_in * d_out);
    for (std::size_t in = 0; in < d_in; ++in)
        for (std::size_t out = 0; out < d_out; ++out) v[in * d_out + out] = k(out, in);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == cplx{}) continue;
        const cplx vi = v[i];
        for (std::size_t j = 0; j < v.size(); ++j) choi(i, j) += vi * std::conj(v[j]);
    }
}

template <typename RunBranch>
Channel enumerate_channel(int m, const std::vector<QubitId>& inputs,
                          const std::vector<QubitId>& outputs, const SimOptions& opt,
                          RunBranch&& run_branch) {
    if (m > opt.branch_limit)
        throw Error("branch limit exceeded: " + std::to_string(m) + " measurements enumerate " +
                    std::to_string(std::size_t{1} << m) + " branches (limit 2^" +
                    std::to_string(opt.branch_limit) + "); use seeded sampling instead");
    const std::size_t total = std::size_t{1} << m;
    const std::size_t dim =
        (std::size_t{1} << inputs.size()) * (std::size_t{1} << outputs.size());
    Channel ch;
    ch.inputs = inputs;
    ch.outputs = outputs;
    ch.choi = Mat(dim, dim);

    constexpr std::size_t kChunk = 64;
    std::vector<OpRun> block(std::min(kChunk, total));
    std::string error;
    for (std::size_t base = 0; base < total; base += kChunk) {
        const std::size_t n = std::min(kChunk, total - base);
        const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < nn; ++i) {
            try {
                block[static_cast<std::size_t>(i)] =
                    run_branch(base + static_cast<std::size_t>(i));
            } catch (const std::exception& e) {
#pragma omp critical
                error = e.what();
            }
        }
        if (!error.empty()) throw Error(error);
        // Serial accumulation keeps the floating-point sum order fixed.
        for (std::size_t i = 0; i < n; ++i) accumulate_choi(ch.choi, block[i].op);
    }
    return ch;
}

} // namespace

RunResult run_pattern(const Pattern& p, const StateVector& input, OutcomeOracle oracle,
                      const SimOptions& opt) {
    require_well_formed(p, "run_pattern");
    std::vector<QubitId> want = p.inputs;
    if (input.qubits != want)
        throw Error("run_pattern: input state must be given on the sorted input register");
    Engine eng(1, /*renormalize=*/true, opt);
    eng.init_state(input.qubits, input.amps);
    RunResult res;
    run_pattern_commands(p, eng, oracle, res.outcomes, res.probability, opt);
    res.state.qubits = p.outputs;
    res.state.amps = eng.take_state(p.outputs);
    return res;
}

BranchRecord pattern_branch_operator(const Pattern& p, const std::vector<int>& forced,
                                     const SimOptions& opt) {
    require_well_formed(p, "pattern_branch_operator");
    OpRun run = run_pattern_operator(p, OutcomeOracle::forced(forced), opt);
    return BranchRecord{run.outcomes, run.weight, run.op};
}

BranchRecord sample_pattern_branch(const Pattern& p, std::uint64_t seed, const SimOptions& opt) {
    require_well_formed(p, "sample_pattern_branch");
    OpRun run = run_pattern_operator(p, OutcomeOracle::seeded(seed), opt);
    return BranchRecord{run.outcomes, run.weight, run.op};
}

std::vector<BranchRecord> pattern_branches(const Pattern& p, const SimOptions& opt) {
    require_well_formed(p, "pattern_branches");
    const int m = count_measurements(p);
    if (m > opt.branch_limit)
        throw Error("branch limit exceeded: " + std::to_string(m) + " measurements (limit 2^" +
                    std::to_string(opt.branch_limit) + ")");
    std::vector<BranchRecord> out;
    const std::size_t total = std::size_t{1} << m;
    out.reserve(total);
    for (std::size_t b = 0; b < total; ++b) {
        OpRun run = run_pattern_operator(p, OutcomeOracle::forced(bits_of(b, m)), opt);
        out.push_back(BranchRecord{run.outcomes, run.weight, run.op});
    }
    return out;
}

Channel pattern_channel(const Pattern& p, const SimOptions& opt) {
    require_well_formed(p, "pattern_channel");
    const int m = count_measurements(p);
    return enumerate_channel(m, p.inputs, p.outputs, opt, [&](std::size_t b) {
        return run_pattern_operator(p, OutcomeOracle::forced(bits_of(b, m)), opt);
    });
}

namespace {

struct CircuitPlan {
    std::vector<std::size_t> order;                 // scheduled gate indices
    std::vector<std::vector<QubitId>> retire_after; // per scheduled position
    std::vector<QubitId> final_retire;              // untouched non-output input lines
    int measured_lines = 0;
};

/// Schedule gates so discarded lines retire as early as possible. Gates
/// unordered in the wire-conflict DAG commute, so any topological order
/// realizes the same channel.
CircuitPlan plan_circuit(const Circuit& c) {
    CircuitPlan plan;
    const std::size_t n = c.gates.size();
    std::vector<std::vector<QubitId>> acted(n);
    for (std::size_t i = 0; i < n; ++i) acted[i] = gate_qubits(c.gates[i]);
    auto overlap = [](const std::vector<QubitId>& a, const std::vector<QubitId>& b) {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j) return true;
            (*i < *j) ? void(++i) : void(++j);
        }
        return false;
    };
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<int> indeg(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < v; ++u)
            if (overlap(acted[u], acted[v])) {
                succ[u].push_back(v);
                ++indeg[v];
            }

    std::map<QubitId, int> remaining;
    for (std::size_t i = 0; i < n; ++i)
        for (QubitId q : acted[i]) ++remaining[q];
    std::set<QubitId> active(c.inputs.begin(), c.inputs.end());
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        int best_score = std::numeric_limits<int>::min();
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || indeg[v] != 0) continue;
            int intros = 0;
            int retires = 0;
            for (QubitId q : acted[v]) {
                if (!active.count(q)) ++intros;
                if (remaining.at(q) == 1 && !contains(c.outputs, q)) ++retires;
            }
            const int score = 2 * retires - intros;
            if (score > best_score) {
                best_score = score;
                best = v;
            }
        }
        done[best] = true;
        plan.order.push_back(best);
        std::vector<QubitId> retiring;
        for (QubitId q : acted[best]) {
            active.insert(q);
            if (--remaining.at(q) == 0 && !contains(c.outputs, q)) retiring.push_back(q);
        }
        std::sort(retiring.begin(), retiring.end());
        plan.retire_after.push_back(std::move(retiring));
        for (std::size_t s : succ[best]) --indeg[s];
    }
    for (QubitId q : c.qubits) {
        if (contains(c.outputs, q) || remaining.count(q)) continue;
        if (contains(c.inputs, q)) plan.final_retire.push_back(q); // dephased input line
        // untouched non-input non-output lines stay |0> and read 0 surely
    }
    int measured = static_cast<int>(plan.final_retire.size());
    for (const auto& r : plan.retire_after) measured += static_cast<int>(r.size());
    plan.measured_lines = measured;
    return plan;
}

OpRun run_circuit_operator(const Circuit& c, const CircuitPlan& plan, OutcomeOracle oracle,
                           const SimOptions& opt) {
    Engine eng(std::size_t{1} << c.inputs.size(), /*renormalize=*/false, opt);
    eng.init_operator(c.inputs);
    OpRun run;
    auto ensure = [&](QubitId q) {
        if (!eng.has(q)) eng.intro(q, 1.0, 0.0);
    };
    auto retire = [&](QubitId q) {
        auto [s, prob] =
            eng.measure_standard(q, oracle, "readout of line " + std::to_string(q));
        run.outcomes[q] = s;
        (void)prob;
    };
    for (std::size_t pos = 0; pos < plan.order.size(); ++pos) {
        const Gate& g = c.gates[plan.order[pos]];
        for (QubitId q : gate_qubits(g)) ensure(q);
        if (const auto* h = std::get_if<Hadamard>(&g)) {
            eng.h(h->q);
        } else if (const auto* r = std::get_if<RotZ>(&g)) {
            eng.rz(r->q, r->angle.value(opt.alpha0));
        } else if (const auto* cz = std::get_if<ControlledZ>(&g)) {
            eng.cz(cz->a, cz->b);
        } else if (const auto* f = std::get_if<FanOut>(&g)) {
            eng.fanout(f->control, f->targets);
        }
        for (QubitId q : plan.retire_after[pos]) retire(q);
    }
    for (QubitId q : plan.final_retire) retire(q);
    for (QubitId q : c.outputs)
        if (!eng.has(q)) eng.intro(q, 1.0, 0.0);
    run.op = eng.take_matrix(c.outputs);
    run.weight = frobenius_norm(run.op);
    run.weight *= run.weight;
    run.weight /= static_cast<double>(std::size_t{1} << c.inputs.size());
    return run;
}

} // namespace

Channel circuit_channel(const Circuit& c, const SimOptions& opt) {
    require_valid_circuit(c, "circuit_channel");
    const CircuitPlan plan = plan_circuit(c);
    return enumerate_channel(plan.measured_lines, c.inputs, c.outputs, opt, [&](std::size_t b) {
        return run_circuit_operator(c, plan, OutcomeOracle::forced(bits_of(b, plan.measured_lines)),
                                    opt);
    });
}

std::vector<BranchRecord> circuit_branches(const Circuit& c, const SimOptions& opt) {
    require_valid_circuit(c, "circuit_branches");
    const CircuitPlan plan = plan_circuit(c);
    if (plan.measured_lines > opt.branch_limit)
        throw Error("branch limit exceeded: " + std::to_string(plan.measured_lines) +
                    " measured lines (limit 2^" + std::to_string(opt.branch_limit) + ")");
    std::vector<BranchRecord> out;
    const std::size_t total = std::size_t{1} << plan.measured_lines;
    for (std::size_t b = 0; b < total; ++b) {
        OpRun run = run_circuit_operator(
            c, plan, OutcomeOracle::forced(bits_of(b, plan.measured_lines)), opt);
        out.push_back(BranchRecord{run.outcomes, run.weight, run.op});
    }
    return out;
}

BranchRecord sample_circuit_branch(const Circuit& c, std::uint64_t seed, const SimOptions& opt) {
    require_valid_circuit(c, "sample_circuit_branch");
    const CircuitPlan plan = plan_circuit(c);
    OpRun run = run_circuit_operator(c, plan, OutcomeOracle::seeded(seed), opt);
    return BranchRecord{run.outcomes, run.weight, run.op};
}

Mat circuit_unitary(const Circuit& c, const SimOptions& opt) {
    require_valid_circuit(c, "circuit_unitary");
    if (c.inputs != c.qubits || c.outputs != c.qubits)
        throw Error("circuit_unitary requires inputs == outputs == register");
    const std::size_t dim = std::size_t{1} << c.qubits.size();
    if (dim * dim > opt.max_amplitudes) throw Error("register too large for unitary extraction");
    const CircuitPlan plan = plan_circuit(c);
    OpRun run = run_circuit_operator(c, plan, OutcomeOracle::forced({}), opt);
    return run.op;
}

int pattern_branch_bits(const Pattern& p) { return count_measurements(p); }

int circuit_branch_bits(const Circuit& c) { return plan_circuit(c).measured_lines; }

ChannelComparison channels_equal(const Channel& a, const Channel& b, double tol) {
    if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size())
        throw Error("channels_equal: dimension mismatch");
    ChannelComparison cmp;
    cmp.distance = max_abs(a.choi - b.choi);
    cmp.equal = cmp.distance <= tol;
    return cmp;
}

Channel channel_from_kraus(const std::vector<Mat>& kraus, std::vector<QubitId> inputs,
                           std::vector<QubitId> outputs) {
    const std::size_t dim =
        (std::size_t{1} << inputs.size()) * (std::size_t{1} << outputs.size());
    Channel ch;
    ch.inputs = std::move(inputs);
    ch.outputs = std::move(outputs);
    ch.choi = Mat(dim, dim);
    for (const Mat& k : kraus) accumulate_choi(ch.choi, k);
    return ch;
}

Channel unitary_channel(const Mat& u, std::vector<QubitId> inputs, std::vector<QubitId> outputs) {
    return channel_from_kraus({u}, std::move(inputs), std::move(outputs));
}

double trace_preservation_defect(const Channel& ch) {
    const std::size_t d_in = std::size_t{1} << ch.inputs.size();
    const std::size_t d_out = std::size_t{1} << ch.outputs.size();
    Mat t(d_in, d_in);
    for (std::size_t k = 0; k < d_in; ++k)
        for (std::size_t l = 0; l < d_in; ++l) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < d_out; ++j) s += ch.choi(k * d_out + j, l * d_out + j);
            t(k, l) = s;
        }
    return max_abs(t - Mat::identity(d_in));
}

bool check_determinism(const Pattern& p, double tol, const SimOptions& opt) {
    const std::vector<BranchRecord> branches = pattern_branches(p, opt);
    const int m = count_measurements(p);
    const double scale = std::pow(2.0, static_cast<double>(m) / 2.0);
    const Mat& ref = branches.front().op;
    const double ref_norm = frobenius_norm(ref);
    if (ref_norm * scale < 1e-6) return false;
    const std::size_t d_in = std::size_t{1} << p.inputs.size();
    for (const BranchRecord& b : branches) {
        Mat k = scale * b.op;
        // Uniform branch weight for every input state: K^dag K = I.
        Mat gram = k.adjoint() * k;
        if (max_abs(gram - Mat::identity(d_in)) > tol * 100 + 1e-9) return false;
        // Proportionality to the reference branch (Cauchy-Schwarz equality).
        const double inner = std::abs(frobenius_inner(k, scale * ref));
        const double prod = frobenius_norm(k) * frobenius_norm(scale * ref);
        if (std::abs(inner - prod) > (tol * 100 + 1e-9) * prod) return false;
    }
    return true;
}

} // namespace mbqc::sim
