#include "test_util.hpp"

#include "mbqc/transpile.hpp"

#include <doctest.h>

using namespace mbqc;
using namespace mbqc::test;

namespace {
const double kTol = 1e-9;

// Regression constants measured once from the gadget catalog.
const double kCircuitToPatternDepth = 10.0; // c1
const double kCircuitToPatternSize = 20.0;  // c2, against size^3
const double kPatternToFanoutDepth = 3.0;   // c3
const double kPatternToFanoutSize = 1.0;    // c4, against size^2
const double kPatternToStrictDepth = 1.5;   // c5, against depth * ceil(log2(size+2))

Mat rz_mat(const Angle& a) { return mat_rz(a.value()); }

bool channel_is(const Pattern& p, const Mat& u, double tol = kTol) {
    auto ch = sim::pattern_channel(p);
    return sim::channels_equal(ch, sim::unitary_channel(u, p.inputs, p.outputs), tol).equal;
}

int count_measurements(const Pattern& p) {
    int m = 0;
    for (const Command& c : p.commands)
        if (std::holds_alternative<Measure>(c)) ++m;
    return m;
}
} // namespace

TEST_CASE("gadget channels equal their gates") {
    CHECK(channel_is(hadamard_gadget(), mat_h()));
    Mat cz = Mat::identity(4);
    cz(3, 3) = -1.0;
    CHECK(channel_is(controlled_z_gadget(), cz));

    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        Angle a = i % 5 == 0 ? Angle(rng.below(8), 4, 1) : Angle::rational(1 + rng.below(15), 8);
        CAPTURE(i);
        CHECK(channel_is(rotz_gadget(a), rz_mat(a)));
    }
    CHECK_THROWS_AS(gate_gadget(FanOut{1, {2}}), Error);
}

TEST_CASE("pauli_flatten removes an X dependency on an angle-0 measurement") {
    Pattern p;
    p.qubits = {1, 2, 3};
    p.inputs = {};
    p.outputs = {3};
    p.commands = {Entangle{2, 3}, Measure{1, Angle::zero(), {}, {}},
                  Measure{2, Angle::zero(), Signal({1}), {}}, CorrectX{3, Signal({2})}};
    Pattern f = pauli_flatten(p);
    REQUIRE(is_well_formed(f));
    for (const Command& c : f.commands)
        if (const auto* m = std::get_if<Measure>(&c)) CHECK(!m->dependent());
    // (-1)^s * 0 = 0: no outcome flip, so the downstream signal is unchanged.
    bool found = false;
    for (const Command& c : f.commands)
        if (const auto* x = std::get_if<CorrectX>(&c)) {
            found = true;
            CHECK(x->signal == Signal({2}));
        }
    CHECK(found);
    CHECK(sim::channels_equal(sim::pattern_channel(p), sim::pattern_channel(f), kTol).equal);
}

TEST_CASE("pauli_flatten is a fixpoint on plain patterns") {
    Pattern p;
    p.qubits = {1, 2};
    p.inputs = {1, 2};
    p.outputs = {2};
    p.commands = {Entangle{1, 2}, Measure{1, Angle::rational(1, 4), {}, {}}};
    CHECK(pauli_flatten(p) == p);
}

TEST_CASE("flip rule table matches brute-force basis comparison") {
    auto ket = [](int s, double alpha) {
        Mat v(2, 1);
        v(0, 0) = 1.0 / std::sqrt(2.0);
        v(1, 0) = (s == 0 ? 1.0 : -1.0) * std::exp(cplx(0, alpha)) / std::sqrt(2.0);
        return v;
    };
    for (int num = 0; num <= 3; ++num) {
        const Angle alpha = Angle::rational(num, 2);
        for (int sv = 0; sv <= 1; ++sv)
            for (int tv = 0; tv <= 1; ++tv) {
                const double effective = (sv ? -1.0 : 1.0) * alpha.value() + tv * M_PI;
                // Implementation rule: flip = tau for angles 0 and pi,
                // sigma xor tau for pi/2 and 3pi/2.
                const int flip = alpha.is_real_axis() ? tv : (sv ^ tv);
                for (int s = 0; s <= 1; ++s) {
                    CAPTURE(num);
                    CAPTURE(sv);
                    CAPTURE(tv);
                    CAPTURE(s);
                    CHECK(normalized_phase_distance(ket(s, effective),
                                                    ket(s ^ flip, alpha.value())) < 1e-12);
                }
            }
    }
}

TEST_CASE("pauli_flatten preserves the channel on random patterns") {
    Rng rng(41);
    RandomPatternOptions opt;
    opt.max_qubits = 4;
    opt.max_commands = 10;
    for (int i = 0; i < 40; ++i) {
        Pattern p = random_pattern(rng, opt);
        Pattern f = pauli_flatten(p);
        CAPTURE(i);
        REQUIRE(is_well_formed(f));
        for (const Command& c : f.commands)
            if (const auto* m = std::get_if<Measure>(&c))
                if (m->angle.is_pauli()) CHECK(!m->dependent());
        CHECK(sim::channels_equal(sim::pattern_channel(p), sim::pattern_channel(f), kTol).equal);
        CHECK(pattern_depth(reorder_disjoint(f)) <= std::max(1, pattern_depth(p)));
    }
}

TEST_CASE("parity_pattern: base cases") {
    CHECK(parity_pattern(1) == Pattern::identity({1}));
    CHECK_THROWS_AS(parity_pattern(0), Error);
    Pattern p2 = parity_pattern(2);
    REQUIRE(is_well_formed(p2));
    CHECK(channel_is(p2, cnot_unitary()));
    Pattern p3 = parity_pattern(3);
    CHECK(channel_is(p3, parity_unitary(3)));
}

TEST_CASE("parity_pattern: flattened, Pauli-only and deterministic") {
    Pattern p = parity_pattern(4);
    for (const Command& c : p.commands)
        if (const auto* m = std::get_if<Measure>(&c)) {
            CHECK(!m->dependent());
            CHECK(m->angle.is_pauli());
        }
    // Size is fixed by the construction; cross-checked by direct enumeration.
    int direct = 0;
    for (const Command& c : p.commands) direct += std::holds_alternative<Entangle>(c) ? 2 : 1;
    CHECK(pattern_size(p) == direct);
    CHECK(pattern_size(p) == 89);
}

TEST_CASE("parity_pattern: depth is the same integer across sizes") {
    const int d2 = pattern_depth(parity_pattern(2));
    for (int n : {4, 6, 8}) {
        CAPTURE(n);
        CHECK(pattern_depth(parity_pattern(n)) == d2);
    }
}

TEST_CASE("parity_pattern: sampled branches realize the parity unitary") {
    Pattern p4 = parity_pattern(4);
    CHECK(pattern_matches_unitary_sampled(p4, parity_unitary(4), 20, kTol));
    // Larger instances: probe states through seeded runs.
    for (int n : {6, 8}) {
        Pattern p = parity_pattern(n);
        const Mat u = parity_unitary(n);
        Rng rng(500 + n);
        for (int probe = 0; probe < 3; ++probe) {
            sim::StateVector in;
            in.qubits = p.inputs;
            in.amps.resize(std::size_t{1} << p.inputs.size());
            double norm = 0;
            for (auto& a : in.amps) {
                a = cplx(rng.real01() - 0.5, rng.real01() - 0.5);
                norm += std::norm(a);
            }
            for (auto& a : in.amps) a /= std::sqrt(norm);
            Mat expect(in.amps.size(), 1);
            for (std::size_t r = 0; r < in.amps.size(); ++r) {
                cplx s = 0;
                for (std::size_t c = 0; c < in.amps.size(); ++c) s += u(r, c) * in.amps[c];
                expect(r, 0) = s;
            }
            for (int seed = 0; seed < 3; ++seed) {
                auto res = sim::run_pattern(p, in, sim::OutcomeOracle::seeded(900 + seed));
                Mat got(res.state.amps.size(), 1);
                for (std::size_t r = 0; r < res.state.amps.size(); ++r) got(r, 0) = res.state.amps[r];
                CAPTURE(n);
                CAPTURE(probe);
                CAPTURE(seed);
                CHECK(normalized_phase_distance(expect, got) < 1e-8);
            }
        }
    }
}

TEST_CASE("fanout_pattern: channels") {
    Pattern f2 = fanout_pattern(2);
    REQUIRE(is_well_formed(f2));
    CHECK(channel_is(f2, fanout_unitary(2)));
    CHECK(pattern_matches_unitary_sampled(fanout_pattern(3), fanout_unitary(3), 12, kTol));
    CHECK(pattern_matches_unitary_sampled(fanout_pattern(4), fanout_unitary(4), 12, kTol));
}

TEST_CASE("fanout_pattern: constant depth") {
    const int d = pattern_depth(fanout_pattern(2));
    for (int n : {3, 4, 5, 6}) {
        CAPTURE(n);
        CHECK(pattern_depth(fanout_pattern(n)) == d);
    }
}

TEST_CASE("circuit_to_pattern: single gates and the empty circuit") {
    Circuit empty;
    empty.qubits = {1, 2};
    empty.inputs = {1, 2};
    empty.outputs = {1, 2};
    auto tr = circuit_to_pattern(empty);
    CHECK(channel_is(tr.pattern, Mat::identity(4)));

    Circuit h = empty;
    h.qubits = {1};
    h.inputs = {1};
    h.outputs = {1};
    h.gates = {Hadamard{1}};
    auto th = circuit_to_pattern(h);
    CHECK(channel_is(th.pattern, mat_h()));
    CHECK(sim::check_determinism(th.pattern, kTol));
}

TEST_CASE("circuit_to_pattern preserves channels on random circuits") {
    Rng rng(61);
    int full_checked = 0, sampled_checked = 0;
    for (int i = 0; i < 30; ++i) {
        RandomCircuitOptions opt;
        opt.qubits = 3;
        opt.max_depth = 5;
        opt.fanout = (i % 5 == 0);
        Circuit c = random_circuit(rng, opt);
        auto tr = circuit_to_pattern(c);
        CAPTURE(i);
        REQUIRE(is_well_formed(tr.pattern));
        const Mat u = sim::circuit_unitary(c);
        if (count_measurements(tr.pattern) <= 10) {
            auto cmp = sim::channels_equal(sim::pattern_channel(tr.pattern),
                                           sim::unitary_channel(u, tr.pattern.inputs,
                                                                tr.pattern.outputs),
                                           kTol);
            CHECK(cmp.equal);
            ++full_checked;
        } else {
            CHECK(pattern_matches_unitary_sampled(tr.pattern, u, 6, kTol));
            ++sampled_checked;
        }
    }
    CHECK(full_checked > 0);
    CHECK(sampled_checked > 0);
}

TEST_CASE("circuit_to_pattern handles discarded lines") {
    // Prepare |0>, entangle, discard: a dephasing channel on the survivor.
    Circuit c;
    c.qubits = {1, 2};
    c.inputs = {1};
    c.outputs = {1};
    c.gates = {Hadamard{2}, ControlledZ{1, 2}, Hadamard{2}};
    auto tr = circuit_to_pattern(c);
    auto cmp = sim::channels_equal(sim::pattern_channel(tr.pattern), sim::circuit_channel(c), kTol);
    CHECK(cmp.equal);
}

TEST_CASE("pattern_to_fanout_circuit: gadget cases") {
    auto th = pattern_to_fanout_circuit(hadamard_gadget());
    CHECK(sim::channels_equal(sim::circuit_channel(th.circuit),
                              sim::unitary_channel(mat_h(), {1}, {2}), kTol)
              .equal);

    auto id = pattern_to_fanout_circuit(Pattern::identity({1, 2}));
    CHECK(id.circuit.gates.empty());

    Mat cz = Mat::identity(4);
    cz(3, 3) = -1.0;
    auto tcz = pattern_to_strict_circuit(controlled_z_gadget());
    REQUIRE(tcz.circuit.gates.size() == 1);
    CHECK(std::holds_alternative<ControlledZ>(tcz.circuit.gates[0]));
    CHECK(max_abs(sim::circuit_unitary(tcz.circuit) - cz) < kTol);
}

TEST_CASE("pattern_to_fanout_circuit rejects dependent measurements") {
    Pattern p;
    p.qubits = {1, 2};
    p.inputs = {};
    p.outputs = {};
    p.commands = {Measure{1, Angle::rational(1, 4), {}, {}},
                  Measure{2, Angle::rational(1, 4), Signal({1}), {}}};
    CHECK_THROWS_AS(pattern_to_fanout_circuit(p), Error);
    CHECK_NOTHROW(pattern_to_fanout_circuit(standardize_dependent_measurements(p)));
}

TEST_CASE("pattern_to_fanout_circuit realizes the rotation gadget for random angles") {
    Rng rng(71);
    for (int i = 0; i < 20; ++i) {
        const Angle a = Angle::rational(1 + rng.below(15), 8);
        Pattern p = rotation_pattern(a);
        auto tr = pattern_to_fanout_circuit(p);
        CAPTURE(i);
        auto cmp = sim::channels_equal(
            sim::circuit_channel(tr.circuit),
            sim::unitary_channel(mat_rz(-a.value()), tr.circuit.inputs, tr.circuit.outputs), kTol);
        CHECK(cmp.equal);
    }
}

TEST_CASE("translations preserve channels around the full round trip") {
    Rng rng(83);
    for (int i = 0; i < 12; ++i) {
        RandomCircuitOptions opt;
        opt.qubits = 3;
        opt.max_depth = 4;
        opt.max_rotation_gates = 4;
        Circuit c = random_circuit(rng, opt);
        const Mat u = sim::circuit_unitary(c);
        auto tr = circuit_to_pattern(c);
        auto fan = pattern_to_fanout_circuit(tr.pattern);
        auto strict = pattern_to_strict_circuit(tr.pattern);
        CAPTURE(i);
        auto want = sim::unitary_channel(u, tr.pattern.inputs, tr.pattern.outputs);
        if (sim::pattern_branch_bits(tr.pattern) <= 10)
            CHECK(sim::channels_equal(sim::pattern_channel(tr.pattern), want, kTol).equal);
        else
            CHECK(pattern_matches_unitary_sampled(tr.pattern, u, 4, kTol));
        if (sim::circuit_branch_bits(fan.circuit) <= 10)
            CHECK(sim::channels_equal(sim::circuit_channel(fan.circuit), want, kTol).equal);
        else
            CHECK(circuit_matches_unitary_sampled(fan.circuit, u, 4, kTol));
        if (sim::circuit_branch_bits(strict.circuit) <= 10)
            CHECK(sim::channels_equal(sim::circuit_channel(strict.circuit), want, kTol).equal);
        else
            CHECK(circuit_matches_unitary_sampled(strict.circuit, u, 4, kTol));
    }
}

TEST_CASE("strict circuits for parity patterns track the log bound") {
    std::vector<int> depths;
    for (int n : {2, 4, 8}) {
        Pattern p = parity_pattern(n);
        auto strict = pattern_to_strict_circuit(p);
        CAPTURE(n);
        const double bound = kPatternToStrictDepth * strict.report.input_depth *
                             std::ceil(std::log2(pattern_size(p) + 2.0));
        CHECK(strict.report.output_depth <= bound);
        depths.push_back(strict.report.output_depth);
    }
    // Channel evidence at n = 2 via sampled branches (the strict circuit has
    // too many readout lines for full enumeration).
    auto strict2 = pattern_to_strict_circuit(parity_pattern(2));
    CHECK(circuit_matches_unitary_sampled(strict2.circuit, parity_unitary(2), 10, kTol));
}

TEST_CASE("translation ratio regressions") {
    Rng rng(91);
    for (int i = 0; i < 40; ++i) {
        RandomCircuitOptions copt;
        copt.qubits = 3;
        copt.max_depth = 5;
        copt.fanout = (i % 3 == 0);
        Circuit c = random_circuit(rng, copt);
        if (c.gates.empty()) continue;
        auto tr = circuit_to_pattern(c);
        CAPTURE(i);
        if (tr.report.input_depth > 0)
            CHECK(tr.report.depth_ratio() <= kCircuitToPatternDepth);
        const double s = tr.report.input_size;
        CHECK(tr.report.output_size <= kCircuitToPatternSize * s * s * s);

        Pattern t = tr.pattern;
        auto fan = pattern_to_fanout_circuit(t);
        if (fan.report.input_depth > 0) CHECK(fan.report.depth_ratio() <= kPatternToFanoutDepth);
        CHECK(fan.report.output_size <=
              kPatternToFanoutSize * fan.report.input_size * fan.report.input_size);

        auto strict = pattern_to_strict_circuit(t);
        const double logf = std::ceil(std::log2(fan.report.input_size + 2.0));
        CHECK(strict.report.output_depth <=
              kPatternToStrictDepth * strict.report.input_depth * logf);
    }
}
