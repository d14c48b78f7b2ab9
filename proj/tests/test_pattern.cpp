#include "test_util.hpp"

#include <doctest.h>

using namespace mbqc;
using namespace mbqc::test;

TEST_CASE("angle canonicalization") {
    CHECK(Angle::rational(9, 4) == Angle::rational(1, 4));
    CHECK(Angle::rational(-1, 4) == Angle::rational(7, 4));
    CHECK(Angle::rational(2, 4) == Angle::rational(1, 2));
    CHECK(Angle::rational(4, 2) == Angle::zero());
    CHECK(Angle::rational(1, 2).is_pauli());
    CHECK(Angle::rational(3, 2).is_pauli());
    CHECK(Angle::pi().is_pauli());
    CHECK(Angle::zero().is_pauli());
    CHECK(!Angle::rational(1, 4).is_pauli());
    CHECK(!Angle(1, 2, 1).is_pauli());
    CHECK(Angle::pi().is_real_axis());
    CHECK(!Angle::rational(1, 2).is_real_axis());
    CHECK(Angle::rational(1, 4).negated() == Angle::rational(7, 4));
    CHECK(Angle::rational(1, 2).plus_pi() == Angle::rational(3, 2));
    CHECK(Angle::rational(1, 3).value() == doctest::Approx(M_PI / 3.0));
}

TEST_CASE("signal xor and evaluation") {
    Signal a({1, 2});
    Signal b({2, 3}, true);
    Signal c = a ^ b;
    CHECK(c.outcomes == std::vector<QubitId>{1, 3});
    CHECK(c.constant);
    CHECK((c ^ c).trivial());
    std::map<QubitId, int> rec{{1, 1}, {3, 0}};
    CHECK(c.evaluate(rec) == false); // const 1 ^ s1=1 ^ s3=0
    CHECK_THROWS_AS(a.evaluate({}), Error);
}

TEST_CASE("validate accepts the example pattern") {
    CHECK(validate(example_pattern(Angle::rational(1, 4))).empty());
    CHECK(validate(th_pattern()).empty());
    CHECK(validate(tcz_pattern()).empty());
}

TEST_CASE("validate flags commands on measured qubits") {
    Pattern p;
    p.qubits = {1, 2};
    p.inputs = {1};
    p.outputs = {2};
    p.commands = {Measure{1, Angle::zero(), {}, {}}, Entangle{1, 2}};
    auto report = validate(p);
    REQUIRE(!report.empty());
    bool found = false;
    for (const auto& v : report) found |= v.rule == "measured-qubit";
    CHECK(found);
}

TEST_CASE("validate flags signals over unmeasured qubits") {
    Pattern p;
    p.qubits = {1, 2, 3};
    p.inputs = {1};
    p.outputs = {1};
    p.commands = {CorrectX{2, Signal({3})}, Measure{3, Angle::zero(), {}, {}},
                  Measure{2, Angle::zero(), {}, {}}};
    auto report = validate(p);
    bool found = false;
    for (const auto& v : report) found |= v.rule == "signal-order";
    CHECK(found);
}

TEST_CASE("pattern size") {
    CHECK(pattern_size(example_pattern(Angle::rational(1, 4))) == 10);
    CHECK(pattern_size(Pattern::identity({1})) == 0);
    CHECK(pattern_size(th_pattern()) == 4);
}

TEST_CASE("pattern depth: pinned values") {
    CHECK(pattern_depth(example_pattern(Angle::rational(1, 4))) == 6);
    CHECK(pattern_depth(th_pattern()) == 3);
    Pattern single;
    single.qubits = {1, 2};
    single.inputs = {1, 2};
    single.outputs = {1, 2};
    single.commands = {Entangle{1, 2}};
    CHECK(pattern_depth(single) == 1);
}

TEST_CASE("pattern depth matches brute-force chain search") {
    Rng rng(7);
    RandomPatternOptions opt;
    opt.max_commands = 10;
    for (int i = 0; i < 150; ++i) {
        Pattern p = random_pattern(rng, opt);
        CAPTURE(i);
        CHECK(pattern_depth(p) == brute_force_depth(p));
    }
}

TEST_CASE("layer partition is consistent") {
    Pattern p = example_pattern(Angle::rational(1, 4));
    Layering l = pattern_layers(p);
    CHECK(l.depth() == 6);
    std::size_t count = 0;
    for (const auto& layer : l.layers) count += layer.size();
    CHECK(count == p.commands.size());
    for (std::size_t i = 0; i < p.commands.size(); ++i) {
        CHECK(l.layer_of[i] >= 1);
        CHECK(l.layer_of[i] <= l.depth());
    }
}

TEST_CASE("compose_seq arity error") {
    CHECK_THROWS_AS(compose_seq(th_pattern(), tcz_pattern()), Error);
}

TEST_CASE("compose_seq with identity is neutral for metrics") {
    Pattern t = example_pattern(Angle::rational(1, 4));
    Pattern id = Pattern::identity({1});
    Pattern c = compose_seq(t, id);
    CHECK(pattern_size(c) == pattern_size(t));
    CHECK(pattern_depth(c) == pattern_depth(t));
    CHECK(is_well_formed(c));
}

TEST_CASE("composition metrics laws on random patterns") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Pattern a = random_pattern(rng);
        Pattern b = random_pattern(rng);
        CAPTURE(i);

        Pattern par = compose_par(a, b);
        CHECK(is_well_formed(par));
        CHECK(pattern_size(par) == pattern_size(a) + pattern_size(b));
        CHECK(pattern_depth(par) == std::max(pattern_depth(a), pattern_depth(b)));

        if (a.outputs.size() == b.inputs.size()) {
            Pattern seq = compose_seq(a, b);
            CHECK(is_well_formed(seq));
            CHECK(pattern_size(seq) == pattern_size(a) + pattern_size(b));
            CHECK(pattern_depth(seq) <= pattern_depth(a) + pattern_depth(b));
        }
    }
}

TEST_CASE("tensor with itself keeps the example depth") {
    Pattern t = example_pattern(Angle::rational(1, 4));
    CHECK(pattern_depth(compose_par(t, t)) == 6);
    CHECK(pattern_size(compose_par(th_pattern(), th_pattern())) == 8);
}

TEST_CASE("standardize removes dependent measurements") {
    Pattern p;
    p.qubits = {1, 2, 3};
    p.inputs = {};
    p.outputs = {3};
    p.commands = {Entangle{1, 2}, Entangle{2, 3}, Measure{1, Angle::rational(1, 4), {}, {}},
                  Measure{2, Angle::rational(1, 4), Signal({1}), Signal({1})}};
    Pattern s = standardize_dependent_measurements(p);
    CHECK(is_well_formed(s));
    for (const Command& c : s.commands)
        if (const auto* m = std::get_if<Measure>(&c)) CHECK(!m->dependent());
    CHECK(pattern_size(s) <= 3 * pattern_size(p));
    CHECK(pattern_depth(s) <= 2 * pattern_depth(p));
}

TEST_CASE("standardize is the identity on standard patterns") {
    Pattern t = example_pattern(Angle::rational(1, 4));
    CHECK(standardize_dependent_measurements(t) == t);
    CHECK(pattern_size(standardize_dependent_measurements(t)) == 10);
}

TEST_CASE("standardize bounds on random patterns") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        Pattern p = random_pattern(rng);
        Pattern s = standardize_dependent_measurements(p);
        CAPTURE(i);
        CHECK(is_well_formed(s));
        for (const Command& c : s.commands)
            if (const auto* m = std::get_if<Measure>(&c)) CHECK(!m->dependent());
        CHECK(pattern_size(s) <= 3 * pattern_size(p));
        CHECK(pattern_depth(s) <= 2 * pattern_depth(p));
    }
}

TEST_CASE("reorder_disjoint hoists independent commands") {
    Pattern p;
    p.qubits = {1, 2, 3, 4};
    p.inputs = {1, 2, 3, 4};
    p.outputs = {3, 4};
    p.commands = {Measure{1, Angle::zero(), {}, {}}, Measure{2, Angle::zero(), {}, {}},
                  Entangle{3, 4}};
    Pattern r = reorder_disjoint(p);
    CHECK(is_well_formed(r));
    CHECK(pattern_depth(r) <= pattern_depth(p));
    // All three commands are independent; they end up in one layer.
    CHECK(pattern_depth(r) == 1);
}

TEST_CASE("reorder_disjoint is a fixpoint on layer-minimal patterns") {
    Pattern t = th_pattern();
    CHECK(reorder_disjoint(t) == t);
}

TEST_CASE("reorder_disjoint never increases depth on random patterns") {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        Pattern p = random_pattern(rng);
        Pattern r = reorder_disjoint(p);
        CAPTURE(i);
        CHECK(is_well_formed(r));
        CHECK(pattern_depth(r) <= pattern_depth(p));
        CHECK(pattern_size(r) == pattern_size(p));
    }
}

TEST_CASE("normalized drops trivial corrections") {
    Pattern p;
    p.qubits = {1, 2};
    p.inputs = {1, 2};
    p.outputs = {1, 2};
    p.commands = {CorrectX{1, Signal{}}, CorrectZ{2, Signal{}}, Entangle{1, 2}};
    Pattern n = normalized(p);
    CHECK(n.commands.size() == 1);
    // Constant-1 corrections are unconditional gates, not trivial.
    Pattern q = p;
    q.commands = {CorrectX{1, Signal::one()}};
    CHECK(normalized(q).commands.size() == 1);
}

TEST_CASE("canonical_ids compacts registers") {
    Pattern p;
    p.qubits = {2, 5, 9};
    p.inputs = {2};
    p.outputs = {9};
    p.commands = {Entangle{2, 5}, Entangle{5, 9}, Measure{2, Angle::zero(), {}, {}},
                  Measure{5, Angle::zero(), Signal({2}), {}}};
    Pattern c = canonical_ids(p);
    CHECK(c.qubits == std::vector<QubitId>{1, 2, 3});
    CHECK(c.inputs == std::vector<QubitId>{1});
    CHECK(c.outputs == std::vector<QubitId>{3});
    CHECK(pattern_depth(c) == pattern_depth(p));
}
