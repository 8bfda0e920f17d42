#include "adshor/circuit.hpp"

#include <gtest/gtest.h>

#include "adshor/gadgets.hpp"

using namespace adshor;
using gadgets::Builder;
using gadgets::detail::ins;

TEST(Circuit, EmptyCircuitHasNoLocations) {
    Builder b;
    Circuit c = b.finish();
    EXPECT_EQ(c.count_locations(CountMode::Physical), 0);
    EXPECT_EQ(c.count_locations(CountMode::Budget), 0);
}

TEST(Circuit, ParityMeasurementHandCount) {
    // three qubits over prep + two CNOT layers + measure: 12 sites with idles
    Builder b;
    const int q1 = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int q2 = b.declare(QubitRole::Data, 0, 1, 2, true);
    const int a = b.declare(QubitRole::Parity, 0, 1, 1, false);
    const int r = b.rec("p", RecordBasis::Z);
    b.step({ins(OpKind::PrepZero, {a})});
    b.step({ins(OpKind::Cnot, {q1, a})});
    b.step({ins(OpKind::Cnot, {q2, a})});
    b.step({ins(OpKind::MeasZ, {a}, r)});
    Circuit c = b.finish();
    EXPECT_EQ(c.count_locations(CountMode::Physical), 12);
}

TEST(Circuit, NondestructiveReadoutHandCount) {
    // two qubits over prep + CNOT + measure: 6 sites
    Builder b;
    const int q = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int a = b.declare(QubitRole::Parity, 0, 1, 1, false);
    const int r = b.rec("u", RecordBasis::Z);
    b.step({ins(OpKind::PrepZero, {a})});
    b.step({ins(OpKind::Cnot, {q, a})});
    b.step({ins(OpKind::MeasZ, {a}, r)});
    Circuit c = b.finish();
    EXPECT_EQ(c.count_locations(CountMode::Physical), 6);
}

TEST(Circuit, MeasurementTimingIsBefore) {
    Builder b;
    const int q = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int r = b.rec("m", RecordBasis::Z);
    b.step({ins(OpKind::MeasZ, {q}, r)});
    Circuit c = b.finish();
    ASSERT_EQ(c.locations().size(), 1u);
    EXPECT_EQ(c.locations()[0].timing, NoiseTiming::Before);
}

TEST(Circuit, SchedulingRejectsDoubleUse) {
    Builder b;
    const int q1 = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int q2 = b.declare(QubitRole::Data, 0, 1, 2, true);
    b.step({ins(OpKind::Cnot, {q1, q2}), ins(OpKind::PauliX, {q1})});
    EXPECT_THROW(b.finish(), std::runtime_error);
}

TEST(Circuit, SchedulingRejectsDeadQubitUse) {
    Builder b;
    const int q = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int r = b.rec("m", RecordBasis::Z);
    b.step({ins(OpKind::MeasZ, {q}, r)});
    b.step({ins(OpKind::PauliX, {q})});
    EXPECT_THROW(b.finish(), std::runtime_error);
}

TEST(Circuit, AncillaRebirthIsAllowed) {
    Builder b;
    const int a = b.declare(QubitRole::Parity, 0, 1, 1, false);
    const int r1 = b.rec("m1", RecordBasis::Z);
    const int r2 = b.rec("m2", RecordBasis::Z);
    b.step({ins(OpKind::PrepZero, {a})});
    b.step({ins(OpKind::MeasZ, {a}, r1)});
    b.step({ins(OpKind::PrepPlus, {a})});
    b.step({ins(OpKind::MeasX, {a}, r2)});
    EXPECT_NO_THROW(b.finish());
}

TEST(Circuit, DeterministicLocationIndex) {
    auto build = [] {
        BaconShorCode code(2);
        return gadgets::build_subcircuit(code, RepeatPolicy::RedundantParity);
    };
    Circuit a = build();
    Circuit b = build();
    ASSERT_EQ(a.locations().size(), b.locations().size());
    for (std::size_t i = 0; i < a.locations().size(); ++i) {
        EXPECT_EQ(a.locations()[i].qubit, b.locations()[i].qubit);
        EXPECT_EQ(a.locations()[i].step, b.locations()[i].step);
        EXPECT_EQ(a.locations()[i].idle, b.locations()[i].idle);
    }
}

TEST(Circuit, AttachNoiseOnceOnly) {
    BaconShorCode code(2);
    Circuit c = gadgets::build_subcircuit(code, RepeatPolicy::RedundantParity);
    c.attach_noise();
    EXPECT_TRUE(c.noise_attached());
    EXPECT_THROW(c.attach_noise(), std::logic_error);
}

TEST(Circuit, BudgetCountsMatchClosedForms) {
    for (int t = 1; t <= 5; ++t) {
        BaconShorCode code(t + 1);
        // coupling, both rows: 2(2t+1)
        EXPECT_EQ(component_budget({Component::Kind::Coupling, t, 1}), 2 * (2 * t + 1));
        // damping extraction, per round per row: 3(3t+2)
        EXPECT_EQ(component_budget({Component::Kind::DampingExtraction, t, 1}), 3 * (3 * t + 2));
        // XX measurement: 16(t+1)^2+4
        EXPECT_EQ(component_budget({Component::Kind::XXMeasurement, t, 1}),
                  16 * (t + 1) * (t + 1) + 4);
    }
    EXPECT_EQ(component_budget({Component::Kind::Coupling, 1, 1}), 6);
    EXPECT_EQ(component_budget({Component::Kind::DampingExtraction, 2, 1}), 24);
    EXPECT_EQ(component_budget({Component::Kind::XXMeasurement, 1, 1}), 68);
}

TEST(Circuit, PhysicalCountAtLeastInstructionCount) {
    BaconShorCode code(2);
    for (auto kind : {gadgets::GadgetKind::Subcircuit, gadgets::GadgetKind::FTEC,
                      gadgets::GadgetKind::IdealEC, gadgets::GadgetKind::XXMeasurement}) {
        Circuit c = gadgets::build(kind, code);
        long instr = 0;
        for (const auto& l : c.locations())
            if (!l.idle) ++instr;
        EXPECT_GE(c.count_locations(CountMode::Physical), instr);
    }
}
