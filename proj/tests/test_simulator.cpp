#include "adshor/simulator.hpp"

#include <gtest/gtest.h>

#include "adshor/gadgets.hpp"

using namespace adshor;
using namespace adshor::sim;
using gadgets::Builder;
using gadgets::detail::ins;

namespace {

Circuit one_qubit_idle() {
    Builder b;
    const int q = b.declare(QubitRole::Resource, 0, 0, 0, true);
    b.step({ins(OpKind::Idle, {q})});
    return b.finish();
}

}  // namespace

TEST(Simulator, SingleNoiseLocationSplitsExcitedState) {
    Circuit c = one_qubit_idle();
    SparseState one({{1u, cplx(1.0)}});
    auto branches = run_collect(c, SimConfig::enumerate(0.1, 4), one);
    ASSERT_EQ(branches.size(), 2u);
    // DFS order: the no-jump branch completes first
    EXPECT_NEAR(branches[0].probability(), 0.9, 1e-12);
    EXPECT_EQ(branches[0].jumps, 0);
    EXPECT_NEAR(branches[1].probability(), 0.1, 1e-12);
    EXPECT_EQ(branches[1].jumps, 1);
}

TEST(Simulator, GroundStateNeverJumps) {
    Circuit c = one_qubit_idle();
    auto branches = run_collect(c, SimConfig::enumerate(0.3, 4), SparseState::zero_state());
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_NEAR(branches[0].probability(), 1.0, 1e-12);
}

TEST(Simulator, ExactNoJumpAmplitude) {
    // E0 everywhere with 0 jumps reproduces sqrt(1-p)^occupation on products
    Builder b;
    const int q0 = b.declare(QubitRole::Resource, 0, 0, 0, true);
    const int q1 = b.declare(QubitRole::Resource, 0, 0, 1, true);
    for (int s = 0; s < 3; ++s) b.step({ins(OpKind::Idle, {q0}), ins(OpKind::Idle, {q1})});
    Circuit c = b.finish();
    SparseState init({{0b11u, cplx(1.0)}});
    const double p = 0.02;
    auto branches = run_collect(c, SimConfig::enumerate(p, 0), init);
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_NEAR(branches[0].probability(), std::pow(1.0 - p, 6), 1e-12);
}

TEST(Simulator, DeficitTracksTruncatedMass) {
    Builder b;
    const int q0 = b.declare(QubitRole::Resource, 0, 0, 0, true);
    const int q1 = b.declare(QubitRole::Resource, 0, 0, 1, true);
    for (int s = 0; s < 2; ++s) b.step({ins(OpKind::Idle, {q0}), ins(OpKind::Idle, {q1})});
    Circuit c = b.finish();
    SparseState both({{0b11u, cplx(1.0)}});
    RunStats st = run(c, SimConfig::enumerate(0.25, 1), both, {});
    EXPECT_NEAR(st.total_probability + st.deficit, 1.0, 1e-12);
    EXPECT_GT(st.deficit, 0.0);
}

TEST(Simulator, MeasurementBranchingAndRecords) {
    Builder b;
    const int q = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int r = b.rec("m", RecordBasis::Z);
    b.step({ins(OpKind::MeasZ, {q}, r)});
    Circuit c = b.finish();
    SparseState plus({{0u, cplx(1 / std::sqrt(2.0))}, {1u, cplx(1 / std::sqrt(2.0))}});
    auto branches = run_collect(c, SimConfig::noiseless(), plus);
    ASSERT_EQ(branches.size(), 2u);
    EXPECT_EQ(branches[0].rec_raw[0], +1);
    EXPECT_EQ(branches[1].rec_raw[0], -1);
    EXPECT_NEAR(branches[0].probability(), 0.5, 1e-12);
    EXPECT_NEAR(branches[1].probability(), 0.5, 1e-12);
}

TEST(Simulator, DeterministicMeasurementDoesNotBranch) {
    Builder b;
    const int q = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int r = b.rec("m", RecordBasis::Z);
    b.step({ins(OpKind::MeasZ, {q}, r)});
    Circuit c = b.finish();
    auto branches = run_collect(c, SimConfig::noiseless(), SparseState::zero_state());
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_EQ(branches[0].rec_raw[0], +1);
}

TEST(Simulator, ConditionalBlockFollowsRecords) {
    Builder b;
    const int q = b.declare(QubitRole::Data, 0, 1, 1, true);
    const int a = b.declare(QubitRole::Parity, 0, 1, 1, false);
    const int r = b.rec("m", RecordBasis::Z);
    b.step({ins(OpKind::MeasZ, {q}, r)});
    b.begin_cond(Guard::record_minus(r));
    b.step({ins(OpKind::PrepZero, {a})});
    b.step({ins(OpKind::PauliX, {a})});
    const int r2 = b.rec("m2", RecordBasis::Z);
    b.step({ins(OpKind::MeasZ, {a}, r2)});
    b.end_cond();
    Circuit c = b.finish();
    SparseState plus({{0u, cplx(1 / std::sqrt(2.0))}, {1u, cplx(1 / std::sqrt(2.0))}});
    auto branches = run_collect(c, SimConfig::noiseless(), plus);
    ASSERT_EQ(branches.size(), 2u);
    EXPECT_EQ(branches[0].rec_raw[1], 0);   // +1 branch skipped the block
    EXPECT_EQ(branches[1].rec_raw[1], -1);  // -1 branch ran it; ancilla flipped to |1>
}

TEST(Simulator, InjectedJumpConditionsTheState) {
    Circuit c = one_qubit_idle();
    SparseState plus({{0u, cplx(1 / std::sqrt(2.0))}, {1u, cplx(1 / std::sqrt(2.0))}});
    FaultPlacement pl;
    pl.add(0, {InjectKind::Jump, {}});
    auto branches = inject_collect(c, pl, plus);
    ASSERT_EQ(branches.size(), 1u);
    // bare E on |+> leaves |0> with amplitude 1/sqrt(2)
    EXPECT_NEAR(branches[0].probability(), 0.5, 1e-12);
    EXPECT_TRUE(branches[0].state.qubit_is_zero(0));
}

TEST(Simulator, EmptyPlacementMatchesNoiseless) {
    Circuit c = one_qubit_idle();
    SparseState plus({{0u, cplx(1 / std::sqrt(2.0))}, {1u, cplx(1 / std::sqrt(2.0))}});
    auto a = inject_collect(c, FaultPlacement{}, plus);
    auto b = run_collect(c, SimConfig::noiseless(), plus);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_NEAR(a[0].state.overlap2(b[0].state), 1.0, 1e-12);
}

TEST(Simulator, MonteCarloReproducible) {
    Circuit c = one_qubit_idle();
    SparseState one({{1u, cplx(1.0)}});
    auto cfg = SimConfig::monte_carlo(0.3, 200, 42);
    int jumps_a = 0, jumps_b = 0;
    run(c, cfg, one, [&](const Branch& b) { jumps_a += b.jumps; });
    run(c, cfg, one, [&](const Branch& b) { jumps_b += b.jumps; });
    EXPECT_EQ(jumps_a, jumps_b);
    EXPECT_NEAR(jumps_a / 200.0, 0.3, 0.1);
}

TEST(Simulator, LiveCapEnforced) {
    Builder b;
    std::vector<Instruction> idles;
    for (int q = 0; q < 30; ++q)
        idles.push_back(ins(OpKind::Idle, {b.declare(QubitRole::Resource, 0, 0, q, true)}));
    b.step(std::move(idles));
    Circuit c = b.finish();
    EXPECT_THROW(run_collect(c, SimConfig::noiseless(), SparseState::zero_state()), std::length_error);
    SimConfig big = SimConfig::noiseless();
    big.max_live = 32;
    EXPECT_NO_THROW(run_collect(c, big, SparseState::zero_state()));
}
