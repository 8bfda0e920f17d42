#include "adshor/codes.hpp"

#include <gtest/gtest.h>

using namespace adshor;

TEST(Codes, SmallestCodeGenerators) {
    BaconShorCode code(2);
    auto gens = stabilizer_generators(code);
    ASSERT_EQ(gens.size(), 3u);
    EXPECT_EQ(gens[0].str(), "Z@1,1 Z@1,2");
    EXPECT_EQ(gens[1].str(), "Z@2,1 Z@2,2");
    EXPECT_EQ(gens[2].str(), "X@1,1 X@1,2 X@2,1 X@2,2");
}

TEST(Codes, ThreeByThreeGeneratorCounts) {
    BaconShorCode code(3);
    auto gens = stabilizer_generators(code);
    ASSERT_EQ(gens.size(), 8u);
    int zz = 0, xx = 0;
    for (const auto& g : gens) {
        bool has_x = false;
        for (const auto& [c, s] : g.symbols())
            if (s == OpSym::X) has_x = true;
        (has_x ? xx : zz)++;
    }
    EXPECT_EQ(zz, 6);
    EXPECT_EQ(xx, 2);
}

TEST(Codes, GeneratorsCommutePairwiseUpToSix) {
    for (int n = 2; n <= 6; ++n) {
        BaconShorCode code(n);
        auto gens = stabilizer_generators(code);
        EXPECT_EQ(static_cast<int>(gens.size()), n * (n - 1) + (n - 1));
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                EXPECT_TRUE(gens[i].commutes_with(gens[j])) << "n=" << n << " i=" << i << " j=" << j;
    }
}

TEST(Codes, LogicalOperators) {
    for (int n = 2; n <= 6; ++n) {
        BaconShorCode code(n);
        auto [xbar, zbar] = logical_operators(code);
        EXPECT_TRUE(xbar.anticommutes_with(zbar));
        for (const auto& g : stabilizer_generators(code)) {
            EXPECT_TRUE(xbar.commutes_with(g));
            EXPECT_TRUE(zbar.commutes_with(g));
        }
    }
    BaconShorCode c2(2);
    auto [x2, z2] = logical_operators(c2);
    EXPECT_EQ(x2.str(), "X@1,1 X@1,2");
    EXPECT_EQ(z2.str(), "Z@1,1 Z@2,1");
}

TEST(Codes, InvalidCodeRejected) { EXPECT_THROW(BaconShorCode(1), std::invalid_argument); }

TEST(Codes, OperatorAlgebra) {
    auto e = OperatorString::single({1, 1}, OpSym::E);
    auto ed = OperatorString::single({1, 1}, OpSym::Edag);
    auto p0 = OperatorString::single({1, 1}, OpSym::P0);
    auto p1 = OperatorString::single({1, 1}, OpSym::P1);
    EXPECT_TRUE((e * ed).same_ray(p0));
    EXPECT_TRUE((ed * e).same_ray(p1));
    EXPECT_TRUE((e * e).is_zero());
    auto z = OperatorString::single({1, 1}, OpSym::Z);
    auto ze = z * e;
    EXPECT_EQ(ze.at({1, 1}), OpSym::E);
    EXPECT_NEAR(std::abs(ze.phase() - cplx(1.0)), 0.0, 1e-12);
    auto ez = e * z;
    EXPECT_NEAR(std::abs(ez.phase() - cplx(-1.0)), 0.0, 1e-12);
}

TEST(Codes, CodewordStatesAreStabilized) {
    for (int n : {2, 3}) {
        BaconShorCode code(n);
        for (auto w : {Codeword::Plus, Codeword::Minus, Codeword::Zero, Codeword::One}) {
            SparseState psi = codeword_state(code, w);
            EXPECT_NEAR(psi.norm2(), 1.0, 1e-12);
            for (const auto& g : stabilizer_generators(code)) {
                SparseState gpsi = psi;
                g.apply_to(gpsi, code);
                EXPECT_NEAR(std::abs(psi.inner(gpsi) - cplx(1.0)), 0.0, 1e-12)
                    << "n=" << n << " " << codeword_name(w) << " violates " << g.str();
            }
        }
    }
}

TEST(Codes, CodewordLogicalEigenstates) {
    BaconShorCode code(3);
    auto [xbar, zbar] = logical_operators(code);
    auto expect_eig = [&](Codeword w, const OperatorString& op, double eig) {
        SparseState psi = codeword_state(code, w);
        SparseState opsi = psi;
        op.apply_to(opsi, code);
        EXPECT_NEAR(std::abs(psi.inner(opsi) - cplx(eig)), 0.0, 1e-12) << codeword_name(w);
    };
    expect_eig(Codeword::Zero, zbar, +1.0);
    expect_eig(Codeword::One, zbar, -1.0);
    expect_eig(Codeword::Plus, xbar, +1.0);
    expect_eig(Codeword::Minus, xbar, -1.0);
}

TEST(Codes, ThreeByThreeZeroMatchesExpansion) {
    // |0>_L = (|0r0r0r> + |0r1r1r> + |1r0r1r> + |1r1r0r>)/2
    BaconShorCode code(3);
    SparseState zero = codeword_state(code, Codeword::Zero);
    auto row_bits = [&](int row) {
        std::uint64_t b = 0;
        for (int c = 1; c <= 3; ++c) b |= 1ull << code.qubit(row, c);
        return b;
    };
    std::vector<std::uint64_t> expect = {0,
                                         row_bits(2) | row_bits(3),
                                         row_bits(1) | row_bits(3),
                                         row_bits(1) | row_bits(2)};
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(zero.terms().size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(zero.terms()[i].first, expect[i]);
        EXPECT_NEAR(std::abs(zero.terms()[i].second - cplx(0.5)), 0.0, 1e-12);
    }
}

TEST(Codes, TwoByTwoMatchesFourQubitCode) {
    // the 4-qubit code: |0L> = (|0000>+|1111>)/sqrt2, |1L> = (|0011>+|1100>)/sqrt2
    BaconShorCode code(2);
    SparseState zero = codeword_state(code, Codeword::Zero);
    SparseState one = codeword_state(code, Codeword::One);
    SparseState ref0({{0b0000u, cplx(1 / std::sqrt(2.0))}, {0b1111u, cplx(1 / std::sqrt(2.0))}});
    // rows are (q0,q1) and (q2,q3): |1>_row1 -> bits 0,1
    SparseState ref1({{0b0011u, cplx(1 / std::sqrt(2.0))}, {0b1100u, cplx(1 / std::sqrt(2.0))}});
    EXPECT_NEAR(zero.overlap2(ref0), 1.0, 1e-12);
    EXPECT_NEAR(one.overlap2(ref1), 1.0, 1e-12);
}

TEST(Codes, SizeCapEnforced) {
    BaconShorCode code(4);
    EXPECT_THROW(codeword_state(code, Codeword::Plus), std::length_error);
    EXPECT_NO_THROW(codeword_state(code, Codeword::Plus, 4));
}

TEST(Codes, JsonExport) {
    BaconShorCode code(2);
    auto j = code_to_json(code);
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(j["t"], 1);
    EXPECT_EQ(j["stabilizers"].size(), 3u);
    EXPECT_EQ(j["stabilizers"][0], "Z@1,1 Z@1,2");
    EXPECT_EQ(j["logicals"]["Z"], "Z@1,1 Z@2,1");
}
