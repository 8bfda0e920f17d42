#include "adshor/decoder.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace adshor;
using namespace adshor::decoder;

TEST(Decoder, Diff) {
    EXPECT_EQ(diff(seq_from_str("XIIXX"), seq_from_str("IXIXI")), 3);
    auto e = seq_from_str("XIXII");
    EXPECT_EQ(diff(e, e), 0);
    EXPECT_EQ(diff(e, complement(e)), 5);
    EXPECT_THROW(diff(seq_from_str("XI"), seq_from_str("X")), std::domain_error);
}

TEST(Decoder, SequencesFromSyndrome) {
    auto [e, eb] = sequences_from_syndrome({+1, -1, +1, +1});
    EXPECT_EQ(seq_str(e), "IIXXX");
    EXPECT_EQ(seq_str(eb), "XXIII");
    auto [t, tb] = sequences_from_syndrome({+1, +1});
    EXPECT_EQ(seq_str(t), "III");
    EXPECT_EQ(seq_str(tb), "XXX");
}

TEST(Decoder, SequencesReproduceSyndrome) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 8);
        std::vector<int> s;
        for (int i = 0; i < len; ++i) s.push_back(rng() % 2 ? +1 : -1);
        auto [e, eb] = sequences_from_syndrome(s);
        for (int i = 0; i < len; ++i) {
            EXPECT_EQ(e[i] == e[i + 1] ? +1 : -1, s[i]);
            EXPECT_EQ(eb[i] == eb[i + 1] ? +1 : -1, s[i]);
        }
    }
}

TEST(Decoder, ChoosePairPicksSmallDiff) {
    // t=2 rows of length 5; candidates engineered so diffs are {1, 4}
    auto a = sequences_from_syndrome({-1, +1, +1, +1});  // IXXXX / XIIII
    auto b = sequences_from_syndrome({+1, -1, +1, +1});  // IIXXX / XXIII
    auto pc = choose_pair(a, b, 2);
    ASSERT_FALSE(pc.failed);
    EXPECT_LE(pc.diff_value, 2);
    EXPECT_EQ(pc.diff_value, 1);
}

TEST(Decoder, ChoosePairTrivialTieBreak) {
    auto a = sequences_from_syndrome({+1, +1, +1, +1});
    auto pc = choose_pair(a, a, 2);
    ASSERT_FALSE(pc.failed);
    EXPECT_EQ(seq_str(pc.a), "IIIII");
    EXPECT_EQ(seq_str(pc.b), "IIIII");
}

TEST(Decoder, MajorityNaiveFirstToRepeat) {
    RoundSignature s{+1, -1};
    auto r = majority_syndrome({s, s}, StopRule::RepeatCount, 2, false);
    EXPECT_EQ(r.seq, s);
    EXPECT_FALSE(r.tie_flagged);
}

TEST(Decoder, MajorityNaiveAdversarialWorstCase) {
    // t=2: the fault-free sequence must win every adversarial schedule of
    // length t(t+1)+1 = 7 in which wrong sequences are each shown at most twice
    RoundSignature good{+1, +1}, w1{-1, +1}, w2{+1, -1}, w3{-1, -1};
    std::vector<std::vector<RoundSignature>> schedules = {
        {w1, w1, w2, w2, good, good, good},
        {w1, good, w1, good, w2, w2, good},
        {good, w1, w2, good, w3, w1, good},
        {w1, w2, w3, good, good, w1, good},
    };
    for (const auto& sched : schedules) {
        auto r = majority_syndrome(sched, StopRule::RepeatCount, 3, false);
        EXPECT_EQ(r.seq, good);
    }
}

TEST(Decoder, MajorityValidityFilter) {
    // one row of 3 checks: odd number of -1s is invalid and excluded
    RoundSignature invalid{-1, +1, +1}, valid{-1, -1, +1};
    auto r = majority_syndrome({invalid, invalid, valid}, StopRule::Fixed, 0, true, 1, 3);
    EXPECT_EQ(r.seq, valid);
    EXPECT_TRUE(r.used_validity);
}

TEST(Decoder, MajorityTieFlagged) {
    RoundSignature a{+1, +1}, b{-1, +1};
    auto r = majority_syndrome({a, b}, StopRule::Fixed, 0, false);
    EXPECT_TRUE(r.tie_flagged);
    EXPECT_EQ(r.seq, a);  // lexicographically smaller (+1 before -1)
}

TEST(Decoder, DecodeZPaperScenarioA) {
    // 7x7, syndrome (+,+,+,+,-,+), rows 1..4 damped -> Z on rows 1..5
    std::vector<RowStatus> st(7, RowStatus::Undamped);
    for (int r = 0; r < 4; ++r) st[r] = RowStatus::Damped;
    auto res = decode_z({+1, +1, +1, +1, -1, +1}, st);
    EXPECT_EQ(res.z_rows, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(Decoder, DecodeZPaperScenarioB) {
    // same syndrome, rows 1..4 potentially damped -> Z on rows 6,7
    std::vector<RowStatus> st(7, RowStatus::Undamped);
    for (int r = 0; r < 4; ++r) st[r] = RowStatus::PotentiallyDamped;
    auto res = decode_z({+1, +1, +1, +1, -1, +1}, st);
    EXPECT_EQ(res.z_rows, (std::vector<int>{6, 7}));
}

TEST(Decoder, DecodeZTrivial) {
    std::vector<RowStatus> st(4, RowStatus::Undamped);
    auto res = decode_z({+1, +1, +1}, st);
    EXPECT_TRUE(res.z_rows.empty());
}

TEST(Decoder, DecodeZWeightReducedFormEquivalence) {
    // choosing by full weight equals choosing by z_p + 2 z_u, for every status
    // configuration and syndrome at n <= 7
    for (int n = 2; n <= 7; ++n) {
        std::vector<int> status_code(n, 0);
        auto next_status = [&]() {
            for (int i = 0; i < n; ++i) {
                if (++status_code[i] < 3) return true;
                status_code[i] = 0;
            }
            return false;
        };
        do {
            std::vector<RowStatus> st(n);
            for (int i = 0; i < n; ++i) st[i] = static_cast<RowStatus>(status_code[i]);
            for (int syn = 0; syn < (1 << (n - 1)); ++syn) {
                std::vector<int> s;
                for (int b = 0; b < n - 1; ++b) s.push_back((syn >> b) & 1 ? -1 : +1);
                auto res = decode_z(s, st);
                // reduced-form comparison
                std::vector<std::uint8_t> f(n, 0);
                for (int r = 0; r + 1 < n; ++r) f[r + 1] = f[r] ^ (s[r] == -1);
                auto reduced = [&](const std::vector<std::uint8_t>& pat) {
                    int zp = 0, zu = 0;
                    for (int r = 0; r < n; ++r)
                        if (pat[r]) {
                            if (st[r] == RowStatus::PotentiallyDamped) ++zp;
                            if (st[r] == RowStatus::Undamped) ++zu;
                        }
                    return zp + 2 * zu;
                };
                std::vector<std::uint8_t> g(n);
                for (int r = 0; r < n; ++r) g[r] = f[r] ^ 1;
                const int rf = reduced(f), rg = reduced(g);
                std::vector<int> want;
                const auto& pick = (rg < rf) ? g : f;  // ties go to f
                for (int r = 0; r < n; ++r)
                    if (pick[r]) want.push_back(r + 1);
                EXPECT_EQ(res.z_rows, want) << "n=" << n << " syn=" << syn;
            }
        } while (next_status());
    }
}

TEST(Decoder, DecodeZMatchesIdealRuleWithoutPotentiallyDamped) {
    // with n_p = 0 the rule reduces to fewer Zs among undamped rows
    std::mt19937_64 rng(99);
    for (int n = 2; n <= 7; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<RowStatus> st(n);
            for (auto& s : st) s = (rng() % 2) ? RowStatus::Damped : RowStatus::Undamped;
            std::vector<int> syn;
            for (int b = 0; b < n - 1; ++b) syn.push_back(rng() % 2 ? -1 : +1);
            auto res = decode_z(syn, st);
            std::vector<std::uint8_t> f(n, 0);
            for (int r = 0; r + 1 < n; ++r) f[r + 1] = f[r] ^ (syn[r] == -1);
            auto zu = [&](const std::vector<std::uint8_t>& pat) {
                int c = 0;
                for (int r = 0; r < n; ++r)
                    if (pat[r] && st[r] == RowStatus::Undamped) ++c;
                return c;
            };
            std::vector<std::uint8_t> g(n);
            for (int r = 0; r < n; ++r) g[r] = f[r] ^ 1;
            const auto& pick = (zu(g) < zu(f)) ? g : f;
            std::vector<int> want;
            for (int r = 0; r < n; ++r)
                if (pick[r]) want.push_back(r + 1);
            EXPECT_EQ(res.z_rows, want);
        }
    }
}
