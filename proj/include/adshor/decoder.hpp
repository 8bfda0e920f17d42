#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adshor/circuit.hpp"
#include "adshor/codes.hpp"

namespace adshor::decoder {

/// Per-qubit X-type error string: 0 = I, 1 = X.
using ErrorSequence = std::vector<std::uint8_t>;

inline std::string seq_str(const ErrorSequence& e) {
    std::string s;
    for (auto v : e) s += v ? 'X' : 'I';
    return s;
}

inline ErrorSequence seq_from_str(const std::string& s) {
    ErrorSequence e;
    for (char c : s) {
        if (c == 'X')
            e.push_back(1);
        else if (c == 'I')
            e.push_back(0);
        else
            throw std::invalid_argument("seq_from_str: symbols must be I or X");
    }
    return e;
}

inline ErrorSequence complement(ErrorSequence e) {
    for (auto& v : e) v ^= 1;
    return e;
}

/// Number of columns in which the two sequences differ.
inline int diff(const ErrorSequence& a, const ErrorSequence& b) {
    if (a.size() != b.size()) throw std::domain_error("diff: sequences of unequal length");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

/// The two complementary sequences reproducing the adjacent-pair parity string
/// s (over ±1). The first returned sequence is fixed by e[0] = I.
inline std::pair<ErrorSequence, ErrorSequence> sequences_from_syndrome(const std::vector<int>& s) {
    ErrorSequence e(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i) e[i + 1] = e[i] ^ (s[i] == -1 ? 1 : 0);
    ErrorSequence eb = complement(e);
    return {e, eb};
}

inline int x_count(const ErrorSequence& e) {
    int c = 0;
    for (auto v : e) c += v;
    return c;
}

struct PairChoice {
    ErrorSequence a, b;
    int diff_value = 0;
    bool failed = false;  // no assignment with DIFF <= t
};

/// Selects one sequence per row from the complementary candidates so that
/// DIFF(a, b) <= t. If both complement-assignments qualify, the one with fewer
/// X symbols wins, then the lexicographically smaller (I before X).
inline PairChoice choose_pair(const std::pair<ErrorSequence, ErrorSequence>& row_a,
                              const std::pair<ErrorSequence, ErrorSequence>& row_b, int t) {
    std::vector<std::pair<ErrorSequence, ErrorSequence>> options = {
        {row_a.first, row_b.first},
        {row_a.first, row_b.second},
        {row_a.second, row_b.first},
        {row_a.second, row_b.second},
    };
    PairChoice best;
    best.failed = true;
    auto key = [](const std::pair<ErrorSequence, ErrorSequence>& o) {
        std::string s = seq_str(o.first) + seq_str(o.second);
        return std::make_pair(x_count(o.first) + x_count(o.second), s);
    };
    for (const auto& o : options) {
        const int d = diff(o.first, o.second);
        if (d > t) continue;
        if (best.failed || key(o) < key({best.a, best.b})) {
            best = {o.first, o.second, d, false};
        }
    }
    return best;
}

/// One transcript round as measured values (+1/-1).
using RoundSignature = std::vector<std::int8_t>;

struct VoteResult {
    RoundSignature seq;
    bool tie_flagged = false;
    bool used_validity = false;
    int rounds_executed = 0;
};

inline bool signature_valid(const RoundSignature& sig, int rows, int checks_per_row) {
    if (rows <= 0) return true;
    for (int r = 0; r < rows; ++r) {
        int minuses = 0;
        for (int k = 0; k < checks_per_row; ++k)
            if (sig[r * checks_per_row + k] == -1) ++minuses;
        if (minuses % 2 != 0) return false;
    }
    return true;
}

/// Majority vote over repeated syndrome rounds. RepeatCount: the first
/// signature to be seen `need` times, scanning the transcript prefix (the
/// in-circuit stop rule reads the same way). Fixed: plain majority, optionally
/// restricted to valid signatures (an even number of -1s per row), falling
/// back to all rounds when none are valid. Ties break to the
/// lexicographically smaller signature (+1 sorting before -1) and are flagged.
inline VoteResult majority_syndrome(const std::vector<RoundSignature>& rounds, StopRule rule, int need,
                                    bool validity_filter, int rows = 0, int checks_per_row = 0) {
    if (rounds.empty()) throw std::domain_error("majority_syndrome: no rounds");
    VoteResult out;
    out.rounds_executed = static_cast<int>(rounds.size());
    auto lex_less = [](const RoundSignature& a, const RoundSignature& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const int xa = a[i] == -1, xb = b[i] == -1;
            if (xa != xb) return xa < xb;
        }
        return false;
    };
    if (rule == StopRule::RepeatCount) {
        std::vector<std::pair<RoundSignature, int>> counts;
        for (const auto& r : rounds) {
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [&](const auto& e) { return e.first == r; });
            if (it == counts.end()) it = counts.insert(counts.end(), {r, 0});
            if (++it->second >= need) {
                out.seq = r;
                return out;
            }
        }
        // cap reached without the required repeat count: fall back to majority
    }
    std::vector<const RoundSignature*> pool;
    if (validity_filter) {
        for (const auto& r : rounds)
            if (signature_valid(r, rows, checks_per_row)) pool.push_back(&r);
        out.used_validity = !pool.empty();
    }
    if (pool.empty())
        for (const auto& r : rounds) pool.push_back(&r);
    std::vector<std::pair<const RoundSignature*, int>> tally;
    for (const auto* r : pool) {
        auto it = std::find_if(tally.begin(), tally.end(),
                               [&](const auto& e) { return *e.first == *r; });
        if (it == tally.end())
            tally.emplace_back(r, 1);
        else
            ++it->second;
    }
    const RoundSignature* best = nullptr;
    int best_count = 0;
    bool tie = false;
    for (const auto& [sig, cnt] : tally) {
        if (best == nullptr || cnt > best_count) {
            best = sig;
            best_count = cnt;
            tie = false;
        } else if (cnt == best_count) {
            tie = true;
            if (lex_less(*sig, *best)) best = sig;
        }
    }
    out.tie_flagged = tie;
    out.seq = *best;
    return out;
}

// ---------------------------------------------------------------------------
// Record views and transcript extraction
// ---------------------------------------------------------------------------

/// Frame-folded record values for one branch; 0 means the instruction that
/// owns the record never executed.
using RecordValues = std::span<const std::int8_t>;

inline std::int8_t rec_value(RecordValues rec, int id) {
    if (id < 0 || static_cast<std::size_t>(id) >= rec.size())
        throw std::out_of_range("record id out of range");
    return rec[id];
}

/// Executed rounds of a group, in order; stops at the first round with an
/// absent record.
inline std::vector<RoundSignature> group_transcript(const RoundGroup& g, RecordValues rec) {
    std::vector<RoundSignature> rounds;
    for (const auto& round : g.rounds) {
        RoundSignature sig;
        bool complete = !round.empty();
        for (int id : round) {
            const auto v = rec_value(rec, id);
            if (v == 0) {
                complete = false;
                break;
            }
            sig.push_back(v);
        }
        if (!complete) break;
        rounds.push_back(std::move(sig));
    }
    return rounds;
}

inline VoteResult vote_group(const RoundGroup& g, RecordValues rec) {
    return majority_syndrome(group_transcript(g, rec), g.rule, g.need, g.validity_filter, g.rows,
                             g.checks_per_row);
}

/// True when the repeat group should run round `next_round` given the rounds
/// executed so far.
inline bool group_live(const RoundGroup& g, RecordValues rec, int next_round) {
    if (next_round >= static_cast<int>(g.rounds.size())) return false;
    if (g.rule == StopRule::Fixed) return true;
    std::vector<RoundSignature> seen = group_transcript(g, rec);
    if (static_cast<int>(seen.size()) < next_round) return false;  // earlier round skipped
    std::vector<std::pair<RoundSignature, int>> counts;
    for (const auto& r : seen) {
        bool found = false;
        for (auto& [sig, c] : counts)
            if (sig == r) {
                ++c;
                found = true;
            }
        if (!found) counts.emplace_back(r, 1);
    }
    for (const auto& [sig, c] : counts)
        if (c >= g.need) return false;
    return true;
}

/// The chosen per-row error sequences of a two-row parity-check group.
inline std::array<ErrorSequence, 2> recovery_sequences(const RoundGroup& g, RecordValues rec) {
    const VoteResult vote = vote_group(g, rec);
    std::array<std::pair<ErrorSequence, ErrorSequence>, 2> cands;
    for (int row = 0; row < 2; ++row) {
        std::vector<int> chain;
        for (int k = 0; k < g.chain_len; ++k) chain.push_back(vote.seq[row * g.checks_per_row + k]);
        cands[row] = sequences_from_syndrome(chain);
    }
    PairChoice pc = choose_pair(cands[0], cands[1], g.t);
    if (pc.failed)
        // beyond-budget fault pattern; fall back deterministically
        return {cands[0].first, cands[1].first};
    return {pc.a, pc.b};
}

// ---------------------------------------------------------------------------
// Row labeling and Z decoding
// ---------------------------------------------------------------------------

enum class RowStatus { Undamped, PotentiallyDamped, Damped };

inline void escalate(RowStatus& s, RowStatus to) {
    if (static_cast<int>(to) > static_cast<int>(s)) s = to;
}

inline bool any_minus(RecordValues rec, const std::vector<int>& ids) {
    for (int id : ids)
        if (rec_value(rec, id) == -1) return true;
    return false;
}

inline bool any_minus_nested(RecordValues rec, const std::vector<std::vector<int>>& idss) {
    for (const auto& ids : idss)
        if (any_minus(rec, ids)) return true;
    return false;
}

/// Row labels for one EC unit, folding the subcircuits in execution order:
/// damping-extraction hits mark a row damped; post-XX parity hits mark it
/// damped (flag +1) or potentially damped (flag -1); a -1 coupling-ancilla
/// measurement marks the row damped from the next subcircuit on. Escalation
/// is monotone.
inline std::vector<RowStatus> label_rows(const Circuit& c, RecordValues rec, const EcCtx& ec) {
    std::vector<RowStatus> status(ec.n + 1, RowStatus::Undamped);  // 1-based rows
    std::vector<bool> pending_coupling(ec.n + 1, false);
    for (int sub_id : ec.subs) {
        const SubCtx& sub = c.subs.at(sub_id);
        const int rows[2] = {sub.row_a, sub.row_b};
        for (int slot = 0; slot < 2; ++slot) {
            const int row = rows[slot];
            if (pending_coupling[row]) escalate(status[row], RowStatus::Damped);
            if (any_minus_nested(rec, sub.extraction[slot].round_parities))
                escalate(status[row], RowStatus::Damped);
        }
        const RoundGroup& pg = c.groups.at(sub.parity_group);
        const auto flag = rec_value(rec, sub.flag_record);
        for (int slot = 0; slot < 2; ++slot) {
            const int row = rows[slot];
            bool hit = false;
            for (const auto& round : pg.rounds) {
                for (int k = 0; k < pg.checks_per_row; ++k) {
                    const int id = round[slot * pg.checks_per_row + k];
                    if (rec_value(rec, id) == -1) hit = true;
                }
            }
            if (hit)
                escalate(status[row], flag == -1 ? RowStatus::PotentiallyDamped : RowStatus::Damped);
        }
        for (int slot = 0; slot < 2; ++slot)
            if (any_minus(rec, sub.coupling_mz[slot])) pending_coupling[rows[slot]] = true;
    }
    status.erase(status.begin());  // drop the unused 0 slot
    return status;
}

struct DecodeResult {
    std::vector<LatticeCoord> x_corrections;
    std::vector<int> z_rows;  // 1-based; the Z lands on the column-1 qubit
    bool tie_flagged = false;
    std::vector<int> syndrome;  // the voted XX syndrome (+1/-1 per pair)
};

/// Weight of a row-level Z pattern against the row statuses:
/// w = n_d + n_p + z_p + 2 z_u (damped-row Zs are free).
inline int z_pattern_weight(const std::vector<std::uint8_t>& f, const std::vector<RowStatus>& status) {
    int nd = 0, np = 0, zp = 0, zu = 0;
    for (std::size_t r = 0; r < status.size(); ++r) {
        if (status[r] == RowStatus::Damped) ++nd;
        if (status[r] == RowStatus::PotentiallyDamped) ++np;
        if (f[r]) {
            if (status[r] == RowStatus::PotentiallyDamped) ++zp;
            if (status[r] == RowStatus::Undamped) ++zu;
        }
    }
    return nd + np + zp + 2 * zu;
}

/// Decodes the voted XX syndrome into the lower-weight compatible row pattern.
/// Equal weights break toward the pattern with no Z on row 1.
inline DecodeResult decode_z(const std::vector<int>& syndrome, const std::vector<RowStatus>& status) {
    const int n = static_cast<int>(status.size());
    if (static_cast<int>(syndrome.size()) != n - 1)
        throw std::domain_error("decode_z: syndrome length must be n-1");
    std::vector<std::uint8_t> f(n, 0);
    for (int r = 0; r + 1 < n; ++r) f[r + 1] = f[r] ^ (syndrome[r] == -1 ? 1 : 0);
    std::vector<std::uint8_t> g(n);
    for (int r = 0; r < n; ++r) g[r] = f[r] ^ 1;
    const int wf = z_pattern_weight(f, status);
    const int wg = z_pattern_weight(g, status);
    DecodeResult out;
    out.syndrome = syndrome;
    const std::vector<std::uint8_t>* chosen = &f;
    if (wg < wf) chosen = &g;
    if (wg == wf) {
        chosen = &f;  // f has no Z on row 1 by construction
        out.tie_flagged = true;
    }
    for (int r = 0; r < n; ++r)
        if ((*chosen)[r]) out.z_rows.push_back(r + 1);
    return out;
}

/// X fix-ups implied by a row of per-qubit MZ outcomes: +1 outcomes are the
/// damped qubits, but only when some -1 in the row witnesses that the row held
/// ones at all (an all-+1 row was a zero row; nothing to fix).
inline std::vector<int> damped_positions(RecordValues rec, const std::vector<int>& mz_records) {
    std::vector<int> out;
    if (!any_minus(rec, mz_records)) return out;
    for (std::size_t i = 0; i < mz_records.size(); ++i)
        if (rec_value(rec, mz_records[i]) == +1) out.push_back(static_cast<int>(i));
    return out;
}

/// Decode for the ideal EC: damped rows from the ZZ parities, X fix-ups from
/// the per-qubit MZ outcomes, and the compatible Z pattern with fewer Zs among
/// the undamped rows.
inline DecodeResult decode_ideal(const Circuit& c, RecordValues rec, const IdealEcCtx& ec) {
    std::vector<RowStatus> status(ec.n, RowStatus::Undamped);
    DecodeResult pre;
    for (int r = 0; r < ec.n; ++r) {
        if (any_minus(rec, ec.row_parities[r])) status[r] = RowStatus::Damped;
        for (int pos : damped_positions(rec, ec.row_mz[r]))
            pre.x_corrections.push_back({r + 1, pos + 1});
    }
    std::vector<int> syndrome;
    for (int id : ec.xx_records) syndrome.push_back(rec_value(rec, id));
    DecodeResult out = decode_z(syndrome, status);
    out.x_corrections = std::move(pre.x_corrections);
    return out;
}

/// Data-qubit coordinates identified as damped by an EC unit's extraction MZs.
inline std::vector<LatticeCoord> damped_qubits(const Circuit& c, RecordValues rec, const EcCtx& ec) {
    std::vector<LatticeCoord> out;
    for (int sub_id : ec.subs) {
        const SubCtx& sub = c.subs.at(sub_id);
        const int rows[2] = {sub.row_a, sub.row_b};
        for (int slot = 0; slot < 2; ++slot) {
            for (int pos : damped_positions(rec, sub.extraction[slot].mz_records)) {
                if (pos % 2 != 0) continue;  // odd extended positions are coupling ancillas
                LatticeCoord coord{rows[slot], pos / 2 + 1};
                if (std::find(out.begin(), out.end(), coord) == out.end()) out.push_back(coord);
            }
        }
    }
    return out;
}

/// Voted Z syndrome of an EC unit.
inline VoteResult ec_syndrome(const Circuit& c, RecordValues rec, const EcCtx& ec) {
    return vote_group(c.groups.at(ec.z_group), rec);
}

/// Full EC decode: label rows, vote the Z syndrome, pick the Z pattern.
inline DecodeResult decode_ec(const Circuit& c, RecordValues rec, const EcCtx& ec,
                              const std::vector<RowStatus>* escalated = nullptr) {
    std::vector<RowStatus> status = escalated ? *escalated : label_rows(c, rec, ec);
    const VoteResult vote = ec_syndrome(c, rec, ec);
    std::vector<int> syndrome(vote.seq.begin(), vote.seq.end());
    DecodeResult out = decode_z(syndrome, status);
    out.tie_flagged = out.tie_flagged || vote.tie_flagged;
    return out;
}

/// Joint decode of the two output blocks of a transversal CZ: a damped qubit
/// (i,j) in one block escalates row j of the other block to damped before its
/// Z decode runs.
inline std::pair<DecodeResult, DecodeResult> joint_cz_decode(const Circuit& c, RecordValues rec,
                                                             const EcCtx& ec_a, const EcCtx& ec_b,
                                                             bool joint = true) {
    std::vector<RowStatus> sa = label_rows(c, rec, ec_a);
    std::vector<RowStatus> sb = label_rows(c, rec, ec_b);
    if (joint) {
        for (const auto& q : damped_qubits(c, rec, ec_a)) escalate(sb[q.col - 1], RowStatus::Damped);
        for (const auto& q : damped_qubits(c, rec, ec_b)) escalate(sa[q.col - 1], RowStatus::Damped);
    }
    return {decode_ec(c, rec, ec_a, &sa), decode_ec(c, rec, ec_b, &sb)};
}

// ---------------------------------------------------------------------------
// Logical measurement outcomes
// ---------------------------------------------------------------------------

struct MeasXOutcome {
    int outcome = +1;
    std::vector<bool> valid;
    bool tie_flagged = false;
};

/// Majority over valid rows; a row is valid when its two X outcomes agree and
/// every disentangled qubit measured +1.
inline MeasXOutcome measx_outcome(const Circuit& c, RecordValues rec, const MeasXCtx& ctx) {
    MeasXOutcome out;
    int sum = 0;
    for (std::size_t r = 0; r < ctx.anc_x.size(); ++r) {
        const auto a = rec_value(rec, ctx.anc_x[r]);
        const auto f = rec_value(rec, ctx.first_x[r]);
        bool valid = a != 0 && a == f && !any_minus(rec, ctx.row_z[r]);
        out.valid.push_back(valid);
        if (valid) sum += a;
    }
    if (sum == 0) out.tie_flagged = true;
    out.outcome = sum < 0 ? -1 : +1;
    return out;
}

/// Logical Z outcome: rows with any -1 were one-rows; parity of their count.
inline int measz_outcome(const Circuit& c, RecordValues rec, const MeasZCtx& ctx) {
    int ones = 0;
    for (const auto& row : ctx.row_mz)
        if (any_minus(rec, row)) ++ones;
    return ones % 2 == 0 ? +1 : -1;
}

// ---------------------------------------------------------------------------
// Guard evaluation
// ---------------------------------------------------------------------------

/// Guard evaluation. Guards gating physical control flow (round progression,
/// the damped-row branch, recoveries) read raw outcomes; logical-outcome
/// guards read frame-folded values, as does anything with `folded` set.
inline bool eval_guard(const Guard& g, const Circuit& c, RecordValues raw, RecordValues fold) {
    RecordValues rec = g.folded ? fold : raw;
    switch (g.kind) {
        case Guard::Kind::Always: return true;
        case Guard::Kind::RecordMinus: return rec_value(rec, g.records.at(0)) == -1;
        case Guard::Kind::AnyMinus: return any_minus(rec, g.records);
        case Guard::Kind::AllPlus: {
            for (int id : g.records)
                if (rec_value(rec, id) != +1) return false;
            return true;
        }
        case Guard::Kind::DampedQubitX: {
            if (rec_value(rec, g.records.at(0)) != +1) return false;
            for (std::size_t i = 1; i < g.records.size(); ++i)
                if (rec_value(rec, g.records[i]) == -1) return true;
            return false;
        }
        case Guard::Kind::RoundLive: return group_live(c.groups.at(g.group), raw, g.a);
        case Guard::Kind::RecoveryX: {
            const auto seqs = recovery_sequences(c.groups.at(g.group), raw);
            return seqs[g.a].at(g.b) != 0;
        }
        case Guard::Kind::MeasXMinus:
            return measx_outcome(c, fold, c.measx.at(g.group)).outcome == -1;
    }
    throw std::logic_error("eval_guard: bad guard kind");
}

}  // namespace adshor::decoder
