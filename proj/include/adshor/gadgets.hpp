#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adshor/circuit.hpp"
#include "adshor/codes.hpp"

namespace adshor::gadgets {

enum class GadgetKind {
    IdealEC,
    FTEC,
    Subcircuit,
    XXMeasurement,
    DampingExtraction,
    CZ,
    CZExtended,
    CCZ,
    MeasZ,
    MeasX,
    PrepCat,
    PrepPlus,
    PrepZero,
    PrepResourceS,
    PrepResourceT,
    TeleportH,
    TeleportS,
    TeleportT,
    Memory,
    Unencoded,
};

inline GadgetKind gadget_from_name(const std::string& s) {
    if (s == "ideal-ec") return GadgetKind::IdealEC;
    if (s == "ft-ec") return GadgetKind::FTEC;
    if (s == "subcircuit") return GadgetKind::Subcircuit;
    if (s == "xx") return GadgetKind::XXMeasurement;
    if (s == "damping") return GadgetKind::DampingExtraction;
    if (s == "cz") return GadgetKind::CZ;
    if (s == "cz-extended") return GadgetKind::CZExtended;
    if (s == "ccz") return GadgetKind::CCZ;
    if (s == "meas-z") return GadgetKind::MeasZ;
    if (s == "meas-x") return GadgetKind::MeasX;
    if (s == "prep-cat") return GadgetKind::PrepCat;
    if (s == "prep-plus") return GadgetKind::PrepPlus;
    if (s == "prep-zero") return GadgetKind::PrepZero;
    if (s == "prep-s") return GadgetKind::PrepResourceS;
    if (s == "prep-t") return GadgetKind::PrepResourceT;
    if (s == "teleport-h") return GadgetKind::TeleportH;
    if (s == "teleport-s") return GadgetKind::TeleportS;
    if (s == "teleport-t") return GadgetKind::TeleportT;
    if (s == "ft-ec-memory") return GadgetKind::Memory;
    if (s == "unencoded") return GadgetKind::Unencoded;
    throw std::invalid_argument("unknown gadget: " + s);
}

inline const char* gadget_name(GadgetKind k) {
    switch (k) {
        case GadgetKind::IdealEC: return "ideal-ec";
        case GadgetKind::FTEC: return "ft-ec";
        case GadgetKind::Subcircuit: return "subcircuit";
        case GadgetKind::XXMeasurement: return "xx";
        case GadgetKind::DampingExtraction: return "damping";
        case GadgetKind::CZ: return "cz";
        case GadgetKind::CZExtended: return "cz-extended";
        case GadgetKind::CCZ: return "ccz";
        case GadgetKind::MeasZ: return "meas-z";
        case GadgetKind::MeasX: return "meas-x";
        case GadgetKind::PrepCat: return "prep-cat";
        case GadgetKind::PrepPlus: return "prep-plus";
        case GadgetKind::PrepZero: return "prep-zero";
        case GadgetKind::PrepResourceS: return "prep-s";
        case GadgetKind::PrepResourceT: return "prep-t";
        case GadgetKind::TeleportH: return "teleport-h";
        case GadgetKind::TeleportS: return "teleport-s";
        case GadgetKind::TeleportT: return "teleport-t";
        case GadgetKind::Memory: return "ft-ec-memory";
        case GadgetKind::Unencoded: return "unencoded";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

class Builder {
  public:
    Circuit c;

    Builder() { stack_.push_back(&c.nodes); }

    int declare(QubitRole role, int block, int row, int col, bool initial) {
        const int id = next_id_++;
        c.qubits.push_back({id, role, block, row, col, initial});
        return id;
    }

    /// Ancilla shared across gadget components. Ancillas live only between
    /// their preparation and measurement, so components executed in sequence
    /// reuse the same ids; this keeps circuits within the 64-qubit budget.
    int shared(QubitRole role, int row, int col) {
        const auto key = std::tuple<int, int, int>(static_cast<int>(role), row, col);
        auto it = shared_.find(key);
        if (it != shared_.end()) return it->second;
        const int id = declare(role, -1, row, col, false);
        shared_.emplace(key, id);
        return id;
    }

    /// Declares the n x n data register of a block, row-major ids.
    std::vector<int> declare_block(const BaconShorCode& code, int block, bool initial) {
        std::vector<int> ids;
        for (int r = 1; r <= code.n; ++r)
            for (int col = 1; col <= code.n; ++col)
                ids.push_back(declare(QubitRole::Data, block, r, col, initial));
        return ids;
    }

    int rec(const std::string& name, RecordBasis basis) {
        c.records.push_back({name, basis});
        return static_cast<int>(c.records.size()) - 1;
    }

    void step(std::vector<Instruction> instrs) {
        bool classical = true;
        for (const auto& i : instrs)
            if (!opkind_is_classical(i.kind)) classical = false;
        if (!classical) ++steps_;
        stack_.back()->push_back(TimeStep{std::move(instrs)});
    }

    void begin_cond(Guard g) {
        stack_.back()->push_back(CondBlock{std::move(g), {}});
        stack_.push_back(&std::get<CondBlock>(stack_.back()->back()).body);
    }

    void end_cond() {
        if (stack_.size() < 2) throw std::logic_error("Builder: unbalanced end_cond");
        stack_.pop_back();
    }

    int begin_group(RoundGroup proto) {
        proto.id = static_cast<int>(c.groups.size());
        c.groups.push_back(std::move(proto));
        return c.groups.back().id;
    }
    RoundGroup& group(int id) { return c.groups.at(id); }

    int add_sub(SubCtx s) {
        s.id = static_cast<int>(c.subs.size());
        c.subs.push_back(std::move(s));
        return c.subs.back().id;
    }
    int add_ec(EcCtx e) {
        e.id = static_cast<int>(c.ecs.size());
        c.ecs.push_back(std::move(e));
        return c.ecs.back().id;
    }
    int add_ideal_ec(IdealEcCtx e) {
        e.id = static_cast<int>(c.ideal_ecs.size());
        c.ideal_ecs.push_back(std::move(e));
        return c.ideal_ecs.back().id;
    }
    int add_measx(MeasXCtx m) {
        m.id = static_cast<int>(c.measx.size());
        c.measx.push_back(std::move(m));
        return c.measx.back().id;
    }
    int add_measz(MeasZCtx m) {
        m.id = static_cast<int>(c.measz.size());
        c.measz.push_back(std::move(m));
        return c.measz.back().id;
    }

    int steps_emitted() const { return steps_; }

    Circuit finish() {
        if (stack_.size() != 1) throw std::logic_error("Builder: unbalanced conditional blocks");
        c.schedule();
        return std::move(c);
    }

  private:
    std::vector<std::vector<Node>*> stack_;
    std::map<std::tuple<int, int, int>, int> shared_;
    int next_id_ = 0;
    int steps_ = 0;
};

namespace detail {

inline Instruction ins(OpKind k, std::vector<int> qs, int record = -1, Guard g = Guard::always()) {
    return {k, std::move(qs), record, std::move(g)};
}

/// One parallel round of two-qubit parity measurements (prep, two CNOT
/// layers, measure). Returns the record ids, in pair order.
inline std::vector<int> parity_round(Builder& b, const std::vector<std::pair<int, int>>& pairs,
                                     const std::vector<int>& ancs, const std::string& prefix) {
    if (ancs.size() < pairs.size()) throw std::logic_error("parity_round: ancilla pool too small");
    std::vector<int> recs;
    std::vector<Instruction> prep, l1, l2, meas;
    std::vector<int> used1, used2;
    auto free_in = [](const std::vector<int>& used, int q) {
        return std::find(used.begin(), used.end(), q) == used.end();
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int a = ancs[i];
        prep.push_back(ins(OpKind::PrepZero, {a}));
        // a closing first-to-last check shares qubits with the chain; flip its
        // layer orientation so each data qubit acts once per layer
        int first = pairs[i].first, second = pairs[i].second;
        if (!free_in(used1, first) || !free_in(used2, second)) std::swap(first, second);
        if (!free_in(used1, first) || !free_in(used2, second))
            throw std::logic_error("parity_round: cannot layer the checks");
        used1.push_back(first);
        used2.push_back(second);
        l1.push_back(ins(OpKind::Cnot, {first, a}));
        l2.push_back(ins(OpKind::Cnot, {second, a}));
        const int r = b.rec(prefix + "/p" + std::to_string(i), RecordBasis::Z);
        meas.push_back(ins(OpKind::MeasZ, {a}, r));
        recs.push_back(r);
    }
    b.step(std::move(prep));
    b.step(std::move(l1));
    b.step(std::move(l2));
    b.step(std::move(meas));
    return recs;
}

/// Non-destructive Z readout of each qubit through a fresh ancilla.
inline std::vector<int> mz_all(Builder& b, const std::vector<int>& qubits, const std::vector<int>& ancs,
                               const std::string& prefix) {
    if (ancs.size() < qubits.size()) throw std::logic_error("mz_all: ancilla pool too small");
    std::vector<int> recs;
    std::vector<Instruction> prep, cx, meas;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const int a = ancs[i];
        prep.push_back(ins(OpKind::PrepZero, {a}));
        cx.push_back(ins(OpKind::Cnot, {qubits[i], a}));
        const int r = b.rec(prefix + "/q" + std::to_string(i), RecordBasis::Z);
        meas.push_back(ins(OpKind::MeasZ, {a}, r));
        recs.push_back(r);
    }
    b.step(std::move(prep));
    b.step(std::move(cx));
    b.step(std::move(meas));
    return recs;
}

/// X^(x)...X measurement: ancilla in |+>, fanned out by CNOTs, measured in X.
inline int product_x_measurement(Builder& b, const std::vector<int>& qubits, int anc,
                                 const std::string& name) {
    b.step({ins(OpKind::PrepPlus, {anc})});
    for (int q : qubits) b.step({ins(OpKind::Cnot, {anc, q})});
    const int r = b.rec(name, RecordBasis::X);
    b.step({ins(OpKind::MeasX, {anc}, r)});
    return r;
}

struct ExtRow {
    int block = 0;
    int row = 0;
    std::vector<int> data;  // t+1 data qubits, column order
    std::vector<int> coup;  // t coupling ancillas
    std::vector<int> ext;   // interleaved [d1, a1, d2, a2, ..., d_{t+1}]
    std::vector<int> pool;  // 2t+1 measurement ancillas for this row
};

inline ExtRow make_ext_row(Builder& b, const BaconShorCode& code, int block, int row,
                           const std::vector<int>& data_ids) {
    const int t = code.t();
    ExtRow er;
    er.block = block;
    er.row = row;
    for (int col = 1; col <= code.n; ++col) er.data.push_back(data_ids[code.qubit(row, col)]);
    for (int s = 0; s < t; ++s) er.coup.push_back(b.shared(QubitRole::Coupling, row, s + 1));
    for (int j = 0; j < t; ++j) {
        er.ext.push_back(er.data[j]);
        er.ext.push_back(er.coup[j]);
    }
    er.ext.push_back(er.data[t]);
    for (int s = 0; s < 2 * t + 1; ++s) er.pool.push_back(b.shared(QubitRole::Parity, row, s + 1));
    return er;
}

inline std::vector<std::pair<int, int>> adjacent_pairs(const std::vector<int>& qs, bool redundant) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) pairs.emplace_back(qs[i], qs[i + 1]);
    if (redundant && qs.size() >= 2) pairs.emplace_back(qs.front(), qs.back());
    return pairs;
}

/// Damping syndrome extraction for one extended row: repeated data-qubit
/// parity rounds (stopping at the first nontrivial one), then a conditioned
/// branch that reads every extended qubit in Z and flips the qubits damped to
/// |0>. Rounds are capped by the policy.
inline ExtractionCtx damping_extraction_unit(Builder& b, const ExtRow& er, RepeatPolicy policy, int t,
                                             const std::string& prefix, bool with_branch = true) {
    ExtractionCtx ctx;
    const bool redundant = policy == RepeatPolicy::RedundantParity;
    const int rounds = extraction_rounds(policy, t);
    const auto pairs = adjacent_pairs(er.data, redundant);
    std::vector<int> all_parities;
    for (int r = 0; r < rounds; ++r) {
        const std::string rp = prefix + "/r" + std::to_string(r);
        if (r == 0) {
            auto recs = parity_round(b, pairs, er.pool, rp);
            ctx.round_parities.push_back(recs);
            all_parities.insert(all_parities.end(), recs.begin(), recs.end());
        } else {
            b.begin_cond(Guard::all_plus(all_parities));
            auto recs = parity_round(b, pairs, er.pool, rp);
            b.end_cond();
            ctx.round_parities.push_back(recs);
            all_parities.insert(all_parities.end(), recs.begin(), recs.end());
        }
    }
    b.c.components.push_back({Component::Kind::DampingExtraction, t, rounds});
    if (!with_branch) return ctx;
    b.begin_cond(Guard::any_minus(all_parities));
    ctx.mz_records = mz_all(b, er.ext, er.pool, prefix + "/mz");
    std::vector<Instruction> fixes;
    for (std::size_t i = 0; i < er.ext.size(); ++i) {
        Guard g{Guard::Kind::DampedQubitX, {}, -1, 0, 0};
        g.records.push_back(ctx.mz_records[i]);
        for (int rid : ctx.mz_records) g.records.push_back(rid);
        fixes.push_back(ins(OpKind::PauliX, {er.ext[i]}, -1, g));
    }
    b.step(std::move(fixes));
    b.end_cond();
    return ctx;
}

/// Flagged XX-stabilizer measurement across a pair of extended rows. The
/// ancilla couples to the extended qubits in the zig-zag order (alternating
/// rows while advancing columns) which keeps the propagated X patterns of the
/// two rows within DIFF <= 1 of each other.
inline void xx_unit(Builder& b, const ExtRow& ra, const ExtRow& rb, int anc, int flag,
                    const std::string& prefix, int& xx_rec, int& flag_rec) {
    b.step({ins(OpKind::PrepPlus, {anc}), ins(OpKind::PrepZero, {flag})});
    b.step({ins(OpKind::Cnot, {anc, flag})});
    for (std::size_t col = 0; col < ra.ext.size(); ++col) {
        b.step({ins(OpKind::Cnot, {anc, ra.ext[col]})});
        b.step({ins(OpKind::Cnot, {anc, rb.ext[col]})});
    }
    b.step({ins(OpKind::Cnot, {anc, flag})});
    xx_rec = b.rec(prefix + "/xx", RecordBasis::X);
    flag_rec = b.rec(prefix + "/flag", RecordBasis::Z);
    b.step({ins(OpKind::MeasX, {anc}, xx_rec), ins(OpKind::MeasZ, {flag}, flag_rec)});
    b.c.components.push_back({Component::Kind::XXMeasurement, static_cast<int>(ra.data.size()) - 1, 1});
}

/// Post-XX parity checks over the full extended rows, repeated per policy and
/// registered as a voting group.
inline int parity_check_group(Builder& b, const ExtRow& ra, const ExtRow& rb, RepeatPolicy policy, int t,
                              const std::string& prefix) {
    const bool redundant = policy == RepeatPolicy::RedundantParity;
    const int cap = repeat_cap(policy, t);
    const int checks_per_row = 2 * t + (redundant ? 1 : 0);
    RoundGroup g;
    g.rule = policy == RepeatPolicy::Naive ? StopRule::RepeatCount : StopRule::Fixed;
    g.need = t + 1;
    g.validity_filter = redundant;
    g.t = t;
    g.rows = 2;
    g.checks_per_row = checks_per_row;
    g.chain_len = 2 * t;
    const int gid = b.begin_group(g);
    const auto pa = adjacent_pairs(ra.ext, redundant);
    const auto pb = adjacent_pairs(rb.ext, redundant);
    for (int r = 0; r < cap; ++r) {
        const bool guarded = g.rule == StopRule::RepeatCount && r > 0;
        if (guarded) b.begin_cond({Guard::Kind::RoundLive, {}, gid, r, 0});
        const std::string rp = prefix + "/r" + std::to_string(r);
        auto ra_recs = parity_round(b, pa, ra.pool, rp + "/a");
        auto rb_recs = parity_round(b, pb, rb.pool, rp + "/b");
        if (guarded) b.end_cond();
        std::vector<int> round;
        round.insert(round.end(), ra_recs.begin(), ra_recs.end());
        round.insert(round.end(), rb_recs.begin(), rb_recs.end());
        b.group(gid).rounds.push_back(std::move(round));
    }
    b.c.components.push_back({Component::Kind::ParityChecks, t, cap});
    b.c.components.push_back({Component::Kind::ParityChecks, t, cap});
    return gid;
}

/// Transversal recovery: one step of Xs conditioned on the inferred error
/// sequences of the parity-check group.
inline void recovery_step(Builder& b, const ExtRow& ra, const ExtRow& rb, int gid) {
    std::vector<Instruction> fixes;
    for (int slot = 0; slot < 2; ++slot) {
        const ExtRow& er = slot == 0 ? ra : rb;
        for (std::size_t pos = 0; pos < er.ext.size(); ++pos) {
            Guard g{Guard::Kind::RecoveryX, {}, gid, slot, static_cast<int>(pos)};
            fixes.push_back(ins(OpKind::PauliX, {er.ext[pos]}, -1, g));
        }
    }
    b.step(std::move(fixes));
}

/// Full subcircuit on a pair of rows: coupling, per-row damping extraction,
/// flagged XX measurement, repeated parity checks, recovery, decoupling.
inline int subcircuit(Builder& b, const BaconShorCode& code, int block, const std::vector<int>& data_ids,
                      int row_a, int row_b, RepeatPolicy policy, int anc, int flag,
                      const std::string& prefix) {
    const int t = code.t();
    SubCtx sub;
    sub.block = block;
    sub.row_a = row_a;
    sub.row_b = row_b;
    ExtRow ra = make_ext_row(b, code, block, row_a, data_ids);
    ExtRow rb = make_ext_row(b, code, block, row_b, data_ids);
    sub.ext_qubits = {ra.ext, rb.ext};

    // coupling: the first t data qubits each control a CNOT onto a fresh |0>
    std::vector<Instruction> prep, couple;
    for (int j = 0; j < t; ++j) {
        prep.push_back(ins(OpKind::PrepZero, {ra.coup[j]}));
        prep.push_back(ins(OpKind::PrepZero, {rb.coup[j]}));
        couple.push_back(ins(OpKind::Cnot, {ra.data[j], ra.coup[j]}));
        couple.push_back(ins(OpKind::Cnot, {rb.data[j], rb.coup[j]}));
    }
    b.step(std::move(prep));
    b.step(std::move(couple));
    b.c.components.push_back({Component::Kind::Coupling, t, 1});

    sub.extraction[0] = damping_extraction_unit(b, ra, policy, t, prefix + "/dA");
    sub.extraction[1] = damping_extraction_unit(b, rb, policy, t, prefix + "/dB");

    xx_unit(b, ra, rb, anc, flag, prefix, sub.xx_record, sub.flag_record);
    sub.parity_group = parity_check_group(b, ra, rb, policy, t, prefix + "/pc");
    recovery_step(b, ra, rb, sub.parity_group);

    // decoupling mirrors the coupling step, then the coupling ancillas are read out
    std::vector<Instruction> decouple, meas;
    sub.coupling_mz = {std::vector<int>{}, std::vector<int>{}};
    for (int slot = 0; slot < 2; ++slot) {
        const ExtRow& er = slot == 0 ? ra : rb;
        for (int j = 0; j < t; ++j) {
            decouple.push_back(ins(OpKind::Cnot, {er.data[j], er.coup[j]}));
            const int r = b.rec(prefix + (slot == 0 ? "/cA" : "/cB") + std::to_string(j), RecordBasis::Z);
            meas.push_back(ins(OpKind::MeasZ, {er.coup[j]}, r));
            sub.coupling_mz[slot].push_back(r);
        }
    }
    b.step(std::move(decouple));
    b.step(std::move(meas));
    b.c.components.push_back({Component::Kind::DecoupleRecovery, t, 1});
    return b.add_sub(std::move(sub));
}

/// The full fault-tolerant EC unit: Z-syndrome rounds of subcircuits over odd
/// then even row pairs, repeated until a t-bit syndrome sequence repeats t+1
/// times (capped per policy), ending with the Z-decode frame update.
inline int ft_ec(Builder& b, const BaconShorCode& code, int block, const std::vector<int>& data_ids,
                 RepeatPolicy policy, const std::string& prefix) {
    const int t = code.t();
    EcCtx ec;
    ec.block = block;
    ec.n = code.n;
    RoundGroup zg;
    zg.rule = policy == RepeatPolicy::Naive ? StopRule::RepeatCount : StopRule::Fixed;
    zg.need = t + 1;
    zg.validity_filter = false;
    zg.t = t;
    const int zgid = b.begin_group(zg);
    ec.z_group = zgid;
    const int cap = repeat_cap(policy, t);
    // per-pair ancilla and flag, shared across rounds
    std::vector<int> ancs, flags;
    for (int r = 1; r <= t; ++r) {
        ancs.push_back(b.shared(QubitRole::XXAnc, r, 0));
        flags.push_back(b.shared(QubitRole::Flag, r, 0));
    }
    for (int round = 0; round < cap; ++round) {
        const bool guarded = zg.rule == StopRule::RepeatCount && round > 0;
        if (guarded) b.begin_cond({Guard::Kind::RoundLive, {}, zgid, round, 0});
        std::vector<int> round_subs(t, -1);
        auto run_pair = [&](int r) {
            const std::string sp =
                prefix + "/z" + std::to_string(round) + "/s" + std::to_string(r);
            const int sid = subcircuit(b, code, block, data_ids, r, r + 1, policy, ancs[r - 1],
                                       flags[r - 1], sp);
            ec.subs.push_back(sid);
            round_subs[r - 1] = sid;
        };
        for (int r = 1; r <= t; r += 2) run_pair(r);  // rows 1&2, 3&4, ...
        for (int r = 2; r <= t; r += 2) run_pair(r);  // rows 2&3, 4&5, ...
        if (guarded) b.end_cond();
        std::vector<int> bits;
        for (int r = 0; r < t; ++r) bits.push_back(b.c.subs.at(round_subs[r]).xx_record);
        b.group(zgid).rounds.push_back(bits);
        ec.round_subs.push_back(round_subs);
    }
    const int ec_id = b.add_ec(std::move(ec));
    b.step({ins(OpKind::DecodeZFrame, {}, ec_id)});
    return ec_id;
}

/// Ideal EC: plain ZZ parity sweep, damped-row readout and X fix-ups, bare XX
/// measurements, and the ideal Z decode as a frame update. Correct only when
/// the unit itself is noiseless.
inline int ideal_ec(Builder& b, const BaconShorCode& code, int block, const std::vector<int>& data_ids,
                    const std::string& prefix) {
    const int n = code.n;
    IdealEcCtx ec;
    ec.block = block;
    ec.n = n;
    std::vector<std::vector<int>> row_pool(n);
    for (int r = 1; r <= n; ++r)
        for (int j = 0; j < n; ++j) row_pool[r - 1].push_back(b.shared(QubitRole::Parity, r, j + 1));
    // ZZ parities, all rows in parallel
    {
        std::vector<Instruction> prep, l1, l2, meas;
        ec.row_parities.resize(n);
        for (int r = 1; r <= n; ++r) {
            for (int j = 1; j < n; ++j) {
                const int a = row_pool[r - 1][j - 1];
                prep.push_back(ins(OpKind::PrepZero, {a}));
                l1.push_back(ins(OpKind::Cnot, {data_ids[code.qubit(r, j)], a}));
                l2.push_back(ins(OpKind::Cnot, {data_ids[code.qubit(r, j + 1)], a}));
                const int rid = b.rec(prefix + "/zz/r" + std::to_string(r) + "p" + std::to_string(j),
                                      RecordBasis::Z);
                meas.push_back(ins(OpKind::MeasZ, {a}, rid));
                ec.row_parities[r - 1].push_back(rid);
            }
        }
        b.step(std::move(prep));
        b.step(std::move(l1));
        b.step(std::move(l2));
        b.step(std::move(meas));
    }
    // damped rows: read every qubit, flip the ones damped to |0>
    ec.row_mz.resize(n);
    for (int r = 1; r <= n; ++r) {
        b.begin_cond(Guard::any_minus(ec.row_parities[r - 1]));
        std::vector<int> row_qubits;
        for (int jcol = 1; jcol <= n; ++jcol) row_qubits.push_back(data_ids[code.qubit(r, jcol)]);
        ec.row_mz[r - 1] = mz_all(b, row_qubits, row_pool[r - 1], prefix + "/mz/r" + std::to_string(r));
        std::vector<Instruction> fixes;
        for (int jcol = 0; jcol < n; ++jcol) {
            Guard g{Guard::Kind::DampedQubitX, {}, -1, 0, 0};
            g.records.push_back(ec.row_mz[r - 1][jcol]);
            for (int rid : ec.row_mz[r - 1]) g.records.push_back(rid);
            fixes.push_back(ins(OpKind::PauliX, {row_qubits[jcol]}, -1, g));
        }
        b.step(std::move(fixes));
        b.end_cond();
    }
    // bare XX measurements between adjacent rows
    const int anc = b.shared(QubitRole::XXAnc, 0, 0);
    for (int r = 1; r < n; ++r) {
        b.step({ins(OpKind::PrepPlus, {anc})});
        for (int col = 1; col <= n; ++col) {
            b.step({ins(OpKind::Cnot, {anc, data_ids[code.qubit(r, col)]})});
            b.step({ins(OpKind::Cnot, {anc, data_ids[code.qubit(r + 1, col)]})});
        }
        const int rid = b.rec(prefix + "/xx" + std::to_string(r), RecordBasis::X);
        b.step({ins(OpKind::MeasX, {anc}, rid)});
        ec.xx_records.push_back(rid);
    }
    const int id = b.add_ideal_ec(std::move(ec));
    b.step({ins(OpKind::DecodeIdealFrame, {}, id)});
    return id;
}

/// Transversal CZ between two blocks: qubit (i,j) of block a pairs with
/// qubit (j,i) of block b.
inline void cz_step(Builder& b, const BaconShorCode& code, const std::vector<int>& block_a,
                    const std::vector<int>& block_b) {
    std::vector<Instruction> gates;
    for (int i = 1; i <= code.n; ++i)
        for (int j = 1; j <= code.n; ++j)
            gates.push_back(ins(OpKind::Cz, {block_a[code.qubit(i, j)], block_b[code.qubit(j, i)]}));
    b.step(std::move(gates));
}

/// Logical X measurement of one block, row by row.
inline int meas_x_unit(Builder& b, const BaconShorCode& code, int block, const std::vector<int>& data_ids,
                       int anc, const std::string& prefix) {
    MeasXCtx ctx;
    ctx.block = block;
    for (int r = 1; r <= code.n; ++r) {
        const std::string rp = prefix + "/r" + std::to_string(r);
        std::vector<int> row;
        for (int col = 1; col <= code.n; ++col) row.push_back(data_ids[code.qubit(r, col)]);
        b.step({ins(OpKind::PrepPlus, {anc})});
        for (int q : row) b.step({ins(OpKind::Cnot, {anc, q})});
        for (std::size_t j = 1; j < row.size(); ++j) b.step({ins(OpKind::Cnot, {row[0], row[j]})});
        const int ra = b.rec(rp + "/anc", RecordBasis::X);
        const int rf = b.rec(rp + "/first", RecordBasis::X);
        std::vector<Instruction> meas{ins(OpKind::MeasX, {anc}, ra), ins(OpKind::MeasX, {row[0]}, rf)};
        std::vector<int> zrecs;
        for (std::size_t j = 1; j < row.size(); ++j) {
            const int rz = b.rec(rp + "/z" + std::to_string(j), RecordBasis::Z);
            meas.push_back(ins(OpKind::MeasZ, {row[j]}, rz));
            zrecs.push_back(rz);
        }
        b.step(std::move(meas));
        ctx.anc_x.push_back(ra);
        ctx.first_x.push_back(rf);
        ctx.row_z.push_back(zrecs);
    }
    return b.add_measx(std::move(ctx));
}

/// Cat-state preparation on a fresh row: two product-X measurements with a
/// conditional Z fix after the first, then damping-extraction parity rounds.
/// Acceptance requires the second outcome and every parity to read +1.
inline void prep_cat_row(Builder& b, const std::vector<int>& row, const std::vector<int>& pool, int anc,
                         RepeatPolicy policy, int t, const std::string& prefix, bool fresh,
                         int x_measurements, OpKind phase_gate = OpKind::Idle) {
    if (fresh) {
        std::vector<Instruction> prep;
        for (int q : row) prep.push_back(ins(OpKind::PrepZero, {q}));
        b.step(std::move(prep));
    }
    const int x1 = product_x_measurement(b, row, anc, prefix + "/x0");
    b.step({ins(OpKind::PauliZ, {row[0]}, -1, Guard::record_minus(x1))});
    for (int k = 1; k < x_measurements; ++k) {
        const int xk = product_x_measurement(b, row, anc, prefix + "/x" + std::to_string(k));
        b.c.accept_all_plus.push_back(xk);
    }
    const bool redundant = policy == RepeatPolicy::RedundantParity;
    const auto pairs = adjacent_pairs(row, redundant);
    const int rounds = extraction_rounds(policy, t);
    for (int r = 0; r < rounds; ++r) {
        auto recs = parity_round(b, pairs, pool, prefix + "/d" + std::to_string(r));
        for (int rid : recs) b.c.accept_all_plus.push_back(rid);
    }
    if (phase_gate == OpKind::GateS || phase_gate == OpKind::GateT)
        b.step({ins(phase_gate, {row[0]})});
}

/// |+>_L preparation: one cat row per lattice row.
inline void prep_plus_unit(Builder& b, const BaconShorCode& code, int block,
                           const std::vector<int>& data_ids, const std::vector<int>& pool, int anc,
                           RepeatPolicy policy, const std::string& prefix) {
    for (int r = 1; r <= code.n; ++r) {
        std::vector<int> row;
        for (int col = 1; col <= code.n; ++col) row.push_back(data_ids[code.qubit(r, col)]);
        prep_cat_row(b, row, pool, anc, policy, code.t(), prefix + "/r" + std::to_string(r), true, 2);
    }
}

inline std::vector<int> frame_row_x(const BaconShorCode& code, const std::vector<int>& data_ids,
                                    int row) {
    std::vector<int> qs;
    for (int col = 1; col <= code.n; ++col) qs.push_back(data_ids[code.qubit(row, col)]);
    return qs;
}

/// Teleportation stage: CZ between the moving block and the resource block,
/// logical X measurement of the source, and the conditional logical Pauli as
/// a frame update. Returns the MeasX context id.
inline int teleport_stage(Builder& b, const BaconShorCode& code, const std::vector<int>& src,
                          const std::vector<int>& dst, int meas_anc, bool frame_x, bool frame_z,
                          const std::string& prefix, int src_block) {
    cz_step(b, code, src, dst);
    const int ctx = meas_x_unit(b, code, src_block, src, meas_anc, prefix + "/mx");
    Guard g{Guard::Kind::MeasXMinus, {}, ctx, 0, 0};
    std::vector<Instruction> frames;
    if (frame_x) frames.push_back(ins(OpKind::FrameX, frame_row_x(code, dst, 1), -1, g));
    if (frame_z) frames.push_back(ins(OpKind::FrameZ, {dst[0]}, -1, g));
    if (!frames.empty()) b.step(std::move(frames));
    return ctx;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Top-level builders
// ---------------------------------------------------------------------------

inline Circuit build_ideal_ec(const BaconShorCode& code) {
    Builder b;
    b.c.name = "ideal-ec";
    auto data = b.declare_block(code, 0, true);
    detail::ideal_ec(b, code, 0, data, "iec");
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

inline Circuit build_ft_ec(const BaconShorCode& code, RepeatPolicy policy) {
    Builder b;
    b.c.name = "ft-ec";
    auto data = b.declare_block(code, 0, true);
    detail::ft_ec(b, code, 0, data, policy, "ec0");
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["policy"] = policy_name(policy);
    return b.finish();
}

inline Circuit build_subcircuit(const BaconShorCode& code, RepeatPolicy policy, int row_a = 1,
                                int row_b = 2) {
    if (row_a < 1 || row_b > code.n || row_a >= row_b)
        throw std::invalid_argument("build_subcircuit: bad row pair");
    Builder b;
    b.c.name = "subcircuit";
    auto data = b.declare_block(code, 0, true);
    const int anc = b.shared(QubitRole::XXAnc, row_a, 0);
    const int flag = b.shared(QubitRole::Flag, row_a, 0);
    detail::subcircuit(b, code, 0, data, row_a, row_b, policy, anc, flag, "s0");
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["policy"] = policy_name(policy);
    return b.finish();
}

/// The bare flagged XX-measurement fragment. Data qubits and coupling
/// ancillas enter as live registers (the fragment sits mid-subcircuit).
inline Circuit build_xx_measurement(const BaconShorCode& code, int row_a = 1, int row_b = 2) {
    Builder b;
    b.c.name = "xx";
    const int t = code.t();
    auto data = b.declare_block(code, 0, true);
    detail::ExtRow ra, rb;
    auto fill = [&](detail::ExtRow& er, int row) {
        er.block = 0;
        er.row = row;
        for (int col = 1; col <= code.n; ++col) er.data.push_back(data[code.qubit(row, col)]);
        for (int s = 0; s < t; ++s) {
            er.coup.push_back(b.declare(QubitRole::Coupling, 0, row, s + 1, true));
        }
        for (int j = 0; j < t; ++j) {
            er.ext.push_back(er.data[j]);
            er.ext.push_back(er.coup[j]);
        }
        er.ext.push_back(er.data[t]);
    };
    fill(ra, row_a);
    fill(rb, row_b);
    const int anc = b.declare(QubitRole::XXAnc, 0, row_a, 0, false);
    const int flag = b.declare(QubitRole::Flag, 0, row_a, 0, false);
    int xx = -1, fl = -1;
    detail::xx_unit(b, ra, rb, anc, flag, "xx0", xx, fl);
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["xx_record"] = std::to_string(xx);
    b.c.meta["flag_record"] = std::to_string(fl);
    return b.finish();
}

/// The bare damping-extraction fragment for one row.
inline Circuit build_damping_extraction(const BaconShorCode& code, int row, RepeatPolicy policy) {
    if (row < 1 || row > code.n) throw std::invalid_argument("build_damping_extraction: bad row");
    Builder b;
    b.c.name = "damping";
    const int t = code.t();
    auto data = b.declare_block(code, 0, true);
    detail::ExtRow er;
    er.block = 0;
    er.row = row;
    for (int col = 1; col <= code.n; ++col) er.data.push_back(data[code.qubit(row, col)]);
    for (int s = 0; s < t; ++s) er.coup.push_back(b.declare(QubitRole::Coupling, 0, row, s + 1, true));
    for (int j = 0; j < t; ++j) {
        er.ext.push_back(er.data[j]);
        er.ext.push_back(er.coup[j]);
    }
    er.ext.push_back(er.data[t]);
    for (int s = 0; s < 2 * t + 1; ++s)
        er.pool.push_back(b.declare(QubitRole::Parity, 0, row, s + 1, false));
    detail::damping_extraction_unit(b, er, policy, t, "d0");
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["policy"] = policy_name(policy);
    return b.finish();
}

inline Circuit build_cz(const BaconShorCode& code) {
    Builder b;
    b.c.name = "cz";
    auto a = b.declare_block(code, 0, true);
    auto bb = b.declare_block(code, 1, true);
    detail::cz_step(b, code, a, bb);
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

/// CZ extended gadget: leading EC on each block, the transversal CZ, trailing
/// EC on each block. The trailing pair participates in joint decoding.
inline Circuit build_cz_extended(const BaconShorCode& code, RepeatPolicy policy) {
    Builder b;
    b.c.name = "cz-extended";
    auto a = b.declare_block(code, 0, true);
    auto bb = b.declare_block(code, 1, true);
    const int lead_a = detail::ft_ec(b, code, 0, a, policy, "ecA0");
    const int lead_b = detail::ft_ec(b, code, 1, bb, policy, "ecB0");
    detail::cz_step(b, code, a, bb);
    const int trail_a = detail::ft_ec(b, code, 0, a, policy, "ecA1");
    const int trail_b = detail::ft_ec(b, code, 1, bb, policy, "ecB1");
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["policy"] = policy_name(policy);
    b.c.meta["lead_ec_a"] = std::to_string(lead_a);
    b.c.meta["lead_ec_b"] = std::to_string(lead_b);
    b.c.meta["trail_ec_a"] = std::to_string(trail_a);
    b.c.meta["trail_ec_b"] = std::to_string(trail_b);
    return b.finish();
}

/// Transversal CCZ in t+1 rounds; the target block's row pairing is cyclically
/// shifted each round, with EC units between rounds.
inline Circuit build_ccz(const BaconShorCode& code, RepeatPolicy policy, bool interleave_ec = true) {
    Builder b;
    b.c.name = "ccz";
    const int n = code.n;
    std::array<std::vector<int>, 3> blocks = {b.declare_block(code, 0, true),
                                              b.declare_block(code, 1, true),
                                              b.declare_block(code, 2, true)};
    for (int round = 0; round < n; ++round) {
        std::vector<Instruction> gates;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const int tgt_row = ((i - 1 + round) % n) + 1;
                gates.push_back(detail::ins(OpKind::Ccz, {blocks[0][code.qubit(i, j)],
                                                          blocks[1][code.qubit(j, i)],
                                                          blocks[2][code.qubit(tgt_row, j)]}));
            }
        b.step(std::move(gates));
        if (interleave_ec && round + 1 < n) {
            for (int blk = 0; blk < 3; ++blk)
                detail::ft_ec(b, code, blk, blocks[blk], policy,
                              "ccz/ec" + std::to_string(round) + std::to_string(blk));
        }
    }
    b.c.meta["n"] = std::to_string(n);
    b.c.meta["rounds"] = std::to_string(n);
    return b.finish();
}

inline Circuit build_meas_z(const BaconShorCode& code) {
    Builder b;
    b.c.name = "meas-z";
    auto data = b.declare_block(code, 0, true);
    MeasZCtx ctx;
    ctx.block = 0;
    std::vector<Instruction> meas;
    ctx.row_mz.resize(code.n);
    for (int r = 1; r <= code.n; ++r)
        for (int col = 1; col <= code.n; ++col) {
            const int rid = b.rec("mz/r" + std::to_string(r) + "c" + std::to_string(col), RecordBasis::Z);
            meas.push_back(detail::ins(OpKind::MeasZ, {data[code.qubit(r, col)]}, rid));
            ctx.row_mz[r - 1].push_back(rid);
        }
    b.step(std::move(meas));
    b.add_measz(std::move(ctx));
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

inline Circuit build_meas_x(const BaconShorCode& code) {
    Builder b;
    b.c.name = "meas-x";
    auto data = b.declare_block(code, 0, true);
    const int anc = b.declare(QubitRole::XXAnc, 0, 0, 0, false);
    detail::meas_x_unit(b, code, 0, data, anc, "mx0");
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

inline Circuit build_prep_cat(const BaconShorCode& code, RepeatPolicy policy) {
    Builder b;
    b.c.name = "prep-cat";
    const int t = code.t();
    std::vector<int> row;
    for (int j = 0; j < t + 1; ++j) row.push_back(b.declare(QubitRole::Data, 0, 1, j + 1, false));
    std::vector<int> pool;
    for (int j = 0; j < t + 1; ++j) pool.push_back(b.declare(QubitRole::Parity, 0, 1, j + 1, false));
    const int anc = b.declare(QubitRole::XXAnc, 0, 1, 0, false);
    detail::prep_cat_row(b, row, pool, anc, policy, t, "cat", true, 2);
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

inline Circuit build_prep_plus(const BaconShorCode& code, RepeatPolicy policy) {
    Builder b;
    b.c.name = "prep-plus";
    auto data = b.declare_block(code, 0, false);
    std::vector<int> pool;
    for (int j = 0; j < code.n; ++j) pool.push_back(b.declare(QubitRole::Parity, 0, 0, j + 1, false));
    const int anc = b.declare(QubitRole::XXAnc, 0, 0, 0, false);
    detail::prep_plus_unit(b, code, 0, data, pool, anc, policy, "pp");
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

/// |0>_L preparation: |+>_L on two blocks, transversal CZ, logical X
/// measurement of the first block (gate teleportation of the Hadamard).
inline Circuit build_prep_zero(const BaconShorCode& code, RepeatPolicy policy) {
    Builder b;
    b.c.name = "prep-zero";
    auto blk_a = b.declare_block(code, 0, false);
    auto blk_b = b.declare_block(code, 1, false);
    std::vector<int> pool;
    for (int j = 0; j < code.n; ++j) pool.push_back(b.declare(QubitRole::Parity, 0, 0, j + 1, false));
    const int anc = b.declare(QubitRole::XXAnc, 0, 0, 0, false);
    detail::prep_plus_unit(b, code, 0, blk_a, pool, anc, policy, "ppA");
    detail::prep_plus_unit(b, code, 1, blk_b, pool, anc, policy, "ppB");
    detail::teleport_stage(b, code, blk_a, blk_b, anc, true, false, "th", 0);
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["output_block"] = "1";
    return b.finish();
}

/// Resource-state preparation: |0>_L via teleported Hadamard, one row
/// measured away (tracked as a frame X when it lands in the one state), the
/// phase row prepared through a chain of t+1 product-X measurements plus the
/// S or T gate, and a merge subcircuit whose damping extraction must stay
/// clean for acceptance.
inline Circuit build_prep_resource(const BaconShorCode& code, RepeatPolicy policy, bool t_gate) {
    Builder b;
    b.c.name = t_gate ? "prep-t" : "prep-s";
    const int t = code.t();
    auto blk_a = b.declare_block(code, 0, false);
    auto blk_b = b.declare_block(code, 1, false);
    std::vector<int> pool;
    for (int j = 0; j < 2 * t + 1; ++j)
        pool.push_back(b.declare(QubitRole::Parity, 0, 0, j + 1, false));
    const int anc = b.declare(QubitRole::XXAnc, 0, 0, 0, false);
    detail::prep_plus_unit(b, code, 0, blk_a, pool, anc, policy, "ppA");
    detail::prep_plus_unit(b, code, 1, blk_b, pool, anc, policy, "ppB");
    detail::teleport_stage(b, code, blk_a, blk_b, anc, true, false, "th", 0);
    // measure row 1 of the |0>_L block; a one-row outcome leaves the
    // t x (t+1) zero state only up to a logical X tracked in the frame
    std::vector<int> row1, row1_recs;
    for (int col = 1; col <= code.n; ++col) row1.push_back(blk_b[code.qubit(1, col)]);
    {
        std::vector<Instruction> meas;
        for (int col = 0; col < code.n; ++col) {
            const int rid = b.rec("rowmz/c" + std::to_string(col), RecordBasis::Z);
            meas.push_back(detail::ins(OpKind::MeasZ, {row1[col]}, rid));
            row1_recs.push_back(rid);
        }
        b.step(std::move(meas));
        Guard g = Guard::any_minus(row1_recs);
        g.folded = true;
        b.step({detail::ins(OpKind::FrameX, detail::frame_row_x(code, blk_b, 2), -1, g)});
    }
    // the phase row reuses the measured qubits
    detail::prep_cat_row(b, row1, pool, anc, policy, t, "beta", true, t + 1,
                         t_gate ? OpKind::GateT : OpKind::GateS);
    // merge through one subcircuit between the phase row and row 2
    const int xx_anc = b.shared(QubitRole::XXAnc, 1, 0);
    const int flag = b.shared(QubitRole::Flag, 1, 0);
    const int sid = detail::subcircuit(b, code, 1, blk_b, 1, 2, policy, xx_anc, flag, "merge");
    const SubCtx& sub = b.c.subs.at(sid);
    for (const auto& round : sub.extraction[0].round_parities)
        for (int rid : round) b.c.accept_all_plus.push_back(rid);
    for (const auto& round : sub.extraction[1].round_parities)
        for (int rid : round) b.c.accept_all_plus.push_back(rid);
    // merge outcome -1 is fixed by a Z on the lower sub-block
    b.step({detail::ins(OpKind::FrameZ, {blk_b[code.qubit(2, 1)]}, -1,
                        Guard::record_minus(sub.xx_record))});
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["output_block"] = "1";
    b.c.meta["merge_sub"] = std::to_string(sid);
    return b.finish();
}

/// Single-logical-qubit teleportation gadgets. The input block and every
/// resource block enter as live registers; resource states are supplied with
/// the initial state.
inline Circuit build_teleport(const BaconShorCode& code, char gate) {
    Builder b;
    b.c.name = std::string("teleport-") + gate;
    auto input = b.declare_block(code, 0, true);
    const int anc = b.declare(QubitRole::XXAnc, 0, 0, 0, false);
    if (gate == 'h') {
        auto r1 = b.declare_block(code, 1, true);  // |+>_L
        detail::teleport_stage(b, code, input, r1, anc, true, false, "g", 0);
        b.c.meta["output_block"] = "1";
        b.c.meta["resource_blocks"] = "plus";
    } else if (gate == 's') {
        auto r1 = b.declare_block(code, 1, true);  // |+>_L for the inner Hadamard
        auto r2 = b.declare_block(code, 2, true);  // |Phi_S>
        detail::teleport_stage(b, code, input, r1, anc, true, false, "g1", 0);
        detail::teleport_stage(b, code, r1, r2, anc, true, true, "g2", 1);
        b.c.meta["output_block"] = "2";
        b.c.meta["resource_blocks"] = "plus,phi_s";
    } else if (gate == 't') {
        auto r1 = b.declare_block(code, 1, true);  // |+>_L
        auto r2 = b.declare_block(code, 2, true);  // |Phi_T>
        auto r3 = b.declare_block(code, 3, true);  // |+>_L for the conditional S
        auto r4 = b.declare_block(code, 4, true);  // |Phi_S>
        detail::teleport_stage(b, code, input, r1, anc, true, false, "g1", 0);
        detail::cz_step(b, code, r1, r2);
        const int ctx = detail::meas_x_unit(b, code, 1, r1, anc, "g2/mx");
        b.c.meta["decider_measx"] = std::to_string(ctx);
        Guard minus{Guard::Kind::MeasXMinus, {}, ctx, 0, 0};
        b.begin_cond(minus);
        b.step({detail::ins(OpKind::FrameX, detail::frame_row_x(code, r2, 1))});
        // physical logical S via its own teleportation chain
        detail::teleport_stage(b, code, r2, r3, anc, true, false, "g2/s/h", 2);
        detail::teleport_stage(b, code, r3, r4, anc, true, true, "g2/s", 3);
        b.end_cond();
        b.c.meta["output_block"] = "2";
        b.c.meta["output_block_minus"] = "4";
        b.c.meta["resource_blocks"] = "plus,phi_t,plus,phi_s";
    } else {
        throw std::invalid_argument("build_teleport: gate must be h, s or t");
    }
    b.c.meta["n"] = std::to_string(code.n);
    return b.finish();
}

/// Extended memory gadget: EC, one idling step on every data qubit, EC.
inline Circuit build_memory(const BaconShorCode& code, RepeatPolicy policy) {
    Builder b;
    b.c.name = "ft-ec-memory";
    auto data = b.declare_block(code, 0, true);
    const int lead = detail::ft_ec(b, code, 0, data, policy, "ec0");
    std::vector<Instruction> wait;
    for (int q : data) wait.push_back(detail::ins(OpKind::Idle, {q}));
    b.step(std::move(wait));
    const int trail = detail::ft_ec(b, code, 0, data, policy, "ec1");
    b.c.meta["n"] = std::to_string(code.n);
    b.c.meta["policy"] = policy_name(policy);
    b.c.meta["lead_ec"] = std::to_string(lead);
    b.c.meta["trail_ec"] = std::to_string(trail);
    return b.finish();
}

/// A bare physical qubit idling for one step.
inline Circuit build_unencoded() {
    Builder b;
    b.c.name = "unencoded";
    const int q = b.declare(QubitRole::Resource, 0, 0, 0, true);
    b.step({detail::ins(OpKind::Idle, {q})});
    return b.finish();
}

inline Circuit build(GadgetKind kind, const BaconShorCode& code,
                     RepeatPolicy policy = RepeatPolicy::RedundantParity) {
    switch (kind) {
        case GadgetKind::IdealEC: return build_ideal_ec(code);
        case GadgetKind::FTEC: return build_ft_ec(code, policy);
        case GadgetKind::Subcircuit: return build_subcircuit(code, policy);
        case GadgetKind::XXMeasurement: return build_xx_measurement(code);
        case GadgetKind::DampingExtraction: return build_damping_extraction(code, 1, policy);
        case GadgetKind::CZ: return build_cz(code);
        case GadgetKind::CZExtended: return build_cz_extended(code, policy);
        case GadgetKind::CCZ: return build_ccz(code, policy);
        case GadgetKind::MeasZ: return build_meas_z(code);
        case GadgetKind::MeasX: return build_meas_x(code);
        case GadgetKind::PrepCat: return build_prep_cat(code, policy);
        case GadgetKind::PrepPlus: return build_prep_plus(code, policy);
        case GadgetKind::PrepZero: return build_prep_zero(code, policy);
        case GadgetKind::PrepResourceS: return build_prep_resource(code, policy, false);
        case GadgetKind::PrepResourceT: return build_prep_resource(code, policy, true);
        case GadgetKind::TeleportH: return build_teleport(code, 'h');
        case GadgetKind::TeleportS: return build_teleport(code, 's');
        case GadgetKind::TeleportT: return build_teleport(code, 't');
        case GadgetKind::Memory: return build_memory(code, policy);
        case GadgetKind::Unencoded: return build_unencoded();
    }
    throw std::logic_error("build: bad gadget kind");
}

}  // namespace adshor::gadgets
