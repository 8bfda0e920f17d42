#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adshor/channel.hpp"

namespace adshor {

enum class QubitRole { Data, Coupling, Parity, XXAnc, Flag, Resource };

inline const char* role_name(QubitRole r) {
    static const char* names[] = {"data", "coupling", "parity", "xx", "flag", "resource"};
    return names[static_cast<int>(r)];
}

struct QubitDecl {
    int id = 0;  // also the bit position in the simulator (ids stay below 64)
    QubitRole role = QubitRole::Data;
    int block = 0;
    int row = 0;
    int col = 0;        // Data: column; Coupling: slot
    bool initial = false;  // part of the externally supplied input state
    bool operator==(const QubitDecl&) const = default;
};

enum class OpKind {
    PrepZero,
    PrepPlus,
    MeasZ,
    MeasX,
    Cnot,
    Cz,
    Ccz,
    PauliX,
    PauliZ,
    GateS,
    GateT,
    Idle,
    // classical pseudo-operations: no location, no noise, no time
    FrameX,
    FrameZ,
    DecodeZFrame,
    DecodeIdealFrame,
};

inline bool opkind_is_classical(OpKind k) {
    return k == OpKind::FrameX || k == OpKind::FrameZ || k == OpKind::DecodeZFrame ||
           k == OpKind::DecodeIdealFrame;
}
inline bool opkind_is_meas(OpKind k) { return k == OpKind::MeasZ || k == OpKind::MeasX; }
inline bool opkind_is_prep(OpKind k) { return k == OpKind::PrepZero || k == OpKind::PrepPlus; }

inline const char* opkind_name(OpKind k) {
    static const char* names[] = {"prep0", "prep+", "mz",   "mx", "cnot", "cz",  "ccz",  "x", "z",
                                  "s",     "t",     "idle", "fx", "fz",   "decz", "deci"};
    return names[static_cast<int>(k)];
}

enum class RecordBasis { Z, X };

/// A named classical outcome slot. Each branch stores the raw physical
/// outcome and a frame-folded value (the pending Pauli frame is conjugated
/// through every gate, so folding only consults the measured qubit's own
/// frame bit: an X frame flips Z-basis outcomes and vice versa).
struct RecordDecl {
    std::string name;
    RecordBasis basis = RecordBasis::Z;
    bool operator==(const RecordDecl&) const = default;
};

struct Guard {
    enum class Kind {
        Always,
        RecordMinus,   // records[0] == -1
        AnyMinus,      // some listed record == -1 (absent records never match)
        AllPlus,       // every listed record present and +1
        DampedQubitX,  // records[0] == +1 while some of records[1..] == -1
        RoundLive,     // repeat group `group` not stopped before round index `a`
        RecoveryX,     // group `group` decodes to an X at row_slot `a`, position `b`
        MeasXMinus,    // logical-X measurement context `group` decodes to -1
    };
    Kind kind = Kind::Always;
    std::vector<int> records;
    int group = -1;
    int a = 0;
    int b = 0;
    bool folded = false;  // read frame-folded values instead of raw outcomes
    bool operator==(const Guard&) const = default;

    static Guard always() { return {}; }
    static Guard record_minus(int rec) { return {Kind::RecordMinus, {rec}}; }
    static Guard any_minus(std::vector<int> recs) { return {Kind::AnyMinus, std::move(recs)}; }
    static Guard all_plus(std::vector<int> recs) { return {Kind::AllPlus, std::move(recs)}; }
};

struct Instruction {
    OpKind kind;
    std::vector<int> qubits;
    int record = -1;
    Guard guard;
    bool operator==(const Instruction&) const = default;
};

struct TimeStep {
    std::vector<Instruction> instrs;
    bool operator==(const TimeStep&) const = default;
};

struct CondBlock;
using Node = std::variant<TimeStep, CondBlock>;

/// Conditionally executed sub-block. A skipped block elapses no time (the
/// adaptive schedule compresses), so it contributes neither gates nor idle
/// noise to branches that skip it. Bodies must leave the live set unchanged.
struct CondBlock {
    Guard guard;
    std::vector<Node> body;
    bool operator==(const CondBlock&) const = default;
};

/// How repeated syndrome rounds are capped and voted.
enum class RepeatPolicy { Naive, CappedMajority, RedundantParity };

inline const char* policy_name(RepeatPolicy p) {
    switch (p) {
        case RepeatPolicy::Naive: return "naive";
        case RepeatPolicy::CappedMajority: return "lemma2";
        case RepeatPolicy::RedundantParity: return "redundant";
    }
    return "?";
}

/// Round caps: Naive t(t+1)+1, CappedMajority floor((t+2)^2/4)+1,
/// RedundantParity floor((t+2)^2/8)+1.
inline int repeat_cap(RepeatPolicy p, int t) {
    switch (p) {
        case RepeatPolicy::Naive: return t * (t + 1) + 1;
        case RepeatPolicy::CappedMajority: return (t + 2) * (t + 2) / 4 + 1;
        case RepeatPolicy::RedundantParity: return (t + 2) * (t + 2) / 8 + 1;
    }
    throw std::logic_error("repeat_cap: bad policy");
}

/// Rounds of damping syndrome extraction before a row is declared undamped.
inline int extraction_rounds(RepeatPolicy p, int t) {
    return p == RepeatPolicy::RedundantParity ? t / 2 + 1 : t;
}

enum class StopRule { RepeatCount, Fixed };

/// A repeated measurement transcript: `rounds[k]` lists the record ids of
/// round k in a fixed layout. For two-row parity groups the layout is row A's
/// checks followed by row B's (checks_per_row each, the first chain_len of
/// which are the adjacent-pair chain).
struct RoundGroup {
    int id = 0;
    StopRule rule = StopRule::Fixed;
    int need = 0;  // RepeatCount: stop once one signature was seen this often
    bool validity_filter = false;
    int t = 0;
    int rows = 0;            // 2 for parity groups, 0 for Z-syndrome groups
    int checks_per_row = 0;  // per round
    int chain_len = 0;       // adjacent-pair prefix used to infer sequences
    std::vector<std::vector<int>> rounds;
    bool operator==(const RoundGroup&) const = default;
};

/// Damping syndrome extraction bookkeeping for one row of one subcircuit.
struct ExtractionCtx {
    std::vector<std::vector<int>> round_parities;
    std::vector<int> mz_records;  // per extended position, inside the branch
    bool operator==(const ExtractionCtx&) const = default;
};

/// Everything the decoder needs from one subcircuit instance.
struct SubCtx {
    int id = 0;
    int block = 0;
    int row_a = 0, row_b = 0;  // lattice rows of the pair
    std::array<ExtractionCtx, 2> extraction;
    int xx_record = -1;
    int flag_record = -1;
    int parity_group = -1;
    std::array<std::vector<int>, 2> coupling_mz;
    std::array<std::vector<int>, 2> ext_qubits;  // extended data qubits by position
    bool operator==(const SubCtx&) const = default;
};

/// One EC unit: its Z-syndrome transcript plus subcircuits in execution order.
struct EcCtx {
    int id = 0;
    int block = 0;
    int n = 0;
    int z_group = -1;                       // bit r of a round is the pair (r+1, r+2)
    std::vector<int> subs;                  // SubCtx ids, execution order
    std::vector<std::vector<int>> round_subs;  // per Z round, SubCtx ids by pair index
    bool operator==(const EcCtx&) const = default;
};

/// Ideal (non-fault-tolerant) EC bookkeeping.
struct IdealEcCtx {
    int id = 0;
    int block = 0;
    int n = 0;
    std::vector<std::vector<int>> row_parities;  // per row: the n-1 ZZ records
    std::vector<std::vector<int>> row_mz;        // per row: per-qubit MZ records
    std::vector<int> xx_records;                 // the n-1 XX records
    bool operator==(const IdealEcCtx&) const = default;
};

/// Logical X measurement bookkeeping (per measured block).
struct MeasXCtx {
    int id = 0;
    int block = 0;
    std::vector<int> anc_x, first_x;          // per row
    std::vector<std::vector<int>> row_z;      // per row: the t MZ records
    bool operator==(const MeasXCtx&) const = default;
};

/// Transversal logical Z measurement bookkeeping.
struct MeasZCtx {
    int id = 0;
    int block = 0;
    std::vector<std::vector<int>> row_mz;  // per row: per-qubit MZ records
    bool operator==(const MeasZCtx&) const = default;
};

/// App-style location accounting component, attached by builders.
struct Component {
    enum class Kind { Coupling, DampingExtraction, XXMeasurement, ParityChecks, DecoupleRecovery };
    Kind kind;
    int t = 0;
    int rounds = 1;  // materialized round count where applicable
    bool operator==(const Component&) const = default;
};

inline long component_budget(const Component& c) {
    const long t = c.t;
    switch (c.kind) {
        case Component::Kind::Coupling: return 2 * (2 * t + 1);
        case Component::Kind::DampingExtraction: return 3 * (3 * t + 2) * c.rounds;  // one row
        case Component::Kind::XXMeasurement: return 16 * (t + 1) * (t + 1) + 4;
        case Component::Kind::ParityChecks: return 6 * (2 * t + 1) * c.rounds;  // one row
        case Component::Kind::DecoupleRecovery: return 6 * (2 * t + 1);
    }
    throw std::logic_error("component_budget: bad kind");
}

struct Location {
    int id = 0;
    int qubit = 0;
    int step = 0;  // global step ordinal in enumeration order
    OpKind kind = OpKind::PauliX;
    bool idle = false;
    NoiseTiming timing = NoiseTiming::After;
    bool conditional = false;
};

enum class CountMode { Physical, Budget };

class Circuit {
  public:
    std::string name;
    std::map<std::string, std::string> meta;
    std::vector<QubitDecl> qubits;
    std::vector<RecordDecl> records;
    std::vector<Node> nodes;
    std::vector<RoundGroup> groups;
    std::vector<SubCtx> subs;
    std::vector<EcCtx> ecs;
    std::vector<IdealEcCtx> ideal_ecs;
    std::vector<MeasXCtx> measx;
    std::vector<MeasZCtx> measz;
    std::vector<Component> components;
    std::vector<int> accept_all_plus;  // nonempty: acceptance predicate records

    bool scheduled() const { return scheduled_; }
    bool noise_attached() const { return noise_attached_; }
    const std::vector<Location>& locations() const {
        require_scheduled();
        return locations_;
    }
    /// Idle qubits per global step, precomputed by schedule().
    const std::vector<std::vector<int>>& idles_by_step() const {
        require_scheduled();
        return idles_;
    }
    int num_steps() const {
        require_scheduled();
        return num_steps_;
    }

    const QubitDecl& qubit(int id) const {
        for (const auto& q : qubits)
            if (q.id == id) return q;
        throw std::out_of_range("Circuit: unknown qubit id");
    }

    int find_record(const std::string& name) const {
        for (std::size_t i = 0; i < records.size(); ++i)
            if (records[i].name == name) return static_cast<int>(i);
        throw std::out_of_range("Circuit: unknown record " + name);
    }

    /// Deterministic layering pass: validates qubit usage, computes liveness,
    /// enumerates every (qubit, timestep) fault site including idles.
    void schedule();

    /// Marks every location with the uniform damping noise model. Applying
    /// twice is rejected rather than double-marking.
    void attach_noise() {
        require_scheduled();
        if (noise_attached_) throw std::logic_error("attach_noise: noise already attached");
        noise_attached_ = true;
    }

    long count_locations(CountMode mode) const {
        require_scheduled();
        if (mode == CountMode::Physical) return static_cast<long>(locations_.size());
        if (components.empty() && !locations_.empty())
            throw std::logic_error("count_locations: circuit carries no accounting components");
        long total = 0;
        for (const auto& c : components) total += component_budget(c);
        return total;
    }

  private:
    void require_scheduled() const {
        if (!scheduled_) throw std::logic_error("Circuit: not scheduled");
    }

    bool scheduled_ = false;
    bool noise_attached_ = false;
    std::vector<Location> locations_;
    std::vector<std::vector<int>> idles_;
    int num_steps_ = 0;
};

namespace detail {

struct ScheduleState {
    std::vector<bool> live;   // by qubit id
    std::vector<bool> known;  // id registered
    bool tail_only = false;   // a conditional block changed the live set
};

inline void schedule_step(const Circuit& c, const TimeStep& ts, bool conditional, ScheduleState& st,
                          std::vector<Location>& locs, std::vector<std::vector<int>>& idles,
                          int& step_ordinal) {
    bool classical_only = true;
    for (const auto& ins : ts.instrs)
        if (!opkind_is_classical(ins.kind)) classical_only = false;
    if (classical_only) return;  // frame updates take no time
    if (st.tail_only)
        throw std::runtime_error("schedule: steps after a live-set-changing conditional block");

    const int step = step_ordinal++;
    bool has_meas = false, has_other = false;
    for (const auto& ins : ts.instrs) {
        if (opkind_is_meas(ins.kind)) has_meas = true;
        else has_other = true;
    }
    if (has_meas && has_other)
        throw std::runtime_error("schedule: measurements must occupy their own timestep");
    std::vector<bool> used(st.live.size(), false);
    for (const auto& ins : ts.instrs) {
        if (opkind_is_classical(ins.kind)) continue;
        if (opkind_is_meas(ins.kind) && ins.record < 0)
            throw std::logic_error("schedule: measurement without a record");
        for (int q : ins.qubits) {
            if (q < 0 || q >= static_cast<int>(st.live.size()) || !st.known[q])
                throw std::out_of_range("schedule: undeclared qubit");
            if (used[q]) throw std::runtime_error("schedule: qubit used twice in one timestep");
            used[q] = true;
            if (opkind_is_prep(ins.kind)) {
                if (st.live[q]) throw std::runtime_error("schedule: preparing a live qubit");
                st.live[q] = true;
            } else if (!st.live[q]) {
                throw std::runtime_error("schedule: operation on a dead qubit");
            }
            NoiseTiming timing = opkind_is_meas(ins.kind) ? NoiseTiming::Before : NoiseTiming::After;
            locs.push_back({static_cast<int>(locs.size()), q, step, ins.kind, false, timing, conditional});
        }
    }
    // deaths happen after the step's locations are placed
    for (const auto& ins : ts.instrs)
        if (opkind_is_meas(ins.kind))
            for (int q : ins.qubits) st.live[q] = false;

    idles.emplace_back();  // one entry per executed step, indexed by `step`
    for (std::size_t q = 0; q < st.live.size(); ++q) {
        if (st.live[q] && !used[q]) {
            idles.back().push_back(static_cast<int>(q));
            locs.push_back({static_cast<int>(locs.size()), static_cast<int>(q), step, OpKind::PauliX, true,
                            NoiseTiming::After, conditional});
        }
    }
}

inline void schedule_nodes(const Circuit& c, const std::vector<Node>& nodes, bool conditional,
                           ScheduleState& st, std::vector<Location>& locs,
                           std::vector<std::vector<int>>& idles, int& step_ordinal) {
    for (const auto& node : nodes) {
        if (std::holds_alternative<TimeStep>(node)) {
            schedule_step(c, std::get<TimeStep>(node), conditional, st, locs, idles, step_ordinal);
        } else {
            const auto& blk = std::get<CondBlock>(node);
            const std::vector<bool> live_before = st.live;
            schedule_nodes(c, blk.body, true, st, locs, idles, step_ordinal);
            if (st.live != live_before) {
                // allowed only in tail position (e.g. a branch that consumes
                // its own resource blocks at the very end of a gadget)
                st.tail_only = true;
                st.live = live_before;
            }
        }
    }
}

}  // namespace detail

inline void Circuit::schedule() {
    if (scheduled_) return;
    int max_id = -1;
    for (const auto& q : qubits) max_id = std::max(max_id, q.id);
    detail::ScheduleState st;
    st.live.assign(max_id + 1, false);
    st.known.assign(max_id + 1, false);
    for (const auto& q : qubits) {
        if (st.known[q.id]) throw std::runtime_error("schedule: duplicate qubit id");
        st.known[q.id] = true;
        if (q.initial) st.live[q.id] = true;
    }
    locations_.clear();
    idles_.clear();
    int step_ordinal = 0;
    detail::schedule_nodes(*this, nodes, false, st, locations_, idles_, step_ordinal);
    num_steps_ = step_ordinal;
    scheduled_ = true;
}

}  // namespace adshor
