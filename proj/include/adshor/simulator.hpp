#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "adshor/channel.hpp"
#include "adshor/circuit.hpp"
#include "adshor/codes.hpp"
#include "adshor/decoder.hpp"
#include "adshor/state.hpp"

namespace adshor::sim {

enum class Mode { Enumerate, MonteCarlo };

struct SimConfig {
    double p = 0.0;
    int max_jumps = 0;
    Mode mode = Mode::Enumerate;
    long shots = 0;
    std::uint64_t seed = 0;
    int max_live = 22;

    static SimConfig enumerate(double p, int max_jumps) {
        SimConfig c;
        c.p = p;
        c.max_jumps = max_jumps;
        return c;
    }
    static SimConfig noiseless() { return enumerate(0.0, 0); }
    static SimConfig monte_carlo(double p, long shots, std::uint64_t seed) {
        SimConfig c;
        c.p = p;
        c.max_jumps = 1 << 20;
        c.mode = Mode::MonteCarlo;
        c.shots = shots;
        c.seed = seed;
        return c;
    }
};

/// One pure Kraus trajectory. Probabilities are |weight|^2 * norm2(state);
/// the weight stays 1 in enumerate mode (all factors fold into amplitudes).
struct Branch {
    SparseState state;
    cplx weight{1.0, 0.0};
    int jumps = 0;
    std::vector<std::int8_t> rec_raw, rec_folded;
    std::uint64_t frame_x = 0, frame_z = 0;

    double probability() const { return std::norm(weight) * state.norm2(); }
};

struct RunStats {
    double total_probability = 0.0;
    double deficit = 0.0;  // truncated jump-branch mass (enumerate mode)
    long branches = 0;
};

using BranchSink = std::function<void(const Branch&)>;

enum class InjectKind { Jump, PauliZ, Matrix };

struct InjectOp {
    InjectKind kind = InjectKind::Jump;
    Mat2 m{};
};

/// Faults pinned to specific locations; distinct locations only.
struct FaultPlacement {
    std::vector<std::pair<int, InjectOp>> sites;  // location id -> operator

    const InjectOp* find(int loc) const {
        for (const auto& [l, op] : sites)
            if (l == loc) return &op;
        return nullptr;
    }
    void add(int loc, InjectOp op) {
        if (find(loc)) throw std::domain_error("FaultPlacement: overlapping placements");
        sites.emplace_back(loc, op);
    }
};

namespace detail {

// Linearized program: steps and conditional jumps.
struct POp {
    enum class Kind { Step, CondJump } kind = Kind::Step;
    const TimeStep* step = nullptr;
    // locations of the step: per instruction-qubit in order, then idles
    std::vector<const Location*> gate_locs;
    std::vector<std::pair<int, const Location*>> idle_locs;
    Guard guard;     // CondJump: jump when guard is FALSE
    int target = 0;  // CondJump target pc
};

struct Program {
    const Circuit* circuit = nullptr;
    std::vector<POp> ops;
    int max_live = 0;
};

inline void compile_nodes(const Circuit& c, const std::vector<Node>& nodes, std::vector<POp>& out,
                          std::size_t& loc_cursor, int& step_cursor) {
    for (const auto& node : nodes) {
        if (std::holds_alternative<TimeStep>(node)) {
            const TimeStep& ts = std::get<TimeStep>(node);
            bool classical = true;
            for (const auto& i : ts.instrs)
                if (!opkind_is_classical(i.kind)) classical = false;
            POp op;
            op.kind = POp::Kind::Step;
            op.step = &ts;
            if (!classical) {
                const int step = step_cursor++;
                const auto& locs = c.locations();
                while (loc_cursor < locs.size() && locs[loc_cursor].step == step) {
                    const Location& l = locs[loc_cursor];
                    if (l.idle)
                        op.idle_locs.emplace_back(l.qubit, &l);
                    else
                        op.gate_locs.push_back(&l);
                    ++loc_cursor;
                }
            }
            out.push_back(std::move(op));
        } else {
            const CondBlock& blk = std::get<CondBlock>(node);
            POp jump;
            jump.kind = POp::Kind::CondJump;
            jump.guard = blk.guard;
            const std::size_t at = out.size();
            out.push_back(std::move(jump));
            compile_nodes(c, blk.body, out, loc_cursor, step_cursor);
            out[at].target = static_cast<int>(out.size());
        }
    }
}

inline Program compile(const Circuit& c) {
    for (const auto& q : c.qubits)
        if (q.id >= 64) throw std::length_error("simulate: qubit ids must stay below 64");
    Program p;
    p.circuit = &c;
    std::size_t loc_cursor = 0;
    int step_cursor = 0;
    compile_nodes(c, c.nodes, p.ops, loc_cursor, step_cursor);
    if (loc_cursor != c.locations().size()) throw std::logic_error("compile: location mismatch");
    // static live-count high-water mark (every location is one live qubit)
    std::map<int, int> per_step;
    for (const auto& l : c.locations()) per_step[l.step]++;
    for (const auto& [s, n] : per_step) p.max_live = std::max(p.max_live, n);
    return p;
}

inline void conjugate_frame(Branch& br, const Instruction& ins) {
    const auto& q = ins.qubits;
    auto bit = [](int id) { return 1ull << id; };
    switch (ins.kind) {
        case OpKind::Cnot: {
            if (br.frame_x & bit(q[0])) br.frame_x ^= bit(q[1]);
            if (br.frame_z & bit(q[1])) br.frame_z ^= bit(q[0]);
            break;
        }
        case OpKind::Cz: {
            if (br.frame_x & bit(q[0])) br.frame_z ^= bit(q[1]);
            if (br.frame_x & bit(q[1])) br.frame_z ^= bit(q[0]);
            break;
        }
        case OpKind::Ccz: {
            if ((br.frame_x & (bit(q[0]) | bit(q[1]) | bit(q[2]))) != 0)
                throw std::logic_error("simulate: X frame meets a CCZ");
            break;
        }
        case OpKind::GateS: {
            if (br.frame_x & bit(q[0])) br.frame_z ^= bit(q[0]);
            break;
        }
        case OpKind::GateT: {
            if (br.frame_x & bit(q[0])) throw std::logic_error("simulate: X frame meets a T gate");
            break;
        }
        case OpKind::PrepZero:
        case OpKind::PrepPlus: {
            br.frame_x &= ~bit(q[0]);
            br.frame_z &= ~bit(q[0]);
            break;
        }
        default: break;
    }
}

inline void apply_unitary(Branch& br, const Instruction& ins) {
    auto& st = br.state;
    switch (ins.kind) {
        case OpKind::PrepZero:
            if (!st.qubit_is_zero(ins.qubits[0]))
                throw std::logic_error("simulate: preparing a non-reset qubit");
            break;
        case OpKind::PrepPlus:
            if (!st.qubit_is_zero(ins.qubits[0]))
                throw std::logic_error("simulate: preparing a non-reset qubit");
            st.prep_plus(ins.qubits[0]);
            break;
        case OpKind::Cnot: st.apply_cnot(ins.qubits[0], ins.qubits[1]); break;
        case OpKind::Cz: st.apply_cz(ins.qubits[0], ins.qubits[1]); break;
        case OpKind::Ccz: st.apply_ccz(ins.qubits[0], ins.qubits[1], ins.qubits[2]); break;
        case OpKind::PauliX: st.apply_x(ins.qubits[0]); break;
        case OpKind::PauliZ: st.apply_z(ins.qubits[0]); break;
        case OpKind::GateS: st.apply_s(ins.qubits[0]); break;
        case OpKind::GateT: st.apply_t(ins.qubits[0]); break;
        case OpKind::Idle: break;
        default: throw std::logic_error("apply_unitary: bad kind");
    }
}

/// The branch walker: DFS with an explicit stack in enumerate mode, a single
/// sampled path per shot in Monte Carlo mode.
class Engine {
  public:
    Engine(const Program& prog, const SimConfig& cfg, const FaultPlacement* inject, BranchSink sink,
           RunStats* stats)
        : prog_(prog), cfg_(cfg), inject_(inject), sink_(std::move(sink)), stats_(stats) {}

    void run(const SparseState& initial) {
        Branch root;
        root.state = initial;
        root.rec_raw.assign(prog_.circuit->records.size(), 0);
        root.rec_folded.assign(prog_.circuit->records.size(), 0);
        if (cfg_.mode == Mode::Enumerate) {
            pending_.push_back({std::move(root), 0, 0, 0});
            while (!pending_.empty()) {
                Frame f = std::move(pending_.back());
                pending_.pop_back();
                walk(std::move(f.branch), f.pc, f.op_index, f.stage);
            }
        } else {
            for (long shot = 0; shot < cfg_.shots; ++shot) {
                rng_.seed(cfg_.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(shot) + 1);
                Branch b = root;
                walk_mc(b);
            }
        }
    }

  private:
    void emit(Branch&& br) {
        if (stats_) {
            stats_->total_probability += br.probability();
            stats_->branches += 1;
        }
        if (sink_) sink_(br);
    }

    void note_truncated(const Branch& br, int q) {
        if (!stats_) return;
        // the dropped jump branch carries p * <P1> of this branch's mass
        SparseState s = br.state;
        s.apply_damping_e1(q, cfg_.p);
        stats_->deficit += std::norm(br.weight) * s.norm2();
    }

    bool eval(const Branch& br, const Guard& g) const {
        return decoder::eval_guard(g, *prog_.circuit, br.rec_raw, br.rec_folded);
    }

    void classical_instr(Branch& br, const Instruction& ins) {
        if (!eval(br, ins.guard)) return;
        switch (ins.kind) {
            case OpKind::FrameX:
                for (int q : ins.qubits) br.frame_x ^= 1ull << q;
                break;
            case OpKind::FrameZ:
                for (int q : ins.qubits) br.frame_z ^= 1ull << q;
                break;
            case OpKind::DecodeZFrame: {
                const EcCtx& ec = prog_.circuit->ecs.at(ins.record);
                const auto res = decoder::decode_ec(*prog_.circuit, br.rec_folded, ec);
                apply_z_rows(br, ec.block, ec.n, res.z_rows);
                break;
            }
            case OpKind::DecodeIdealFrame: {
                const IdealEcCtx& ec = prog_.circuit->ideal_ecs.at(ins.record);
                const auto res = decoder::decode_ideal(*prog_.circuit, br.rec_folded, ec);
                apply_z_rows(br, ec.block, ec.n, res.z_rows);
                break;
            }
            default: throw std::logic_error("classical_instr: bad kind");
        }
    }

    void apply_z_rows(Branch& br, int block, int n, const std::vector<int>& rows) {
        for (int row : rows) {
            // column-1 qubit of the row; any column is stabilizer-equivalent
            const int q = block * n * n + (row - 1) * n;
            br.frame_z ^= 1ull << q;
        }
    }

    // Applies the noise event of one location; may push an E1 branch.
    void noise_at(Branch& br, const Location& loc, int pc_for_fork, std::size_t op_index,
                  std::size_t stage) {
        if (inject_) {
            const InjectOp* op = inject_->find(loc.id);
            if (!op) return;
            switch (op->kind) {
                case InjectKind::Jump:
                    br.state.apply_damping_e1(loc.qubit, 1.0);
                    br.jumps += 1;
                    break;
                case InjectKind::PauliZ: br.state.apply_z(loc.qubit); break;
                case InjectKind::Matrix: br.state.apply_1q(op->m, loc.qubit); break;
            }
            return;
        }
        if (cfg_.p <= 0.0) return;
        if (cfg_.mode == Mode::Enumerate) {
            if (!br.state.qubit_is_zero(loc.qubit)) {
                if (br.jumps < cfg_.max_jumps) {
                    Branch fork = br;
                    fork.state.apply_damping_e1(loc.qubit, cfg_.p);
                    fork.jumps += 1;
                    pending_.push_back({std::move(fork), pc_for_fork, op_index, stage});
                } else {
                    note_truncated(br, loc.qubit);
                }
            }
            br.state.apply_damping_e0(loc.qubit, cfg_.p);
        } else {
            const double n0 = br.state.norm2();
            SparseState jump = br.state;
            jump.apply_damping_e1(loc.qubit, cfg_.p);
            const double pj = jump.norm2() / n0;
            if (sample() < pj) {
                br.state = std::move(jump);
                br.jumps += 1;
            } else {
                br.state.apply_damping_e0(loc.qubit, cfg_.p);
            }
            renorm(br);
        }
    }

    void measure(Branch& br, const Instruction& ins, int pc_fork, std::size_t op_index,
                 std::size_t stage) {
        const int q = ins.qubits[0];
        SparseState plus =
            ins.kind == OpKind::MeasZ ? br.state.measure_z(q, +1) : br.state.measure_x(q, +1);
        SparseState minus =
            ins.kind == OpKind::MeasZ ? br.state.measure_z(q, -1) : br.state.measure_x(q, -1);
        const double np = plus.norm2(), nm = minus.norm2();
        const double tot = np + nm;
        const bool fold_bit = ins.kind == OpKind::MeasZ ? ((br.frame_x >> q) & 1) : ((br.frame_z >> q) & 1);
        auto record = [&](Branch& target, int outcome) {
            target.rec_raw[ins.record] = static_cast<std::int8_t>(outcome);
            target.rec_folded[ins.record] = static_cast<std::int8_t>(fold_bit ? -outcome : outcome);
            target.frame_x &= ~(1ull << q);
            target.frame_z &= ~(1ull << q);
        };
        if (cfg_.mode == Mode::MonteCarlo) {
            const int outcome = (sample() < np / tot) ? +1 : -1;
            br.state = outcome == +1 ? std::move(plus) : std::move(minus);
            record(br, outcome);
            renorm(br);
            return;
        }
        constexpr double kDead = 1e-24;
        if (nm > kDead * tot) {
            if (np > kDead * tot) {
                Branch fork = br;
                fork.state = std::move(minus);
                record(fork, -1);
                pending_.push_back({std::move(fork), pc_fork, op_index, stage});
            } else {
                br.state = std::move(minus);
                record(br, -1);
                return;
            }
        }
        br.state = std::move(plus);
        record(br, +1);
    }

    // Executes one step; stages: 0 = pre-measurement noise, 1 = gates +
    // measurements, 2 = post noise + idles. Forked branches resume at the
    // same op with the stage and intra-stage index preserved.
    struct Frame {
        Branch branch;
        int pc = 0;
        std::size_t op_index = 0;  // resume position within the op
        std::size_t stage = 0;
    };

    void walk(Branch br, int pc, std::size_t resume_index = 0, std::size_t resume_stage = 0) {
        const auto& ops = prog_.ops;
        while (pc < static_cast<int>(ops.size())) {
            const POp& op = ops[pc];
            if (op.kind == POp::Kind::CondJump) {
                if (!eval(br, op.guard)) pc = op.target;
                else ++pc;
                continue;
            }
            exec_step(br, op, pc, resume_index, resume_stage);
            resume_index = 0;
            resume_stage = 0;
            ++pc;
        }
        emit(std::move(br));
    }

    void exec_step(Branch& br, const POp& op, int pc, std::size_t resume_index,
                   std::size_t resume_stage) {
        // stage 0: noise before measurements
        if (resume_stage <= 0) {
            for (std::size_t i = resume_stage == 0 ? resume_index : 0; i < op.gate_locs.size(); ++i) {
                const Location* l = op.gate_locs[i];
                if (l->timing == NoiseTiming::Before) noise_at(br, *l, pc, i + 1, 0);
            }
        }
        // stage 1: unitaries, classical ops and measurements
        if (resume_stage <= 1) {
            std::size_t mi = 0;  // measurement ordinal for resume bookkeeping
            for (const auto& insn : op.step->instrs) {
                if (opkind_is_classical(insn.kind)) {
                    classical_instr(br, insn);
                    continue;
                }
                if (opkind_is_meas(insn.kind)) {
                    ++mi;
                    if (resume_stage == 1 && mi <= resume_index) continue;
                    conjugate_frame(br, insn);
                    measure(br, insn, pc, mi, 1);
                    continue;
                }
                if (resume_stage == 1) continue;  // unitaries already applied before fork? no:
                // unitaries are idempotent per resume only if we never resume
                // mid-unitary; unitaries don't fork, so resume_stage==1 means
                // all unitaries of this step already ran.
                if (insn.guard.kind != Guard::Kind::Always && !eval(br, insn.guard)) {
                    // the site still exists; noise fires below
                    continue;
                }
                conjugate_frame(br, insn);
                apply_unitary(br, insn);
            }
        }
        // stage 2: noise after gates/preps plus idle noise
        {
            std::size_t i = resume_stage == 2 ? resume_index : 0;
            const std::size_t ng = op.gate_locs.size();
            for (; i < ng + op.idle_locs.size(); ++i) {
                if (i < ng) {
                    const Location* l = op.gate_locs[i];
                    if (l->timing == NoiseTiming::After) noise_at(br, *l, pc, i + 1, 2);
                } else {
                    const Location* l = op.idle_locs[i - ng].second;
                    noise_at(br, *l, pc, i + 1, 2);
                }
            }
        }
    }

    void walk_mc(Branch& br) {
        int pc = 0;
        const auto& ops = prog_.ops;
        while (pc < static_cast<int>(ops.size())) {
            const POp& op = ops[pc];
            if (op.kind == POp::Kind::CondJump) {
                pc = eval(br, op.guard) ? pc + 1 : op.target;
                continue;
            }
            exec_step(br, op, pc, 0, 0);
            ++pc;
        }
        emit(std::move(br));
    }

    double sample() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    void renorm(Branch& br) {
        const double n = br.state.norm2();
        if (n > 0.0) br.state.scale(1.0 / std::sqrt(n));
    }

    const Program& prog_;
    const SimConfig& cfg_;
    const FaultPlacement* inject_;
    BranchSink sink_;
    RunStats* stats_;
    std::vector<Frame> pending_;
    std::mt19937_64 rng_;
};

}  // namespace detail

/// Runs the circuit on the initial state, feeding completed branches to the
/// sink in a fixed depth-first order.
inline RunStats run(const Circuit& c, const SimConfig& cfg, const SparseState& initial,
                    const BranchSink& sink) {
    if (!c.scheduled()) throw std::logic_error("run: circuit not scheduled");
    auto prog = detail::compile(c);
    if (prog.max_live > cfg.max_live)
        throw std::length_error("run: live qubits exceed the configured cap (" +
                                std::to_string(prog.max_live) + " > " + std::to_string(cfg.max_live) +
                                ")");
    RunStats stats;
    detail::Engine(prog, cfg, nullptr, sink, &stats).run(initial);
    return stats;
}

inline std::vector<Branch> run_collect(const Circuit& c, const SimConfig& cfg,
                                       const SparseState& initial) {
    std::vector<Branch> out;
    run(c, cfg, initial, [&](const Branch& b) { out.push_back(b); });
    return out;
}

/// Noise only at the placed locations; everything else ideal.
inline RunStats inject(const Circuit& c, const FaultPlacement& placement, const SparseState& initial,
                       const BranchSink& sink, int max_live = 64) {
    if (!c.scheduled()) throw std::logic_error("inject: circuit not scheduled");
    for (const auto& [loc, op] : placement.sites)
        if (loc < 0 || loc >= static_cast<int>(c.locations().size()))
            throw std::domain_error("inject: placement outside the location index");
    auto prog = detail::compile(c);
    SimConfig cfg;
    cfg.max_live = max_live;
    RunStats stats;
    detail::Engine(prog, cfg, &placement, sink, &stats).run(initial);
    return stats;
}

inline std::vector<Branch> inject_collect(const Circuit& c, const FaultPlacement& placement,
                                          const SparseState& initial) {
    std::vector<Branch> out;
    inject(c, placement, initial, [&](const Branch& b) { out.push_back(b); });
    return out;
}

/// Codeword (or resource/product) initial states for multi-block circuits.
inline SparseState shift_qubits(const SparseState& st, int offset) {
    std::vector<SparseState::Term> terms;
    for (const auto& [b, a] : st.terms()) terms.emplace_back(b << offset, a);
    return SparseState(std::move(terms));
}

}  // namespace adshor::sim
