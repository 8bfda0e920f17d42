#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adshor/state.hpp"

namespace adshor {

/// 1-based lattice coordinate of a data qubit.
struct LatticeCoord {
    int row = 1;
    int col = 1;
    auto operator<=>(const LatticeCoord&) const = default;
};

/// The n x n code in the Z gauge; corrects t = n-1 damping errors.
struct BaconShorCode {
    int n;
    explicit BaconShorCode(int n_) : n(n_) {
        if (n < 2) throw std::invalid_argument("BaconShorCode: n must be at least 2");
    }
    int t() const { return n - 1; }
    int num_qubits() const { return n * n; }
    /// Row-major linearization q = (row-1)*n + (col-1); all serialization uses it.
    int qubit(int row, int col) const { return (row - 1) * n + (col - 1); }
    int qubit(LatticeCoord c) const { return qubit(c.row, c.col); }
};

enum class OpSym : int { I = 0, X, Y, Z, E, Edag, P0, P1 };

inline const char* opsym_name(OpSym s) {
    static const char* names[] = {"I", "X", "Y", "Z", "E", "E+", "P0", "P1"};
    return names[static_cast<int>(s)];
}

inline Mat2 opsym_matrix(OpSym s) {
    const cplx o(1.0), i(0.0, 1.0), z(0.0);
    switch (s) {
        case OpSym::I: return {{{o, z}, {z, o}}};
        case OpSym::X: return {{{z, o}, {o, z}}};
        case OpSym::Y: return {{{z, -i}, {i, z}}};
        case OpSym::Z: return {{{o, z}, {z, -o}}};
        case OpSym::E: return {{{z, o}, {z, z}}};      // |0><1|
        case OpSym::Edag: return {{{z, z}, {o, z}}};   // |1><0|
        case OpSym::P0: return {{{o, z}, {z, z}}};
        case OpSym::P1: return {{{z, z}, {z, o}}};
    }
    throw std::logic_error("opsym_matrix: bad symbol");
}

/// Product of two single-qubit symbols; the alphabet is closed up to a phase
/// (which may be zero, e.g. E*E = 0).
inline std::pair<cplx, OpSym> opsym_product(OpSym a, OpSym b) {
    const Mat2 ma = opsym_matrix(a), mb = opsym_matrix(b);
    Mat2 m{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m[r][c] = ma[r][0] * mb[0][c] + ma[r][1] * mb[1][c];
    for (int s = 0; s < 8; ++s) {
        const Mat2 ref = opsym_matrix(static_cast<OpSym>(s));
        // find the scalar f with m == f * ref
        cplx f(0.0);
        bool ok = true;
        for (int r = 0; r < 2 && ok; ++r)
            for (int c = 0; c < 2 && ok; ++c) {
                if (std::abs(ref[r][c]) > 0.5) {
                    if (f == cplx(0.0)) f = m[r][c] / ref[r][c];
                } else if (std::abs(m[r][c]) > 1e-12) {
                    ok = false;
                }
            }
        if (!ok || f == cplx(0.0)) continue;
        bool match = true;
        for (int r = 0; r < 2 && match; ++r)
            for (int c = 0; c < 2 && match; ++c)
                if (std::abs(m[r][c] - f * ref[r][c]) > 1e-12) match = false;
        if (match) return {f, static_cast<OpSym>(s)};
    }
    return {cplx(0.0), OpSym::I};  // the zero operator
}

/// A tensor product of single-qubit symbols with a tracked global phase.
/// Unspecified coordinates act as I.
class OperatorString {
  public:
    OperatorString() = default;

    static OperatorString single(LatticeCoord c, OpSym s) {
        OperatorString o;
        o.set(c, s);
        return o;
    }

    void set(LatticeCoord c, OpSym s) {
        if (s == OpSym::I)
            syms_.erase(c);
        else
            syms_[c] = s;
    }
    OpSym at(LatticeCoord c) const {
        auto it = syms_.find(c);
        return it == syms_.end() ? OpSym::I : it->second;
    }
    const std::map<LatticeCoord, OpSym>& symbols() const { return syms_; }
    cplx phase() const { return phase_; }
    bool is_zero() const { return phase_ == cplx(0.0); }

    OperatorString operator*(const OperatorString& rhs) const {
        OperatorString out;
        out.phase_ = phase_ * rhs.phase_;
        auto i = syms_.begin();
        auto j = rhs.syms_.begin();
        while (i != syms_.end() || j != rhs.syms_.end()) {
            if (j == rhs.syms_.end() || (i != syms_.end() && i->first < j->first)) {
                out.set(i->first, i->second);
                ++i;
            } else if (i == syms_.end() || j->first < i->first) {
                out.set(j->first, j->second);
                ++j;
            } else {
                auto [f, s] = opsym_product(i->second, j->second);
                out.phase_ *= f;
                if (out.is_zero()) return out;
                out.set(i->first, s);
                ++i;
                ++j;
            }
        }
        return out;
    }

    bool same_ray(const OperatorString& rhs) const {
        return syms_ == rhs.syms_ && std::abs(phase_ - rhs.phase_) < 1e-12;
    }

    bool commutes_with(const OperatorString& rhs) const { return (*this * rhs).same_ray(rhs * *this); }
    bool anticommutes_with(const OperatorString& rhs) const {
        OperatorString ab = *this * rhs, ba = rhs * *this;
        ba.phase_ = -ba.phase_;
        return ab.same_ray(ba);
    }

    void negate() { phase_ = -phase_; }

    void apply_to(SparseState& st, const BaconShorCode& code) const {
        for (const auto& [c, s] : syms_) st.apply_1q(opsym_matrix(s), code.qubit(c));
        st.scale(phase_);
    }

    /// e.g. "Z@1,1 Z@1,2"; the identity renders as "I".
    std::string str() const {
        if (syms_.empty()) return "I";
        std::ostringstream os;
        bool first = true;
        for (const auto& [c, s] : syms_) {
            if (!first) os << ' ';
            first = false;
            os << opsym_name(s) << '@' << c.row << ',' << c.col;
        }
        return os.str();
    }

  private:
    std::map<LatticeCoord, OpSym> syms_;
    cplx phase_{1.0, 0.0};
};

/// n(n-1) row-adjacent ZZ generators followed by the n-1 row-pair XX generators.
inline std::vector<OperatorString> stabilizer_generators(const BaconShorCode& code) {
    std::vector<OperatorString> gens;
    for (int r = 1; r <= code.n; ++r)
        for (int c = 1; c < code.n; ++c) {
            OperatorString g;
            g.set({r, c}, OpSym::Z);
            g.set({r, c + 1}, OpSym::Z);
            gens.push_back(g);
        }
    for (int r = 1; r < code.n; ++r) {
        OperatorString g;
        for (int c = 1; c <= code.n; ++c) {
            g.set({r, c}, OpSym::X);
            g.set({r + 1, c}, OpSym::X);
        }
        gens.push_back(g);
    }
    return gens;
}

/// Canonical representatives: X-bar on row 1, Z-bar on column 1.
inline std::pair<OperatorString, OperatorString> logical_operators(const BaconShorCode& code) {
    OperatorString xbar, zbar;
    for (int c = 1; c <= code.n; ++c) xbar.set({1, c}, OpSym::X);
    for (int r = 1; r <= code.n; ++r) zbar.set({r, 1}, OpSym::Z);
    return {xbar, zbar};
}

enum class Codeword { Plus, Minus, Zero, One };

inline const char* codeword_name(Codeword w) {
    switch (w) {
        case Codeword::Plus: return "plus";
        case Codeword::Minus: return "minus";
        case Codeword::Zero: return "zero";
        case Codeword::One: return "one";
    }
    return "?";
}

/// Logical codeword as a sparse statevector over qubits 0..n^2-1.
inline SparseState codeword_state(const BaconShorCode& code, Codeword which, int size_cap = 3) {
    if (code.n > size_cap)
        throw std::length_error("codeword_state: lattice size exceeds the simulator cap");
    auto row_state = [&](int row, double sign) {
        std::uint64_t ones = 0;
        for (int c = 1; c <= code.n; ++c) ones |= 1ull << code.qubit(row, c);
        const double r = 1.0 / std::sqrt(2.0);
        return SparseState({{0u, cplx(r)}, {ones, cplx(sign * r)}});
    };
    auto lattice = [&](double sign) {
        SparseState st = SparseState::zero_state();
        for (int row = 1; row <= code.n; ++row) st = st.tensor(row_state(row, sign));
        return st;
    };
    switch (which) {
        case Codeword::Plus: return lattice(+1.0);
        case Codeword::Minus: return lattice(-1.0);
        case Codeword::Zero: {
            SparseState st = lattice(+1.0) + lattice(-1.0);
            st.scale(1.0 / std::sqrt(2.0));
            return st;
        }
        case Codeword::One: {
            SparseState m = lattice(-1.0);
            m.scale(-1.0);
            SparseState st = lattice(+1.0) + m;
            st.scale(1.0 / std::sqrt(2.0));
            return st;
        }
    }
    throw std::logic_error("codeword_state: bad codeword");
}

inline nlohmann::ordered_json code_to_json(const BaconShorCode& code) {
    nlohmann::ordered_json j;
    j["n"] = code.n;
    j["t"] = code.t();
    j["stabilizers"] = nlohmann::ordered_json::array();
    for (const auto& g : stabilizer_generators(code)) j["stabilizers"].push_back(g.str());
    auto [xbar, zbar] = logical_operators(code);
    j["logicals"] = {{"X", xbar.str()}, {"Z", zbar.str()}};
    return j;
}

}  // namespace adshor
