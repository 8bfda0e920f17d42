#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adshor {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

/// Sparse pure state over up to 64 qubits. Terms are kept sorted by basis
/// index so that every operation is deterministic. Qubit q owns bit (1<<q);
/// absent qubits are implicitly |0>. States are never renormalized: norm2()
/// carries measurement and Kraus weights.
class SparseState {
  public:
    using Term = std::pair<std::uint64_t, cplx>;

    SparseState() = default;
    explicit SparseState(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

    static SparseState zero_state() { return SparseState({{0u, cplx(1.0, 0.0)}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t support() const { return terms_.size(); }

    double norm2() const {
        double s = 0.0;
        for (const auto& [b, a] : terms_) s += std::norm(a);
        return s;
    }

    void scale(cplx f) {
        for (auto& [b, a] : terms_) a *= f;
    }

    /// True if bit q is zero in every term (qubit is in |0>).
    bool qubit_is_zero(int q) const {
        const std::uint64_t bit = 1ull << q;
        for (const auto& [b, a] : terms_)
            if (b & bit) return false;
        return true;
    }

    void apply_x(int q) {
        const std::uint64_t bit = 1ull << q;
        for (auto& [b, a] : terms_) b ^= bit;
        std::sort(terms_.begin(), terms_.end(), term_less);
    }

    void apply_z(int q) { apply_phase_if_set(q, cplx(-1.0, 0.0)); }
    void apply_s(int q) { apply_phase_if_set(q, cplx(0.0, 1.0)); }
    void apply_t(int q) { apply_phase_if_set(q, std::polar(1.0, M_PI / 4.0)); }

    void apply_phase_if_set(int q, cplx ph) {
        const std::uint64_t bit = 1ull << q;
        for (auto& [b, a] : terms_)
            if (b & bit) a *= ph;
    }

    void apply_cnot(int control, int target) {
        const std::uint64_t cb = 1ull << control, tb = 1ull << target;
        for (auto& [b, a] : terms_)
            if (b & cb) b ^= tb;
        std::sort(terms_.begin(), terms_.end(), term_less);
    }

    void apply_cz(int a_q, int b_q) {
        const std::uint64_t m = (1ull << a_q) | (1ull << b_q);
        for (auto& [b, a] : terms_)
            if ((b & m) == m) a = -a;
    }

    void apply_ccz(int a_q, int b_q, int c_q) {
        const std::uint64_t m = (1ull << a_q) | (1ull << b_q) | (1ull << c_q);
        for (auto& [b, a] : terms_)
            if ((b & m) == m) a = -a;
    }

    void apply_h(int q) {
        static const double r = 1.0 / std::sqrt(2.0);
        apply_1q(Mat2{{{cplx(r), cplx(r)}, {cplx(r), cplx(-r)}}}, q);
    }

    /// General single-qubit matrix, row-major: out_i = sum_j m[i][j] in_j.
    void apply_1q(const Mat2& m, int q) {
        const std::uint64_t bit = 1ull << q;
        std::vector<Term> out;
        out.reserve(terms_.size() * 2);
        for (const auto& [b, a] : terms_) {
            const int v = (b & bit) ? 1 : 0;
            if (m[0][v] != cplx(0.0)) out.emplace_back(b & ~bit, m[0][v] * a);
            if (m[1][v] != cplx(0.0)) out.emplace_back(b | bit, m[1][v] * a);
        }
        terms_ = std::move(out);
        canonicalize();
    }

    /// Exact no-jump damping Kraus: amplitude *= sqrt(1-p) on |1> components.
    void apply_damping_e0(int q, double p) {
        const std::uint64_t bit = 1ull << q;
        const double f = std::sqrt(1.0 - p);
        for (auto& [b, a] : terms_)
            if (b & bit) a *= f;
    }

    /// Jump Kraus E1 = sqrt(p)|0><1| (pass p=1 for a bare conditioning jump E).
    void apply_damping_e1(int q, double p) {
        const std::uint64_t bit = 1ull << q;
        const double f = std::sqrt(p);
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [b, a] : terms_)
            if (b & bit) out.emplace_back(b & ~bit, f * a);
        terms_ = std::move(out);
        canonicalize();
    }

    /// Adds qubit q in |+>. Requires the bit to be currently clear.
    void prep_plus(int q) {
        const std::uint64_t bit = 1ull << q;
        static const double r = 1.0 / std::sqrt(2.0);
        std::vector<Term> out;
        out.reserve(terms_.size() * 2);
        for (const auto& [b, a] : terms_) {
            out.emplace_back(b, r * a);
            out.emplace_back(b | bit, r * a);
        }
        terms_ = std::move(out);
        canonicalize();
    }

    /// Projects onto Z outcome (+1 -> |0>, -1 -> |1>) and clears the bit.
    SparseState measure_z(int q, int outcome) const {
        const std::uint64_t bit = 1ull << q;
        const bool want = (outcome == -1);
        std::vector<Term> out;
        for (const auto& [b, a] : terms_)
            if (((b & bit) != 0) == want) out.emplace_back(b & ~bit, a);
        return SparseState(std::move(out));
    }

    /// Projects onto X outcome (+1 -> |+>, -1 -> |->) and clears the bit.
    SparseState measure_x(int q, int outcome) const {
        const std::uint64_t bit = 1ull << q;
        static const double r = 1.0 / std::sqrt(2.0);
        const double sign = (outcome == -1) ? -1.0 : 1.0;
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [b, a] : terms_) {
            if (b & bit)
                out.emplace_back(b & ~bit, sign * r * a);
            else
                out.emplace_back(b, r * a);
        }
        return SparseState(std::move(out));
    }

    cplx inner(const SparseState& other) const {  // <this|other>
        cplx s(0.0);
        auto i = terms_.begin();
        auto j = other.terms_.begin();
        while (i != terms_.end() && j != other.terms_.end()) {
            if (i->first < j->first)
                ++i;
            else if (j->first < i->first)
                ++j;
            else {
                s += std::conj(i->second) * j->second;
                ++i;
                ++j;
            }
        }
        return s;
    }

    /// |<this|other>|^2 / (norms), i.e. fidelity between the two rays.
    double overlap2(const SparseState& other) const {
        const double na = norm2(), nb = other.norm2();
        if (na <= 0.0 || nb <= 0.0) return 0.0;
        return std::norm(inner(other)) / (na * nb);
    }

    SparseState tensor(const SparseState& other) const {
        std::vector<Term> out;
        out.reserve(terms_.size() * other.terms_.size());
        for (const auto& [b1, a1] : terms_)
            for (const auto& [b2, a2] : other.terms_) {
                if (b1 & b2) throw std::invalid_argument("tensor: overlapping qubit support");
                out.emplace_back(b1 | b2, a1 * a2);
            }
        return SparseState(std::move(out));
    }

    friend SparseState operator+(const SparseState& a, const SparseState& b) {
        std::vector<Term> out = a.terms_;
        out.insert(out.end(), b.terms_.begin(), b.terms_.end());
        return SparseState(std::move(out));
    }

  private:
    static bool term_less(const Term& a, const Term& b) { return a.first < b.first; }

    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(), term_less);
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(t);
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return std::norm(t.second) < 1e-30; }),
                  out.end());
        terms_ = std::move(out);
    }

    std::vector<Term> terms_;
};

}  // namespace adshor
