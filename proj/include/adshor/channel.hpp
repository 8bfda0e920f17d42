#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "adshor/state.hpp"

namespace adshor {

/// Single-qubit amplitude damping with probability p of losing the excitation.
struct DampingChannel {
    double p = 0.0;
    explicit DampingChannel(double p_) : p(p_) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("DampingChannel: p must lie in [0,1]");
    }
};

struct KrausPair {
    Mat2 e0;  // diag(1, sqrt(1-p))
    Mat2 e1;  // sqrt(p)|0><1|
};

inline KrausPair kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("kraus: p must lie in [0,1]");
    const cplx z(0.0);
    KrausPair k;
    k.e0 = {{{cplx(1.0), z}, {z, cplx(std::sqrt(1.0 - p))}}};
    k.e1 = {{{z, cplx(std::sqrt(p))}, {z, z}}};
    return k;
}

enum class ErrorClassTag { IdentityPart, Fa, Fz, Zerr };

/// One term of the order-organized expansion of the channel.
struct ErrorClass {
    ErrorClassTag tag;
    double weight;
};

/// The four classes with weights (1+sqrt(1-p))^2/4, p, p/2 and p^2/16 (the
/// Z-class coefficient is truncated at second order); simulation always uses
/// the exact Kraus pair, this decomposition is bookkeeping only.
inline std::vector<ErrorClass> class_decomposition(double p) {
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("class_decomposition: p must lie in [0,1)");
    const double s = std::sqrt(1.0 - p);
    return {
        {ErrorClassTag::IdentityPart, 0.25 * (1.0 + s) * (1.0 + s)},
        {ErrorClassTag::Fa, p},
        {ErrorClassTag::Fz, 0.5 * p},
        {ErrorClassTag::Zerr, p * p / 16.0},
    };
}

/// 4x4 superoperator (column-major over the operator basis |i><j| flattened as
/// i*2+j) of the channel, from its Kraus pair. Used by tests to validate the
/// class decomposition against the exact channel.
using Superop = std::array<std::array<cplx, 4>, 4>;

inline Superop superop_from_kraus(const KrausPair& k) {
    Superop s{};
    for (const Mat2* m : {&k.e0, &k.e1}) {
        // E rho E^dag : S[(i,j),(k,l)] += E[i][k] conj(E[j][l])
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int kk = 0; kk < 2; ++kk)
                    for (int l = 0; l < 2; ++l)
                        s[i * 2 + j][kk * 2 + l] += (*m)[i][kk] * std::conj((*m)[j][l]);
    }
    return s;
}

inline Superop superop_from_classes(const std::vector<ErrorClass>& classes) {
    const Mat2 I = {{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}}};
    const Mat2 Z = {{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(-1.0)}}};
    const Mat2 E = {{{cplx(0.0), cplx(1.0)}, {cplx(0.0), cplx(0.0)}}};
    Superop s{};
    auto add_conj = [&](const Mat2& a, const Mat2& b, double w) {
        // w * A rho B^dag
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) s[i * 2 + j][k * 2 + l] += w * a[i][k] * std::conj(b[j][l]);
    };
    for (const auto& c : classes) {
        switch (c.tag) {
            case ErrorClassTag::IdentityPart: add_conj(I, I, c.weight); break;
            case ErrorClassTag::Fa: add_conj(E, E, c.weight); break;
            case ErrorClassTag::Fz:
                // (rho Z + Z rho)/2
                add_conj(I, Z, 0.5 * c.weight);
                add_conj(Z, I, 0.5 * c.weight);
                break;
            case ErrorClassTag::Zerr: add_conj(Z, Z, c.weight); break;
        }
    }
    return s;
}

/// Where the single noise event of each location sits relative to the ideal
/// operation. Gates and preparations are followed by noise, measurements are
/// preceded by it, idles are a noise event per time step.
enum class NoiseTiming { After, Before };

}  // namespace adshor
