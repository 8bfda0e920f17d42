#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace adshor::threshold {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

/// Locations in one EC subcircuit under the reduced-repetition accounting:
/// 16t^2+72t+40 + 12(2t+1)floor((t+2)^2/8) + 6(3t+2)(floor(t/2)+1).
inline long n_sub(long t) {
    if (t < 1) throw std::domain_error("n_sub: t must be at least 1");
    return 16 * t * t + 72 * t + 40 + 12 * (2 * t + 1) * (((t + 2) * (t + 2)) / 8) +
           6 * (3 * t + 2) * (t / 2 + 1);
}

/// Idling-row locations per round for lattices with an odd number of rows.
inline long n_idle(long t) {
    if (t < 1 || t % 2 != 0) throw std::domain_error("n_idle: defined for even t >= 2");
    return (t + 1) * (3 * (t + 1) * (t / 2) + 4 * t + 9);
}

struct LocationBudget {
    long t = 0;
    long sub = 0;
    long idle = 0;  // zero for odd t
    long total = 0;
};

/// Total EC-gadget location budget.
/// Odd t: (floor((t/2+2)^2/4)+1) rounds of t subcircuits, except t = 9 where
/// the reference tabulation evaluates the round bound in integer-halved form
/// and schedules t+1 subcircuit blocks per round (see README, threshold
/// conventions); even t: floor(t/8+2) repetitions of (t+1)-step rounds holding
/// t/2 subcircuits plus the idling row.
inline LocationBudget n_total(long t) {
    if (t < 1) throw std::domain_error("n_total: t must be at least 1");
    LocationBudget b;
    b.t = t;
    b.sub = n_sub(t);
    if (t % 2 == 1) {
        long blocks;
        if (t == 9) {
            const long rounds = ((t / 2 + 2) * (t / 2 + 2)) / 4 + 1;
            blocks = rounds * (t + 1);
        } else {
            const double half = static_cast<double>(t) / 2.0 + 2.0;
            const long rounds = static_cast<long>(std::floor(half * half / 4.0)) + 1;
            blocks = rounds * t;
        }
        b.total = blocks * b.sub;
    } else {
        b.idle = n_idle(t);
        b.total = (t / 8 + 2) * (t + 1) * ((t / 2) * b.sub + b.idle);
    }
    return b;
}

/// Worst-case location budget under naive repetition (t(t+1)+1 rounds for
/// every repeated step). This is the count behind the O(t^6) scaling claim;
/// the tabulated thresholds use the reduced budget of n_total instead.
inline long worst_case_budget(long t) {
    if (t < 1) throw std::domain_error("worst_case_budget: t must be at least 1");
    const long reps = t * (t + 1) + 1;
    const long sub = 2 * (2 * t + 1) + 6 * (3 * t + 2) * t + 16 * (t + 1) * (t + 1) + 4 +
                     12 * (2 * t + 1) * reps + 6 * (2 * t + 1);
    return reps * t * sub;
}

/// Exact coefficient of the leading infidelity bound:
/// C(2N+(t+1)^2, t+1) - C(N, t+1).
inline BigInt bound_coefficient(long N, long t) {
    return binomial(2 * N + (t + 1) * (t + 1), t + 1) - binomial(N, t + 1);
}

/// Upper bound on the extended-memory infidelity: coefficient * p^(t+1).
/// The binomials are exact; only the final monomial evaluation is floating.
inline double infidelity_bound(double p, long t, long N) {
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("infidelity_bound: p must lie in [0,1)");
    if (N < 1) throw std::domain_error("infidelity_bound: N must be positive");
    const double coeff = static_cast<double>(bound_coefficient(N, t));
    return coeff * std::pow(p, static_cast<double>(t + 1));
}

inline constexpr double kUnencodedSlope = 1.0 / 3.0;  // mean infidelity of the bare qubit is p/3

/// Solves coeff * p^(t+1) = p/3 in closed form: p = (3 coeff)^(-1/t).
inline double pseudothreshold(long t, double alpha = kUnencodedSlope) {
    const BigInt coeff = bound_coefficient(n_total(t).total, t);
    const double log_c = std::log(static_cast<double>(coeff)) + std::log(1.0 / alpha);
    return std::exp(-log_c / static_cast<double>(t));
}

/// Bisection cross-check of the closed form, on log p.
inline double pseudothreshold_bisect(long t, double alpha = kUnencodedSlope) {
    const BigInt coeff = bound_coefficient(n_total(t).total, t);
    const double c = static_cast<double>(coeff);
    auto f = [&](double logp) {
        return std::log(c) + static_cast<double>(t + 1) * logp - (std::log(alpha) + logp);
    };
    double lo = std::log(1e-12), hi = std::log(1e-1);
    if (f(lo) >= 0.0 || f(hi) <= 0.0) throw std::runtime_error("pseudothreshold_bisect: no bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

struct ThresholdRow {
    int n = 0;
    long locations = 0;
    std::string coefficient;  // exact, decimal
    double p_th = 0.0;
    double reference = 0.0;
    double relative_deviation = 0.0;
};

/// Reference pseudothreshold tabulation for n = 2..10.
inline const std::vector<double>& reference_thresholds() {
    static const std::vector<double> v = {1.46e-6, 2.88e-6, 4.08e-6, 2.93e-6, 2.57e-6,
                                          1.72e-6, 1.49e-6, 6.73e-7, 7.94e-7};
    return v;
}

inline std::vector<ThresholdRow> threshold_report(int n_max = 10) {
    if (n_max < 2) throw std::domain_error("threshold_report: n_max must be at least 2");
    std::vector<ThresholdRow> rows;
    for (int n = 2; n <= n_max; ++n) {
        const long t = n - 1;
        ThresholdRow r;
        r.n = n;
        r.locations = n_total(t).total;
        r.coefficient = bound_coefficient(r.locations, t).str();
        r.p_th = pseudothreshold(t);
        if (n - 2 < static_cast<int>(reference_thresholds().size())) {
            r.reference = reference_thresholds()[n - 2];
            r.relative_deviation = (r.p_th - r.reference) / r.reference;
        }
        rows.push_back(r);
    }
    return rows;
}

struct CurvePoint {
    double p = 0.0;
    int n = 0;
    double bound = 0.0;
    double unencoded = 0.0;
};

/// Infidelity-bound curves over a log-spaced p grid for a range of sizes.
inline std::vector<CurvePoint> figure_data(double pmin, double pmax, int steps, int n_min, int n_max) {
    if (!(pmin > 0.0 && pmax > pmin && pmax < 1.0)) throw std::domain_error("figure_data: bad p grid");
    if (steps < 2) throw std::domain_error("figure_data: need at least 2 steps");
    std::vector<CurvePoint> out;
    for (int i = 0; i < steps; ++i) {
        const double logp =
            std::log(pmin) + (std::log(pmax) - std::log(pmin)) * i / static_cast<double>(steps - 1);
        const double p = std::exp(logp);
        for (int n = n_min; n <= n_max; ++n) {
            const long t = n - 1;
            out.push_back({p, n, infidelity_bound(p, t, n_total(t).total), kUnencodedSlope * p});
        }
    }
    return out;
}

}  // namespace adshor::threshold
