// ground_state.hpp — ground-state maps, fidelity traces, level-crossing
// detection, the 2/(L+1) first-crossing law, and the continuum perturbation
// estimate 1.5/(L+1).

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hof/eigh.hpp"
#include "hof/lattice.hpp"
#include "hof/sweep.hpp"

namespace hof {

struct GroundStateRecord {
    LatticeSpec spec;
    double alpha{0.0};
    double energy{0.0};               // units of J
    std::vector<Complex> amplitudes;  // row-major over (p, q), phase-fixed
    double gap{0.0};
    bool degenerate{false};

    const Complex& at(std::size_t p, std::size_t q) const {
        return amplitudes[site_index(spec, p, q)];
    }
};

inline GroundStateRecord ground_state(const LatticeSpec& spec, const GaugeConfig& gauge,
                                      double alpha) {
    GaugeConfig g = gauge;
    g.alpha = alpha;
    g.validate();
    const HermitianMatrix H = build_hamiltonian(spec, g);
    if (H.dim < 2) {
        throw std::invalid_argument("ground_state: lattice must have at least two sites");
    }
    GroundPair pair = ground_pair(eigh(H));
    GroundStateRecord rec;
    rec.spec = spec;
    rec.alpha = alpha;
    rec.energy = pair.energy;
    rec.amplitudes = std::move(pair.state);
    rec.gap = pair.gap;
    rec.degenerate = pair.degenerate;
    return rec;
}

inline Complex state_overlap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

struct FidelityTrace {
    std::vector<double> alphas;        // grid, spacing == step
    double step{0.0};
    std::vector<double> fidelities;    // F(α_k) = |⟨Φ(α_k)|Φ(α_k + step)⟩|
    std::vector<char> state_degenerate; // one flag per computed state, size alphas.size()+1
};

// F(α) over a uniform grid; the state at α_k + step is the next grid state,
// so the whole trace needs alphas.size() + 1 diagonalizations.  step = 0 is
// the trivial self-overlap case.
inline FidelityTrace fidelity_trace(const LatticeSpec& spec, const GaugeConfig& gauge,
                                    double alpha_min, double alpha_max, double step,
                                    unsigned jobs = 0) {
    spec.validate();
    if (!(step >= 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("fidelity_trace: step must be nonnegative and finite");
    }
    if (!(alpha_min <= alpha_max)) {
        throw std::invalid_argument("fidelity_trace: need alpha_min <= alpha_max");
    }

    FidelityTrace trace;
    trace.step = step;
    if (step == 0.0) {
        const GroundStateRecord rec = ground_state(spec, gauge, alpha_min);
        trace.alphas = {alpha_min};
        trace.fidelities = {std::abs(state_overlap(rec.amplitudes, rec.amplitudes))};
        trace.state_degenerate = {rec.degenerate, rec.degenerate};
        return trace;
    }

    const std::size_t count =
        static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / step + 1e-9)) + 1;
    trace.alphas.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        trace.alphas[k] = alpha_min + static_cast<double>(k) * step;
    }

    const auto states = parallel_map(count + 1, jobs, [&](std::size_t k) {
        return ground_state(spec, gauge, alpha_min + static_cast<double>(k) * step);
    });

    trace.fidelities.resize(count);
    trace.state_degenerate.resize(count + 1);
    for (std::size_t k = 0; k < count; ++k) {
        trace.fidelities[k] =
            std::abs(state_overlap(states[k].amplitudes, states[k + 1].amplitudes));
    }
    for (std::size_t k = 0; k <= count; ++k) {
        trace.state_degenerate[k] = states[k].degenerate ? 1 : 0;
    }
    return trace;
}

struct CrossingBracket {
    double grid_lo{0.0};  // first grid point whose fidelity dipped
    double grid_hi{0.0};  // one step past the last dipped grid point
    double lo{0.0};       // after bisection refinement
    double hi{0.0};
    double alpha0{0.0};   // midpoint of (lo, hi)
};

struct CrossingReport {
    std::vector<CrossingBracket> crossings;  // disjoint, ascending
    double alpha0{std::numeric_limits<double>::quiet_NaN()};  // first crossing
    double fit_prediction{std::numeric_limits<double>::quiet_NaN()};           // 2/(L+1)
    double perturbation_prediction{std::numeric_limits<double>::quiet_NaN()};  // 1.5/(L+1)
    double threshold{0.5};
};

inline constexpr double kCrossingRefineWidth = 1e-5;

namespace detail {

// Bisect a bracket known to contain a ground-state branch switch: the
// midpoint state is compared against both anchor states and the half where
// the state changes branch is kept.
inline void refine_bracket(const LatticeSpec& spec, const GaugeConfig& gauge,
                           CrossingBracket& br) {
    double lo = br.grid_lo;
    double hi = br.grid_hi;
    std::vector<Complex> slo = ground_state(spec, gauge, lo).amplitudes;
    std::vector<Complex> shi = ground_state(spec, gauge, hi).amplitudes;
    while (hi - lo > kCrossingRefineWidth) {
        const double mid = 0.5 * (lo + hi);
        std::vector<Complex> smid = ground_state(spec, gauge, mid).amplitudes;
        const double to_lo = std::abs(state_overlap(slo, smid));
        const double to_hi = std::abs(state_overlap(smid, shi));
        if (to_lo >= to_hi) {
            lo = mid;
            slo = std::move(smid);
        } else {
            hi = mid;
            shi = std::move(smid);
        }
    }
    br.lo = lo;
    br.hi = hi;
    br.alpha0 = 0.5 * (lo + hi);
}

}  // namespace detail

// Bracket every fidelity dip below `threshold`.  A grid point whose ground
// state is degenerate (gap below the eigensolver's degeneracy tolerance) is a
// crossing hit as well: the fidelity into or out of an exactly degenerate
// point only reaches 1/√2, yet the gap closing is the crossing itself.
inline CrossingReport detect_crossings(const FidelityTrace& trace, const LatticeSpec& spec,
                                       const GaugeConfig& gauge, double threshold = 0.5,
                                       bool refine = true) {
    if (trace.alphas.empty()) {
        throw std::invalid_argument("detect_crossings: empty fidelity trace");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("detect_crossings: threshold must lie in (0, 1)");
    }

    CrossingReport report;
    report.threshold = threshold;
    if (spec.rows == spec.cols) {
        const double L = static_cast<double>(spec.rows);
        report.fit_prediction = 2.0 / (L + 1.0);
        report.perturbation_prediction = 1.5 / (L + 1.0);
    }

    const std::size_t count = trace.alphas.size();
    const auto hit = [&](std::size_t k) {
        if (trace.fidelities[k] < threshold) return true;
        if (!trace.state_degenerate.empty()) {
            if (trace.state_degenerate[k]) return true;
            if (k + 1 < trace.state_degenerate.size() && trace.state_degenerate[k + 1]) {
                return true;
            }
        }
        return false;
    };

    std::size_t k = 0;
    while (k < count) {
        if (!hit(k)) {
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j + 1 < count && hit(j + 1)) ++j;
        CrossingBracket br;
        br.grid_lo = trace.alphas[k];
        br.grid_hi = trace.alphas[j] + trace.step;
        br.lo = br.grid_lo;
        br.hi = br.grid_hi;
        br.alpha0 = 0.5 * (br.lo + br.hi);
        report.crossings.push_back(br);
        k = j + 1;
    }

    if (refine && trace.step > 0.0) {
        for (CrossingBracket& br : report.crossings) {
            detail::refine_bracket(spec, gauge, br);
        }
    }
    if (!report.crossings.empty()) report.alpha0 = report.crossings.front().alpha0;
    return report;
}

struct AlphaFitRow {
    std::size_t size{0};
    bool found{false};
    double alpha0{std::numeric_limits<double>::quiet_NaN()};
    double prediction{0.0};           // 2/(L+1)
    double relative_deviation{std::numeric_limits<double>::quiet_NaN()};
};

inline constexpr double kAlphaScanMax = 0.6;
inline constexpr double kAlphaScanStep = 1e-3;

// First level crossing per lattice size against the 2/(L+1) law.  The
// fidelity grid over [0, 0.6] is evaluated in chunks so the scan stops soon
// after the first complete bracket; results match a full-grid scan exactly.
inline std::vector<AlphaFitRow> fit_alpha0(const std::vector<std::size_t>& sizes,
                                           GaugeKind gauge = GaugeKind::Symmetric,
                                           unsigned jobs = 0) {
    std::vector<AlphaFitRow> rows;
    rows.reserve(sizes.size());
    for (const std::size_t L : sizes) {
        if (L < 5) throw std::invalid_argument("fit_alpha0: sizes must be at least 5");
        const LatticeSpec spec = square_lattice(L);
        const GaugeConfig cfg{0.0, gauge};

        AlphaFitRow row;
        row.size = L;
        row.prediction = 2.0 / (static_cast<double>(L) + 1.0);

        const std::size_t total =
            static_cast<std::size_t>(std::floor(kAlphaScanMax / kAlphaScanStep + 1e-9)) + 1;
        std::vector<GroundStateRecord> states;
        states.reserve(total + 1);
        const std::size_t chunk = 64;

        std::size_t first_hit = total;
        std::size_t close_at = total;  // first non-hit index after first_hit
        while (states.size() < total + 1 && close_at == total) {
            const std::size_t have = states.size();
            const std::size_t want = std::min(total + 1, have + chunk);
            auto more = parallel_map(want - have, jobs, [&](std::size_t k) {
                return ground_state(spec, cfg,
                                    static_cast<double>(have + k) * kAlphaScanStep);
            });
            for (auto& s : more) states.push_back(std::move(s));

            for (std::size_t k = (first_hit == total ? 0 : first_hit);
                 k + 1 < states.size() && k < total; ++k) {
                const double f =
                    std::abs(state_overlap(states[k].amplitudes, states[k + 1].amplitudes));
                const bool h = f < 0.5 || states[k].degenerate || states[k + 1].degenerate;
                if (h && first_hit == total) first_hit = k;
                if (!h && first_hit != total && k > first_hit) {
                    close_at = k;
                    break;
                }
            }
        }

        if (first_hit < total) {
            const std::size_t last_hit = (close_at == total ? total - 1 : close_at - 1);
            CrossingBracket br;
            br.grid_lo = static_cast<double>(first_hit) * kAlphaScanStep;
            br.grid_hi = static_cast<double>(last_hit) * kAlphaScanStep + kAlphaScanStep;
            detail::refine_bracket(spec, cfg, br);
            row.found = true;
            row.alpha0 = br.alpha0;
            row.relative_deviation = std::fabs(row.alpha0 - row.prediction) / row.prediction;
        }
        rows.push_back(row);
    }
    return rows;
}

struct PerturbationEstimate {
    std::size_t size{0};
    double alpha_c{0.0};  // 1.5/(L+1)

    // Zero-field continuum level energies E_(p,q) = J·[(πp/L)² + (πq/L)²]
    // (effective mass m = 1/(2J)).
    double level_energy(std::size_t p, std::size_t q, double J = 1.0) const {
        const double pi = std::numbers::pi;
        const double L = static_cast<double>(size);
        const double kp = pi * static_cast<double>(p) / L;
        const double kq = pi * static_cast<double>(q) / L;
        return J * (kp * kp + kq * kq);
    }
};

inline PerturbationEstimate perturbation_estimate(std::size_t L) {
    if (L < 2) throw std::invalid_argument("perturbation_estimate: L must be at least 2");
    return PerturbationEstimate{L, 1.5 / (static_cast<double>(L) + 1.0)};
}

}  // namespace hof
