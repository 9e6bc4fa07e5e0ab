// butterfly.hpp — Hofstadter-butterfly spectra over a flux grid

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hof/eigh.hpp"
#include "hof/lattice.hpp"
#include "hof/sweep.hpp"

namespace hof {

struct ButterflySpectrum {
    LatticeSpec spec;
    GaugeKind gauge{GaugeKind::Symmetric};
    std::vector<double> alphas;                // ascending, endpoints included
    std::vector<std::vector<double>> energies; // energies[i] sorted, units of J
};

// Full spectrum at every point of a uniform α grid.  Columns are computed in
// parallel and merged in grid order; output is identical for any job count.
inline ButterflySpectrum butterfly_scan(const LatticeSpec& spec, GaugeKind gauge,
                                        double alpha_min, double alpha_max,
                                        std::size_t steps, unsigned jobs = 0) {
    spec.validate();
    if (steps < 2) throw std::invalid_argument("butterfly_scan: need at least 2 steps");
    if (!(alpha_min < alpha_max) || !std::isfinite(alpha_min) || !std::isfinite(alpha_max)) {
        throw std::invalid_argument("butterfly_scan: need finite alpha_min < alpha_max");
    }

    ButterflySpectrum out;
    out.spec = spec;
    out.gauge = gauge;
    out.alphas.resize(steps);
    const double h = (alpha_max - alpha_min) / static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) {
        out.alphas[k] = (k + 1 == steps) ? alpha_max : alpha_min + static_cast<double>(k) * h;
    }

    out.energies = parallel_map(steps, jobs, [&](std::size_t k) {
        try {
            const HermitianMatrix H = build_hamiltonian(spec, {out.alphas[k], gauge});
            return eigh(H).eigenvalues;
        } catch (const std::exception& err) {
            throw std::runtime_error("butterfly_scan: alpha = " +
                                     std::to_string(out.alphas[k]) + ": " + err.what());
        }
    });
    return out;
}

// Largest deviation between the sorted spectra of the two gauge choices at a
// single α.  The matrices differ; the spectra must not.
inline double gauge_invariance_check(const LatticeSpec& spec, double alpha) {
    spec.validate();
    if (!std::isfinite(alpha)) throw std::invalid_argument("gauge_invariance_check: alpha");
    const auto sym = eigh(build_hamiltonian(spec, {alpha, GaugeKind::Symmetric})).eigenvalues;
    const auto lan = eigh(build_hamiltonian(spec, {alpha, GaugeKind::Landau})).eigenvalues;
    double worst = 0.0;
    for (std::size_t k = 0; k < sym.size(); ++k) {
        worst = std::max(worst, std::fabs(sym[k] - lan[k]));
    }
    return worst;
}

}  // namespace hof
