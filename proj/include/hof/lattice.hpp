// lattice.hpp — Harper-Hofstadter lattice geometry, gauge phases, and the
// single-particle hopping Hamiltonian with open boundaries.
//
// Sites are labelled (p, q) with 1 ≤ p ≤ rows and 1 ≤ q ≤ cols; storage is
// 0-based row-major, linear index i = (p−1)·cols + (q−1).  A hop amplitude
// carries −J·e^{iφ} with φ fixed by the gauge so that the accumulated phase
// around every plaquette, traversed (p,q) → (p+1,q) → (p+1,q+1) → (p,q+1),
// equals +2πα.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hof/matrix.hpp"

namespace hof {

struct LatticeSpec {
    std::size_t rows{1};     // L_p
    std::size_t cols{1};     // L_q
    double hopping{1.0};     // J, energy unit

    std::size_t sites() const { return rows * cols; }

    void validate() const {
        if (rows < 1 || cols < 1) {
            throw std::invalid_argument("LatticeSpec: lattice must have at least one site");
        }
        if (!(hopping > 0.0) || !std::isfinite(hopping)) {
            throw std::invalid_argument("LatticeSpec: hopping J must be positive and finite");
        }
    }
};

inline LatticeSpec square_lattice(std::size_t L, double J = 1.0) {
    LatticeSpec s{L, L, J};
    s.validate();
    return s;
}

enum class GaugeKind { Symmetric, Landau };

struct GaugeConfig {
    double alpha{0.0};                     // flux quanta per plaquette
    GaugeKind gauge{GaugeKind::Symmetric};

    void validate() const {
        if (!std::isfinite(alpha)) {
            throw std::invalid_argument("GaugeConfig: alpha must be finite");
        }
    }
};

// (p, q) → linear storage index; 1-based physics labels in, 0-based out.
inline std::size_t site_index(const LatticeSpec& spec, std::size_t p, std::size_t q) {
    if (p < 1 || p > spec.rows || q < 1 || q > spec.cols) {
        throw std::out_of_range("site_index: (p, q) outside the lattice");
    }
    return (p - 1) * spec.cols + (q - 1);
}

struct SiteIndex {
    std::size_t p;
    std::size_t q;
};

inline SiteIndex site_coords(const LatticeSpec& spec, std::size_t i) {
    if (i >= spec.sites()) throw std::out_of_range("site_coords: index outside the lattice");
    return SiteIndex{i / spec.cols + 1, i % spec.cols + 1};
}

// Symmetric-gauge phase function θ(p,q) = −π·p·q·α.
inline double symmetric_gauge_theta(std::size_t p, std::size_t q, double alpha) {
    return -std::numbers::pi * static_cast<double>(p) * static_cast<double>(q) * alpha;
}

// One nearest-neighbour bond; `amplitude` is the matrix element ⟨from|H|to⟩.
struct Link {
    std::size_t from;
    std::size_t to;
    Complex amplitude;
};

// Enumerate every bond once, vertical (p → p+1) before horizontal (q → q+1),
// row-major.  Symmetric gauge: ⟨(p,q)|H|(p+1,q)⟩ = −J·e^{i(θ_{p,q}−θ_{p+1,q})}
// and ⟨(p,q)|H|(p,q+1)⟩ = −J·e^{i(θ_{p,q+1}−θ_{p,q})}.  Landau gauge puts the
// whole Peierls phase on the p-hops, ⟨(p+1,q)|H|(p,q)⟩ = −J·e^{−i2παq}, with
// real q-hops.
inline std::vector<Link> lattice_links(const LatticeSpec& spec, const GaugeConfig& gauge) {
    spec.validate();
    gauge.validate();
    const double J = spec.hopping;
    const double alpha = gauge.alpha;
    const double pi = std::numbers::pi;

    std::vector<Link> links;
    links.reserve(spec.rows * (spec.cols - 1) + spec.cols * (spec.rows - 1));
    for (std::size_t p = 1; p <= spec.rows; ++p) {
        for (std::size_t q = 1; q <= spec.cols; ++q) {
            const std::size_t i = site_index(spec, p, q);
            if (p < spec.rows) {
                const std::size_t j = site_index(spec, p + 1, q);
                double phase;
                if (gauge.gauge == GaugeKind::Symmetric) {
                    phase = symmetric_gauge_theta(p, q, alpha) -
                            symmetric_gauge_theta(p + 1, q, alpha);  // = +πqα
                } else {
                    phase = 2.0 * pi * alpha * static_cast<double>(q);
                }
                links.push_back({i, j, -J * std::polar(1.0, phase)});
            }
            if (q < spec.cols) {
                const std::size_t j = site_index(spec, p, q + 1);
                double phase = 0.0;
                if (gauge.gauge == GaugeKind::Symmetric) {
                    phase = symmetric_gauge_theta(p, q + 1, alpha) -
                            symmetric_gauge_theta(p, q, alpha);  // = −πpα
                }
                links.push_back({i, j, -J * std::polar(1.0, phase)});
            }
        }
    }
    return links;
}

// Single-polariton tight-binding Hamiltonian with open boundaries.
inline HermitianMatrix build_hamiltonian(const LatticeSpec& spec, const GaugeConfig& gauge) {
    HermitianMatrix H(spec.sites());
    for (const Link& link : lattice_links(spec, gauge)) {
        H.set_pair(link.from, link.to, link.amplitude);
    }
    return H;
}

namespace detail {

inline double wrap_to_pi(double phase) {
    const double twopi = 2.0 * std::numbers::pi;
    double w = std::fmod(phase, twopi);
    if (w <= -std::numbers::pi) w += twopi;
    if (w > std::numbers::pi) w -= twopi;
    return w;
}

}  // namespace detail

// Accumulated hopping phase around each plaquette, in (−π, π], traversed
// (p,q) → (p+1,q) → (p+1,q+1) → (p,q+1) → (p,q).  Row-major over the
// (rows−1)·(cols−1) plaquettes.
inline std::vector<double> plaquette_fluxes(const HermitianMatrix& H, const LatticeSpec& spec) {
    spec.validate();
    if (H.dim != spec.sites()) {
        throw std::invalid_argument("plaquette_fluxes: matrix does not match the lattice");
    }
    std::vector<double> fluxes;
    if (spec.rows < 2 || spec.cols < 2) return fluxes;
    fluxes.reserve((spec.rows - 1) * (spec.cols - 1));

    // directed amplitude for the hop i → j is ⟨j|H|i⟩
    const auto hop = [&](std::size_t i, std::size_t j) {
        const Complex a = H.at(j, i);
        if (a == Complex{}) {
            throw std::runtime_error("plaquette_fluxes: missing link amplitude");
        }
        return a;
    };

    for (std::size_t p = 1; p < spec.rows; ++p) {
        for (std::size_t q = 1; q < spec.cols; ++q) {
            const std::size_t a = site_index(spec, p, q);
            const std::size_t b = site_index(spec, p + 1, q);
            const std::size_t c = site_index(spec, p + 1, q + 1);
            const std::size_t d = site_index(spec, p, q + 1);
            const Complex loop = hop(a, b) * hop(b, c) * hop(c, d) * hop(d, a);
            fluxes.push_back(detail::wrap_to_pi(std::arg(loop)));
        }
    }
    return fluxes;
}

// Number of nonzero off-diagonal entries the open-boundary Hamiltonian must
// have: two per bond.
inline std::size_t expected_offdiagonal_count(const LatticeSpec& spec) {
    return 2 * (spec.rows * (spec.cols - 1) + spec.cols * (spec.rows - 1));
}

}  // namespace hof
