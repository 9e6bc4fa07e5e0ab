// micro_model.hpp — microscopic driven spin–resonator chain and its reduction
// to the polariton hopping model
//
// Each site carries one dressed two-level emitter (|−⟩, |+⟩ split by the
// drive) and one photon mode at detuning δ above the spin-excitation
// reference.  The quasi-resonant coupling creates a photon together with a
// spin flip, −(g/2)(e^{−iθ_p} b†_p σ⁺_p + H.C.), so the conserved charge is
// n_photons − n_excitations.  Eliminating the photon-carrying states at
// second order leaves a hopping model with amplitude J′ = T(g/2δ)² and the
// drive-phase difference imprinted on the hop:
//   H_eff ≈ E_stark·1 − (J_eff |2⟩⟨1| + H.C.),   J_eff = J′·e^{i(θ₁−θ₂)}.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hof/eigh.hpp"
#include "hof/lattice.hpp"
#include "hof/matrix.hpp"

namespace hof {

struct FullModelSpec {
    std::size_t sites{2};            // linear chain, one photon mode per site
    double g{0.05};                  // spin–photon coupling (angular frequency units)
    double tunneling{0.05};          // photon hopping T
    double delta{1.0};               // photon detuning δ above the spin reference
    std::vector<double> theta{0.0, 0.0};  // per-site drive phase
    std::size_t ensemble_size{1};    // spins per site; g is the collective coupling
    std::size_t photon_cutoff{1};    // max photons per mode
    double rabi{0.0};                // Ω, kept for the dressed-state construction
    double detuning_a{0.0};          // Δ_a, Δ_b, idem
    double detuning_b{0.0};

    void validate() const {
        if (sites < 1 || sites > 3) {
            throw std::invalid_argument("FullModelSpec: chain must have 1 to 3 sites");
        }
        if (!(delta > 0.0) || !std::isfinite(delta)) {
            throw std::invalid_argument("FullModelSpec: delta must be positive");
        }
        if (photon_cutoff < 1) {
            throw std::invalid_argument("FullModelSpec: photon cutoff must be at least 1");
        }
        if (ensemble_size < 1) {
            throw std::invalid_argument("FullModelSpec: ensemble size must be at least 1");
        }
        if (theta.size() != sites) {
            throw std::invalid_argument("FullModelSpec: need one drive phase per site");
        }
        for (double th : theta) {
            if (!std::isfinite(th)) throw std::invalid_argument("FullModelSpec: phase not finite");
        }
        if (!std::isfinite(g) || !std::isfinite(tunneling)) {
            throw std::invalid_argument("FullModelSpec: couplings must be finite");
        }
    }
};

// Named parameter point used throughout: g/2π = 8 MHz, T/2π = 4 MHz,
// δ/2π = 40 MHz, giving J/2π = T(g/2δ)² = 0.04 MHz.
inline FullModelSpec reference_preset() {
    FullModelSpec s;
    s.sites = 2;
    s.g = 8.0;
    s.tunneling = 4.0;
    s.delta = 40.0;
    s.theta = {0.0, 0.0};
    return s;
}

struct DressedBasis {
    // columns are |−⟩ and |+⟩ expressed in {|g⟩, |e⟩}
    std::array<std::array<Complex, 2>, 2> matrix;
    double splitting;  // energies ∓Ω/2 for |∓⟩
};

// |±⟩ = (±e^{iθ}|e⟩ + |g⟩)/√2; the change of basis is exactly unitary.
inline DressedBasis dressed_states(double rabi, double theta) {
    if (!(rabi > 0.0)) throw std::invalid_argument("dressed_states: Rabi frequency must be positive");
    const double inv = 1.0 / std::numbers::sqrt2;
    const Complex phase = std::polar(1.0, theta);
    DressedBasis d;
    d.matrix[0][0] = inv;           // ⟨g|−⟩
    d.matrix[0][1] = inv;           // ⟨g|+⟩
    d.matrix[1][0] = -phase * inv;  // ⟨e|−⟩
    d.matrix[1][1] = phase * inv;   // ⟨e|+⟩
    d.splitting = rabi / 2.0;
    return d;
}

// Deterministic basis enumeration for the micro chain: per site the local
// state is spin·(cutoff+1) + n_photons, sites combined mixed-radix with site
// 0 slowest.
struct MicroBasis {
    std::size_t sites;
    std::size_t cutoff;

    std::size_t local_dim() const { return 2 * (cutoff + 1); }
    std::size_t size() const {
        std::size_t d = 1;
        for (std::size_t s = 0; s < sites; ++s) d *= local_dim();
        return d;
    }
    std::size_t local(std::size_t state, std::size_t site) const {
        std::size_t rest = state;
        for (std::size_t s = sites; s-- > site + 1;) rest /= local_dim();
        return rest % local_dim();
    }
    std::size_t spin(std::size_t state, std::size_t site) const {
        return local(state, site) / (cutoff + 1);
    }
    std::size_t photons(std::size_t state, std::size_t site) const {
        return local(state, site) % (cutoff + 1);
    }
    std::size_t with_local(std::size_t state, std::size_t site, std::size_t value) const {
        std::size_t stride = 1;
        for (std::size_t s = sites; s-- > site + 1;) stride *= local_dim();
        const std::size_t old = local(state, site);
        return state + (value - old) * stride;
    }
    // conserved charge: photons − spin excitations
    long charge(std::size_t state) const {
        long c = 0;
        for (std::size_t s = 0; s < sites; ++s) {
            c += static_cast<long>(photons(state, s)) - static_cast<long>(spin(state, s));
        }
        return c;
    }
    // index of the state with one spin excitation at `site`, no photons
    std::size_t spin_excitation(std::size_t site) const {
        std::size_t state = 0;
        std::size_t stride = 1;
        for (std::size_t s = sites; s-- > 0;) {
            if (s == site) state += (cutoff + 1) * stride;
            stride *= local_dim();
        }
        return state;
    }
};

// Time-independent micro Hamiltonian in the frame where a spin excitation
// costs zero and a photon costs +δ:
//   H = δ Σ_p b†_p b_p − T Σ_p (b†_{p+1} b_p + H.C.)
//       − Σ_p (g/2)(e^{−iθ_p} b†_p σ⁺_p + H.C.)
inline HermitianMatrix build_micro_hamiltonian(const FullModelSpec& spec) {
    spec.validate();
    const MicroBasis basis{spec.sites, spec.photon_cutoff};
    const std::size_t dim = basis.size();
    HermitianMatrix H(dim);

    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (std::size_t p = 0; p < spec.sites; ++p) {
            diag += spec.delta * static_cast<double>(basis.photons(s, p));
        }
        H.at(s, s) = diag;

        for (std::size_t p = 0; p + 1 < spec.sites; ++p) {
            const std::size_t np = basis.photons(s, p);
            const std::size_t nq = basis.photons(s, p + 1);
            if (np >= 1 && nq < spec.photon_cutoff) {
                // b†_{p+1} b_p
                std::size_t t = basis.with_local(s, p, basis.spin(s, p) * (spec.photon_cutoff + 1) + (np - 1));
                t = basis.with_local(t, p + 1, basis.spin(s, p + 1) * (spec.photon_cutoff + 1) + (nq + 1));
                const double amp = -spec.tunneling * std::sqrt(static_cast<double>(np)) *
                                   std::sqrt(static_cast<double>(nq + 1));
                H.at(t, s) += amp;
                H.at(s, t) += amp;
            }
        }
        for (std::size_t p = 0; p < spec.sites; ++p) {
            const std::size_t np = basis.photons(s, p);
            if (basis.spin(s, p) == 0 && np < spec.photon_cutoff) {
                // b†_p σ⁺_p
                const std::size_t t =
                    basis.with_local(s, p, 1 * (spec.photon_cutoff + 1) + (np + 1));
                const Complex amp = -(spec.g / 2.0) * std::polar(1.0, -spec.theta[p]) *
                                    std::sqrt(static_cast<double>(np + 1));
                H.at(t, s) += amp;
                H.at(s, t) += std::conj(amp);
            }
        }
    }
    return H;
}

enum class ValidationMethod { SchurComplement, Dynamics };

struct ValidatorResult {
    Complex j_effective{};
    Complex j_predicted{};  // T·(g/2δ)²·e^{i(θ₁−θ₂)}
    double relative_error{0.0};
    ValidationMethod method{ValidationMethod::SchurComplement};
    double g_over_delta{0.0};
    double t_over_delta{0.0};
};

namespace detail {

inline Complex predicted_hopping(const FullModelSpec& spec) {
    const double mag = spec.tunneling * (spec.g / (2.0 * spec.delta)) * (spec.g / (2.0 * spec.delta));
    return mag * std::polar(1.0, spec.theta[0] - spec.theta[1]);
}

}  // namespace detail

// Effective hopping between the two single-excitation states by exact Schur
// complement over the photon-carrying states of the same charge sector:
//   H_eff = H_SS − H_SP (H_PP − E₀)⁻¹ H_PS  at the S reference energy E₀ = 0.
// A singular (H_PP − E₀) means δ sits on a photon-band resonance.
inline ValidatorResult schur_effective_hopping(const FullModelSpec& spec) {
    spec.validate();
    if (spec.sites != 2) {
        throw std::invalid_argument("schur_effective_hopping: needs a two-site chain");
    }
    const HermitianMatrix H = build_micro_hamiltonian(spec);
    const MicroBasis basis{spec.sites, spec.photon_cutoff};

    const std::array<std::size_t, 2> s_states{basis.spin_excitation(0), basis.spin_excitation(1)};
    std::vector<std::size_t> p_states;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        if (basis.charge(s) != -1) continue;
        if (s == s_states[0] || s == s_states[1]) continue;
        p_states.push_back(s);
    }
    const std::size_t np = p_states.size();

    std::vector<Complex> hpp(np * np);
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t b = 0; b < np; ++b) {
            hpp[a * np + b] = H.at(p_states[a], p_states[b]);  // E₀ = 0 already subtracted
        }
    }
    std::vector<Complex> hps(np * 2);
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t c = 0; c < 2; ++c) {
            hps[a * 2 + c] = H.at(p_states[a], s_states[c]);
        }
    }
    try {
        detail::solve_linear(hpp, np, hps, 2, "schur_effective_hopping");
    } catch (const std::runtime_error&) {
        throw std::runtime_error(
            "schur_effective_hopping: photon block is resonant (delta too small)");
    }

    std::array<std::array<Complex, 2>, 2> heff{};
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            Complex acc = H.at(s_states[r], s_states[c]);
            for (std::size_t a = 0; a < np; ++a) {
                acc -= H.at(s_states[r], p_states[a]) * hps[a * 2 + c];
            }
            heff[r][c] = acc;
        }
    }

    ValidatorResult res;
    res.method = ValidationMethod::SchurComplement;
    res.j_effective = -heff[1][0];  // H_eff = E_stark·1 − (J|2⟩⟨1| + H.C.)
    res.j_predicted = detail::predicted_hopping(spec);
    res.relative_error = std::abs(res.j_effective - res.j_predicted) / std::abs(res.j_predicted);
    res.g_over_delta = spec.g / spec.delta;
    res.t_over_delta = spec.tunneling / spec.delta;
    return res;
}

// Effective hopping read off the coherent transfer dynamics: the overlap
// c(t) = ⟨2|e^{−iHt}|1⟩ first peaks at t* = π/(2|J|), and there
// c(t*) = i·e^{−iE₀t*}·e^{i·arg J} with E₀ the centre of the hopping doublet.
inline ValidatorResult dynamics_effective_hopping(const FullModelSpec& spec) {
    spec.validate();
    if (spec.sites != 2) {
        throw std::invalid_argument("dynamics_effective_hopping: needs a two-site chain");
    }
    const HermitianMatrix H = build_micro_hamiltonian(spec);
    const MicroBasis basis{spec.sites, spec.photon_cutoff};

    std::vector<std::size_t> sector;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        if (basis.charge(s) == -1) sector.push_back(s);
    }
    HermitianMatrix Hs(sector.size());
    for (std::size_t a = 0; a < sector.size(); ++a) {
        for (std::size_t b = 0; b < sector.size(); ++b) {
            Hs.at(a, b) = H.at(sector[a], sector[b]);
        }
    }
    const EigenDecomposition dec = eigh(Hs);

    std::size_t i1 = 0;
    std::size_t i2 = 0;
    for (std::size_t a = 0; a < sector.size(); ++a) {
        if (sector[a] == basis.spin_excitation(0)) i1 = a;
        if (sector[a] == basis.spin_excitation(1)) i2 = a;
    }

    const auto transfer = [&](double t) {
        Complex c{};
        for (std::size_t k = 0; k < dec.dim; ++k) {
            const Complex* v = dec.eigenvector(k);
            c += std::polar(1.0, -dec.eigenvalues[k] * t) * v[i2] * std::conj(v[i1]);
        }
        return c;
    };

    // dense scan up to slightly past the predicted quarter period, then a
    // golden-section refinement of the |c| maximum
    const double j_guess = std::abs(detail::predicted_hopping(spec));
    const double t_max = 1.25 * std::numbers::pi / (2.0 * j_guess);
    const std::size_t samples = 2048;
    double best_t = t_max / samples;
    double best = -1.0;
    for (std::size_t k = 1; k <= samples; ++k) {
        const double t = t_max * static_cast<double>(k) / samples;
        const double v = std::abs(transfer(t));
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_t - t_max / samples;
    double b = best_t + t_max / samples;
    for (int it = 0; it < 60; ++it) {
        const double x1 = b - gr * (b - a);
        const double x2 = a + gr * (b - a);
        if (std::abs(transfer(x1)) < std::abs(transfer(x2))) {
            a = x1;
        } else {
            b = x2;
        }
    }
    const double t_peak = 0.5 * (a + b);

    const double e0 = 0.5 * (dec.eigenvalues[0] + dec.eigenvalues[1]);
    const Complex c_peak = transfer(t_peak);
    const double mag = std::numbers::pi / (2.0 * t_peak);
    const double phase =
        std::arg(c_peak * std::polar(1.0, e0 * t_peak) / Complex(0.0, 1.0));

    ValidatorResult res;
    res.method = ValidationMethod::Dynamics;
    res.j_effective = std::polar(mag, phase);
    res.j_predicted = detail::predicted_hopping(spec);
    res.relative_error = std::abs(res.j_effective - res.j_predicted) / std::abs(res.j_predicted);
    res.g_over_delta = spec.g / spec.delta;
    res.t_over_delta = spec.tunneling / spec.delta;
    return res;
}

// Holstein-Primakoff check: the collective-spin hopping Hamiltonian with N
// spins per site, restricted to the symmetric (bright) single-excitation
// states, must equal the bosonic lattice Hamiltonian with J = N·J′ exactly.
// Returns the largest entrywise deviation.  spec.hopping plays the role of
// the per-spin amplitude J′.
inline double hp_equivalence(std::size_t N, const LatticeSpec& spec, const GaugeConfig& gauge) {
    spec.validate();
    gauge.validate();
    if (N < 1) throw std::invalid_argument("hp_equivalence: N must be at least 1");

    const std::size_t nsites = spec.sites();
    const std::vector<Link> links = lattice_links(spec, gauge);

    // Full single-excitation spin space: one excited spin j ∈ [0, N) at one
    // site; S̃⁺_i S̃⁻_j connects every spin of site j to every spin of site i.
    const std::size_t dim = nsites * N;
    std::vector<Complex> hspin(dim * dim);
    for (const Link& link : links) {
        for (std::size_t a = 0; a < N; ++a) {
            for (std::size_t b = 0; b < N; ++b) {
                hspin[(link.from * N + a) * dim + (link.to * N + b)] += link.amplitude;
                hspin[(link.to * N + b) * dim + (link.from * N + a)] +=
                    std::conj(link.amplitude);
            }
        }
    }

    // project onto the bright states |i⟩ = N^{-1/2} Σ_j |i, j⟩
    HermitianMatrix bright(nsites);
    for (std::size_t i = 0; i < nsites; ++i) {
        for (std::size_t j = 0; j < nsites; ++j) {
            Complex acc{};
            for (std::size_t a = 0; a < N; ++a) {
                for (std::size_t b = 0; b < N; ++b) {
                    acc += hspin[(i * N + a) * dim + (j * N + b)];
                }
            }
            bright.at(i, j) = acc / static_cast<double>(N);
        }
    }

    LatticeSpec boson = spec;
    boson.hopping = static_cast<double>(N) * spec.hopping;
    const HermitianMatrix HB = build_hamiltonian(boson, gauge);

    double worst = 0.0;
    for (std::size_t i = 0; i < nsites; ++i) {
        for (std::size_t j = 0; j < nsites; ++j) {
            worst = std::max(worst, std::abs(bright.at(i, j) - HB.at(i, j)));
        }
    }
    return worst;
}

}  // namespace hof
