// momentum.hpp — sine-basis momentum maps of lattice states and peak search
//
// The type-I discrete sine transform is the natural momentum basis for a
// lattice with open boundaries: the basis functions vanish at the walls and
// at α = 0 they are exactly the Hamiltonian's eigenstates.  The orthonormal
// form used here is involutive, so the same routine is its own inverse.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hof/ground_state.hpp"

namespace hof {

enum class MomentumSource { Wavefunction, Density };

struct MomentumMap {
    std::size_t rows{0};  // momentum index m ∈ [1, rows] along p
    std::size_t cols{0};
    MomentumSource source{MomentumSource::Wavefunction};
    std::vector<Complex> coefficients;  // row-major over (m, n)

    const Complex& at(std::size_t m, std::size_t n) const {
        return coefficients[(m - 1) * cols + (n - 1)];
    }
    double momentum_p(std::size_t m) const {
        return std::numbers::pi * static_cast<double>(m) / (static_cast<double>(rows) + 1.0);
    }
    double momentum_q(std::size_t n) const {
        return std::numbers::pi * static_cast<double>(n) / (static_cast<double>(cols) + 1.0);
    }
};

namespace detail {

// Orthonormal DST-I kernel, S(m, p) = √(2/(L+1))·sin(mpπ/(L+1)); symmetric
// and involutive (S·S = 1).
inline std::vector<double> dst_kernel(std::size_t L) {
    const double pi = std::numbers::pi;
    const double norm = std::sqrt(2.0 / (static_cast<double>(L) + 1.0));
    std::vector<double> S(L * L);
    for (std::size_t m = 1; m <= L; ++m) {
        for (std::size_t p = 1; p <= L; ++p) {
            S[(m - 1) * L + (p - 1)] =
                norm * std::sin(pi * static_cast<double>(m) * static_cast<double>(p) /
                                (static_cast<double>(L) + 1.0));
        }
    }
    return S;
}

// C = S_rows · data · S_colsᵀ for row-major data
inline std::vector<Complex> dst_2d(const std::vector<Complex>& data, std::size_t rows,
                                   std::size_t cols) {
    const std::vector<double> Sp = dst_kernel(rows);
    const std::vector<double> Sq = dst_kernel(cols);
    std::vector<Complex> tmp(rows * cols);
    for (std::size_t m = 0; m < rows; ++m) {
        for (std::size_t q = 0; q < cols; ++q) {
            Complex acc{};
            for (std::size_t p = 0; p < rows; ++p) {
                acc += Sp[m * rows + p] * data[p * cols + q];
            }
            tmp[m * cols + q] = acc;
        }
    }
    std::vector<Complex> out(rows * cols);
    for (std::size_t m = 0; m < rows; ++m) {
        for (std::size_t n = 0; n < cols; ++n) {
            Complex acc{};
            for (std::size_t q = 0; q < cols; ++q) {
                acc += tmp[m * cols + q] * Sq[n * cols + q];
            }
            out[m * cols + n] = acc;
        }
    }
    return out;
}

}  // namespace detail

// Transform a ground-state record to momentum space, either the wavefunction
// itself (Parseval holds) or its site density |ψ|².
inline MomentumMap sine_transform_2d(const GroundStateRecord& state,
                                     MomentumSource source = MomentumSource::Wavefunction) {
    MomentumMap map;
    map.rows = state.spec.rows;
    map.cols = state.spec.cols;
    map.source = source;
    if (source == MomentumSource::Wavefunction) {
        map.coefficients = detail::dst_2d(state.amplitudes, map.rows, map.cols);
    } else {
        std::vector<Complex> density(state.amplitudes.size());
        for (std::size_t i = 0; i < density.size(); ++i) {
            density[i] = std::norm(state.amplitudes[i]);
        }
        map.coefficients = detail::dst_2d(density, map.rows, map.cols);
    }
    return map;
}

// Transform back to site amplitudes (the orthonormal DST-I is involutive).
inline std::vector<Complex> inverse_sine_transform_2d(const MomentumMap& map) {
    return detail::dst_2d(map.coefficients, map.rows, map.cols);
}

struct Peak {
    std::size_t m{0};
    std::size_t n{0};
    double k_p{0.0};
    double k_q{0.0};
    double magnitude{0.0};
};

// Top-`count` local maxima of |coefficient| on the momentum grid (4-neighbour
// rule, grid edges compare against existing neighbours only).  Sorted by
// magnitude descending, ties by ascending (m, n).
inline std::vector<Peak> find_peaks(const MomentumMap& map, std::size_t count) {
    if (count < 1) throw std::invalid_argument("find_peaks: count must be at least 1");
    const std::size_t R = map.rows;
    const std::size_t C = map.cols;
    std::vector<double> mag(R * C);
    for (std::size_t i = 0; i < R * C; ++i) mag[i] = std::abs(map.coefficients[i]);

    std::vector<Peak> peaks;
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j) {
            const double v = mag[i * C + j];
            const bool is_max = (i == 0 || mag[(i - 1) * C + j] <= v) &&
                                (i + 1 >= R || mag[(i + 1) * C + j] <= v) &&
                                (j == 0 || mag[i * C + (j - 1)] <= v) &&
                                (j + 1 >= C || mag[i * C + (j + 1)] <= v);
            if (is_max) {
                Peak pk;
                pk.m = i + 1;
                pk.n = j + 1;
                pk.k_p = map.momentum_p(pk.m);
                pk.k_q = map.momentum_q(pk.n);
                pk.magnitude = v;
                peaks.push_back(pk);
            }
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
        if (a.m != b.m) return a.m < b.m;
        return a.n < b.n;
    });
    if (peaks.size() > count) peaks.resize(count);
    return peaks;
}

}  // namespace hof
