// eigh.hpp — full spectral decomposition of dense complex Hermitian matrices
//
// The complex matrix H = A + iB is embedded into the 2n×2n real symmetric
// matrix [[A, −B], [B, A]], which is reduced to tridiagonal form by
// Householder reflections and diagonalized by the implicit-shift QL
// iteration.  Each eigenvalue of H appears twice in the embedding; pairs are
// collapsed back to complex eigenvectors v = x + iy.  Output is fully
// deterministic: eigenvalues ascending, each eigenvector's largest-modulus
// component made real and positive (ties broken by lowest index).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hof/matrix.hpp"

namespace hof {

struct EighConvergenceError : std::runtime_error {
    std::size_t iterations;
    explicit EighConvergenceError(std::size_t iters)
        : std::runtime_error("eigh: QL iteration failed to converge after " +
                             std::to_string(iters) + " iterations"),
          iterations(iters) {}
};

struct EigenDecomposition {
    std::size_t dim{0};
    std::vector<double> eigenvalues;   // ascending
    std::vector<Complex> eigenvectors; // column k contiguous at offset k*dim

    const Complex* eigenvector(std::size_t k) const { return eigenvectors.data() + k * dim; }
    Complex* eigenvector(std::size_t k) { return eigenvectors.data() + k * dim; }
};

namespace detail {

inline constexpr std::size_t kQlMaxIterations = 100;

// Householder reduction of a real symmetric matrix (row-major, in place) to
// tridiagonal form; on return `a` holds the accumulated orthogonal transform.
inline void tridiagonalize(std::vector<double>& a, std::size_t n,
                           std::vector<double>& d, std::vector<double>& e) {
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(a[i * n + k]);
            if (scale == 0.0) {
                e[i] = a[i * n + l];
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                double f = a[i * n + l];
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a[j * n + i] = a[i * n + j] / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a[j * n + k] * a[i * n + k];
                    for (std::size_t k = j + 1; k <= l; ++k) g += a[k * n + j] * a[i * n + k];
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a[i * n + j];
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k) {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += a[i * n + k] * a[k * n + j];
                for (std::size_t k = 0; k < i; ++k) a[k * n + j] -= g * a[k * n + i];
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) a[j * n + i] = a[i * n + j] = 0.0;
    }
}

// Implicit-shift QL iteration on a tridiagonal matrix, rotations accumulated
// into the columns of z.  Throws EighConvergenceError past the iteration cap.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                        std::size_t n, std::vector<double>& z) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor_ = std::numeric_limits<double>::min();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd + floor_) break;
            }
            if (m != l) {
                if (++iter > kQlMaxIterations) throw EighConvergenceError(iter);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool underflow = false;
                for (std::size_t ii = m; ii-- > l;) {
                    double f = s * e[ii];
                    const double b = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0) {
                        d[ii + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z[k * n + ii + 1];
                        z[k * n + ii + 1] = s * z[k * n + ii] + c * f;
                        z[k * n + ii] = c * z[k * n + ii] - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Index the phase convention anchors on: the first component whose modulus
// ties the maximum.  Ties are resolved within a relative band so the choice
// is stable against the rounding of the phase rotation itself (symmetric
// lattices produce exactly tied moduli).
inline std::size_t phase_anchor(const Complex* v, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(v[i]));
    const double cut = best * (1.0 - 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v[i]) >= cut) return i;
    }
    return 0;
}

// Largest-modulus component made real and positive, ties to the lowest index.
inline void fix_phase(Complex* v, std::size_t n) {
    const std::size_t imax = phase_anchor(v, n);
    const double mag = std::abs(v[imax]);
    if (mag == 0.0) return;
    const Complex rot = std::conj(v[imax]) / mag;
    for (std::size_t i = 0; i < n; ++i) v[i] *= rot;
}

}  // namespace detail

// Full decomposition of a complex Hermitian matrix.  Rejects non-Hermitian
// input (entrywise tolerance kHermiticityTol).
inline EigenDecomposition eigh(const HermitianMatrix& H) {
    if (H.dim == 0) throw std::invalid_argument("eigh: empty matrix");
    if (!is_hermitian(H)) {
        throw std::invalid_argument("eigh: input is not Hermitian within tolerance");
    }

    const std::size_t n = H.dim;
    const std::size_t N = 2 * n;

    // real symmetric embedding W = [[A, -B], [B, A]]
    std::vector<double> w(N * N);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = H.at(i, j).real();
            const double im = H.at(i, j).imag();
            w[i * N + j] = re;
            w[i * N + (n + j)] = -im;
            w[(n + i) * N + j] = im;
            w[(n + i) * N + (n + j)] = re;
        }
    }

    std::vector<double> d(N), e(N);
    detail::tridiagonalize(w, N, d, e);
    detail::ql_implicit(d, e, N, w);

    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    EigenDecomposition dec;
    dec.dim = n;
    dec.eigenvalues.resize(n);
    dec.eigenvectors.assign(n * n, Complex{});
    for (std::size_t k = 0; k < n; ++k) {
        dec.eigenvalues[k] = 0.5 * (d[order[2 * k]] + d[order[2 * k + 1]]);
    }

    const auto complexify = [&](std::size_t col, Complex* out) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = Complex(w[i * N + col], w[(n + i) * N + col]);
        }
    };

    // Collapse the doubled spectrum cluster by cluster.  Within an (almost)
    // degenerate cluster the embedding mixes the subspace, so the recovered
    // complex vectors are re-orthonormalized by modified Gram–Schmidt; a
    // candidate that comes out complex-colinear with the vectors already kept
    // is replaced by its pair partner, or failing that by the best remaining
    // column of the cluster.
    double scale = 1.0;
    for (double v : dec.eigenvalues) scale = std::max(scale, std::fabs(v));
    const double cluster_tol = 1e-5 * scale;
    const double indep_tol = 0.25;

    std::vector<Complex> cand(n);
    std::size_t k = 0;
    while (k < n) {
        std::size_t kend = k + 1;
        while (kend < n && dec.eigenvalues[kend] - dec.eigenvalues[kend - 1] <= cluster_tol) {
            ++kend;
        }

        std::vector<std::size_t> cols;
        cols.reserve(2 * (kend - k));
        for (std::size_t j = k; j < kend; ++j) {
            cols.push_back(order[2 * j]);
            cols.push_back(order[2 * j + 1]);
        }
        std::vector<bool> used(cols.size(), false);
        std::size_t kept = 0;

        // residual norm of `v` after projecting out the cluster vectors kept
        // so far (modifies v in place)
        const auto mgs_residual = [&](Complex* v) {
            for (std::size_t j = 0; j < kept; ++j) {
                const Complex* u = dec.eigenvector(k + j);
                Complex proj{};
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(u[i]) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += std::norm(v[i]);
            return std::sqrt(s);
        };
        const auto store = [&](const Complex* v, double r) {
            Complex* out = dec.eigenvector(k + kept);
            for (std::size_t i = 0; i < n; ++i) out[i] = v[i] / r;
            detail::fix_phase(out, n);
            ++kept;
        };

        for (std::size_t j = k; j < kend; ++j) {
            const std::size_t local = 2 * (j - k);
            bool accepted = false;
            for (std::size_t attempt = 0; attempt < 2 && !accepted; ++attempt) {
                const std::size_t ci = local + attempt;
                if (used[ci]) continue;
                complexify(cols[ci], cand.data());
                const double r = mgs_residual(cand.data());
                if (r > indep_tol) {
                    used[ci] = true;
                    store(cand.data(), r);
                    accepted = true;
                }
            }
            if (!accepted) {
                double best_r = -1.0;
                std::size_t best_ci = 0;
                std::vector<Complex> best(n);
                for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                    if (used[ci]) continue;
                    complexify(cols[ci], cand.data());
                    const double r = mgs_residual(cand.data());
                    if (r > best_r) {
                        best_r = r;
                        best_ci = ci;
                        best = cand;
                    }
                }
                if (best_r <= 0.0) {
                    throw std::runtime_error("eigh: degenerate cluster collapse failed");
                }
                used[best_ci] = true;
                store(best.data(), best_r);
            }
        }
        k = kend;
    }

    return dec;
}

struct GroundPair {
    double energy;
    std::vector<Complex> state;
    double gap;
    bool degenerate;
};

inline constexpr double kDegenerateGapTol = 1e-9;

// Lowest eigenpair and the gap to the next level.
inline GroundPair ground_pair(const EigenDecomposition& dec) {
    if (dec.dim < 2) throw std::invalid_argument("ground_pair: need dimension >= 2");
    GroundPair g;
    g.energy = dec.eigenvalues[0];
    g.state.assign(dec.eigenvector(0), dec.eigenvector(0) + dec.dim);
    g.gap = dec.eigenvalues[1] - dec.eigenvalues[0];
    g.degenerate = g.gap < kDegenerateGapTol * std::max(1.0, std::fabs(g.energy));
    return g;
}

}  // namespace hof
