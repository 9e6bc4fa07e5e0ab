// matrix.hpp — dense complex matrices for single-particle Hamiltonians

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hof {

using Complex = std::complex<double>;

inline constexpr double kHermiticityTol = 1e-12;

// Dense n×n complex matrix, row-major.  The name reflects its role: every
// operator stored in one of these is Hermitian by construction, and routines
// that rely on hermiticity re-check it against kHermiticityTol.
struct HermitianMatrix {
    std::size_t dim{0};
    std::vector<Complex> entries;  // row-major, dim*dim

    HermitianMatrix() = default;

    explicit HermitianMatrix(std::size_t n) : dim(n), entries(n * n) {
        if (n == 0) {
            throw std::invalid_argument("HermitianMatrix: dimension must be positive");
        }
    }

    Complex& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

    // Set a pair of conjugate off-diagonal entries at once.
    void set_pair(std::size_t i, std::size_t j, Complex value) {
        at(i, j) = value;
        at(j, i) = std::conj(value);
    }
};

inline double hermiticity_error(const HermitianMatrix& H) {
    double worst = 0.0;
    for (std::size_t i = 0; i < H.dim; ++i) {
        for (std::size_t j = i; j < H.dim; ++j) {
            worst = std::max(worst, std::abs(H.at(i, j) - std::conj(H.at(j, i))));
        }
    }
    return worst;
}

inline bool is_hermitian(const HermitianMatrix& H, double tol = kHermiticityTol) {
    return hermiticity_error(H) <= tol;
}

inline double trace_real(const HermitianMatrix& H) {
    double t = 0.0;
    for (std::size_t i = 0; i < H.dim; ++i) t += H.at(i, i).real();
    return t;
}

inline double max_abs(const HermitianMatrix& H) {
    double m = 0.0;
    for (const Complex& z : H.entries) m = std::max(m, std::abs(z));
    return m;
}

inline double frobenius_norm(const HermitianMatrix& H) {
    double s = 0.0;
    for (const Complex& z : H.entries) s += std::norm(z);
    return std::sqrt(s);
}

namespace detail {

// Solve A·X = B in place for a dense complex A (column count of B arbitrary).
// Gaussian elimination with partial pivoting; deterministic pivot choice.
// Throws std::runtime_error on a (numerically) singular pivot.
inline void solve_linear(std::vector<Complex> A, std::size_t n,
                         std::vector<Complex>& B, std::size_t ncols,
                         const char* who = "solve_linear") {
    double scale = 0.0;
    for (const Complex& z : A) scale = std::max(scale, std::abs(z));
    const double tiny = std::max(scale, 1.0) * 1e-14;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(A[perm[k] * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double cand = std::abs(A[perm[i] * n + k]);
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best <= tiny) {
            throw std::runtime_error(std::string(who) + ": singular matrix");
        }
        std::swap(perm[k], perm[pivot]);
        const Complex piv = A[perm[k] * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = A[perm[i] * n + k] / piv;
            if (f == Complex{}) continue;
            A[perm[i] * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j) {
                A[perm[i] * n + j] -= f * A[perm[k] * n + j];
            }
            for (std::size_t c = 0; c < ncols; ++c) {
                B[perm[i] * ncols + c] -= f * B[perm[k] * ncols + c];
            }
        }
    }

    // back substitution into a reordered copy
    std::vector<Complex> X(n * ncols);
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t c = 0; c < ncols; ++c) {
            Complex acc = B[perm[ii] * ncols + c];
            for (std::size_t j = ii + 1; j < n; ++j) {
                acc -= A[perm[ii] * n + j] * X[j * ncols + c];
            }
            X[ii * ncols + c] = acc / A[perm[ii] * n + ii];
        }
    }
    B = std::move(X);
}

}  // namespace detail

}  // namespace hof
