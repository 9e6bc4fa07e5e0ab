#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hof/butterfly.hpp"
#include "oracles.hpp"

using hof::GaugeKind;

namespace {

TEST(Butterfly, ZeroFluxColumnMatchesClosedForm) {
    const auto spec = hof::square_lattice(5);
    const auto bs = hof::butterfly_scan(spec, GaugeKind::Symmetric, 0.0, 1.0, 201);
    ASSERT_EQ(bs.alphas.size(), 201u);
    ASSERT_EQ(bs.energies.size(), 201u);
    EXPECT_DOUBLE_EQ(bs.alphas.front(), 0.0);
    EXPECT_DOUBLE_EQ(bs.alphas.back(), 1.0);

    const auto expect = oracle::zero_field_spectrum(5, 5, 1.0);
    for (std::size_t k = 0; k < expect.size(); ++k) {
        EXPECT_NEAR(bs.energies[0][k], expect[k], 1e-9);
    }
}

TEST(Butterfly, GridStrictlyAscendingAndBounded) {
    const auto spec = hof::square_lattice(4);
    const auto bs = hof::butterfly_scan(spec, GaugeKind::Landau, 0.0, 1.0, 101);
    for (std::size_t i = 1; i < bs.alphas.size(); ++i) {
        EXPECT_LT(bs.alphas[i - 1], bs.alphas[i]);
    }
    for (const auto& column : bs.energies) {
        EXPECT_TRUE(std::is_sorted(column.begin(), column.end()));
        for (const double e : column) {
            EXPECT_TRUE(std::isfinite(e));
            EXPECT_LE(std::fabs(e), 4.0 * spec.hopping);
        }
    }
}

// flux reversal α → 1−α conjugates the Hamiltonian: same sorted spectrum
TEST(Butterfly, SpectrumSymmetricUnderFluxReversal) {
    const auto spec = hof::square_lattice(5);
    for (const double alpha : {0.13, 0.377, 0.249}) {
        const auto a = hof::eigh(hof::build_hamiltonian(spec, {alpha, GaugeKind::Symmetric}));
        const auto b =
            hof::eigh(hof::build_hamiltonian(spec, {1.0 - alpha, GaugeKind::Symmetric}));
        for (std::size_t k = 0; k < a.eigenvalues.size(); ++k) {
            EXPECT_NEAR(a.eigenvalues[k], b.eigenvalues[k], 1e-9);
        }
    }
}

// bipartite lattice: spectrum odd under E → −E
TEST(Butterfly, SpectrumParticleHoleSymmetric) {
    const auto spec = hof::square_lattice(6);
    for (const double alpha : {0.0, 0.21, 0.5}) {
        const auto dec = hof::eigh(hof::build_hamiltonian(spec, {alpha, GaugeKind::Symmetric}));
        const std::size_t n = dec.eigenvalues.size();
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_NEAR(dec.eigenvalues[k], -dec.eigenvalues[n - 1 - k], 1e-9);
        }
    }
}

TEST(Butterfly, SpectrumPeriodicInAlpha) {
    const auto spec = hof::square_lattice(4);
    for (const double alpha : {0.1, 0.37}) {
        const auto a = hof::eigh(hof::build_hamiltonian(spec, {alpha, GaugeKind::Symmetric}));
        const auto b =
            hof::eigh(hof::build_hamiltonian(spec, {alpha + 1.0, GaugeKind::Symmetric}));
        for (std::size_t k = 0; k < a.eigenvalues.size(); ++k) {
            EXPECT_NEAR(a.eigenvalues[k], b.eigenvalues[k], 1e-9);
        }
    }
}

TEST(Butterfly, ParallelMatchesSerialExactly) {
    const auto spec = hof::square_lattice(4);
    const auto serial = hof::butterfly_scan(spec, GaugeKind::Symmetric, 0.0, 1.0, 41, 1);
    const auto parallel = hof::butterfly_scan(spec, GaugeKind::Symmetric, 0.0, 1.0, 41, 4);
    ASSERT_EQ(serial.energies.size(), parallel.energies.size());
    for (std::size_t i = 0; i < serial.energies.size(); ++i) {
        for (std::size_t k = 0; k < serial.energies[i].size(); ++k) {
            EXPECT_EQ(serial.energies[i][k], parallel.energies[i][k]);
        }
    }
}

TEST(GaugeInvariance, ZeroFluxIsExact) {
    EXPECT_EQ(hof::gauge_invariance_check(hof::square_lattice(4), 0.0), 0.0);
}

TEST(GaugeInvariance, KnownCrossingFluxPoints) {
    EXPECT_LE(hof::gauge_invariance_check(hof::square_lattice(5), 1.0 / 3.0), 1e-9);
    EXPECT_LE(hof::gauge_invariance_check(hof::square_lattice(10), 0.181), 1e-9);
}

TEST(GaugeInvariance, RandomPairsProperty) {
    oracle::Rng rng(2024u);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t L = rng.integer(2, 8);
        const double alpha = rng.uniform();
        EXPECT_LE(hof::gauge_invariance_check(hof::square_lattice(L), alpha), 1e-9)
            << "L=" << L << " alpha=" << alpha;
    }
}

TEST(Butterfly, RejectsBadGrids) {
    const auto spec = hof::square_lattice(3);
    EXPECT_THROW(hof::butterfly_scan(spec, GaugeKind::Symmetric, 0.0, 1.0, 1),
                 std::invalid_argument);
    EXPECT_THROW(hof::butterfly_scan(spec, GaugeKind::Symmetric, 1.0, 0.0, 10),
                 std::invalid_argument);
}

}  // namespace
