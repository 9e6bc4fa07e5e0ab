#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "hof/momentum.hpp"
#include "oracles.hpp"

using hof::GaugeConfig;
using hof::GaugeKind;
using hof::MomentumSource;

namespace {

const GaugeConfig kSym{0.0, GaugeKind::Symmetric};
constexpr double kPi = std::numbers::pi;

hof::GroundStateRecord eigenstate_record(const hof::LatticeSpec& spec, double alpha,
                                         std::size_t level) {
    const auto dec = hof::eigh(hof::build_hamiltonian(spec, {alpha, GaugeKind::Symmetric}));
    hof::GroundStateRecord rec;
    rec.spec = spec;
    rec.alpha = alpha;
    rec.energy = dec.eigenvalues[level];
    rec.amplitudes.assign(dec.eigenvector(level), dec.eigenvector(level) + dec.dim);
    return rec;
}

TEST(SineTransform, ZeroFluxGroundStateIsTheLowestMode) {
    const auto spec = hof::square_lattice(6);
    const auto rec = hof::ground_state(spec, kSym, 0.0);
    const auto map = hof::sine_transform_2d(rec);
    EXPECT_NEAR(std::abs(map.at(1, 1)), 1.0, 1e-10);
    for (std::size_t m = 1; m <= 6; ++m) {
        for (std::size_t n = 1; n <= 6; ++n) {
            if (m == 1 && n == 1) continue;
            EXPECT_LE(std::abs(map.at(m, n)), 1e-10);
        }
    }
    const auto peaks = hof::find_peaks(map, 1);
    ASSERT_EQ(peaks.size(), 1u);
    EXPECT_EQ(peaks[0].m, 1u);
    EXPECT_EQ(peaks[0].n, 1u);
    EXPECT_NEAR(peaks[0].k_p, kPi / 7.0, 1e-14);
}

TEST(SineTransform, FirstExcitedStateIsASingleHigherMode) {
    const auto spec = hof::square_lattice(5);
    const auto rec = eigenstate_record(spec, 0.0, 1);
    const auto map = hof::sine_transform_2d(rec);
    // the (1,2)/(2,1) level is twofold degenerate; the returned vector lives
    // in that subspace, so all weight sits on those two coefficients
    const double w12 = std::norm(map.at(1, 2));
    const double w21 = std::norm(map.at(2, 1));
    EXPECT_NEAR(w12 + w21, 1.0, 1e-9);
    for (std::size_t m = 1; m <= 5; ++m) {
        for (std::size_t n = 1; n <= 5; ++n) {
            if ((m == 1 && n == 2) || (m == 2 && n == 1)) continue;
            EXPECT_LE(std::abs(map.at(m, n)), 1e-9);
        }
    }
}

TEST(SineTransform, ParsevalForWavefunctionSource) {
    const auto spec = hof::LatticeSpec{5, 7, 1.0};
    const auto rec = hof::ground_state(spec, kSym, 0.37);
    const auto map = hof::sine_transform_2d(rec, MomentumSource::Wavefunction);
    double sum = 0.0;
    for (const auto& c : map.coefficients) sum += std::norm(c);
    EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(SineTransform, RoundTripsThroughTheInverse) {
    const auto spec = hof::square_lattice(6);
    const auto rec = hof::ground_state(spec, kSym, 0.213);
    const auto map = hof::sine_transform_2d(rec);
    const auto back = hof::inverse_sine_transform_2d(map);
    ASSERT_EQ(back.size(), rec.amplitudes.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_NEAR(std::abs(back[i] - rec.amplitudes[i]), 0.0, 1e-10);
    }
}

TEST(FindPeaks, DeterministicAndValidated) {
    const auto spec = hof::square_lattice(8);
    const auto rec = hof::ground_state(spec, kSym, 0.29);
    const auto map = hof::sine_transform_2d(rec);
    const auto a = hof::find_peaks(map, 5);
    const auto b = hof::find_peaks(map, 5);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].m, b[i].m);
        EXPECT_EQ(a[i].n, b[i].n);
        EXPECT_EQ(a[i].magnitude, b[i].magnitude);
    }
    for (std::size_t i = 1; i < a.size(); ++i) {
        EXPECT_GE(a[i - 1].magnitude, a[i].magnitude);
    }
    EXPECT_THROW(hof::find_peaks(map, 0), std::invalid_argument);
}

// Half-flux interference structure on 20×20, probed just below α = 1/2 where
// the ground state is unique.  The wavefunction's sine spectrum concentrates
// on the four zone corners plus the four edge midpoints; the density's
// oscillation wavevectors are differences of those components.
TEST(SineTransform, HalfFluxWavefunctionFingerprint) {
    const auto spec = hof::square_lattice(20);
    const auto rec = hof::ground_state(spec, kSym, 0.499);
    ASSERT_FALSE(rec.degenerate);
    const auto map = hof::sine_transform_2d(rec);
    const auto peaks = hof::find_peaks(map, 8);
    ASSERT_EQ(peaks.size(), 8u);

    const std::set<std::pair<std::size_t, std::size_t>> expected = {
        {1, 1}, {1, 20}, {20, 1}, {20, 20}, {1, 10}, {10, 1}, {20, 10}, {10, 20}};
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& pk : peaks) got.insert({pk.m, pk.n});
    EXPECT_EQ(got, expected);
}

TEST(SineTransform, HalfFluxDensityPeaksAreWavefunctionPeakDifferences) {
    const auto spec = hof::square_lattice(20);
    const auto rec = hof::ground_state(spec, kSym, 0.499);
    const auto wmap = hof::sine_transform_2d(rec, MomentumSource::Wavefunction);
    const auto dmap = hof::sine_transform_2d(rec, MomentumSource::Density);
    const auto wpeaks = hof::find_peaks(wmap, 8);
    const auto dpeaks = hof::find_peaks(dmap, 4);
    ASSERT_EQ(dpeaks.size(), 4u);

    const double spacing = kPi / 21.0;
    const auto fold = [](double k) {
        k = std::fabs(std::fmod(std::fabs(k), 2.0 * kPi));
        return k > kPi ? 2.0 * kPi - k : k;
    };
    // density oscillations live at ±k_i ± k_j of the wavefunction components;
    // grid quantization allows one grid spacing per axis
    for (const auto& dp : dpeaks) {
        double best = 1e9;
        for (const auto& a : wpeaks) {
            for (const auto& b : wpeaks) {
                for (const double s1 : {1.0, -1.0}) {
                    for (const double s2 : {1.0, -1.0}) {
                        const double kp = fold(a.k_p + s1 * b.k_p);
                        const double kq = fold(a.k_q + s2 * b.k_q);
                        best = std::min(best, std::max(std::fabs(dp.k_p - kp),
                                                       std::fabs(dp.k_q - kq)));
                    }
                }
            }
        }
        EXPECT_LE(best, spacing * 1.0001)
            << "density peak (" << dp.m << "," << dp.n << ") has no wavefunction difference";
    }
}

}  // namespace
