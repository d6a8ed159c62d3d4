#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hhed/config.hpp"
#include "hhed/error.hpp"
#include "hhed/model.hpp"

using namespace hhed;

namespace {

RealMatrix chain_t(int n, double t0) {
  RealMatrix t = RealMatrix::Zero(n, n);
  for (int x = 0; x + 1 < n; ++x) t(x, x + 1) = t(x + 1, x) = t0;
  return t;
}

std::vector<std::string> names(int n) {
  std::vector<std::string> s;
  for (int i = 0; i < n; ++i) s.push_back("s" + std::to_string(i));
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(BuildModel, ValidChainGetsAlternatingSublattices) {
  const auto m = build_model(names(4), std::nullopt, chain_t(4, -1), RealMatrix::Identity(4, 4),
                             RealMatrix::Zero(4, 4), 1.0);
  ASSERT_EQ(m.sublattice.size(), 4u);
  EXPECT_EQ(m.sublattice[0], Sublattice::A);
  EXPECT_EQ(m.sublattice[1], Sublattice::B);
  EXPECT_EQ(m.sublattice[2], Sublattice::A);
  EXPECT_EQ(m.sublattice[3], Sublattice::B);
  EXPECT_DOUBLE_EQ(m.expected_total_spin(), 0.0);
}

TEST(BuildModel, Errors) {
  const RealMatrix z = RealMatrix::Zero(2, 2);
  RealMatrix asym = chain_t(2, -1);
  asym(0, 1) = -0.5;
  EXPECT_EQ(code_of([&] { build_model(names(2), std::nullopt, asym, z, z, 1.0); }), ErrorCode::AsymmetricMatrix);
  EXPECT_EQ(code_of([&] { build_model(names(2), std::nullopt, chain_t(2, -1), z, z, 0.0); }),
            ErrorCode::NonPositiveOmega);
  EXPECT_EQ(code_of([&] { build_model(names(2), std::nullopt, chain_t(2, -1), RealMatrix::Zero(3, 3), z, 1.0); }),
            ErrorCode::ShapeMismatch);
  // Same-sublattice bond in a proposed coloring.
  EXPECT_EQ(code_of([&] {
              build_model(names(2), std::vector{Sublattice::A, Sublattice::A}, chain_t(2, -1), z, z, 1.0);
            }),
            ErrorCode::SameSublatticeHopping);
  RealMatrix loop = chain_t(2, -1);
  loop(0, 0) = 1.0;
  EXPECT_EQ(code_of([&] { build_model(names(2), std::nullopt, loop, z, z, 1.0); }), ErrorCode::SameSublatticeHopping);
  // Triangle.
  RealMatrix tri = RealMatrix::Constant(3, 3, -1.0);
  tri.diagonal().setZero();
  EXPECT_EQ(code_of([&] { build_model(names(3), std::nullopt, tri, RealMatrix::Zero(3, 3), RealMatrix::Zero(3, 3), 1.0); }),
            ErrorCode::OddCycle);
  // Two disconnected dimers.
  RealMatrix two = RealMatrix::Zero(4, 4);
  two(0, 1) = two(1, 0) = two(2, 3) = two(3, 2) = -1.0;
  EXPECT_EQ(code_of([&] { build_model(names(4), std::nullopt, two, RealMatrix::Zero(4, 4), RealMatrix::Zero(4, 4), 1.0); }),
            ErrorCode::DisconnectedLattice);
  EXPECT_FALSE(is_connected(two));
}

TEST(SumRule, ColumnSums) {
  RealMatrix g(2, 2);
  g << 0.5, 0.1, 0.1, 0.5;
  EXPECT_TRUE(check_phonon_sum_rule(g).holds);
  g(0, 1) = 0.2;
  g(1, 0) = 0.2;
  g(1, 1) = 0.1;
  const auto r = check_phonon_sum_rule(g);
  EXPECT_FALSE(r.holds);
  EXPECT_DOUBLE_EQ(r.column_sums(0), 0.7);
  EXPECT_DOUBLE_EQ(r.column_sums(1), 0.3);
}

TEST(EffectiveInteraction, MatchesBruteForceSum) {
  RealMatrix u(3, 3), g(3, 3);
  u << 4, 1, 0.5, 1, 4, 1, 0.5, 1, 4;
  g << 1, 0.3, 0, 0.3, 1, 0.2, 0, 0.2, 1;
  const double omega = 2.5;
  const RealMatrix got = effective_interaction(u, g, omega);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      double s = 0.0;
      for (int z = 0; z < 3; ++z) s += g(x, z) * g(y, z);
      EXPECT_NEAR(got(x, y), u(x, y) - 2.0 / omega * s, 1e-15);
    }
  }
}

TEST(Definiteness, Classes) {
  // Onsite U0=4, g0=1, omega=2: U_eff = (4 - 2/2) I = 3 I.
  const auto ring = ring_model(4, -1.0, 4.0, 1.0, 2.0);
  const auto d = definiteness(effective_interaction(ring));
  EXPECT_EQ(d.classification, DefinitenessClass::PositiveDefinite);
  EXPECT_NEAR(d.min_eigenvalue, 3.0, 1e-10);
  RealMatrix psd(2, 2);
  psd << 1, 1, 1, 1;
  EXPECT_EQ(definiteness(psd).classification, DefinitenessClass::PositiveSemidefinite);
  RealMatrix ind(2, 2);
  ind << 1, 2, 2, 1;
  EXPECT_EQ(definiteness(ind).classification, DefinitenessClass::Indefinite);
  EXPECT_NEAR(definiteness(ind).min_eigenvalue, -1.0, 1e-14);
  EXPECT_EQ(to_string(DefinitenessClass::PositiveDefinite), "PD");
}

TEST(TorusLattice, CoordinatesAndBonds) {
  TorusLattice lat(1, 2);
  ASSERT_EQ(lat.size(), 4u);
  EXPECT_EQ(lat.coords(0)[0], -1);
  EXPECT_EQ(lat.coords(3)[0], 2);
  EXPECT_EQ(lat.bonds().size(), 4u);
  EXPECT_EQ(lat.negate(lat.index_of({1, 0, 0})), lat.index_of({-1, 0, 0}));
  EXPECT_EQ(lat.negate(lat.index_of({2, 0, 0})), lat.index_of({2, 0, 0}));
  TorusLattice sq(2, 2);
  EXPECT_EQ(sq.size(), 16u);
  EXPECT_EQ(sq.bonds().size(), 32u);
  const auto sub = sq.sublattices();
  for (const auto& [x, y] : sq.bonds()) EXPECT_NE(sub[x], sub[y]);
  // Two-site ring: the forward and backward bond coincide.
  EXPECT_EQ(TorusLattice(1, 1).bonds().size(), 1u);
}

TEST(FourierModel, ConstantSamplesGiveOnsiteCouplings) {
  FourierCouplingSpec spec;
  spec.dimension = 1;
  spec.linear_size = 2;
  spec.G.assign(4, 1.0);
  spec.U.assign(4, 4.0);
  const auto f = fourier_model(spec, 2.0);
  EXPECT_TRUE(f.g.isApprox(RealMatrix::Identity(4, 4), 1e-14));
  EXPECT_TRUE(f.U.isApprox(4.0 * RealMatrix::Identity(4, 4), 1e-14));
  for (double u : f.u_eff_k) EXPECT_NEAR(u, 3.0, 1e-15);
}

TEST(FourierModel, InverseTransformOracle) {
  // U(k) = U0 + 2V (cos k1 + cos k2) on the 4x4 torus; couplings are U0 onsite and V on bonds.
  const int L = 2;
  TorusLattice lat(2, L);
  FourierCouplingSpec spec;
  spec.dimension = 2;
  spec.linear_size = L;
  const double u0 = 5.0, v = 0.75;
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const double k1 = std::numbers::pi * lat.coords(k)[0] / L;
    const double k2 = std::numbers::pi * lat.coords(k)[1] / L;
    spec.U.push_back(u0 + 2.0 * v * (std::cos(k1) + std::cos(k2)));
    spec.G.push_back(0.5 + 0.1 * std::cos(k1));
  }
  const auto f = fourier_model(spec, 1.0);
  const auto sub = lat.sublattices();
  std::set<std::pair<std::size_t, std::size_t>> bonds;
  for (const auto& b : lat.bonds()) bonds.insert(b);
  for (std::size_t x = 0; x < lat.size(); ++x) {
    for (std::size_t y = 0; y < lat.size(); ++y) {
      const double expect = x == y ? u0 : bonds.count({std::min(x, y), std::max(x, y)}) ? v : 0.0;
      EXPECT_NEAR(f.U(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)), expect, 1e-13);
      // Direct evaluation of (1/N) sum_k G(k) cos(k.(x-y)).
      double gs = 0.0;
      for (std::size_t k = 0; k < lat.size(); ++k) {
        double arg = 0.0;
        for (int j = 0; j < 2; ++j) arg += std::numbers::pi * lat.coords(k)[j] * (lat.coords(x)[j] - lat.coords(y)[j]) / L;
        gs += spec.G[k] * std::cos(arg);
      }
      EXPECT_NEAR(f.g(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)), gs / lat.size(), 1e-13);
    }
  }
  // Forward transform recovers the samples.
  const auto sym = fourier_symbol(lat, f.U);
  for (std::size_t k = 0; k < lat.size(); ++k) {
    EXPECT_NEAR(sym[k].real(), spec.U[k], 1e-12);
    EXPECT_NEAR(sym[k].imag(), 0.0, 1e-12);
  }
}

TEST(FourierModel, OddSamplesRejected) {
  FourierCouplingSpec spec;
  spec.dimension = 1;
  spec.linear_size = 2;
  TorusLattice lat(1, 2);
  for (std::size_t k = 0; k < 4; ++k) {
    spec.G.push_back(std::sin(std::numbers::pi * lat.coords(k)[0] / 2.0));
    spec.U.push_back(1.0);
  }
  EXPECT_EQ(code_of([&] { fourier_model(spec, 1.0); }), ErrorCode::NonRealResult);
  spec.G.pop_back();
  EXPECT_EQ(code_of([&] { fourier_model(spec, 1.0); }), ErrorCode::ShapeMismatch);
}

TEST(Presets, Geometries) {
  const auto star = star_model(4, -1, 8, 0.5, 1);
  EXPECT_EQ(star.count(Sublattice::A), 3u);
  EXPECT_EQ(star.count(Sublattice::B), 1u);
  EXPECT_DOUBLE_EQ(star.expected_total_spin(), 1.0);
  const auto lieb = lieb_cell_model(1, 2, -1, 4, 0, 1);
  EXPECT_EQ(lieb.size(), 6u);
  EXPECT_EQ(lieb.count(Sublattice::A), 2u);
  EXPECT_DOUBLE_EQ(lieb.expected_total_spin(), 1.0);
  const auto ring = ring_model(4, -1, 4, 1, 2);
  EXPECT_EQ(ring.count(Sublattice::A), 2u);
  EXPECT_EQ((ring.t.array() != 0.0).count(), 8);
}
