#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include <unsupported/Eigen/KroneckerProduct>

#include "hhed/config.hpp"
#include "hhed/error.hpp"
#include "hhed/ops.hpp"

using namespace hhed;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

ModelSpec dimer(double t0, double u0, double g0, double omega) { return chain_model(2, t0, u0, g0, omega); }

Eigen::VectorXd dense_spectrum(const SparseOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
  return es.eigenvalues();
}

/// Dense Jordan-Wigner annihilator of mode m among `modes`: Z x ... x Z x a x I x ... x I.
Eigen::MatrixXd jw_annihilator(int m, int modes) {
  Eigen::Matrix2d a, z, id;
  a << 0, 1, 0, 0;
  z << 1, 0, 0, -1;
  id.setIdentity();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int k = 0; k < modes; ++k) {
    const Eigen::Matrix2d& f = k < m ? z : (k == m ? a : id);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

/// Index of a configuration in the Kronecker ordering (mode 0 most significant).
std::size_t kron_index(const FermionConfig& c, int n) {
  const int modes = 2 * n;
  std::size_t idx = 0;
  for (int m = 0; m < modes; ++m) {
    const bool occ = m < n ? (c.up >> m) & 1u : (c.dn >> (m - n)) & 1u;
    if (occ) idx |= std::size_t{1} << (modes - 1 - m);
  }
  return idx;
}

}  // namespace

TEST(Fermions, SignExamples) {
  const auto one = SectorBasis::full_fock(1, 0);
  const auto c = annihilator(0, Spin::Up, one, one);
  const auto src = one.find_fermion({1, 0});
  const auto dst = one.find_fermion({0, 0});
  EXPECT_EQ(c.at(dst, src), Complex(1.0));

  const auto two = SectorBasis::full_fock(2, 0);
  const auto c2 = annihilator(1, Spin::Up, two, two);
  EXPECT_EQ(c2.at(two.find_fermion({1, 0}), two.find_fermion({3, 0})), Complex(-1.0));
}

TEST(Fermions, MatchesKroneckerOracle) {
  for (int n = 1; n <= 3; ++n) {
    const auto b = SectorBasis::full_fock(n, 0);
    for (int x = 0; x < n; ++x) {
      for (Spin s : {Spin::Up, Spin::Down}) {
        const Eigen::MatrixXcd got = annihilator(x, s, b, b).to_dense();
        const Eigen::MatrixXd ref = jw_annihilator(s == Spin::Up ? x : n + x, 2 * n);
        for (std::size_t i = 0; i < b.fermion_count(); ++i) {
          for (std::size_t j = 0; j < b.fermion_count(); ++j) {
            const double r = ref(static_cast<Eigen::Index>(kron_index(b.fermion(i), n)),
                                 static_cast<Eigen::Index>(kron_index(b.fermion(j), n)));
            EXPECT_EQ(got(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), Complex(r));
          }
        }
      }
    }
  }
}

TEST(Fermions, AnticommutationOnFullFock) {
  for (int n = 1; n <= 3; ++n) {
    const auto b = SectorBasis::full_fock(n, 0);
    std::vector<SparseOperator> c;
    for (Spin s : {Spin::Up, Spin::Down}) {
      for (int x = 0; x < n; ++x) c.push_back(annihilator(x, s, b, b));
    }
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(b.dimension(), b.dimension());
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        const Eigen::MatrixXcd ac = anticommutator(c[i], c[j].adjoint()).to_dense();
        EXPECT_LE(max_abs(ac - (i == j ? id : Eigen::MatrixXcd::Zero(id.rows(), id.cols()))), 1e-13);
        EXPECT_LE(max_abs(anticommutator(c[i], c[j]).to_dense()), 1e-13);
      }
    }
    const auto cr = creator(0, Spin::Up, b, b);
    EXPECT_LE(max_abs(cr.to_dense() - c[0].adjoint().to_dense()), 0.0);
  }
}

TEST(Fermions, SectorMismatch) {
  const auto a = SectorBasis::sector(2, {2, 0, 1});
  const auto b = SectorBasis::sector(2, {1, 1, 0});
  try {
    annihilator(0, Spin::Down, a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SectorMismatch);
  }
  const auto c = SectorBasis::sector(2, {1, -1, 1});
  EXPECT_THROW(annihilator(0, Spin::Down, a, c), Error);
  EXPECT_NO_THROW(annihilator(0, Spin::Up, a, c));
}

TEST(Phonons, TruncatedCommutator) {
  const int cutoff = 3;
  const auto b = SectorBasis::sector(2, {2, 0, cutoff});
  for (int x = 0; x < 2; ++x) {
    const auto bx = phonon_annihilator(x, b);
    const auto bdx = phonon_creator(x, b);
    EXPECT_LE(max_abs(bdx.to_dense() - bx.adjoint().to_dense()), 0.0);
    for (int y = 0; y < 2; ++y) {
      const Eigen::MatrixXcd com = commutator(bx, y == x ? bdx : phonon_creator(y, b)).to_dense();
      for (std::size_t i = 0; i < b.dimension(); ++i) {
        for (std::size_t j = 0; j < b.dimension(); ++j) {
          const bool top = b.phonon_total(b.split(i).second) == cutoff || b.phonon_total(b.split(j).second) == cutoff;
          if (top) continue;
          const Complex expect = (i == j && x == y) ? 1.0 : 0.0;
          EXPECT_LE(std::abs(com(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expect), 1e-13);
        }
      }
    }
  }
  // Vacuum: <0| b b^dag |0> = 1.
  const auto bb = multiply(phonon_annihilator(0, b), phonon_creator(0, b));
  EXPECT_NEAR(bb.at(b.index(0, 0), b.index(0, 0)).real(), 1.0, 1e-15);
  // b maps n=1 to n=0 with amplitude 1.
  const std::vector<int> one{1, 0};
  EXPECT_EQ(phonon_annihilator(0, b).at(b.index(0, 0), b.index(0, b.find_phonon(one))), Complex(1.0));
}

TEST(Hamiltonian, TwoSiteClosedForm) {
  const auto m = dimer(-1, 4, 0, 1);
  const auto b = SectorBasis::sector(2, {2, 0, 0});
  const auto h = assemble_hh_hamiltonian(m, b);
  EXPECT_TRUE(h.hermitian());
  // Singlet block of dimension 3: U0/2 - sqrt((U0/2)^2 + 4 t^2).
  EXPECT_NEAR(dense_spectrum(h)(0), 2.0 - std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(dense_spectrum(assemble_hubbard(m, b))(0), 2.0 - std::sqrt(8.0), 1e-12);
  // U0 = 0: free fermions, E0 = -2|t|.
  EXPECT_NEAR(dense_spectrum(assemble_hubbard(dimer(-1, 0, 0, 1), b))(0), -2.0, 1e-12);
}

TEST(Hamiltonian, DecoupledPhonons) {
  const auto m = dimer(-1, 4, 0, 1.5);
  const auto b = SectorBasis::sector(2, {2, 0, 3});
  const auto h = assemble_hh_hamiltonian(m, b);
  const auto expect = add(assemble_hubbard(m, b), phonon_number(b), 1.0, 1.5);
  EXPECT_LE(max_abs(h.to_dense() - expect.to_dense()), 1e-14);
  EXPECT_LE(max_abs(commutator(h, phonon_number(b)).to_dense()), 1e-13);
}

TEST(Hamiltonian, CoulombFormsDifferByConstant) {
  RealMatrix u(2, 2);
  u << 4, 1, 1, 4;
  const auto m = build_model({"a", "b"}, std::nullopt, (RealMatrix(2, 2) << 0, -1, -1, 0).finished(), u,
                             RealMatrix::Zero(2, 2), 1.0);
  ModelSpec no_hop = m;
  no_hop.t.setZero();
  for (int two_m : {-2, 0, 2}) {
    const auto b = SectorBasis::sector(2, {2, two_m, 0});
    const Eigen::MatrixXcd diff = assemble_hubbard(no_hop, b).to_dense() - assemble_standard_coulomb(m, b).to_dense();
    const Complex c = diff(0, 0);
    EXPECT_LE(max_abs(diff - c * Eigen::MatrixXcd::Identity(diff.rows(), diff.cols())), 1e-14);
  }
}

TEST(Hamiltonian, SymmetriesHold) {
  std::vector<ModelSpec> models{dimer(-1, 4, 0.5, 2), star_model(4, -1, 8, 0.5, 1), ring_model(4, -1, 4, 1, 2)};
  RealMatrix g(2, 2);
  g << 0.4, 0.1, 0.1, 0.4;
  models.push_back(build_model({"a", "b"}, std::nullopt, (RealMatrix(2, 2) << 0, -0.7, -0.7, 0).finished(),
                               (RealMatrix(2, 2) << 3, 0.5, 0.5, 3).finished(), g, 1.3));
  for (const auto& m : models) {
    const int n = static_cast<int>(m.size());
    for (int two_m = -n; two_m <= n; two_m += 2) {
      const auto b = SectorBasis::sector(n, {n, two_m, 2});
      const auto h = assemble_hh_hamiltonian(m, b);
      const double scale = h.max_abs();
      EXPECT_LE(h.hermiticity_defect(), 1e-13 * scale);
      const auto s = spin_operators(b);
      EXPECT_LE(max_abs(commutator(h, s.s3).to_dense()), 1e-12 * scale);
      EXPECT_LE(max_abs(commutator(h, s.s_total_sq).to_dense()), 1e-12 * scale);
      EXPECT_LE(max_abs(commutator(h, electron_number(b)).to_dense()), 1e-12 * scale);
    }
  }
  // Number conservation where it is not built into the basis.
  const auto full = SectorBasis::full_fock(2, 2);
  const auto h = assemble_hh_hamiltonian(models.back(), full);
  EXPECT_LE(max_abs(commutator(h, electron_number(full)).to_dense()), 1e-12 * h.max_abs());
  const auto s = spin_operators(full);
  EXPECT_LE(max_abs(commutator(h, s.s_total_sq).to_dense()), 1e-12 * h.max_abs());
}

TEST(Hamiltonian, StarHubbardGroundSpin) {
  const auto m = star_model(4, -1, 4, 0, 1);
  const auto b = SectorBasis::sector(4, {4, 0, 0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(assemble_hubbard(m, b).to_dense());
  const Eigen::VectorXcd psi = es.eigenvectors().col(0);
  const auto s2 = spin_operators(b).s_total_sq;
  EXPECT_GT(es.eigenvalues()(1) - es.eigenvalues()(0), 1e-6);
  EXPECT_NEAR(psi.dot(s2 * psi).real(), 2.0, 1e-10);
}

TEST(Heisenberg, TwoSites) {
  RealMatrix j(2, 2);
  j << 0, 2, 2, 0;
  const auto ev = dense_spectrum(assemble_heisenberg(j, 2));
  EXPECT_NEAR(ev(0), -4.0, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.0, 1e-14);
  EXPECT_EQ(assemble_heisenberg(RealMatrix::Zero(3, 3), 3).nnz(), 0u);
  j(0, 1) = -1;
  j(1, 0) = -1;
  EXPECT_THROW(assemble_heisenberg(j, 2), Error);
}

TEST(Heisenberg, StarGroundSpinAndCouplings) {
  const auto m = star_model(4, -1, 4, 0, 1);
  const RealMatrix j = heisenberg_couplings(m);
  EXPECT_DOUBLE_EQ(j(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(j(1, 2), 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(assemble_heisenberg(j, 4).to_dense());
  const auto& ev = es.eigenvalues();
  int deg = 0;
  while (deg < ev.size() && ev(deg) - ev(0) < 1e-10) ++deg;
  EXPECT_EQ(deg, 3);
  const auto s2 = heisenberg_spin_squared(4);
  EXPECT_NEAR(es.eigenvectors().col(0).dot(s2 * es.eigenvectors().col(0)).real(), 2.0, 1e-10);
  EXPECT_LE(max_abs(commutator(assemble_heisenberg(j, 4), heisenberg_magnetization(4)).to_dense()), 1e-14);
}

TEST(Spin, SimpleStates) {
  const auto top = SectorBasis::sector(4, {4, 4, 0});
  const auto s = spin_operators(top);
  EXPECT_FALSE(s.raised.has_value());
  EXPECT_NEAR(s.s_total_sq.at(0, 0).real(), 6.0, 1e-14);

  const auto b = SectorBasis::sector(2, {2, 0, 0});
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
  // (up at 0, dn at 1) - (dn at 0, up at 1) in the creator ordering.
  singlet(static_cast<Eigen::Index>(b.find_fermion({1, 2}))) = 1.0;
  singlet(static_cast<Eigen::Index>(b.find_fermion({2, 1}))) = 1.0;
  const auto s2 = spin_operators(b).s_total_sq;
  const double a = singlet.dot(s2 * singlet).real();
  Eigen::VectorXcd other = singlet;
  other(static_cast<Eigen::Index>(b.find_fermion({2, 1}))) = -1.0;
  const double c = other.dot(s2 * other).real();
  // One combination is the singlet (0) and the other the M=0 triplet (2 * 2).
  EXPECT_NEAR(std::min(a, c), 0.0, 1e-14);
  EXPECT_NEAR(std::max(a, c), 4.0, 1e-14);
}

TEST(Spin, MultiplicitiesMatchCharacterCount) {
  const int n = 4;
  const auto b = SectorBasis::sector(n, {n, 0, 0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(spin_operators(b).s_total_sq.to_dense());
  std::map<int, int> count;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double s = 0.5 * (std::sqrt(1.0 + 4.0 * es.eigenvalues()(i)) - 1.0);
    EXPECT_NEAR(s, std::round(s), 1e-10);
    ++count[static_cast<int>(std::lround(s))];
  }
  // Number of spin-S multiplets = N(M=S) - N(M=S+1), N(M) = C(n, n/2+M) C(n, n/2-M).
  const auto states = [&](int m) -> int {
    if (m > n / 2) return 0;
    return static_cast<int>(binomial(n, n / 2 + m) * binomial(n, n / 2 - m));
  };
  for (int s = 0; s <= n / 2; ++s) EXPECT_EQ(count[s], states(s) - states(s + 1)) << "S=" << s;
  EXPECT_EQ(count[0] + count[1] + count[2], 36);
}

TEST(Spin, StaggeredRaiser) {
  const auto b = SectorBasis::sector(2, {2, 0, 0});
  const auto up = *adjacent_sector(b, +1);
  const std::vector<Sublattice> all_a{Sublattice::A, Sublattice::A};
  const auto u = staggered_spin_raiser(b, up, all_a, RaiserKind::Uniform);
  const auto st = staggered_spin_raiser(b, up, all_a, RaiserKind::Staggered);
  EXPECT_LE(max_abs(u.to_dense() - st.to_dense()), 0.0);

  // Neel state: up at 0, down at 1. S+_1 alone acts, giving amplitude gamma(1)/sqrt(2).
  const std::vector<Sublattice> ab{Sublattice::A, Sublattice::B};
  Eigen::VectorXcd neel = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.dimension()));
  neel(static_cast<Eigen::Index>(b.find_fermion({1, 2}))) = 1.0;
  const Eigen::VectorXcd r0 = staggered_spin_raiser(b, up, ab, RaiserKind::Uniform) * neel;
  const Eigen::VectorXcd rq = staggered_spin_raiser(b, up, ab, RaiserKind::Staggered) * neel;
  EXPECT_NEAR(r0.squaredNorm(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r0(0)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(rq(0) + r0(0)), 0.0, 1e-15);
  EXPECT_FALSE(adjacent_sector(up, +1).has_value());
}

TEST(Spin, SameSiteCorrelation) {
  const auto m = dimer(-1, 4, 0, 1);
  const auto b = SectorBasis::sector(2, {2, 0, 0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(assemble_hubbard(m, b).to_dense());
  const Eigen::VectorXcd psi = es.eigenvectors().col(0);
  const RealMatrix c = spin_flip_correlations(b, psi);
  for (int x = 0; x < 2; ++x) {
    double direct = 0.0;
    for (std::size_t f = 0; f < b.fermion_count(); ++f) {
      const auto& cf = b.fermion(f);
      const int nu = (cf.up >> x) & 1u, nd = (cf.dn >> x) & 1u;
      direct += std::norm(psi(static_cast<Eigen::Index>(f))) * nu * (1 - nd);
    }
    EXPECT_NEAR(c(x, x), direct, 1e-14);
    EXPECT_GT(c(x, x), 0.0);
  }
  EXPECT_LT(c(0, 1), 0.0);
}

TEST(Charge, Operators) {
  const auto b = SectorBasis::sector(2, {2, 0, 1});
  const std::vector<Complex> ones(2, 1.0);
  EXPECT_EQ(charge_mode(b, ones).nnz(), 0u);
  const auto q0 = charge_operator(0, b);
  const auto f = b.find_fermion({1, 1});
  EXPECT_EQ(q0.at(b.index(f, 0), b.index(f, 0)), Complex(1.0));
  const std::vector<Complex> ph{std::polar(1.0, 0.3), std::polar(1.0, -1.1)};
  const std::vector<Complex> conj_ph{std::conj(ph[0]), std::conj(ph[1])};
  EXPECT_LE(max_abs(charge_mode(b, ph).adjoint().to_dense() - charge_mode(b, conj_ph).to_dense()), 1e-16);
}

TEST(LangFirsov, ZeroCouplingIsIdentity) {
  const auto m = dimer(-1, 4, 0, 1);
  const auto b = SectorBasis::sector(2, {2, 0, 2});
  const auto l = lang_firsov_generator(m, b, 1.0);
  EXPECT_EQ(l.nnz(), 0u);
  const Eigen::MatrixXd e = lang_firsov_unitary(l);
  EXPECT_TRUE(e.isIdentity(0.0));
}

TEST(LangFirsov, SimilarityPreservesSpectrum) {
  const auto m = dimer(-1, 4, 0.5, 2);
  const auto b = SectorBasis::sector(2, {2, 0, 4});
  const auto h = assemble_hh_hamiltonian(m, b);
  const auto l = lang_firsov_generator(m, b, 1.0);
  EXPECT_LE(max_abs(l.to_dense() + l.adjoint().to_dense()), 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> t(lang_firsov_transform(h, l));
  EXPECT_LE((t.eigenvalues() - dense_spectrum(h)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LangFirsov, ActionMatchesDenseExponential) {
  const auto m = star_model(4, -1, 8, 1.5, 1);
  const auto b = SectorBasis::sector(4, {4, 0, 2});
  for (double theta : {1.0, 0.25}) {
    const auto l = lang_firsov_generator(m, b, theta);
    Eigen::VectorXcd psi = Eigen::VectorXcd::LinSpaced(static_cast<Eigen::Index>(b.dimension()), -1.0, 2.0);
    const Eigen::VectorXcd ref = lang_firsov_unitary(l).cast<Complex>() * psi;
    EXPECT_LE((lang_firsov_apply(l, psi) - ref).norm(), 1e-12 * ref.norm());
    EXPECT_NEAR(lang_firsov_apply(l, psi).norm(), psi.norm(), 1e-12 * psi.norm());
  }
}

TEST(LangFirsov, PolaronShift) {
  // One site, one electron: E0 -> -g^2/omega as the cutoff grows.
  const double g0 = 0.5, omega = 1.0;
  const auto m = build_model({"x"}, std::nullopt, RealMatrix::Zero(1, 1), RealMatrix::Identity(1, 1),
                             g0 * RealMatrix::Identity(1, 1), omega);
  const auto b = SectorBasis::sector(1, {1, 1, 40});
  EXPECT_NEAR(dense_spectrum(assemble_hh_hamiltonian(m, b))(0), -g0 * g0 / omega, 1e-12);
  // The transformed Hamiltonian is diagonal on the vacuum up to truncation.
  const auto l = lang_firsov_generator(m, b, 1.0);
  const Eigen::MatrixXcd hp = lang_firsov_transform(assemble_hh_hamiltonian(m, b), l);
  EXPECT_NEAR(hp(0, 0).real(), -g0 * g0 / omega, 1e-12);
}

TEST(LangFirsov, DenseLimit) {
  const auto m = star_model(4, -1, 8, 0.5, 1);
  const auto b = SectorBasis::sector(4, {4, 0, 6});
  ASSERT_GT(b.dimension(), kDenseExpMaxDim);
  try {
    lang_firsov_unitary(lang_firsov_generator(m, b, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooLarge);
  }
}
