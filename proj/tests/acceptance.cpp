// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hhed/config.hpp"
#include "hhed/error.hpp"
#include "hhed/kernels.hpp"
#include "hhed/ops.hpp"
#include "hhed/report.hpp"
#include "hhed/runner.hpp"
#include "hhed/solve.hpp"
#include "hhed/verify.hpp"

using namespace hhed;

namespace {

// Tolerances and runtime limits.
constexpr double kLambdaTarget = 3.0;
constexpr double kLambdaTol = 1e-10;
constexpr double kAlgebraTol = 1e-13;
constexpr double kCommutatorTol = 1e-12;
constexpr double kOracleTol = 1e-10;
constexpr double kClosedFormTol = 1e-12;
constexpr double kReproTol = 1e-12;
constexpr std::size_t kOracleMaxDim = 2000;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) {
    o.ok = false;
    o.detail << " [runtime " << s << " s exceeds " << limit_s << " s]";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %-22s %8.2f s%s\n", o.ok ? "PASS" : "FAIL", id, name, s, o.detail.str().c_str());
  std::fflush(stdout);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Full spectrum from Eigen, ascending.
Eigen::VectorXd dense_eigenvalues(const SparseOperator& h) {
  const Eigen::MatrixXcd m = h.to_dense();
  if (h.is_real()) return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m.real(), Eigen::EigenvaluesOnly).eigenvalues();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

double commutator_norm(const SparseOperator& a, const SparseOperator& b) {
  const auto c = commutator(a, b);
  return c.nnz() ? c.max_abs() : 0.0;
}

/// Largest |a - b| over all numbers of two JSON documents of the same shape; +inf on a shape mismatch.
double json_distance(const nlohmann::json& a, const nlohmann::json& b) {
  if (a.type() != b.type()) {
    if (a.is_number() && b.is_number()) return std::abs(a.get<double>() - b.get<double>());
    return INFINITY;
  }
  if (a.is_number()) return std::abs(a.get<double>() - b.get<double>());
  if (a.is_array() || a.is_object()) {
    if (a.size() != b.size()) return INFINITY;
    double d = 0.0;
    if (a.is_array()) {
      for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, json_distance(a[i], b[i]));
    } else {
      for (auto it = a.begin(); it != a.end(); ++it) {
        if (!b.contains(it.key())) return INFINITY;
        d = std::max(d, json_distance(it.value(), b.at(it.key())));
      }
    }
    return d;
  }
  return a == b ? 0.0 : INFINITY;
}

}  // namespace

int main() {
  criterion(1, "preconditions", 1.0, [](Outcome& o) {
    for (const char* preset : {"ring4", "star4"}) {
      const auto cfg = parse_config(std::string("model: {preset: ") + preset + ", U0: 4, g0: 1, omega: 2}\n");
      const auto r = check_conditions(cfg.model, cfg.fourier ? &*cfg.fourier : nullptr);
      const double lambda = *r.value("U_eff lambda_min");
      o.detail << " " << preset << " lambda_min=" << format_number(lambda);
      for (const char* a : {"connected", "bipartite", "phonon sum rule", "U_eff positive definite"}) {
        o.require(r.assertion(a), std::string(preset) + " " + a);
      }
      o.require(std::abs(lambda - kLambdaTarget) <= kLambdaTol, std::string(preset) + " lambda_min");
    }
  });

  criterion(2, "operator algebra", 10.0, [](Outcome& o) {
    double worst_ac = 0.0, worst_ph = 0.0, worst_comm = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const auto b = SectorBasis::full_fock(n, 0);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(b.dimension(), b.dimension());
      std::vector<SparseOperator> c;
      for (Spin s : {Spin::Up, Spin::Down}) {
        for (int x = 0; x < n; ++x) c.push_back(annihilator(x, s, b, b));
      }
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
          const Eigen::MatrixXcd ac = anticommutator(c[i], c[j].adjoint()).to_dense();
          worst_ac = std::max(worst_ac, max_abs(i == j ? Eigen::MatrixXcd(ac - id) : ac));
          worst_ac = std::max(worst_ac, max_abs(anticommutator(c[i], c[j]).to_dense()));
        }
      }
      const int cutoff = 4;
      const auto pb = SectorBasis::sector(n, {n, n % 2, cutoff});
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          const Eigen::MatrixXcd com = commutator(phonon_annihilator(x, pb), phonon_creator(y, pb)).to_dense();
          for (std::size_t i = 0; i < pb.dimension(); ++i) {
            for (std::size_t j = 0; j < pb.dimension(); ++j) {
              if (pb.phonon_total(pb.split(i).second) == cutoff || pb.phonon_total(pb.split(j).second) == cutoff) continue;
              const double expect = (i == j && x == y) ? 1.0 : 0.0;
              worst_ph = std::max(worst_ph, std::abs(com(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expect));
            }
          }
        }
      }
    }
    std::vector<ModelSpec> models{chain_model(2, -1, 4, 0.5, 2), ring_model(4, -1, 4, 1, 2), star_model(4, -1, 8, 0.5, 1),
                                  chain_model(3, -1, 4, 0.5, 1)};
    std::size_t count = 0;
    for (const auto& m : models) {
      const int n = static_cast<int>(m.size());
      for (int n_el = 0; n_el <= 2 * n; ++n_el) {
        for (int two_m = -n_el; two_m <= n_el; two_m += 2) {
          if (std::abs(two_m) > 2 * n - n_el) continue;
          const auto b = SectorBasis::sector(n, {n_el, two_m, 2});
          const auto h = assemble_hh_hamiltonian(m, b);
          const double scale = std::max(h.max_abs(), 1e-300);
          const auto s = spin_operators(b);
          worst_comm = std::max({worst_comm, commutator_norm(h, s.s3) / scale, commutator_norm(h, s.s_total_sq) / scale,
                                 commutator_norm(h, electron_number(b)) / scale});
          ++count;
        }
      }
    }
    for (int n = 2; n <= 3; ++n) {
      const auto b = SectorBasis::full_fock(n, 1);
      const auto h = assemble_hh_hamiltonian(models[n == 2 ? 0 : 3], b);
      const auto s = spin_operators(b);
      worst_comm = std::max({worst_comm, commutator_norm(h, s.s3) / h.max_abs(),
                             commutator_norm(h, s.s_total_sq) / h.max_abs(),
                             commutator_norm(h, electron_number(b)) / h.max_abs()});
      ++count;
    }
    o.detail << " {c,c+}=" << worst_ac << " [b,b+]=" << worst_ph << " [H,.]/|H|=" << worst_comm << " over " << count
             << " Hamiltonians";
    o.require(worst_ac <= kAlgebraTol, "anticommutators");
    o.require(worst_ph <= kAlgebraTol, "phonon commutator");
    o.require(worst_comm <= kCommutatorTol, "Hamiltonian symmetries");
  });

  criterion(3, "oracle equivalence", 30.0, [](Outcome& o) {
    // Every (N_el, 2M) sector up to the cutoff where the half-filled sectors outgrow kOracleMaxDim.
    const std::vector<std::pair<ModelSpec, int>> models{
        {chain_model(2, -1, 4, 0.5, 2), 12}, {ring_model(4, -1, 4, 1, 2), 4}, {star_model(4, -1, 8, 0.5, 1), 4}};
    SolverOptions lanczos;
    lanczos.force = SolverKind::Lanczos;
    double worst = 0.0;
    std::size_t count = 0, largest = 0;
    for (const auto& [m, max_cutoff] : models) {
      const int n = static_cast<int>(m.size());
      for (int cutoff = 0; cutoff <= max_cutoff; ++cutoff) {
        for (int n_el = 0; n_el <= 2 * n; ++n_el) {
          for (int two_m = -n_el; two_m <= n_el; two_m += 2) {
            if (std::abs(two_m) > 2 * n - n_el) continue;
            const auto b = SectorBasis::sector(n, {n_el, two_m, cutoff});
            if (b.dimension() > kOracleMaxDim) continue;
            const auto h = assemble_hh_hamiltonian(m, b);
            const std::size_t k = std::min<std::size_t>(3, b.dimension());
            const Eigen::VectorXd d = dense_eigenvalues(h);
            const auto l = ground_spectrum(h, k, lanczos);
            for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(d[i] - l.eigenvalues[i]));
            largest = std::max(largest, b.dimension());
            ++count;
          }
        }
      }
    }
    const auto m = chain_model(2, -1, 4, 0, 1);
    const double e0 = ground_spectrum(assemble_hubbard(m, SectorBasis::sector(2, {2, 0, 0}))).ground_energy();
    const double closed = 2.0 - 2.0 * std::sqrt(2.0);
    o.detail << " " << count << " sectors up to dim " << largest << ", max |dE|=" << worst
             << ", E0(2-site)-(2-2sqrt2)=" << (e0 - closed);
    o.require(worst <= kOracleTol, "dense vs Lanczos");
    o.require(std::abs(e0 - closed) <= kClosedFormTol, "closed form");
  });

  const HarnessOptions harness;  // cutoffs {11, 12}
  const auto star = star_model(4, -1, 8, 0.5, 1);
  const auto ring = ring_model(4, -1, 8, 0.5, 1);

  criterion(4, "total spin (star4)", 120.0, [&](Outcome& o) {
    const auto r = verify_total_spin(star, harness);
    o.detail << " <S^2>=" << format_number(*r.value("<S^2>")) << " degeneracy=" << *r.value("ground degeneracy")
             << " verdict=" << to_string(r.verdict);
    o.require(r.verdict == Verdict::Pass, "verdict");
    o.require(r.assertion("M=0 ground state unique"), "M=0 unique");
    o.require(std::abs(*r.value("<S^2>") - 2.0) <= kSpinTol, "<S^2> = 2");
    o.require(*r.value("ground degeneracy") == 3.0, "degeneracy 3");
    o.require(r.assertion("E0(M) higher for |M| > S"), "E0(+-2) higher");
  });

  criterion(5, "sign pattern", 0.0, [&](Outcome& o) {
    for (const auto* m : {&ring, &star}) {
      const auto r = verify_sign_pattern(*m, harness);
      o.detail << " " << (m == &ring ? "ring4" : "star4") << " margin=" << format_number(*r.value("sign margin"))
               << " verdict=" << to_string(r.verdict);
      o.require(r.verdict == Verdict::Pass, "verdict");
      o.require(*r.value("sign margin") > kSignTol, "margin");
    }
  });

  criterion(6, "long-range order", 0.0, [&](Outcome& o) {
    const auto r = verify_lro_inequality(star, harness);
    const double m0 = *r.value("m0"), mq = *r.value("mQ");
    o.detail << " m0=" << format_number(m0) << " mQ=" << format_number(mq)
             << " m0/|L|=" << format_number(*r.value("m0/|L|")) << " verdict=" << to_string(r.verdict);
    o.require(r.verdict == Verdict::Pass, "verdict");
    o.require(mq >= m0 - kLroTol, "m(Q) >= m(0)");
    o.require(m0 > 0.0, "m(0) > 0");
  });

  criterion(7, "charge susceptibility", 120.0, [&](Outcome& o) {
    const auto f = ring_fourier(4, 4, 1, 2);
    const auto r = charge_susceptibility(torus_model(f, -1), f, {}, harness);
    bool all = true;
    for (std::size_t k = 0; k < f.lattice.size(); ++k) {
      std::string label = "k=(" + std::to_string(f.lattice.coords(k)[0]) + ")";
      const double chi = *r.value("chi[" + label + "]");
      o.detail << " chi" << label.substr(1) << "=" << format_number(chi);
      all = all && chi <= 1.0 / 3.0 + kChiTol;
    }
    o.detail << " verdict=" << to_string(r.verdict);
    o.require(r.verdict == Verdict::Pass, "verdict");
    o.require(all, "chi <= 1/3");
    o.require(*r.value("chi[k=(0)]") == 0.0, "chi(0) = 0 exactly");
  });

  criterion(8, "adiabatic limit", 60.0, [&](Outcome& o) {
    HarnessOptions opts;
    opts.cutoffs = {8, 10};
    const std::vector<double> thetas{1, 2, 4, 8, 16, 32};
    const auto r = verify_adiabatic_limit(chain_model(2, -1, 4, 0.2, 4), thetas, opts);
    o.detail << " overlap(32)=" << format_number(*r.value("overlap[theta=32]"))
             << " E0(32)-E_H=" << format_number(*r.value("E0[theta=32]") - *r.value("E0 Hubbard"))
             << " verdict=" << to_string(r.verdict);
    o.require(r.verdict == Verdict::Pass, "verdict");
    for (const auto& [name, holds] : r.assertions) o.require(holds, name);
  });

  criterion(9, "heisenberg limit", 0.0, [&](Outcome& o) {
    const std::vector<double> grid{10, 20, 40, 80};
    const auto d = verify_heisenberg_limit(chain_model(2, 1, 0, 0, 1), grid);
    const double scaled = *d.value("U0 * (E_triplet - E_singlet)");
    o.detail << " 2-site U0*gap=" << format_number(scaled);
    o.require(std::abs(scaled - 4.0) <= kHeisenbergGapTol * 4.0, "2-site gap");
    const auto s = verify_heisenberg_limit(star_model(4, -1, 0, 0, 1), grid);
    o.detail << " star4 S_H=" << format_number(*s.value("S Heisenberg"));
    o.require(std::abs(*s.value("S Heisenberg") - 1.0) <= kSpinTol, "Heisenberg spin 1");
    for (const double u : grid) {
      std::ostringstream key;
      key << "S Hubbard[U0=" << u << "]";
      const double sh = *s.value(key.str());
      o.require(std::abs(sh - 1.0) <= kSpinTol, key.str());
    }
    o.require(d.verdict == Verdict::Pass && s.verdict == Verdict::Pass, "verdicts");
  });

  criterion(10, "reproducibility", 0.0, [&](Outcome& o) {
    auto cfg = parse_config(
        "model: {preset: ring4, U0: 4, g0: 1, omega: 2}\n"
        "run: {cutoffs: [3, 4], theta: [1, 2, 4], dense_max_dim: 500}\n"
        "output: {formats: [json]}\n");
    const int before = kernels::thread_count();
    const auto dir = std::filesystem::temp_directory_path() / "hhed-acceptance";
    kernels::set_thread_count(1);
    const auto a = run(cfg, {}, dir / "t1");
    kernels::set_thread_count(4);
    const auto b = run(cfg, {}, dir / "t4");
    kernels::set_thread_count(before);
    const double d = json_distance(a.record, b.record);
    o.detail << " " << cfg.checks.size() << " checks, max |difference|=" << d;
    o.require(d <= kReproTol, "reports agree");
  });

  return failures == 0 ? 0 : 1;
}
