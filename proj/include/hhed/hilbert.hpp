#pragma once
// Many-body bases: electrons at fixed (N_el, S3 = M) times the bosonic Fock
// space truncated at total phonon number N_b <= n_ph_max.
//
// Fermion conventions, fixed globally: site x is bit x of the occupation
// word. Modes are ordered (0,up), (1,up), ..., (n-1,up), (0,dn), ..., (n-1,dn)
// and a configuration stands for the product of creators in that order acting
// on the vacuum.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace hhed {

struct SectorKey {
  int n_el = 0;
  int two_m = 0;  // 2 * S3
  int n_ph_max = 0;

  int n_up() const { return (n_el + two_m) / 2; }
  int n_dn() const { return (n_el - two_m) / 2; }
  bool operator==(const SectorKey&) const = default;
};

enum class Spin : unsigned char { Up, Down };

struct FermionConfig {
  std::uint32_t up = 0;
  std::uint32_t dn = 0;

  std::uint32_t word(Spin s) const { return s == Spin::Up ? up : dn; }
  auto operator<=>(const FermionConfig&) const = default;
};

using PhononConfig = std::vector<int>;

inline constexpr int kMaxSites = 16;

/// All configurations with n_up = (n_el + 2M)/2 and n_dn = (n_el - 2M)/2,
/// ordered by (up word, dn word). Throws EmptySector.
std::vector<FermionConfig> enumerate_fermion_sector(int n_sites, int n_el, int two_m);
/// Every fermion configuration of the full Fock space, same ordering.
std::vector<FermionConfig> enumerate_fermion_fock(int n_sites);
/// All occupation vectors with total <= n_ph_max: graded by total, then
/// lexicographically descending inside a grade, e.g. (0,0),(1,0),(0,1).
std::vector<PhononConfig> enumerate_phonon_states(int n_sites, int n_ph_max);

class SectorBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Fixed (N_el, S3) sector. Throws EmptySector / InvalidArgument.
  static SectorBasis sector(int n_sites, SectorKey key);
  /// Unrestricted fermion Fock space (all N_el and S3), for operator-algebra checks.
  static SectorBasis full_fock(int n_sites, int n_ph_max);

  int n_sites() const { return n_sites_; }
  int n_ph_max() const { return n_ph_max_; }
  const std::optional<SectorKey>& key() const { return key_; }

  std::size_t dimension() const { return fermions_.size() * phonon_count(); }
  std::size_t fermion_count() const { return fermions_.size(); }
  std::size_t phonon_count() const { return phonon_totals_.size(); }

  /// Fermion index major, phonon index minor.
  std::size_t index(std::size_t f, std::size_t p) const { return f * phonon_count() + p; }
  std::pair<std::size_t, std::size_t> split(std::size_t i) const { return {i / phonon_count(), i % phonon_count()}; }

  const FermionConfig& fermion(std::size_t f) const { return fermions_[f]; }
  const std::vector<FermionConfig>& fermions() const { return fermions_; }
  std::span<const int> phonon(std::size_t p) const;
  int phonon_total(std::size_t p) const { return phonon_totals_[p]; }

  std::size_t find_fermion(const FermionConfig& c) const;
  std::size_t find_phonon(std::span<const int> occupations) const;
  /// Index of the phonon state with occupation at `site` changed by +1 / -1, or npos.
  std::size_t phonon_raised(std::size_t p, int site) const { return raise_[p * n_sites_ + site]; }
  std::size_t phonon_lowered(std::size_t p, int site) const { return lower_[p * n_sites_ + site]; }
  /// Index of the full state, or npos if it is not part of this basis.
  std::size_t find(const FermionConfig& f, std::span<const int> occupations) const;

  /// Basis states with the phonon vacuum, i.e. index(f, 0) for every f.
  std::size_t vacuum_phonon() const { return 0; }

 private:
  SectorBasis(int n_sites, std::optional<SectorKey> key, int n_ph_max, std::vector<FermionConfig> fermions);

  int n_sites_ = 0;
  int n_ph_max_ = 0;
  std::optional<SectorKey> key_;
  std::vector<FermionConfig> fermions_;
  std::unordered_map<std::uint64_t, std::size_t> fermion_index_;
  std::vector<int> phonon_flat_;  // phonon_count x n_sites
  std::vector<int> phonon_totals_;
  std::map<std::vector<int>, std::size_t> phonon_index_;
  std::vector<std::size_t> raise_;
  std::vector<std::size_t> lower_;
};

SectorBasis build_sector_basis(int n_sites, SectorKey key);

/// n choose k as a double-free integer (small arguments only).
std::uint64_t binomial(int n, int k);

}  // namespace hhed
