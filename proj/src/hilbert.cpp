#include "hhed/hilbert.hpp"

#include <bit>
#include <numeric>

#include "hhed/error.hpp"

namespace hhed {

namespace {

void require_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw Error(ErrorCode::InvalidArgument, "site count must be in [1, " + std::to_string(kMaxSites) + "]");
  }
}

std::vector<std::uint32_t> words_with_popcount(int n_sites, int count) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = 1u << n_sites;
  for (std::uint32_t w = 0; w < limit; ++w) {
    if (std::popcount(w) == count) out.push_back(w);
  }
  return out;
}

void compositions(int sites_left, int remaining, std::vector<int>& prefix, std::vector<PhononConfig>& out) {
  if (sites_left == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    prefix.push_back(v);
    compositions(sites_left - 1, remaining - v, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t fermion_key(const FermionConfig& c) { return (static_cast<std::uint64_t>(c.up) << 32) | c.dn; }

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<FermionConfig> enumerate_fermion_sector(int n_sites, int n_el, int two_m) {
  require_sites(n_sites);
  if ((n_el + two_m) % 2 != 0) {
    throw Error(ErrorCode::EmptySector, "n_el and 2M must have equal parity");
  }
  const int n_up = (n_el + two_m) / 2;
  const int n_dn = (n_el - two_m) / 2;
  if (n_up < 0 || n_up > n_sites || n_dn < 0 || n_dn > n_sites) {
    throw Error(ErrorCode::EmptySector, "n_up=" + std::to_string(n_up) + ", n_dn=" + std::to_string(n_dn) +
                                            " out of range for " + std::to_string(n_sites) + " sites");
  }
  const auto ups = words_with_popcount(n_sites, n_up);
  const auto dns = words_with_popcount(n_sites, n_dn);
  std::vector<FermionConfig> out;
  out.reserve(ups.size() * dns.size());
  for (auto u : ups) {
    for (auto d : dns) out.push_back({u, d});
  }
  return out;
}

std::vector<FermionConfig> enumerate_fermion_fock(int n_sites) {
  require_sites(n_sites);
  const std::uint32_t limit = 1u << n_sites;
  std::vector<FermionConfig> out;
  out.reserve(static_cast<std::size_t>(limit) * limit);
  for (std::uint32_t u = 0; u < limit; ++u) {
    for (std::uint32_t d = 0; d < limit; ++d) out.push_back({u, d});
  }
  return out;
}

std::vector<PhononConfig> enumerate_phonon_states(int n_sites, int n_ph_max) {
  require_sites(n_sites);
  if (n_ph_max < 0) throw Error(ErrorCode::InvalidArgument, "phonon cutoff must be >= 0");
  std::vector<PhononConfig> out;
  std::vector<int> prefix;
  for (int total = 0; total <= n_ph_max; ++total) compositions(n_sites, total, prefix, out);
  return out;
}

SectorBasis::SectorBasis(int n_sites, std::optional<SectorKey> key, int n_ph_max, std::vector<FermionConfig> fermions)
    : n_sites_(n_sites), n_ph_max_(n_ph_max), key_(key), fermions_(std::move(fermions)) {
  fermion_index_.reserve(fermions_.size());
  for (std::size_t i = 0; i < fermions_.size(); ++i) fermion_index_.emplace(fermion_key(fermions_[i]), i);

  const auto phonons = enumerate_phonon_states(n_sites, n_ph_max);
  phonon_flat_.reserve(phonons.size() * static_cast<std::size_t>(n_sites));
  phonon_totals_.reserve(phonons.size());
  for (std::size_t p = 0; p < phonons.size(); ++p) {
    phonon_flat_.insert(phonon_flat_.end(), phonons[p].begin(), phonons[p].end());
    phonon_totals_.push_back(std::accumulate(phonons[p].begin(), phonons[p].end(), 0));
    phonon_index_.emplace(phonons[p], p);
  }
  raise_.assign(phonons.size() * static_cast<std::size_t>(n_sites), npos);
  lower_.assign(phonons.size() * static_cast<std::size_t>(n_sites), npos);
  for (std::size_t p = 0; p < phonons.size(); ++p) {
    auto occ = phonons[p];
    for (int x = 0; x < n_sites; ++x) {
      occ[static_cast<std::size_t>(x)] += 1;
      if (auto it = phonon_index_.find(occ); it != phonon_index_.end()) raise_[p * n_sites + x] = it->second;
      occ[static_cast<std::size_t>(x)] -= 2;
      if (occ[static_cast<std::size_t>(x)] >= 0) lower_[p * n_sites + x] = phonon_index_.at(occ);
      occ[static_cast<std::size_t>(x)] += 1;
    }
  }
}

SectorBasis SectorBasis::sector(int n_sites, SectorKey key) {
  if (key.n_ph_max < 0) throw Error(ErrorCode::InvalidArgument, "phonon cutoff must be >= 0");
  return SectorBasis(n_sites, key, key.n_ph_max, enumerate_fermion_sector(n_sites, key.n_el, key.two_m));
}

SectorBasis SectorBasis::full_fock(int n_sites, int n_ph_max) {
  if (n_ph_max < 0) throw Error(ErrorCode::InvalidArgument, "phonon cutoff must be >= 0");
  return SectorBasis(n_sites, std::nullopt, n_ph_max, enumerate_fermion_fock(n_sites));
}

std::span<const int> SectorBasis::phonon(std::size_t p) const {
  return {phonon_flat_.data() + p * static_cast<std::size_t>(n_sites_), static_cast<std::size_t>(n_sites_)};
}

std::size_t SectorBasis::find_fermion(const FermionConfig& c) const {
  const auto it = fermion_index_.find(fermion_key(c));
  return it == fermion_index_.end() ? npos : it->second;
}

std::size_t SectorBasis::find_phonon(std::span<const int> occupations) const {
  const auto it = phonon_index_.find(std::vector<int>(occupations.begin(), occupations.end()));
  return it == phonon_index_.end() ? npos : it->second;
}

std::size_t SectorBasis::find(const FermionConfig& f, std::span<const int> occupations) const {
  const auto fi = find_fermion(f);
  const auto pi = find_phonon(occupations);
  return (fi == npos || pi == npos) ? npos : index(fi, pi);
}

SectorBasis build_sector_basis(int n_sites, SectorKey key) { return SectorBasis::sector(n_sites, key); }

}  // namespace hhed
