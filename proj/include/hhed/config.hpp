#pragma once
// Run configuration read from YAML. See README.md for the grammar.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhed/model.hpp"
#include "hhed/solve.hpp"

namespace hhed {

inline const std::vector<std::string> kCheckNames{"conditions",     "uniqueness", "total-spin", "sign-pattern",
                                                  "lro",            "susceptibility", "adiabatic", "heisenberg"};

struct RunConfig {
  std::string model_label;  // preset name, "explicit" or "fourier"
  ModelSpec model;
  std::optional<FourierModel> fourier;
  std::vector<int> sectors_two_m{0};
  std::vector<int> cutoffs{11, 12};
  std::vector<double> thetas{1, 2, 4, 8, 16, 32};
  std::vector<double> u0_grid{10, 20, 40, 80};
  std::vector<std::size_t> k_mesh;  // empty = every mesh point
  std::vector<std::string> checks;
  std::string output_dir = "hhed-out";
  std::vector<std::string> formats{"json", "csv", "text"};
  SolverOptions solver;
};

/// Throws Error(ParseError) with line/column for malformed YAML and
/// Error(ValidationError) naming the field for bad values.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Named geometries with onsite couplings U = U0 I and g = g0 I.
ModelSpec chain_model(int sites, double t0, double u0, double g0, double omega);
ModelSpec star_model(int sites, double t0, double u0, double g0, double omega);
/// Rx x Ry Lieb cells with open boundaries: Cu sites plus their right and upper O sites.
ModelSpec lieb_cell_model(int rx, int ry, double t0, double u0, double g0, double omega);
/// Ring of `sites` (even) sites built from constant G(k) = g0, U(k) = u0 and nearest-neighbor hopping t0.
FourierModel ring_fourier(int sites, double u0, double g0, double omega);
ModelSpec ring_model(int sites, double t0, double u0, double g0, double omega);
/// Model on the torus of a Fourier block with nearest-neighbor hopping t0.
ModelSpec torus_model(const FourierModel& fourier, double t0);

}  // namespace hhed
