#include "hhed/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hhed/error.hpp"

namespace hhed {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

json named(const NamedValues& values) {
  json out = json::array();
  for (const auto& [k, v] : values) out.push_back({{"name", k}, {"value", number(v)}});
  return out;
}

json flags(const Flags& values) {
  json out = json::array();
  for (const auto& [k, v] : values) out.push_back({{"name", k}, {"holds", v}});
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string value_text(const json& v) {
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

}  // namespace

json to_json(const SweepResult& sweep) {
  json points = json::array();
  for (const auto& p : sweep.points) {
    json j = {{"parameter", p.parameter}, {"dimension", p.dimension}, {"E0", number(p.e0)},
              {"E1", number(p.e1)},       {"gap", number(p.gap)},     {"degeneracy", p.degeneracy},
              {"spin_sq", number(p.spin_sq)}};
    j["overlap"] = p.overlap ? number(*p.overlap) : json(nullptr);
    j["observables"] = named(p.observables);
    points.push_back(std::move(j));
  }
  json out = {{"parameter", sweep.parameter},
              {"points", std::move(points)},
              {"converged", sweep.converged},
              {"energy_change", number(sweep.energy_change)},
              {"observable_change", number(sweep.observable_change)},
              {"energy_tol", sweep.energy_tol},
              {"observable_tol", sweep.observable_tol}};
  out["reference_energy"] = sweep.reference_energy ? number(*sweep.reference_energy) : json(nullptr);
  return out;
}

json to_json(const VerificationReport& r) {
  json traces = json::array();
  for (const auto& t : r.traces) traces.push_back({{"label", t.label}, {"sweep", to_json(t.sweep)}});
  return {{"check", r.check},
          {"statement", r.statement},
          {"verdict", to_string(r.verdict)},
          {"converged", r.converged},
          {"preconditions", flags(r.preconditions)},
          {"measured", named(r.measured)},
          {"tolerances", named(r.tolerances)},
          {"assertions", flags(r.assertions)},
          {"notes", r.notes},
          {"traces", std::move(traces)}};
}

json model_json(const RunConfig& c) {
  const auto& m = c.model;
  json sub = json::array();
  for (const auto s : m.sublattice) sub.push_back(s == Sublattice::A ? "A" : "B");
  const auto matrix = [](const RealMatrix& a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return {{"label", c.model_label}, {"sites", m.sites}, {"sublattice", std::move(sub)},
          {"t", matrix(m.t)},       {"U", matrix(m.U)},  {"g", matrix(m.g)},
          {"omega", m.omega}};
}

json run_record(const RunConfig& config, const std::vector<VerificationReport>& reports, int exit_code) {
  json checks = json::array();
  for (const auto& r : reports) checks.push_back(to_json(r));
  const char* overall = exit_code == 0 ? "pass" : exit_code == 2 ? "inconclusive" : "fail";
  json run = {{"cutoffs", config.cutoffs}, {"sectors_2M", config.sectors_two_m}, {"theta", config.thetas},
              {"U0_grid", config.u0_grid}, {"checks", config.checks}};
  return {{"model", model_json(config)},
          {"run", std::move(run)},
          {"checks", std::move(checks)},
          {"overall", overall},
          {"exit_code", exit_code}};
}

std::string render_summary(const json& record) {
  std::ostringstream os;
  const auto& m = record.at("model");
  std::size_t a = 0, b = 0;
  for (const auto& s : m.at("sublattice")) (s.get<std::string>() == "A" ? a : b)++;
  os << "model " << m.at("label").get<std::string>() << ": " << m.at("sites").size() << " sites, |A|=" << a
     << ", |B|=" << b << ", omega=" << value_text(m.at("omega")) << "\n";
  for (const auto& c : record.at("checks")) {
    os << "\n[" << c.at("verdict").get<std::string>() << "] " << c.at("check").get<std::string>() << ": "
       << c.at("statement").get<std::string>() << "\n";
    for (const auto& p : c.at("preconditions")) {
      if (!p.at("holds").get<bool>()) os << "  precondition violated: " << p.at("name").get<std::string>() << "\n";
    }
    for (const auto& v : c.at("measured")) {
      os << "  " << v.at("name").get<std::string>() << " = " << value_text(v.at("value")) << "\n";
    }
    for (const auto& s : c.at("assertions")) {
      os << "  " << (s.at("holds").get<bool>() ? "ok     " : "FAILED ") << s.at("name").get<std::string>() << "\n";
    }
    for (const auto& t : c.at("traces")) {
      const auto& sw = t.at("sweep");
      os << "  trace " << t.at("label").get<std::string>() << ": " << sw.at("points").size() << " points over "
         << sw.at("parameter").get<std::string>() << ", "
         << (sw.at("converged").get<bool>() ? "converged" : "not converged")
         << " (dE=" << value_text(sw.at("energy_change")) << ", dObs=" << value_text(sw.at("observable_change"))
         << ")\n";
    }
    for (const auto& n : c.at("notes")) os << "  note: " << n.get<std::string>() << "\n";
  }
  os << "\noverall: " << record.at("overall").get<std::string>() << " (exit " << record.at("exit_code").get<int>()
     << ")\n";
  return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "parameter,dimension,E0,E1,gap,degeneracy,overlap,spin";
  if (!sweep.points.empty()) {
    for (const auto& [name, v] : sweep.points.front().observables) os << "," << csv_field(name);
  }
  os << "\n";
  for (const auto& p : sweep.points) {
    os << format_number(p.parameter) << "," << p.dimension << "," << format_number(p.e0) << "," << format_number(p.e1)
       << "," << format_number(p.gap) << "," << p.degeneracy << "," << (p.overlap ? format_number(*p.overlap) : "")
       << "," << format_number(p.spin_sq);
    for (const auto& [name, v] : p.observables) os << "," << format_number(v);
    os << "\n";
  }
  return os.str();
}

std::vector<std::filesystem::path> write_artifacts(const RunConfig& config, const json& record,
                                                   const std::vector<VerificationReport>& reports,
                                                   const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> written;
  const auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + p.string());
    out << text;
    written.push_back(p);
  };
  const auto wants = [&](const char* f) {
    return std::find(config.formats.begin(), config.formats.end(), f) != config.formats.end();
  };
  if (wants("json")) write(directory / "report.json", record.dump(2) + "\n");
  if (wants("text")) write(directory / "summary.txt", render_summary(record));
  if (wants("csv")) {
    for (const auto& r : reports) {
      for (const auto& t : r.traces) {
        write(directory / (file_stem(r.check + "_" + t.label) + ".csv"), sweep_csv(t.sweep));
      }
    }
  }
  return written;
}

}  // namespace hhed
