#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vpth/effective_potential.hpp"
#include "vpth/errors.hpp"
#include "vpth/ground_state.hpp"
#include "vpth/output.hpp"
#include "vpth/strong_field.hpp"
#include "vpth/units.hpp"
#include "vpth/variational.hpp"
#include "vpth/weak_field.hpp"

namespace vpth::cli {

// Grid specification "start:stop:count[:log|lin]" or a comma-separated
// list of values.  Log spacing needs positive endpoints.
inline std::vector<double> parse_grid(const std::string& spec, bool default_log = false) {
  const auto parse_num = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + s + "' in grid spec '" + spec + "'");
    }
    if (pos != s.size()) throw ParseError("bad number '" + s + "' in grid spec '" + spec + "'");
    return v;
  };
  std::vector<std::string> parts;
  {
    std::stringstream ss(spec);
    std::string item;
    const char sep = spec.find(':') != std::string::npos ? ':' : ',';
    while (std::getline(ss, item, sep)) parts.push_back(item);
  }
  if (spec.find(':') == std::string::npos) {
    std::vector<double> values;
    for (const auto& p : parts) values.push_back(parse_num(p));
    if (values.empty()) throw ParseError("empty grid spec");
    return values;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw ParseError("grid spec '" + spec + "' must be start:stop:count[:log|lin]");
  const double start = parse_num(parts[0]);
  const double stop = parse_num(parts[1]);
  const double countd = parse_num(parts[2]);
  const int count = static_cast<int>(countd);
  if (count < 1 || countd != count) throw ParseError("grid count must be a positive integer");
  bool log = default_log;
  if (parts.size() == 4) {
    if (parts[3] == "log") log = true;
    else if (parts[3] == "lin") log = false;
    else throw ParseError("grid spacing must be 'log' or 'lin', got '" + parts[3] + "'");
  }
  std::vector<double> values;
  if (count == 1) {
    values.push_back(start);
    return values;
  }
  if (log) {
    if (!(start > 0.0) || !(stop > 0.0))
      throw ParseError("log grid needs positive endpoints in '" + spec + "'");
    const double la = std::log(start), lb = std::log(stop);
    for (int i = 0; i < count; ++i)
      values.push_back(std::exp(la + (lb - la) * i / (count - 1)));
  } else {
    for (int i = 0; i < count; ++i)
      values.push_back(start + (stop - start) * i / (count - 1));
  }
  return values;
}

namespace detail {

struct CommonOpts {
  std::string format = "csv";
  std::string output = "-";
  int precision = 50;
};

inline void emit(const Table& t, const CommonOpts& c) {
  if (c.output == "-") {
    if (c.format == "json") write_json(std::cout, t);
    else write_csv(std::cout, t);
    return;
  }
  std::ofstream os(c.output, std::ios::binary);
  if (!os) throw ParseError("cannot open output file '" + c.output + "'");
  if (c.format == "json") write_json(os, t);
  else write_csv(os, t);
}

inline void base_meta(Table& t, const CommonOpts& c, const std::string& command) {
  t.meta.emplace_back("tool", "vpth");
  t.meta.emplace_back("command", command);
  t.meta.emplace_back("format", c.format);
  t.meta.emplace_back("precision", std::to_string(c.precision));
}

inline std::string fmt(double v) { return format_number(v); }

} // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"effective classical potential of hydrogen in a magnetic field "
               "(first-order variational approximation, natural atomic units)"};
  app.require_subcommand(1);

  detail::CommonOpts common;
  if (const char* env = std::getenv("VPTH_PRECISION")) {
    try {
      common.precision = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "vpth: ignoring bad VPTH_PRECISION value '" << env << "'\n";
    }
  }
  app.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output,-o", common.output, "output path ('-' for stdout)")
      ->capture_default_str();
  app.add_option("--precision", common.precision,
                 "decimal digits for the series solver (16, 50 or 100)");

  // potential ---------------------------------------------------------
  auto* potential = app.add_subcommand(
      "potential", "optimized potential profile along one or both axes");
  double pot_beta = 100.0, pot_B = 0.0, pot_tol = 1e-7;
  std::string pot_dir = "both", pot_grid = "0:8:33";
  potential->add_option("--beta", pot_beta, "inverse temperature")->required();
  potential->add_option("--B", pot_B, "magnetic field strength")->required();
  potential->add_option("--direction", pot_dir, "profile direction")
      ->check(CLI::IsMember({"transverse", "longitudinal", "both"}))
      ->capture_default_str();
  potential->add_option("--grid", pot_grid, "distance grid start:stop:count[:log|lin]")
      ->capture_default_str();
  potential->add_option("--tol", pot_tol, "stationarity tolerance")->capture_default_str();

  // ground-state ------------------------------------------------------
  auto* ground = app.add_subcommand("ground-state",
                                    "zero-temperature energies and binding energies");
  std::string gs_blist;
  ground->add_option("--B-list", gs_blist,
                     "field values: comma list or start:stop:count[:log|lin] "
                     "(log spacing is the default for range specs)")
      ->required();

  // weak-field --------------------------------------------------------
  auto* weak = app.add_subcommand("weak-field",
                                  "power-series coefficients of the weak-field expansion");
  int wf_order = 3;
  bool wf_rational = false;
  weak->add_option("--order", wf_order, "truncation order in t = B^2")->capture_default_str();
  weak->add_flag("--rational", wf_rational, "exact rational mode (adds *_exact columns)");

  // strong-field ------------------------------------------------------
  auto* strong = app.add_subcommand("strong-field",
                                    "asymptotic term breakdown of the binding energy");
  double sf_B = 1e5;
  strong->add_option("--B", sf_B, "magnetic field strength")->required();

  // partition ---------------------------------------------------------
  auto* part = app.add_subcommand("partition",
                                  "relative configuration-space partition integral");
  double pa_beta = 1.0, pa_B = 0.0, pa_tol = 1e-3, pa_opt_tol = 1e-6;
  std::string pa_rho = "0:12:25", pa_z = "0:12:25";
  part->add_option("--beta", pa_beta, "inverse temperature")->required();
  part->add_option("--B", pa_B, "magnetic field strength")->required();
  part->add_option("--rho-grid", pa_rho, "transverse grid (linear)")->capture_default_str();
  part->add_option("--z-grid", pa_z, "longitudinal grid, z >= 0 (linear)")
      ->capture_default_str();
  part->add_option("--tol", pa_tol, "relative tolerance on the grid quadrature")
      ->capture_default_str();
  part->add_option("--opt-tol", pa_opt_tol, "per-point stationarity tolerance")
      ->capture_default_str();

  // units -------------------------------------------------------------
  auto* units_cmd = app.add_subcommand("units", "natural-unit conversions");
  std::string un_value, un_kind = "", un_to = "natural";
  units_cmd->add_option("--value", un_value,
                        "value with unit suffix (eV,K,cm,T,G) or a bare natural value")
      ->required();
  units_cmd->add_option("--kind", un_kind, "dimension for bare values")
      ->check(CLI::IsMember({"energy", "temperature", "length", "field"}));
  units_cmd->add_option("--to", un_to, "conversion direction for bare values")
      ->check(CLI::IsMember({"natural", "physical"}))
      ->capture_default_str();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*potential) {
      Table t;
      detail::base_meta(t, common, "potential");
      t.meta.emplace_back("beta", detail::fmt(pot_beta));
      t.meta.emplace_back("B", detail::fmt(pot_B));
      t.meta.emplace_back("direction", pot_dir);
      t.meta.emplace_back("grid", pot_grid);
      t.meta.emplace_back("tol", detail::fmt(pot_tol));
      t.columns = {"direction", "distance",   "W",           "omega_perp1",
                   "omega_perp2", "omega_par", "residual",    "status"};
      const std::vector<double> grid = parse_grid(pot_grid);
      std::vector<ProfileDirection> dirs;
      if (pot_dir == "transverse" || pot_dir == "both")
        dirs.push_back(ProfileDirection::transverse);
      if (pot_dir == "longitudinal" || pot_dir == "both")
        dirs.push_back(ProfileDirection::longitudinal);
      for (auto d : dirs) {
        const char* name = d == ProfileDirection::transverse ? "transverse" : "longitudinal";
        for (const auto& row : potential_profile(pot_beta, pot_B, d, grid, pot_tol)) {
          t.add_row({cell(std::string(name)), cell(row.distance), cell(row.value),
                     cell(row.frequencies.perp1), cell(row.frequencies.perp2),
                     cell(row.frequencies.par), cell(row.residual),
                     cell(std::string(to_string(row.status)))});
        }
      }
      detail::emit(t, common);
    } else if (*ground) {
      Table t;
      detail::base_meta(t, common, "ground-state");
      t.meta.emplace_back("B-list", gs_blist);
      t.columns = {"B", "energy", "binding", "omega_perp2", "omega_par", "landau_estimate",
                   "status"};
      const std::vector<double> blist = parse_grid(gs_blist, /*default_log=*/true);
      for (const auto& row : binding_scan(blist)) {
        t.add_row({cell(row.gs.B), cell(row.gs.energy), cell(row.gs.binding),
                   cell(row.gs.omega_perp2), cell(row.gs.omega_par),
                   cell(row.landau_estimate),
                   cell(std::string(row.ok ? "ok" : ("failed: " + row.error)))});
      }
      detail::emit(t, common);
    } else if (*weak) {
      Table t;
      detail::base_meta(t, common, "weak-field");
      t.meta.emplace_back("order", std::to_string(wf_order));
      t.meta.emplace_back("mode", wf_rational ? "rational" : "float");
      t.columns = {"n", "eta_n", "omega_n", "epsilon_n", "epsilon_n_reference"};
      if (wf_rational) {
        t.columns.push_back("eta_n_exact");
        t.columns.push_back("omega_n_exact");
        t.columns.push_back("epsilon_n_exact");
      }
      for (const auto& r : solve_weak_field(wf_order, common.precision, wf_rational)) {
        std::vector<Cell> row = {cell(r.n), cell(r.eta), cell(r.omega), cell(r.eps),
                                 cell(r.eps_reference)};
        if (wf_rational) {
          row.push_back(cell(r.eta_exact));
          row.push_back(cell(r.omega_exact));
          row.push_back(cell(r.eps_exact));
        }
        t.add_row(std::move(row));
      }
      detail::emit(t, common);
    } else if (*strong) {
      Table t;
      detail::base_meta(t, common, "strong-field");
      t.meta.emplace_back("B", detail::fmt(sf_B));
      t.columns = {"B",     "term1", "term2", "term3", "term4", "term5", "term6",
                   "partial_sum", "correction_1_over_lnB", "total", "landau_estimate",
                   "omega_par_expansion", "reduced_optimum_binding"};
      const AsymptoticBreakdown br = binding_lnB_expansion(sf_B);
      const ReducedOptimum ro = maximize_binding_reduced(sf_B);
      t.add_row({cell(br.B), cell(br.terms[0]), cell(br.terms[1]), cell(br.terms[2]),
                 cell(br.terms[3]), cell(br.terms[4]), cell(br.terms[5]),
                 cell(br.partial_sum), cell(br.correction_1_over_lnB),
                 cell(br.partial_sum + br.correction_1_over_lnB), cell(br.landau_estimate),
                 cell(omega_par_expansion(sf_B)), cell(ro.binding)});
      detail::emit(t, common);
    } else if (*part) {
      Table t;
      detail::base_meta(t, common, "partition");
      t.meta.emplace_back("beta", detail::fmt(pa_beta));
      t.meta.emplace_back("B", detail::fmt(pa_B));
      t.meta.emplace_back("rho-grid", pa_rho);
      t.meta.emplace_back("z-grid", pa_z);
      t.meta.emplace_back("convention",
                          "relative integral: (1/lambda_th^3) Int 2 pi rho drho dz "
                          "[exp(-beta(W - W_far)) - 1], z mirrored over z>=0; W_far is the "
                          "far-field plateau");
      t.columns = {"beta", "B", "value", "error_estimate", "w_far"};
      const std::vector<double> rho = parse_grid(pa_rho);
      const std::vector<double> zs = parse_grid(pa_z);
      PotentialGrid grid;
      grid.rho = rho;
      grid.z = zs;
      grid.w.resize(rho.size() * zs.size());
      FrequencyTriple warm{pa_B, std::max(pa_B, 1.0), 0.5};
      for (std::size_t i = 0; i < rho.size(); ++i) {
        FrequencyTriple row_warm = warm;
        for (std::size_t j = 0; j < zs.size(); ++j) {
          const ThermoPoint p{pa_beta, pa_B, rho[i], zs[j]};
          const OptimizationResult r = optimize_frequencies(p, row_warm, pa_opt_tol);
          if (r.status == OptStatus::failed)
            throw NumericalError("partition: optimization failed at rho=" +
                                 std::to_string(rho[i]) + " z=" + std::to_string(zs[j]));
          grid.w[i * zs.size() + j] = r.value;
          row_warm = r.frequencies;
          if (j == 0) warm = r.frequencies;
        }
      }
      const PartitionResult pr = partition_integral(pa_beta, pa_B, grid, pa_tol);
      t.add_row({cell(pa_beta), cell(pa_B), cell(pr.value), cell(pr.error_estimate),
                 cell(pr.w_far)});
      detail::emit(t, common);
    } else if (*units_cmd) {
      Table t;
      detail::base_meta(t, common, "units");
      t.meta.emplace_back("value", un_value);
      t.columns = {"input", "kind", "direction", "result", "unit"};
      const bool has_suffix =
          !un_value.empty() && std::isalpha(static_cast<unsigned char>(un_value.back()));
      if (has_suffix) {
        const units::ParsedQuantity q = units::parse_quantity(un_value);
        const char* kind_name = q.kind == units::Dimension::energy        ? "energy"
                                : q.kind == units::Dimension::temperature ? "temperature"
                                : q.kind == units::Dimension::length      ? "length"
                                                                          : "field";
        t.add_row({cell(un_value), cell(std::string(kind_name)),
                   cell(std::string("to-natural")), cell(q.natural_value),
                   cell(std::string("natural"))});
      } else {
        if (un_kind.empty())
          throw ParseError("bare numeric values need --kind");
        const units::Dimension kind = units::dimension_from_name(un_kind);
        std::size_t pos = 0;
        double v = 0;
        try {
          v = std::stod(un_value, &pos);
        } catch (const std::exception&) {
          throw ParseError("bad numeric value '" + un_value + "'");
        }
        if (pos != un_value.size()) throw ParseError("bad numeric value '" + un_value + "'");
        if (un_to == "physical") {
          const units::PhysicalQuantity q = units::natural_to_physical(v, kind);
          t.add_row({cell(un_value), cell(un_kind), cell(std::string("to-physical")),
                     cell(q.value), cell(std::string(q.unit))});
        } else {
          t.add_row({cell(un_value), cell(un_kind), cell(std::string("to-natural")),
                     cell(units::physical_to_natural(v, kind)),
                     cell(std::string("natural"))});
        }
      }
      detail::emit(t, common);
    }
  } catch (const ParseError& e) {
    std::cerr << "vpth: parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "vpth: domain error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "vpth: numerical failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

} // namespace vpth::cli
