// dimkit command line: single evaluations, dimension sweeps, angular
// decompositions, loop integrals with optional numerical oracles, and the
// self-verification battery.
//
// Exit codes: 0 success, 1 domain/pole error (one-line diagnostic on stderr),
// 2 usage error.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dimkit/angular.hpp"
#include "dimkit/errors.hpp"
#include "dimkit/loop_integrals.hpp"
#include "dimkit/radial.hpp"
#include "dimkit/specfun.hpp"
#include "dimkit/sphere_measure.hpp"

#include "verify_suite.hpp"

namespace {

using nlohmann::json;

// 17 significant digits round-trips every double; to_chars is locale-free, so
// output is byte-identical across runs and machines.
std::string fmt(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void print_value(const char* name, double v) {
  std::fputs(name, stdout);
  std::fputc(' ', stdout);
  std::fputs(fmt(v).c_str(), stdout);
  std::fputc('\n', stdout);
}

double oracle_tolerance() {
  const char* env = std::getenv("DIMKIT_TOL");
  if (env == nullptr || *env == '\0') return 1e-9;
  const std::string s(env);
  double tol = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), tol);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !(tol > 0.0)) {
    throw std::invalid_argument("DIMKIT_TOL must be a positive number, got '" +
                                s + "'");
  }
  return tol;
}

void print_loop_result(const dimkit::loop_integrals::LoopResult& r,
                       const char* total_name, bool total_last) {
  if (!total_last) print_value(total_name, r.closed_form);
  for (const auto& [name, value] : r.components) {
    print_value(name.c_str(), value);
  }
  if (total_last) print_value(total_name, r.closed_form);
  if (r.oracle) {
    print_value("oracle", *r.oracle);
    print_value("oracle_error", *r.oracle_error);
    print_value("abs_diff", *r.abs_diff);
  }
}

json loop_result_json(const dimkit::loop_integrals::LoopResult& r) {
  json out;
  out["closed_form"] = r.closed_form;
  json comps = json::array();
  for (const auto& [name, value] : r.components) {
    comps.push_back({{"name", name}, {"value", value}});
  }
  out["components"] = comps;
  if (r.oracle) {
    out["oracle"] = *r.oracle;
    out["oracle_error"] = *r.oracle_error;
    out["abs_diff"] = *r.abs_diff;
  }
  return out;
}

// --- sweep ------------------------------------------------------------------

struct SweepRow {
  double d = 0.0;
  bool omega_zero = false;   // exact-zero lattice row
  bool volume_pole = false;  // d = 0 row
  double omega = 0.0;
  double volume = 0.0;
};

std::vector<SweepRow> run_sweep(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep step must be > 0");
  if (!(from < to)) {
    throw std::invalid_argument("sweep range needs --from < --to");
  }
  if ((to - from) / step > 1e7) {
    throw std::invalid_argument("sweep would exceed 1e7 rows");
  }
  constexpr double kPoleRadius = 1e-6;
  const auto n_rows =
      static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(n_rows));
  for (long i = 0; i < n_rows; ++i) {
    SweepRow row;
    row.d = from + static_cast<double>(i) * step;
    const double nearest_even = 2.0 * std::nearbyint(row.d / 2.0);
    if (nearest_even <= 0.0 && std::fabs(row.d - nearest_even) < kPoleRadius) {
      row.omega_zero = true;
      row.volume_pole = std::fabs(row.d) < kPoleRadius;
    } else {
      row.omega = dimkit::sphere_measure::surface(row.d);
      row.volume = dimkit::sphere_measure::volume(row.d);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "d,omega,volume\n";
  for (const auto& row : rows) {
    os << fmt(row.d) << ',';
    if (row.omega_zero) {
      os << "0," << (row.volume_pole ? "pole" : "0");
    } else {
      os << fmt(row.omega) << ',' << fmt(row.volume);
    }
    os << '\n';
  }
}

void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj;
    obj["d"] = row.d;
    obj["omega"] = row.omega_zero ? json(0.0) : json(row.omega);
    if (row.volume_pole) {
      obj["volume"] = "pole";
    } else {
      obj["volume"] = row.omega_zero ? json(0.0) : json(row.volume);
    }
    arr.push_back(obj);
  }
  os << arr.dump(2) << '\n';
}

void write_plot_script(const std::string& out_path, const std::string& format) {
  const std::string script_path = out_path + ".plot.py";
  std::ofstream os(script_path, std::ios::binary);
  if (!os) {
    throw std::invalid_argument("cannot write plot script to " + script_path);
  }
  os << "#!/usr/bin/env python3\n"
        "\"\"\"Plot a dimkit sweep: surface and volume measures vs "
        "dimension.\"\"\"\n"
        "import math\n"
        "import matplotlib.pyplot as plt\n\n"
        "path = "
     << std::quoted(out_path) << "\n";
  if (format == "csv") {
    os << "import csv\n"
          "d, omega, volume = [], [], []\n"
          "with open(path, newline='') as fh:\n"
          "    for row in csv.DictReader(fh):\n"
          "        d.append(float(row['d']))\n"
          "        omega.append(float(row['omega']))\n"
          "        v = row['volume']\n"
          "        volume.append(math.nan if v == 'pole' else float(v))\n";
  } else {
    os << "import json\n"
          "rows = json.load(open(path))\n"
          "d = [r['d'] for r in rows]\n"
          "omega = [r['omega'] for r in rows]\n"
          "volume = [math.nan if r['volume'] == 'pole' else r['volume']\n"
          "          for r in rows]\n";
  }
  os << "\n"
        "fig, ax = plt.subplots()\n"
        "ax.plot(d, omega, label='surface measure')\n"
        "ax.plot(d, volume, label='ball volume')\n"
        "ax.axhline(0.0, color='gray', lw=0.5)\n"
        "ax.set_xlabel('d')\n"
        "ax.legend()\n"
        "fig.savefig(path + '.png', dpi=160)\n"
        "print('wrote', path + '.png')\n";
}

// --- radial -----------------------------------------------------------------

std::vector<double> parse_grid_side(const std::string& side,
                                    const std::string& which) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= side.size()) {
    const std::size_t comma = std::min(side.find(',', pos), side.size());
    const std::string tok = side.substr(pos, comma - pos);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("bad " + which + " grid entry '" + tok +
                                  "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

void parse_grids(const std::string& spec, std::vector<double>& delta_grid,
                 std::vector<double>& K_grid) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument(
        "--grids wants 'd1,d2,...:K1,K2,...' (lower cutoffs : upper cutoffs)");
  }
  delta_grid = parse_grid_side(spec.substr(0, colon), "lower-cutoff");
  K_grid = parse_grid_side(spec.substr(colon + 1), "upper-cutoff");
}

dimkit::radial::RadialIntegrandKind parse_kind(const std::string& token) {
  using dimkit::radial::RadialIntegrandKind;
  if (token == "pure_power") return RadialIntegrandKind::kPurePower;
  if (token == "power_over_one_plus") {
    return RadialIntegrandKind::kPowerOverOnePlus;
  }
  if (token == "power_exp") return RadialIntegrandKind::kPowerExp;
  throw std::invalid_argument(
      "--kind must be pure_power, power_over_one_plus or power_exp");
}

// --- subcommand bodies ------------------------------------------------------

int cmd_coeff(double d, bool compare_printed) {
  namespace sm = dimkit::sphere_measure;
  std::printf("regime %s\n", sm::regime_name(sm::classify(d)));
  print_value("coefficient", sm::measure_coefficient(d));
  print_value("sine_exponent", sm::sine_exponent(d));
  if (compare_printed) {
    const double printed = sm::measure_coefficient_variant(d);
    print_value("printed_coefficient", printed);
    print_value("printed_over_consistent",
                printed / sm::measure_coefficient(d));
  }
  return 0;
}

int cmd_angles(double d, std::optional<int> n) {
  namespace sm = dimkit::sphere_measure;
  const int mx = sm::max_angles(d);
  const auto dec = sm::decompose(d, n.value_or(mx));
  print_value("source_dimension", dec.source_dimension);
  std::printf("regime %s\n", sm::regime_name(sm::classify(d)));
  std::printf("max_angles %d\n", mx);
  std::printf("n_angles %zu\n", dec.angular_factors.size());
  print_value("prefactor", dec.prefactor);
  print_value("radial_exponent", dec.radial_exponent);
  print_value("residual_dimension", dec.residual_dimension);
  for (const auto& f : dec.angular_factors) {
    std::printf("angle %d exponent %s\n", f.angle_index,
                fmt(f.sine_exponent).c_str());
  }
  return 0;
}

int cmd_radial(const std::string& kind_token, double d,
               const std::string& grids) {
  namespace rd = dimkit::radial;
  rd::RadialIntegrandSpec spec;
  spec.kind = parse_kind(kind_token);
  spec.exponent = d / 2.0 - 1.0;
  spec.scale = 1.0;

  std::vector<double> delta_grid = rd::default_delta_grid(spec.scale);
  std::vector<double> K_grid = rd::default_K_grid(spec.scale);
  if (!grids.empty()) parse_grids(grids, delta_grid, K_grid);

  std::printf("kind %s\n", kind_token.c_str());
  print_value("exponent", spec.exponent);
  const auto ex = rd::extract_finite_part(spec, delta_grid, K_grid);
  print_value("finite_part", ex.finite_part);
  print_value("error_estimate", ex.error_estimate);
  for (const auto& t : ex.stripped_terms) {
    std::printf("stripped_term %s %s %s\n",
                t.side == rd::StrippedTerm::Side::kLower ? "lower" : "upper",
                fmt(t.exponent).c_str(), fmt(t.coefficient).c_str());
  }
  if (spec.kind != rd::RadialIntegrandKind::kPurePower) {
    print_value("reference", rd::finite_part_reference(spec));
    print_value("closed_form", rd::closed_form_finite_part(spec));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical measures, angular decompositions and regularized "
               "loop integrals in arbitrary real dimension"};
  app.require_subcommand(1);
  int exit_code = 0;

  // omega / volume: bare 17-significant-digit value on stdout.
  double om_d = 0.0;
  auto* omega_cmd = app.add_subcommand("omega", "surface measure of the unit "
                                                "sphere in dimension d");
  omega_cmd->add_option("--d", om_d, "dimension")->required();
  omega_cmd->callback([&] {
    std::printf("%s\n", fmt(dimkit::sphere_measure::surface(om_d)).c_str());
  });

  double vol_d = 0.0;
  auto* volume_cmd =
      app.add_subcommand("volume", "volume of the unit ball in dimension d");
  volume_cmd->add_option("--d", vol_d, "dimension")->required();
  volume_cmd->callback([&] {
    std::printf("%s\n", fmt(dimkit::sphere_measure::volume(vol_d)).c_str());
  });

  double coeff_d = 0.0;
  bool coeff_compare = false;
  auto* coeff_cmd = app.add_subcommand(
      "coeff", "single-angle measure coefficient and sine exponent");
  coeff_cmd->add_option("--d", coeff_d, "dimension")->required();
  coeff_cmd->add_flag("--compare-printed", coeff_compare,
                      "also evaluate the commonly transcribed coefficient and "
                      "its ratio to the consistent one");
  coeff_cmd->callback([&] { exit_code = cmd_coeff(coeff_d, coeff_compare); });

  double ang_d = 0.0;
  int ang_n = -1;
  auto* angles_cmd = app.add_subcommand(
      "angles", "multi-angle decomposition of the surface measure");
  angles_cmd->add_option("--d", ang_d, "dimension")->required();
  angles_cmd->add_option("--n", ang_n, "number of angles to peel "
                                       "(default: the regime maximum)")
      ->check(CLI::PositiveNumber);
  angles_cmd->callback([&] {
    exit_code = cmd_angles(
        ang_d, ang_n < 0 ? std::nullopt : std::optional<int>(ang_n));
  });

  double sw_from = 0.0, sw_to = 0.0, sw_step = 0.0;
  std::string sw_out, sw_format;
  bool sw_plot = false;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "tabulate surface and volume measures over a dimension range");
  sweep_cmd->add_option("--from", sw_from, "first dimension")->required();
  sweep_cmd->add_option("--to", sw_to, "last dimension")->required();
  sweep_cmd->add_option("--step", sw_step, "dimension increment")->required();
  sweep_cmd->add_option("--out", sw_out,
                        "output path (default: write to stdout)");
  sweep_cmd->add_option("--format", sw_format, "csv or json")
      ->required()
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_flag("--emit-plot-script", sw_plot,
                      "also write <out>.plot.py (requires --out)");
  sweep_cmd->callback([&] {
    if (sw_plot && sw_out.empty()) {
      throw std::invalid_argument("--emit-plot-script requires --out");
    }
    const auto rows = run_sweep(sw_from, sw_to, sw_step);
    const auto write = [&](std::ostream& os) {
      if (sw_format == "csv") {
        write_sweep_csv(os, rows);
      } else {
        write_sweep_json(os, rows);
      }
    };
    if (sw_out.empty()) {
      write(std::cout);
    } else {
      std::ofstream os(sw_out, std::ios::binary);
      if (!os) throw std::invalid_argument("cannot open " + sw_out);
      write(os);
      if (sw_plot) write_plot_script(sw_out, sw_format);
    }
  });

  double bub_d = 0.0, bub_m = 0.0;
  bool bub_oracle = false;
  std::string bub_format = "text";
  auto* bubble_cmd = app.add_subcommand(
      "bubble", "momentum integral of 1/(p^2 + m^2) in dimension d");
  bubble_cmd->add_option("--d", bub_d, "dimension")->required();
  bubble_cmd->add_option("--m", bub_m, "mass")->required();
  bubble_cmd->add_flag("--oracle", bub_oracle,
                       "cross-check against direct numerical integration");
  bubble_cmd->add_option("--format", bub_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  bubble_cmd->callback([&] {
    const auto r = dimkit::loop_integrals::vacuum_bubble(
        bub_d, bub_m, bub_oracle, oracle_tolerance());
    if (bub_format == "json") {
      std::cout << loop_result_json(r).dump(2) << '\n';
    } else {
      print_loop_result(r, "closed_form", false);
    }
  });

  double dot_d = 0.0, dot_q = 0.0;
  bool dot_oracle = false;
  std::string dot_format = "text";
  auto* dot_cmd = app.add_subcommand(
      "dotprod", "parity-vanishing integral of (q.p)/p^2 with its two "
                 "finite angular halves");
  dot_cmd->add_option("--d", dot_d, "dimension")->required();
  dot_cmd->add_option("--q", dot_q, "external vector magnitude")->required();
  dot_cmd->add_flag("--oracle", dot_oracle,
                    "cross-check against direct numerical integration");
  dot_cmd->add_option("--format", dot_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  dot_cmd->callback([&] {
    const auto r = dimkit::loop_integrals::dot_product_integral(
        dot_d, dot_q, dot_oracle, oracle_tolerance());
    if (dot_format == "json") {
      std::cout << loop_result_json(r).dump(2) << '\n';
    } else {
      print_loop_result(r, "total", true);
    }
  });

  double ext_d = 0.0, ext_k = 0.0, ext_m = 0.0;
  bool ext_oracle = false, ext_compare = false;
  std::string ext_format = "text";
  auto* ext_cmd = app.add_subcommand(
      "extmom", "momentum integral of 1/((|p||k| - p.k)(p^2 + m^2))");
  ext_cmd->add_option("--d", ext_d, "dimension")->required();
  ext_cmd->add_option("--k", ext_k, "external momentum magnitude")->required();
  ext_cmd->add_option("--m", ext_m, "mass")->required();
  ext_cmd->add_flag("--oracle", ext_oracle,
                    "cross-check against direct numerical integration");
  ext_cmd->add_flag("--compare-printed", ext_compare,
                    "also evaluate the commonly transcribed single-line form "
                    "and its ratio to the assembled value");
  ext_cmd->add_option("--format", ext_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  ext_cmd->callback([&] {
    const auto r = dimkit::loop_integrals::external_momentum_integral(
        ext_d, ext_k, ext_m, ext_oracle, oracle_tolerance());
    const double printed =
        ext_compare ? dimkit::loop_integrals::external_momentum_display_variant(
                          ext_d, ext_k, ext_m)
                    : 0.0;
    if (ext_format == "json") {
      json out = loop_result_json(r);
      if (ext_compare) {
        out["printed_form"] = printed;
        out["printed_over_assembled"] = printed / r.closed_form;
      }
      std::cout << out.dump(2) << '\n';
    } else {
      print_loop_result(r, "closed_form", false);
      if (ext_compare) {
        print_value("printed_form", printed);
        print_value("printed_over_assembled", printed / r.closed_form);
      }
    }
  });

  std::string rad_kind;
  double rad_d = 0.0;
  std::string rad_grids;
  auto* radial_cmd = app.add_subcommand(
      "radial", "extract the cutoff-independent finite part of a regularized "
                "radial integral (exponent a = d/2 - 1)");
  radial_cmd->add_option("--kind", rad_kind,
                         "pure_power | power_over_one_plus | power_exp")
      ->required();
  radial_cmd->add_option("--d", rad_d, "dimension")->required();
  radial_cmd->add_option("--grids", rad_grids,
                         "cutoff grids as 'd1,d2,...:K1,K2,...'");
  radial_cmd->callback(
      [&] { exit_code = cmd_radial(rad_kind, rad_d, rad_grids); });

  std::string ver_filter;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the built-in identity and oracle battery");
  verify_cmd->add_option("--filter", ver_filter,
                         "only run checks whose name contains this substring");
  verify_cmd->callback([&] {
    exit_code =
        dimkit_cli::run_verify(ver_filter, oracle_tolerance()) == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const dimkit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }
  return exit_code;
}
