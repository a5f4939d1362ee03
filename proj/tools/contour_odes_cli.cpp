// Command-line front end: evaluate family members, dump coefficient tables,
// run the verification properties, and scan grids for external plotting.
//
// Output is JSON lines by default (CSV for scan), floats always printed
// with %.17g so identical invocations are byte-identical and values
// round-trip through text.
//
// Exit codes: 0 success, 1 verification failure, 2 argument or domain
// validation, 3 quadrature non-convergence, 4 unwritable output path.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "contour_odes/contour_odes.hpp"

using namespace contour_odes;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  std::size_t used = 0;
  try {
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return cplx(re, 0.0);
    }
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(text);
    const std::string imag_part = text.substr(comma + 1);
    const double im = std::stod(imag_part, &used);
    if (used != imag_part.size()) throw std::invalid_argument(text);
    return cplx(re, im);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse '" + text + "' as a complex number (re or re,im)");
  }
}

std::vector<double> parse_colon_range(const std::string& text, std::size_t expected) {
  std::vector<double> fields;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(':', pos);
    const std::string piece =
        next == std::string::npos ? text.substr(pos) : text.substr(pos, next - pos);
    std::size_t used = 0;
    try {
      fields.push_back(std::stod(piece, &used));
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != piece.size())
      throw std::invalid_argument("cannot parse range field '" + piece + "' in '" + text + "'");
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (fields.size() != expected)
    throw std::invalid_argument("range '" + text + "' must have " + std::to_string(expected) +
                                " colon-separated fields");
  return fields;
}

std::string render_b(cplx b) {
  return fmt(b.real()) + (b.imag() < 0 ? "" : "+") + fmt(b.imag()) + "i";
}

struct FamilyArgs {
  std::string family;
  int n = 0;
  int k = 0;
  int j = 0;
  int deriv = 0;
  std::string b_text = "0";
  double g_radius = 1.0;
  std::string scale = "default";
};

void add_family_options(CLI::App* cmd, FamilyArgs& args) {
  cmd->add_option("--family", args.family, "phi|psi|u|fj|uj|U|H|Hneg|G|Ai")->required();
  cmd->add_option("--n", args.n, "ODE order");
  cmd->add_option("--k", args.k, "lower derivative order");
  cmd->add_option("--b", args.b_text, "coefficient b (re or re,im)");
  cmd->add_option("--j", args.j, "ray rotation index");
  cmd->add_option("-p,--deriv", args.deriv, "derivative order")->check(CLI::NonNegativeNumber);
  cmd->add_option("--R", args.g_radius, "circle radius for G")->check(CLI::PositiveNumber);
  cmd->add_option("--scale", args.scale, "default|2pii multiplies output by 2 pi i")
      ->check(CLI::IsMember({"default", "2pii"}));
}

void add_quadrature_options(CLI::App* cmd, QuadratureSpec& spec) {
  cmd->add_option("--abs-tol", spec.abs_tol, "absolute tolerance")
      ->check(CLI::PositiveNumber)
      ->envname("CONTOUR_ODES_TOL");
  cmd->add_option("--rel-tol", spec.rel_tol, "relative tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-subdiv", spec.max_subdivisions, "adaptive subdivision budget")
      ->check(CLI::PositiveNumber);
}

EvalResult eval_family(const FamilyArgs& args, cplx z, const QuadratureSpec& spec) {
  EvalResult out;
  if (args.family == "phi")
    out = phi_eval(PhiParams{args.n, args.k, parse_complex(args.b_text)}, args.deriv, z, spec);
  else if (args.family == "psi")
    out = psi_eval(PsiParams{args.n, args.k}, args.deriv, z, spec);
  else if (args.family == "u")
    out = u_eval(args.n, args.deriv, z, spec);
  else if (args.family == "fj")
    out = fj_eval(args.n, args.j, args.deriv, z, spec);
  else if (args.family == "uj")
    out = uj_eval(args.n, args.j, args.deriv, z, spec);
  else if (args.family == "Ai")
    out = u_eval(2, args.deriv, z, spec);
  else if (args.family == "G")
    out = G_eval(args.deriv, z, args.g_radius, spec);
  else
    out = special_eval(args.family, args.deriv, z, spec);
  if (args.scale == "2pii") {
    out.value *= cplx(0.0, 2.0 * pi);
    out.error_estimate *= 2.0 * pi;
  }
  return out;
}

std::string function_id(const FamilyArgs& args) {
  std::string id = args.scale == "2pii" ? "2pii*" : "";
  id += args.family + "[";
  if (args.family == "phi")
    id += "n=" + std::to_string(args.n) + " k=" + std::to_string(args.k) +
          " b=" + render_b(parse_complex(args.b_text)) + " ";
  else if (args.family == "psi")
    id += "n=" + std::to_string(args.n) + " k=" + std::to_string(args.k) + " ";
  else if (args.family == "u")
    id += "n=" + std::to_string(args.n) + " ";
  else if (args.family == "fj" || args.family == "uj")
    id += "n=" + std::to_string(args.n) + " j=" + std::to_string(args.j) + " ";
  else if (args.family == "G")
    id += "R=" + fmt(args.g_radius) + " ";
  id += "p=" + std::to_string(args.deriv) + "]";
  return id;
}

void print_record_header(std::ostream& out, bool csv) {
  if (csv) out << "z_re,z_im,value_re,value_im,error_estimate,function_id\n";
}

void print_record(std::ostream& out, bool csv, cplx z, const EvalResult& result,
                  const std::string& id) {
  if (csv)
    out << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(result.value.real()) << ','
        << fmt(result.value.imag()) << ',' << fmt(result.error_estimate) << ',' << id << '\n';
  else
    out << "{\"z_re\":" << fmt(z.real()) << ",\"z_im\":" << fmt(z.imag())
        << ",\"value_re\":" << fmt(result.value.real())
        << ",\"value_im\":" << fmt(result.value.imag())
        << ",\"error_estimate\":" << fmt(result.error_estimate) << ",\"function_id\":\"" << id
        << "\"}\n";
}

int run_eval(const FamilyArgs& args, const std::vector<std::string>& z_texts, bool csv,
             const QuadratureSpec& spec) {
  const std::string id = function_id(args);
  print_record_header(std::cout, csv);
  for (const std::string& text : z_texts) {
    const cplx z = parse_complex(text);
    print_record(std::cout, csv, z, eval_family(args, z, spec), id);
  }
  return 0;
}

int run_coeffs(const std::string& family, int n, int k, const std::string& b_text, int max_index,
               double trunc_tol, bool estimate, bool csv, const QuadratureSpec& spec) {
  SeriesCoeffs series;
  std::vector<int> indices;
  if (family == "U") {
    series = U_series(max_index, trunc_tol);
    for (int nu = 0; nu <= max_index; ++nu) indices.push_back(2 * nu);
  } else if (family == "psi") {
    series = psi_series(PsiParams{n, k}, max_index, trunc_tol);
    for (int m = 0; m <= max_index; ++m) indices.push_back(m);
  } else if (family == "u") {
    series = recurrence_extend(PhiParams{n, 1, cplx(0.0)}, u_seed(n), max_index);
    for (int m = 0; m <= max_index; ++m) indices.push_back(m);
  } else if (family == "phi") {
    const PhiParams params{n, k, parse_complex(b_text)};
    series = recurrence_extend(params, phi_quadrature_seed(params, spec), max_index);
    series.provenance = "quadrature_seed";
    for (int m = 0; m <= max_index; ++m) indices.push_back(m);
  } else {
    throw std::invalid_argument("coeffs supports families U, psi, u, phi; got '" + family + "'");
  }

  if (csv) std::cout << "index,coeff_re,coeff_im,provenance\n";
  for (const int m : indices) {
    if (csv)
      std::cout << m << ',' << fmt(series.coeffs[m].real()) << ',' << fmt(series.coeffs[m].imag())
                << ',' << series.provenance << '\n';
    else
      std::cout << "{\"index\":" << m << ",\"coeff_re\":" << fmt(series.coeffs[m].real())
                << ",\"coeff_im\":" << fmt(series.coeffs[m].imag()) << ",\"provenance\":\""
                << series.provenance << "\"}\n";
  }
  if (estimate) {
    const OrderTypeEstimate est = order_type_estimate(series, family == "U");
    if (csv)
      std::cout << "# rho_hat=" << fmt(est.rho_hat) << " tau_hat=" << fmt(est.tau_hat)
                << " nu_used=" << est.nu_used << '\n';
    else
      std::cout << "{\"rho_hat\":" << fmt(est.rho_hat) << ",\"tau_hat\":" << fmt(est.tau_hat)
                << ",\"nu_used\":" << est.nu_used << "}\n";
  }
  return 0;
}

int run_verify(const std::string& property, int n_count, int n, int k_count, int k,
               int b_count, const std::string& b_text, const QuadratureSpec& spec) {
  std::vector<std::string> ids;
  if (property.empty())
    ids = registered_properties();
  else
    ids.push_back(property);

  bool all_passed = true;
  for (const std::string& id : ids) {
    FamilyParams params = default_property_params(id);
    if (n_count || k_count || b_count) {
      if (PhiParams* phi = std::get_if<PhiParams>(&params)) {
        if (n_count) phi->n = n;
        if (k_count) phi->k = k;
        if (b_count) phi->b = parse_complex(b_text);
      } else if (PsiParams* psi = std::get_if<PsiParams>(&params)) {
        if (n_count) psi->n = n;
        if (k_count) psi->k = k;
        if (b_count) throw std::invalid_argument(id + ": --b does not apply");
      } else {
        throw std::invalid_argument(id + ": property takes no parameter overrides");
      }
    }
    const PropertyReport report = run_property(id, params, default_property_grid(id), spec);
    std::cout << report_to_json(report) << '\n';
    all_passed = all_passed && report.passed;
  }
  return all_passed ? 0 : 1;
}

int run_scan(const FamilyArgs& args, const std::string& ray_spec, double ray_theta,
             bool have_ray, double circle_radius, bool have_circle, int circle_points,
             const std::string& rect_spec, const std::string& out_path, bool csv,
             const QuadratureSpec& spec) {
  const int modes = int(have_ray) + int(have_circle) + int(!rect_spec.empty());
  if (modes != 1)
    throw std::invalid_argument("scan needs exactly one of --ray/--r, --circle, --rect");

  std::vector<cplx> grid;
  if (have_ray) {
    if (ray_spec.empty()) throw std::invalid_argument("--ray also needs --r start:stop:step");
    const auto r = parse_colon_range(ray_spec, 3);
    if (!(r[2] > 0.0) || r[1] < r[0])
      throw std::invalid_argument("--r must be start:stop:step with step > 0, stop >= start");
    const long count = std::lround((r[1] - r[0]) / r[2]);
    for (long i = 0; i <= count; ++i) grid.push_back(std::polar(r[0] + double(i) * r[2], ray_theta));
  } else if (have_circle) {
    if (circle_points < 1) throw std::invalid_argument("--points must be positive");
    for (int j = 0; j < circle_points; ++j)
      grid.push_back(std::polar(circle_radius, 2.0 * pi * j / circle_points));
  } else {
    const auto r = parse_colon_range(rect_spec, 5);
    if (!(r[4] > 0.0) || r[1] < r[0] || r[3] < r[2])
      throw std::invalid_argument("--rect must be xmin:xmax:ymin:ymax:step with step > 0");
    const long nx = std::lround((r[1] - r[0]) / r[4]);
    const long ny = std::lround((r[3] - r[2]) / r[4]);
    for (long iy = 0; iy <= ny; ++iy)
      for (long ix = 0; ix <= nx; ++ix)
        grid.push_back(cplx(r[0] + double(ix) * r[4], r[2] + double(iy) * r[4]));
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open '" << out_path << "' for writing\n";
      return 4;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  const std::string id = function_id(args);
  print_record_header(out, csv);
  for (const cplx& z : grid) print_record(out, csv, z, eval_family(args, z, spec), id);
  if (!out_path.empty() && !file.good()) {
    std::cerr << "write to '" << out_path << "' failed\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour-integral solution families of linear ODEs"};
  app.require_subcommand(1);

  QuadratureSpec spec{};
  FamilyArgs eval_args, scan_args;
  std::vector<std::string> z_texts;
  std::string format_eval = "json", format_scan = "csv", format_coeffs = "json";

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a family member at points");
  add_family_options(eval_cmd, eval_args);
  add_quadrature_options(eval_cmd, spec);
  eval_cmd->add_option("--z", z_texts, "evaluation point (re or re,im); repeatable")->required();
  eval_cmd->add_option("--format", format_eval, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string coeffs_family, coeffs_b = "0";
  int coeffs_n = 0, coeffs_k = 0, coeffs_max = -1;
  double trunc_tol = 1e-16;
  bool estimate = false;
  CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "dump Maclaurin coefficients");
  coeffs_cmd->add_option("--family", coeffs_family, "U|psi|u|phi")->required();
  coeffs_cmd->add_option("--n", coeffs_n, "ODE order");
  coeffs_cmd->add_option("--k", coeffs_k, "lower derivative order");
  coeffs_cmd->add_option("--b", coeffs_b, "coefficient b (re or re,im)");
  CLI::Option* max_nu = coeffs_cmd->add_option("--max-nu", coeffs_max, "highest even index / 2")
                            ->check(CLI::NonNegativeNumber);
  CLI::Option* max_s =
      coeffs_cmd->add_option("--max-s", coeffs_max, "highest index")->check(CLI::NonNegativeNumber);
  CLI::Option* max_m =
      coeffs_cmd->add_option("--max-m", coeffs_max, "highest index")->check(CLI::NonNegativeNumber);
  max_nu->excludes(max_s)->excludes(max_m);
  max_s->excludes(max_m);
  coeffs_cmd->add_option("--trunc-tol", trunc_tol, "series truncation tolerance")
      ->check(CLI::PositiveNumber);
  coeffs_cmd->add_flag("--estimate", estimate, "append growth order/type estimate");
  coeffs_cmd->add_option("--format", format_coeffs, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_quadrature_options(coeffs_cmd, spec);

  std::string verify_property, verify_b = "0";
  int verify_n = 0, verify_k = 0;
  bool verify_all = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run property checks");
  verify_cmd->add_flag("--all", verify_all, "run every registered property (the default)");
  CLI::Option* prop_opt =
      verify_cmd->add_option("--property", verify_property, "run one property by id");
  CLI::Option* vn = verify_cmd->add_option("--n", verify_n, "override ODE order");
  CLI::Option* vk = verify_cmd->add_option("--k", verify_k, "override lower derivative order");
  CLI::Option* vb = verify_cmd->add_option("--b", verify_b, "override coefficient b");
  add_quadrature_options(verify_cmd, spec);

  std::string ray_range, rect_spec, out_path;
  double ray_theta = 0.0, circle_radius = 0.0;
  int circle_points = 128;
  CLI::App* scan_cmd = app.add_subcommand("scan", "evaluate over a ray, circle, or rectangle");
  add_family_options(scan_cmd, scan_args);
  add_quadrature_options(scan_cmd, spec);
  CLI::Option* ray_opt = scan_cmd->add_option("--ray", ray_theta, "ray angle in radians");
  scan_cmd->add_option("--r", ray_range, "radii start:stop:step along the ray");
  CLI::Option* circle_opt = scan_cmd->add_option("--circle", circle_radius, "circle radius");
  scan_cmd->add_option("--points", circle_points, "points on the circle");
  scan_cmd->add_option("--rect", rect_spec, "grid xmin:xmax:ymin:ymax:step");
  scan_cmd->add_option("--out", out_path, "output file (default stdout)");
  scan_cmd->add_option("--format", format_scan, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_args, z_texts, format_eval == "csv", spec);
    if (coeffs_cmd->parsed()) {
      if (coeffs_max < 0)
        throw std::invalid_argument("coeffs needs one of --max-nu, --max-s, --max-m");
      return run_coeffs(coeffs_family, coeffs_n, coeffs_k, coeffs_b, coeffs_max, trunc_tol,
                        estimate, format_coeffs == "csv", spec);
    }
    if (verify_cmd->parsed()) {
      if (verify_all && !verify_property.empty())
        throw std::invalid_argument("--all and --property are mutually exclusive");
      (void)prop_opt;
      return run_verify(verify_property, int(vn->count()), verify_n, int(vk->count()), verify_k,
                        int(vb->count()), verify_b, spec);
    }
    return run_scan(scan_args, ray_range, ray_theta, ray_opt->count() > 0, circle_radius,
                    circle_opt->count() > 0, circle_points, rect_spec, out_path,
                    format_scan == "csv", spec);
  } catch (const NonConvergence& e) {
    std::cerr << "quadrature did not converge: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
