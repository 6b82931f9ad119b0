// Command-line front end for the cubereg library.

#include "cubereg/current.hpp"
#include "cubereg/cycle.hpp"
#include "cubereg/cycle_spec.hpp"
#include "cubereg/error.hpp"
#include "cubereg/expression.hpp"
#include "cubereg/loop.hpp"
#include "cubereg/regulator.hpp"
#include "cubereg/special.hpp"
#include "cubereg/tracker.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace cubereg;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Globals {
  bool json_out = false;
};

// CUBEREG_PRECISION = fast | standard | high picks the default quadrature tolerance.
double default_tolerance() {
  const char* mode = std::getenv("CUBEREG_PRECISION");
  if (!mode) return 1e-10;
  std::string m(mode);
  if (m == "fast") return 1e-8;
  if (m == "high") return 1e-12;
  if (m == "standard" || m.empty()) return 1e-10;
  throw Error(ErrorCode::ParseError, "CUBEREG_PRECISION must be fast, standard or high, got '" + m + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<double> parse_doubles(const std::string& s, size_t expected, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, what + ": '" + part + "' is not a number");
    }
  }
  if (expected && out.size() != expected)
    throw Error(ErrorCode::ParseError, what + ": expected " + std::to_string(expected) + " comma-separated values");
  return out;
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12f %c %.12fi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buf;
}

json value_json(const RegulatorValue& v, const std::string& formula) {
  json j;
  j["formula"] = formula;
  j["value"] = complex_json(v.value);
  j["lattice"] = v.lattice;
  RegulatorValue r = reduce_mod_lattice(v);
  j["reduced"] = complex_json(r.value);
  if (auto alt = alternate_representative(v)) j["alternate"] = complex_json(*alt);
  j["error"] = v.error;
  j["diagnostics"] = v.diagnostics;
  return j;
}

void print_value(std::ostream& out, const RegulatorValue& v, const std::string& formula) {
  RegulatorValue r = reduce_mod_lattice(v);
  out << formula << ", values in C/Z(" << v.lattice << ")\n";
  out << "  value    = " << fmt(v.value) << "\n";
  out << "  reduced  = " << fmt(r.value) << "\n";
  if (auto alt = alternate_representative(v)) out << "  also     = " << fmt(*alt) << " (cell seam)\n";
  out << "  error   <= " << fmt(v.error) << "\n";
  for (const auto& d : v.diagnostics) out << "  note: " << d << "\n";
}

RationalFunction parse_function(const std::string& text, const std::string& what) {
  try {
    return parse_expression(text);
  } catch (const Error& e) {
    throw Error(e.code(), what + ": " + e.message(), e.line(), e.column());
  }
}

Loop loop_from(const std::string& arg, const CycleSpecDocument* doc) {
  if (!arg.empty()) return parse_loop(arg);
  if (doc && !doc->loops.empty()) return parse_loop(doc->loops.front());
  throw Error(ErrorCode::ParseError, "no loop given: pass --loop or list one under \"loops\" in the spec");
}

// ---- commands -------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& spec_path, bool dump) {
  CycleSpecDocument doc = read_cycle_spec(spec_path);
  Cycle z = build_cycle(doc);
  if (dump) {
    std::cout << dump_cycle_spec(z, doc.cuts, doc.loops);
    return kExitOk;
  }
  AdmissibilityReport adm = check_admissible(z);
  json j;
  j["cycle"] = z.to_string();
  j["admissible"] = adm.ok;
  j["violations"] = adm.violations;
  j["notes"] = adm.notes;
  std::string summary;
  if (adm.ok) {
    Cycle b = boundary(z);
    RealPositionReport rp = real_position_check(z, 1e-9, doc.cuts.value_or(std::vector<double>{}));
    json degenerate = json::array();
    for (size_t k = 0; k < z.terms().size(); ++k)
      if (const auto* pc = std::get_if<ParamCurve>(&z.terms()[k].component))
        if (is_degenerate(*pc)) degenerate.push_back(component_to_string(z.terms()[k].component));
    j["boundary"] = b.to_string();
    j["closed"] = b.empty();
    j["real_position"] = rp.ok;
    j["real_position_violations"] = rp.violations;
    j["degenerate"] = degenerate;
    summary = "boundary = " + b.to_string() + "; admissible; real-position " + (rp.ok ? "ok" : "violated");
    if (!g.json_out) {
      std::cout << "cycle: " << z.to_string() << "\n" << summary << "\n";
      for (const auto& v : rp.violations) std::cout << "  real-position: " << v << "\n";
      for (const auto& n : adm.notes) std::cout << "  note: " << n << "\n";
      std::cout << "degenerate components: " << (degenerate.empty() ? "none" : degenerate.dump()) << "\n";
    }
  } else if (!g.json_out) {
    std::cout << "cycle: " << z.to_string() << "\ninadmissible\n";
    for (const auto& v : adm.violations) std::cout << "  " << v << "\n";
  }
  if (g.json_out) std::cout << j.dump(2) << "\n";
  return adm.ok ? kExitOk : kExitInput;
}

std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (char c : std::to_string(n)) out += digits[c - '0'];
  return out;
}

int cmd_verify_currents(const Globals& g, int n, const std::string& product) {
  if (n < 1 || n > 6) throw Error(ErrorCode::InadmissibleInput, "--n must lie in 1..6");
  IdentityReport rep = verify_current_identities(n);
  std::vector<std::string> lines = rep.lines;
  bool ok = rep.ok;
  if (!product.empty()) {
    auto parts = split(product, ',');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--product expects L,N");
    int l = 0, m = 0;
    try {
      l = std::stoi(parts[0]);
      m = std::stoi(parts[1]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "--product expects two integers");
    }
    if (l < 1 || m < 1 || l + m > 6) throw Error(ErrorCode::InadmissibleInput, "--product needs L, N >= 1 and L + N <= 6");
    IdentityReport pr = product_formula_check(l, m);
    ok = ok && pr.ok;
    lines.insert(lines.end(), pr.lines.begin(), pr.lines.end());
  }
  std::string s = superscript(n);
  std::string identity = "d[R" + s + "]=Ω" + s + "−" + (n == 1 ? std::string("2πi") : "(2πi)" + s) + "·δ_{T" + s + "}";
  if (n > 1) identity += "−2πi·Σ(−1)^{i−1}R" + superscript(n - 1) + "(ẑ_i)·δ_{(z_i)}";
  CurrentExpr dR = d_current(build_R(n));
  if (g.json_out) {
    std::cout << json{{"ok", ok}, {"identity", identity}, {"normal_form", dR.to_string()}, {"checks", lines}}.dump(2)
              << "\n";
  } else {
    if (ok) std::cout << identity << "\n";
    for (const auto& l : lines) std::cout << l << "\n";
    if (!ok) {
      std::cout << "d[R" << s << "] normal form: " << dR.to_string() << "\n";
      std::cout << "expected:            " << expected_dR(n).to_string() << "\n";
    }
  }
  return ok ? kExitOk : kExitNumeric;
}

int cmd_special(const Globals& g, const std::string& fn, const std::string& zarg, double cut) {
  auto parts = parse_doubles(zarg, 2, "--z");
  std::complex<double> z(parts[0], parts[1]);
  std::complex<double> v;
  int lattice = 0;
  std::string name;
  if (fn == "dilog") {
    v = dilog(z);
    name = "dilogarithm, principal branch";
  } else if (fn == "d2") {
    v = bloch_wigner(z);
    name = "Bloch-Wigner function";
  } else if (fn == "log") {
    v = log_branch(z, cut);
    lattice = 1;
    name = "logarithm with cut along e^{i theta} R^-";
  } else {
    throw Error(ErrorCode::ParseError, "--fn must be dilog, d2 or log");
  }
  // Accuracy verified by the special-function tests.
  double err = 1e-13 * (1.0 + std::abs(v));
  if (g.json_out) {
    std::cout << json{{"function", fn}, {"value", complex_json(v)}, {"lattice", lattice}, {"error", err}}.dump(2)
              << "\n";
  } else {
    std::cout << name << " at " << fmt(z) << "\n  value  = " << fmt(v) << "\n  error <= " << fmt(err) << "\n";
  }
  return kExitOk;
}

int cmd_aj(const Globals& g, const std::string& spec_path, const std::string& cuts, double tol) {
  CycleSpecDocument doc = read_cycle_spec(spec_path);
  Cycle z = build_cycle(doc);
  if (z.ambient() != Ambient::Point || (z.n() != 1 && z.n() != 3))
    throw Error(ErrorCode::InadmissibleInput, "aj supports 0-cycles in the 1-box and 1-cycles in the 3-box over a point");
  if (z.n() == 1) {
    RegulatorValue v = aj_point_p1(z);
    if (g.json_out) {
      std::cout << value_json(v, "sum of coefficient times log").dump(2) << "\n";
    } else {
      print_value(std::cout, v, "sum of coefficient times log");
    }
    return kExitOk;
  }
  AjOptions opt;
  opt.tol = tol;
  if (!cuts.empty()) {
    opt.cuts = parse_doubles(cuts, 3, "--cuts");
  } else if (doc.cuts) {
    opt.cuts = *doc.cuts;
  }
  AjResult r = aj_point_p2(z, opt);
  const std::string formula = "Abel-Jacobi current formula";
  if (g.json_out) {
    json j = value_json(r.value, formula);
    j["cuts"] = opt.cuts;
    json comps = json::array();
    for (const auto& c : r.components)
      comps.push_back({{"label", c.label},
                       {"coeff", rational_to_string(c.coeff)},
                       {"arc_integral", complex_json(c.arc_integral)},
                       {"crossing_sum", complex_json(c.crossing_sum)},
                       {"current_integral", complex_json(c.current_integral)},
                       {"crossings", c.crossings},
                       {"error", c.error}});
    j["components"] = comps;
    std::cout << j.dump(2) << "\n";
  } else {
    print_value(std::cout, r.value, formula);
    std::cout << "  cuts     = " << opt.cuts[0] << ", " << opt.cuts[1] << ", " << opt.cuts[2] << "\n";
    for (const auto& c : r.components)
      std::cout << "  " << c.label << " (coeff " << rational_to_string(c.coeff) << "): arc integral "
                << fmt(c.arc_integral) << ", " << c.crossings << " iterated-cut points\n";
  }
  return kExitOk;
}

int cmd_pair(const Globals& g, const std::string& spec_path, const std::string& loop_arg, double tol) {
  CycleSpecDocument doc = read_cycle_spec(spec_path);
  Cycle z = build_cycle(doc);
  Loop loop = loop_from(loop_arg, &doc);
  LoopOptions opt;
  opt.tol = tol;
  if (doc.cuts) {
    opt.theta_f = (*doc.cuts)[0];
    opt.theta_g = doc.cuts->size() > 1 ? (*doc.cuts)[1] : 0.0;
  }
  RegulatorValue v = loop_pairing_n2(z, loop, opt);
  const std::string formula = "pairing of the graph current with a loop";
  if (g.json_out) {
    json j = value_json(v, formula);
    j["loop"] = loop.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    print_value(std::cout, v, formula);
    std::cout << "  loop     = " << loop.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_real_regulator(const Globals& g, const std::string& f_arg, const std::string& g_arg,
                       const std::string& loop_arg, double tol) {
  RationalFunction f = parse_function(f_arg, "--f"), gg = parse_function(g_arg, "--g");
  Loop loop = loop_from(loop_arg, nullptr);
  RealRegulatorResult r = real_regulator_loop(f, gg, loop, tol);
  RegulatorValue v;
  v.lattice = 2;
  v.value = {0.0, r.one_form};
  v.error = r.error;
  double spread = std::max(std::abs(r.one_form - r.continuation), std::abs(r.one_form - r.cut_crossing));
  v.diagnostics.push_back("imaginary part is the real regulator; Im Z(2) = 0 so it is well defined");
  v.diagnostics.push_back("continuation prescription: " + fmt(r.continuation));
  v.diagnostics.push_back("cut-branch prescription: " + fmt(r.cut_crossing));
  const std::string formula = "real regulator, log|f| darg g - log|g| darg f";
  if (g.json_out) {
    json j = value_json(v, formula);
    j["one_form"] = r.one_form;
    j["continuation"] = r.continuation;
    j["cut_crossing"] = r.cut_crossing;
    j["spread"] = spread;
    std::cout << j.dump(2) << "\n";
  } else {
    print_value(std::cout, v, formula);
    std::cout << "  spread between prescriptions = " << fmt(spread) << "\n";
  }
  return kExitOk;
}

int cmd_milnor(const Globals& g, const std::string& fs, const std::string& loop_arg, double tol) {
  auto parts = split(fs, ',');
  if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--fs expects two expressions separated by a comma");
  std::vector<RationalFunction> symbol{parse_function(parts[0], "--fs[0]"), parse_function(parts[1], "--fs[1]")};
  Loop loop = loop_from(loop_arg, nullptr);
  LoopOptions opt;
  opt.tol = tol;
  RegulatorValue v = milnor_pair(symbol, loop, opt);
  const std::string formula = "Milnor symbol paired with a loop";
  if (g.json_out) {
    std::cout << value_json(v, formula).dump(2) << "\n";
  } else {
    print_value(std::cout, v, formula);
  }
  return kExitOk;
}

int cmd_rigidity(const Globals& g, const std::string& spec_path, const std::string& param, const std::string& values,
                 double tol) {
  CycleSpecDocument doc = read_cycle_spec(spec_path);
  std::vector<GaussRational> vals;
  for (const auto& s : split(values, ',')) vals.push_back(parse_constant(s));
  if (vals.empty()) throw Error(ErrorCode::ParseError, "--values is empty");
  AjOptions opt;
  opt.tol = tol;
  if (doc.cuts) opt.cuts = *doc.cuts;
  auto family = [&](const GaussRational& a) { return build_cycle(doc, {{param, a}}); };
  family(vals.front());  // reports an undeclared parameter as an input error
  RigidityReport rep = rigidity_scan(family, vals, opt);
  if (g.json_out) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
      json row = value_json(r.value, "Abel-Jacobi current formula");
      row["parameter"] = r.parameter;
      row["cuts"] = r.cuts;
      rows.push_back(row);
    }
    json j = rows.front();
    j["rows"] = rows;
    j["max_deviation"] = rep.max_deviation;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : rep.rows)
      std::cout << param << " = " << r.parameter << ": reduced " << fmt(reduce_mod_lattice(r.value).value)
                << " mod Z(2), error <= " << fmt(r.value.error) << "\n";
    std::cout << "max deviation mod Z(2) = " << fmt(rep.max_deviation) << "\n";
  }
  return kExitOk;
}

int cmd_stokes(const Globals& g, const std::string& f_arg, const std::string& center, double radius, double amplitude,
               double threshold, double tol) {
  RationalFunction f = parse_function(f_arg, "--f");
  BumpForm eta;
  if (!center.empty()) eta.center = parse_complex(center);
  eta.radius = radius;
  eta.amplitude = amplitude;
  StokesReport r = stokes_cut_check(f, eta, tol);
  bool ok = r.residual < threshold;
  if (g.json_out) {
    std::cout << json{{"formula", "Stokes identity for the cut chain of f"},
                      {"lhs", complex_json(r.lhs)},
                      {"arc_term", complex_json(r.arc_term)},
                      {"d_term", complex_json(r.d_term)},
                      {"residual", r.residual},
                      {"error", r.error},
                      {"ok", ok}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "Stokes identity for the cut chain of f = " << f.to_expr() << "\n";
    std::cout << "  integral dlog f ^ eta   = " << fmt(r.lhs) << "\n";
    std::cout << "  2 pi i integral over T_f = " << fmt(r.arc_term) << "\n";
    std::cout << "  -integral log f d eta    = " << fmt(r.d_term) << "\n";
    std::cout << "  residual = " << fmt(r.residual) << ", error <= " << fmt(r.error) << (ok ? "" : "  FAILED") << "\n";
  }
  return ok ? kExitOk : kExitNumeric;
}

int cmd_arcs(const std::string& f_arg, double cut) {
  RationalFunction f = parse_function(f_arg, "--f");
  std::cout << arcs_to_json(track_T(f, cut)) << "\n";
  return kExitOk;
}

int report_error(const Globals& g, const Error& e) {
  int code = is_input_error(e.code()) ? kExitInput : kExitNumeric;
  if (g.json_out) {
    std::cout << json{{"error", {{"code", error_name(e.code())}, {"message", e.message()}, {"line", e.line()},
                                 {"column", e.column()}}}}
                     .dump(2)
              << "\n";
  }
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubical higher Chow cycles: exact boundaries, current identities and regulator values"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_out, "Machine-readable JSON output");

  std::string spec, loop, cuts, product, fn, z, f_arg, g_arg, fs, param, values, center;
  int n = 1;
  double cut = 0.0, tol = -1.0, radius = 0.6, amplitude = 1.0, threshold = 1e-5;
  bool dump = false;

  auto* check = app.add_subcommand("check", "Admissibility, exact boundary and real-position report");
  check->add_option("--spec", spec, "Cycle-spec JSON file")->required();
  check->add_flag("--dump-spec", dump, "Print the canonical spec of the parsed cycle");

  auto* verify = app.add_subcommand("verify-currents", "Symbolic identities of the currents R, Omega, delta_T");
  verify->add_option("--n", n, "Number of coordinates (1..6)");
  verify->add_option("--product", product, "Also check the product formula for L,N");

  auto* special = app.add_subcommand("special", "Special functions");
  auto* special_eval = special->add_subcommand("eval", "Evaluate one function");
  special->require_subcommand(1);
  special_eval->add_option("--fn", fn, "dilog, d2 or log")->required();
  special_eval->add_option("--z", z, "Argument as RE,IM")->required();
  special_eval->add_option("--cut", cut, "Cut angle for log");

  auto* aj = app.add_subcommand("aj", "Abel-Jacobi value of a closed cycle over a point");
  aj->add_option("--spec", spec, "Cycle-spec JSON file")->required();
  aj->add_option("--cuts", cuts, "Cut angles th1,th2,th3");
  aj->add_option("--tol", tol, "Quadrature tolerance");

  auto* pair = app.add_subcommand("pair", "Pair a cycle over P1 (n = 2) with a loop");
  pair->add_option("--spec", spec, "Cycle-spec JSON file")->required();
  pair->add_option("--loop", loop, "c=X+Yi,r=R[,cw] or poly=Z1;Z2;...");
  pair->add_option("--tol", tol, "Quadrature tolerance");

  auto* real = app.add_subcommand("real-regulator", "Real regulator of {f, g} on a loop, three prescriptions");
  real->add_option("--f", f_arg, "Expression in t")->required();
  real->add_option("--g", g_arg, "Expression in t")->required();
  real->add_option("--loop", loop, "c=X+Yi,r=R[,cw] or poly=Z1;Z2;...")->required();
  real->add_option("--tol", tol, "Quadrature tolerance");

  auto* milnor = app.add_subcommand("milnor", "Milnor symbol {f1, f2} paired with a loop");
  milnor->add_option("--fs", fs, "Two expressions F1,F2")->required();
  milnor->add_option("--loop", loop, "c=X+Yi,r=R[,cw] or poly=Z1;Z2;...")->required();
  milnor->add_option("--tol", tol, "Quadrature tolerance");

  auto* rigidity = app.add_subcommand("rigidity", "Abel-Jacobi values across a parameter family");
  rigidity->add_option("--spec", spec, "Cycle-spec JSON file")->required();
  rigidity->add_option("--param", param, "Parameter name")->required();
  rigidity->add_option("--values", values, "Comma-separated parameter values")->required();
  rigidity->add_option("--tol", tol, "Quadrature tolerance");

  auto* stokes = app.add_subcommand("stokes", "Stokes identity for the cut chain T_f against a bump form");
  stokes->add_option("--f", f_arg, "Expression in t")->required();
  stokes->add_option("--center", center, "Bump center");
  stokes->add_option("--radius", radius, "Bump radius");
  stokes->add_option("--amplitude", amplitude, "Bump amplitude");
  stokes->add_option("--threshold", threshold, "Largest accepted residual");
  stokes->add_option("--tol", tol, "Quadrature tolerance");

  auto* arcs = app.add_subcommand("arcs", "Dump the tracked cut preimage T_f as JSON polylines");
  arcs->add_option("--f", f_arg, "Expression in t")->required();
  arcs->add_option("--cut", cut, "Cut angle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (tol <= 0.0) tol = default_tolerance();
    if (*check) return cmd_check(g, spec, dump);
    if (*verify) return cmd_verify_currents(g, n, product);
    if (*special_eval) return cmd_special(g, fn, z, cut);
    if (*aj) return cmd_aj(g, spec, cuts, tol);
    if (*pair) return cmd_pair(g, spec, loop, tol);
    if (*real) return cmd_real_regulator(g, f_arg, g_arg, loop, tol);
    if (*milnor) return cmd_milnor(g, fs, loop, tol);
    if (*rigidity) return cmd_rigidity(g, spec, param, values, tol);
    if (*stokes) return cmd_stokes(g, f_arg, center, radius, amplitude, threshold, std::max(tol, 1e-9));
    if (*arcs) return cmd_arcs(f_arg, cut);
  } catch (const Error& e) {
    return report_error(g, e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
