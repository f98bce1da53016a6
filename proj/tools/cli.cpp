#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zeldovich/config.hpp"
#include "zeldovich/fields.hpp"
#include "zeldovich/number.hpp"
#include "zeldovich/oracle.hpp"

namespace zeldovich::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json constants_json(const PhysConst& c, std::optional<double> gamma = {}) {
  Json j{{"alpha", c.alpha},
         {"lambda_bar", c.lambda_bar},
         {"bohr_b", c.bohr_b},
         {"proton_a", c.proton_a},
         {"mu_geom", c.mu_geom}};
  if (gamma) j["gamma"] = *gamma;
  return j;
}

struct Report {
  NzBreakdown nz;
  std::string method;
  Json constants = Json::object();
  std::vector<std::string> paper_notes;
  Json extra = Json::object();
};

void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << "nz_electric,nz_magnetic,nz_total,energy_mc2,quad_error\n"
        << num(r.nz.electric) << ',' << num(r.nz.magnetic) << ',' << num(r.nz.total) << ','
        << (r.nz.energy_mc2 ? num(*r.nz.energy_mc2) : std::string()) << ','
        << num(r.nz.quad_error) << '\n';
    return;
  }
  Json j;
  j["nz_electric"] = r.nz.electric;
  j["nz_magnetic"] = r.nz.magnetic;
  j["nz_total"] = r.nz.total;
  if (r.nz.energy_mc2) j["energy_mc2"] = *r.nz.energy_mc2;
  j["quad_error"] = r.nz.quad_error;
  Json meta;
  meta["method"] = r.method;
  meta["constants"] = r.constants;
  meta["flags"] = r.nz.flags;
  meta["paper_notes"] = r.paper_notes;
  for (const auto& [k, v] : r.extra.items()) meta[k] = v;
  meta["converged"] = r.nz.converged();
  j["metadata"] = meta;
  out << j.dump(2) << '\n';
}

int finish(const Report& r, const std::string& format, std::ostream& out, std::ostream& err) {
  emit(r, format, out);
  if (!r.nz.converged()) {
    err << "warning: quadrature did not reach the requested tolerance\n";
    return kNonConvergence;
  }
  return kOk;
}

// --- subcommands -------------------------------------------------------------------

struct Options {
  std::optional<std::string> constants_path;
  std::string format = "json";
  std::optional<double> rel_tol;
  std::uint64_t seed = 12345;

  double tol(double fallback) const { return rel_tol.value_or(fallback); }
};

int cmd_spheres(const Options& o, double b_ratio, double charge, const std::string& method,
                std::ostream& out, std::ostream& err) {
  const SpherePair pair{1.0, b_ratio, charge};
  try {
    pair.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SphereMethod m = method == "quad" ? SphereMethod::quadrature
                         : method == "asym" ? SphereMethod::asymptotic
                                            : SphereMethod::closed;
  Report r;
  r.nz = nz_sphere_pair(pair, m, o.tol(kClassicalTol));
  r.method = "spheres/" + method;
  r.constants = {{"alpha", PhysConst{}.alpha}};
  r.extra["b_ratio"] = b_ratio;
  r.extra["charge_over_e"] = charge;
  r.paper_notes.push_back(
      "published headline for Q = 1 uC at b = 10 is 1.6e20; the closed form gives about 3.8e23");
  return finish(r, o.format, out, err);
}

int cmd_loop(const Options& o, double radius, double current, const std::string& method,
             std::ostream& out, std::ostream& err) {
  const CurrentLoop loop{radius, current};
  try {
    loop.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report r;
  r.nz = nz_loop(loop, method == "quad" ? LoopMethod::quadrature : LoopMethod::closed,
                 o.tol(kClassicalTol));
  r.method = "loop/" + method;
  r.constants = {{"alpha", PhysConst{}.alpha}};
  r.extra["closed_form_4pi_alpha"] = nz_loop_printed(loop);
  r.paper_notes.push_back(
      "published closed form uses 4 pi alpha (equal to 4x10^19 for a = 1 m, I = 1 A); the "
      "integral evaluates to 2 pi alpha (a I / e c)^2");
  return finish(r, o.format, out, err);
}

int cmd_hydrogen(const Options& o, const ConstantsConfig& cfg, const std::string& part,
                 bool nonrel, std::ostream& out, std::ostream& err) {
  const HydrogenAtom atom =
      nonrel ? HydrogenAtom::nonrelativistic(cfg.constants) : HydrogenAtom::dirac(cfg.constants);
  const double tol = o.tol(kAtomicTol);
  Report r;
  r.method = "hydrogen/" + part;
  r.constants = constants_json(cfg.constants, atom.dirac_gamma);
  if (part == "electric") {
    r.nz = nz_hydrogen_electric(atom, tol);
  } else if (part == "magnetic") {
    r.nz = nz_hydrogen_magnetic(atom, MagneticRoute::reduced, tol);
  } else {
    r.nz = nz_hydrogen(atom, tol);
  }
  if (part == "energy") {
    const NzBreakdown e = field_energy(atom, EnergyPart::total, tol);
    r.nz.energy_mc2 = e.energy_mc2;
    r.nz.quad_error += e.quad_error;
    if (!e.converged()) r.nz.status = e.status;
    r.extra["energy_electric_mc2"] = e.electric;
    r.extra["energy_magnetic_mc2"] = e.magnetic;
    const auto& c = cfg.constants;
    r.extra["uniform_ball_self_energy_mc2"] = 0.6 * c.alpha * c.lambda_bar / c.proton_a;
  }
  if (part != "electric")
    r.paper_notes.push_back(
        "published magnetic value is 6e-5; the transform of the stated proton and electron "
        "currents gives about 2.4e-3");
  return finish(r, o.format, out, err);
}

NobleGasAtom resolve_atom(const ConstantsConfig& cfg, const std::optional<std::string>& element,
                          std::optional<int> Z, std::optional<int> A) {
  if (element.has_value() == Z.has_value())
    throw UsageError("atom: give exactly one of --element or --Z");
  std::string sym;
  if (element) {
    sym = *element;
  } else {
    for (const auto& s : noble_gas_symbols())
      if (noble_gas(s).Z == *Z) sym = s;
    if (sym.empty()) throw UsageError("atom: Z must be one of 2, 10, 18, 36, 54");
  }
  const auto symbols = noble_gas_symbols();
  if (std::find(symbols.begin(), symbols.end(), sym) == symbols.end())
    throw UsageError("atom: unknown element symbol " + sym);
  NobleGasAtom atom = cfg.atom(sym);
  if (A) {
    if (*A < 1) throw UsageError("atom: --A must be >= 1");
    atom.A = *A;
  }
  return atom;
}

int cmd_atom(const Options& o, const ConstantsConfig& cfg, const NobleGasAtom& atom,
             std::ostream& out, std::ostream& err) {
  Report r;
  r.nz = nz_atom_electric(atom, o.tol(kAtomicTol));
  r.method = "atom/electric";
  r.constants = constants_json(cfg.constants);
  r.extra["element"] = atom.symbol;
  r.extra["Z"] = atom.Z;
  r.extra["A"] = atom.A;
  r.extra["nuclear_radius_m"] = atom.nucleus_radius();
  return finish(r, o.format, out, err);
}

// --- figures -----------------------------------------------------------------------------

void figure1(const ConstantsConfig& cfg, std::ostream& f) {
  const HydrogenAtom atom = HydrogenAtom::dirac(cfg.constants);
  const double b = cfg.constants.bohr_b;
  const double a = cfg.constants.proton_a;
  f << "r_over_b,enclosed_charge\n";
  for (double x : log_grid(1e-3, 20.0, 400)) f << num(x) << ',' << num(enclosed_charge(atom, x * b)) << '\n';
  for (int i = 0; i < 200; ++i) {
    const double x = 3.0 * i / 199.0;
    f << "inset," << num(x) << ',' << num(enclosed_charge(atom, x * a)) << '\n';
  }
}

void figure2(const ConstantsConfig& cfg, std::ostream& f) {
  const HydrogenAtom atom = HydrogenAtom::dirac(cfg.constants);
  const double lbar = cfg.constants.lambda_bar;
  f << "x_over_lbar,z_over_lbar,Hx,Hz\n";
  for (const auto& s : field_grid(atom, 6.0 * lbar, 41))
    f << num(s.position[0] / lbar) << ',' << num(s.position[2] / lbar) << ',' << num(s.H[0]) << ','
      << num(s.H[2]) << '\n';
}

bool figure3(const ConstantsConfig& cfg, double tol, std::ostream& f) {
  std::vector<NobleGasAtom> atoms;
  std::vector<double> values;
  bool ok = true;
  for (const auto& sym : noble_gas_symbols()) {
    atoms.push_back(cfg.atom(sym));
    const NzBreakdown r = nz_atom_electric(atoms.back(), tol);
    ok = ok && r.converged();
    values.push_back(r.electric);
  }
  double num_sum = 0.0, den = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double z2 = static_cast<double>(atoms[i].Z) * atoms[i].Z;
    num_sum += z2 * values[i];
    den += z2 * z2;
  }
  const double c = num_sum / den;
  f << "Z,element,nz_electric,quadratic_fit\n";
  for (std::size_t i = 0; i < atoms.size(); ++i)
    f << atoms[i].Z << ',' << atoms[i].symbol << ',' << num(values[i]) << ','
      << num(c * atoms[i].Z * atoms[i].Z) << '\n';
  return ok;
}

int cmd_figure(const Options& o, const ConstantsConfig& cfg, int id, const std::string& path,
               std::ostream& err) {
  std::ostringstream buf;
  bool ok = true;
  if (id == 1) figure1(cfg, buf);
  else if (id == 2) figure2(cfg, buf);
  else ok = figure3(cfg, o.tol(kAtomicTol), buf);
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << path << '\n';
    return kFailure;
  }
  f << buf.str();
  if (!f) {
    err << "error: write failed for " << path << '\n';
    return kFailure;
  }
  return ok ? kOk : kNonConvergence;
}

// --- validation suite --------------------------------------------------------------------

struct Checks {
  Json list = Json::array();
  bool all = true;

  void add(const std::string& name, bool passed, double value, double reference, double tolerance) {
    list.push_back({{"name", name},
                    {"passed", passed},
                    {"value", value},
                    {"reference", reference},
                    {"tolerance", tolerance}});
    all = all && passed;
  }
  void rel(const std::string& name, double value, double reference, double tolerance) {
    add(name, std::abs(value / reference - 1.0) <= tolerance, value, reference, tolerance);
  }
};

int cmd_validate(const Options& o, const ConstantsConfig& cfg, bool fast, std::ostream& out) {
  Checks ch;
  const PhysConst& c = cfg.constants;
  const HydrogenAtom atom = HydrogenAtom::dirac(c);

  for (const auto& e : spectrum_audit(standard_audit_pairs(c, !fast), 1e-6))
    ch.add("audit/" + e.name, e.passed, e.max_rel_dev, 0.0, 1e-6);

  for (double sep : {0.5, 1.0, 2.0}) {
    const KernelCheck k = kernel_identity_check(sep, 2000.0 / sep);
    ch.rel("kernel_identity/" + num(sep), k.lhs, k.rhs, 0.01);
  }

  for (double b : {0.5, 3.0, 10.0, 100.0}) {
    const double closed = nz_sphere_pair({1.0, b, 1.0}).total;
    const double quadv = nz_sphere_pair({1.0, b, 1.0}, SphereMethod::quadrature).total;
    ch.rel("spheres_routes/b=" + num(b), quadv, closed, 1e-6);
  }
  {
    const CurrentLoop loop{1.0, 1.0};
    ch.rel("loop_routes", nz_loop(loop, LoopMethod::quadrature).total, nz_loop(loop).total, 1e-6);
    McSpec mc;
    mc.samples = fast ? 20'000 : 200'000;
    mc.seed = o.seed;
    mc.importance_scale = loop.radius_a;
    const McEstimate est =
        nz_position_space([&](const Vec3& p) { return loop_fields(loop, p); }, mc);
    ch.rel("loop_position_space", est.value, nz_loop(loop).total, 0.10);
  }
  {
    McSpec mc;
    mc.samples = fast ? 20'000 : 200'000;
    mc.seed = o.seed;
    mc.importance_scale = c.bohr_b;
    mc.min_scale = c.proton_a;
    const McEstimate est = nz_position_space(
        [&](const Vec3& p) { return std::pair{d_field(atom, p), Vec3{0.0, 0.0, 0.0}}; }, mc);
    ch.rel("hydrogen_position_space", est.value, nz_hydrogen_electric(atom).electric, 0.15);
  }
  ch.rel("magnetic_routes", nz_hydrogen_magnetic(atom, MagneticRoute::angular).magnetic,
         nz_hydrogen_magnetic(atom).magnetic, 1e-6);

  {
    double worst = 0.0;
    for (double r : log_grid(0.1 * c.proton_a, 50.0 * c.bohr_b, 20)) {
      const double h = 1e-5 * r;
      const double fd = (potentials(atom, r + h).phi - potentials(atom, r - h).phi) / (2.0 * h);
      worst = std::max(worst, std::abs(fd / potential_derivs(atom, r).dphi - 1.0));
    }
    ch.add("potential_finite_difference", worst <= 1e-6, worst, 0.0, 1e-6);
  }
  ch.add("gauss_at_proton_radius", std::abs(enclosed_charge(atom, c.proton_a) - 1.0) <= 1e-4,
         enclosed_charge(atom, c.proton_a), 1.0, 1e-4);

  Json report{{"suite", fast ? "fast" : "full"}, {"passed", ch.all}, {"checks", ch.list}};
  out << report.dump(2) << '\n';
  return ch.all ? kOk : kValidationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeldovich number of classical and atomic sources"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--constants", o.constants_path, "constants override file (key = value)");
  app.add_option("--format", o.format, "result format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--rel-tol", o.rel_tol, "relative quadrature tolerance")
      ->check(CLI::Range(1e-14, 1e-2));
  app.add_option("--seed", o.seed, "Monte Carlo seed");

  double b_ratio = 0.0, charge = 1.0;
  std::string sphere_method = "closed";
  auto* spheres = app.add_subcommand("spheres", "two oppositely charged spherical shells");
  spheres->add_option("--b-ratio", b_ratio, "separation over radius")->required();
  spheres->add_option("--charge-e", charge, "charge in units of e")->required();
  spheres->add_option("--method", sphere_method)->check(CLI::IsMember({"closed", "quad", "asym"}));

  double radius = 1.0, current = 1.0;
  std::string loop_method = "closed";
  auto* loop = app.add_subcommand("loop", "circular current loop");
  loop->add_option("--radius-m", radius)->required();
  loop->add_option("--current-a", current)->required();
  loop->add_option("--method", loop_method)->check(CLI::IsMember({"closed", "quad"}));

  std::string part = "both";
  bool nonrel = false;
  auto* hydrogen = app.add_subcommand("hydrogen", "hydrogen ground state");
  hydrogen->add_option("--part", part)
      ->check(CLI::IsMember({"electric", "magnetic", "both", "energy"}));
  hydrogen->add_flag("--nonrelativistic", nonrel);

  std::optional<std::string> element;
  std::optional<int> Z, A;
  auto* atom = app.add_subcommand("atom", "closed-shell noble-gas atom (electric part)");
  atom->add_option("--element", element);
  atom->add_option("--Z", Z);
  atom->add_option("--A", A);

  int fig_id = 0;
  std::string fig_out;
  auto* figure = app.add_subcommand("figure", "write figure data as CSV");
  figure->add_option("--id", fig_id)->required()->check(CLI::IsMember({1, 2, 3}));
  figure->add_option("--out", fig_out)->required();

  bool fast = false;
  auto* validate = app.add_subcommand("validate", "run the oracle and invariant suite");
  validate->add_flag("--fast", fast);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    ConstantsConfig cfg;
    try {
      cfg = resolve_constants(o.constants_path);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    if (*spheres) return cmd_spheres(o, b_ratio, charge, sphere_method, out, err);
    if (*loop) return cmd_loop(o, radius, current, loop_method, out, err);
    if (*hydrogen) return cmd_hydrogen(o, cfg, part, nonrel, out, err);
    if (*atom) return cmd_atom(o, cfg, resolve_atom(cfg, element, Z, A), out, err);
    if (*figure) return cmd_figure(o, cfg, fig_id, fig_out, err);
    if (*validate) return cmd_validate(o, cfg, fast, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace zeldovich::cli
