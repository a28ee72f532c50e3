// octo: command-line front end for the octupolar library.
#include "octupolar/c_eigen.hpp"
#include "octupolar/critical_points.hpp"
#include "octupolar/eigen_solver.hpp"
#include "octupolar/lc_distortion.hpp"
#include "octupolar/potential.hpp"
#include "octupolar/separatrix.hpp"
#include "octupolar/tensor.hpp"
#include "octupolar/trace_extension.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

using json = nlohmann::json;
using namespace octo;

namespace {

// Bad user input: exit status 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json vec(const Eigen::Vector3d& v) { return json::array({v[0], v[1], v[2]}); }

json mat(const Eigen::Matrix3d& m) {
  json a = json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.push_back(m(i, j));
  return a;
}

json tensor_json(const Tensor3d& t) {
  json a = json::array();
  for (int i = 0; i < 27; ++i) a.push_back(t.c[i]);
  return {{"components", a}, {"layout", "i9j3k"}};
}

json octupolar_json(const OctupolarTensord& t) {
  return {{"alpha0", t.alpha0}, {"alpha", vec(t.alpha)}, {"beta", vec(t.beta)}};
}

json params_json(const OrientedParams& p) { return {{"rho", p.rho}, {"chi", p.chi}, {"K", p.bigk}}; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

std::vector<double> numbers(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != n)
    throw ValidationError(std::string("expected \"") + key + "\" with " + std::to_string(n) + " numbers");
  std::vector<double> v;
  for (const auto& e : j[key]) {
    if (!e.is_number()) throw ValidationError(std::string("non-numeric entry in \"") + key + "\"");
    v.push_back(e.get<double>());
  }
  return v;
}

Tensor3d read_tensor(const std::string& path) {
  const json j = read_json(path);
  if (j.contains("layout") && j["layout"] != "i9j3k") throw ValidationError("unsupported layout");
  const auto c = numbers(j, "components", 27);
  Tensor3d t;
  for (int i = 0; i < 27; ++i) t.c[i] = c[i];
  if (!t.all_finite()) throw ValidationError("tensor has non-finite components");
  return t;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ValidationError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const std::string& path, const json& j) { Output(path).os() << j.dump(2) << '\n'; }

// Shared oriented-parameter flags.
struct ParamFlags {
  double rho = 0, chi = -std::numbers::pi / 2, bigk = 0;
  std::optional<double> chi_deg;

  void add(CLI::App* c) {
    c->add_option("--rho", rho, "rho in [0, 2]")->check(CLI::Range(0.0, 2.0));
    c->add_option("--chi", chi, "chi in radians");
    c->add_option("--chi-degrees", chi_deg, "chi in degrees (overrides --chi)");
    c->add_option("--K", bigk, "K >= 0")->check(CLI::NonNegativeNumber);
  }
  OrientedParams get() const {
    OrientedParams p{rho, chi_deg ? *chi_deg * std::numbers::pi / 180 : chi, bigk};
    if (!in_sector(p, 1e-9)) throw ValidationError("parameters outside 0<=rho<=2, -pi/2<=chi<=-pi/6, K>=0");
    return p;
  }
  double chi_value() const { return chi_deg ? *chi_deg * std::numbers::pi / 180 : chi; }
};

// ---------------------------------------------------------------------------

void run_decompose(const std::string& input, const std::string& output) {
  const Tensor3d t = read_tensor(input);
  const auto sd = symmetry_decompose(t);
  const auto hd = harmonic_decompose(t);
  json j;
  j["symmetry"] = {{"a1", tensor_json(sd.a1)["components"]},
                   {"a21", tensor_json(sd.a21)["components"]},
                   {"a22", tensor_json(sd.a22)["components"]},
                   {"a3", tensor_json(sd.a3)["components"]}};
  j["harmonic"] = {{"a_scalar", hd.a_scalar}, {"v1", vec(hd.v1)}, {"v2", vec(hd.v2)}, {"v3", vec(hd.v3)},
                   {"d1", mat(hd.d1)}, {"d2", mat(hd.d2)}, {"d3", octupolar_json(hd.d3)}};
  if (hd.d3.norm() > 1e-12 * std::max(1.0, t.norm())) {
    const Orientation o = orient(hd.d3);
    j["oriented"] = {{"params", params_json(o.params)}, {"scale", o.scale}, {"rotation", mat(o.rotation)},
                     {"mirrored", o.mirrored}, {"continuum", o.continuum}};
  }
  emit(output, j);
}

json eigen_report(const OrientedParams& p) {
  const OrientedSolution s = solve_oriented(p);
  const TopologyReport topo = full_topology(p);
  const OctupolarTensord a = from_rho_chi_K(p);
  json pairs = json::array();
  for (const auto& e : s.pairs) {
    const CriticalPoint c = classify(a, e);
    pairs.push_back({{"lambda", e.lambda}, {"x", vec(e.x)}, {"branch", e.branch},
                     {"multiplicity_hint", e.multiplicity_hint}, {"kind", to_string(c.kind)}, {"index", c.index}});
  }
  return {{"params", params_json(p)},
          {"pairs", pairs},
          {"critical_point_total", s.critical_point_total()},
          {"continuum", s.continuum},
          {"maxima", topo.maxima},
          {"minima", topo.minima},
          {"saddles", topo.saddles},
          {"degenerate", topo.degenerate},
          {"index_sum", topo.index_sum}};
}

void run_eigen(const OrientedParams& p, const std::string& format, const std::string& output) {
  const json r = eigen_report(p);
  if (format == "json") return emit(output, r);
  Output out(output);
  std::ostream& os = out.os();
  os << "lambda,x1,x2,x3,branch,kind,index\n";
  for (const auto& e : r["pairs"]) {
    os << num(e["lambda"]) << ',' << num(e["x"][0]) << ',' << num(e["x"][1]) << ',' << num(e["x"][2]) << ','
       << e["branch"].get<std::string>() << ',' << e["kind"].get<std::string>() << ',' << e["index"].get<int>()
       << '\n';
  }
}

void run_ceigen(const std::string& input, int starts, int deflate, const std::string& output) {
  const Tensor3d t = read_tensor(input);
  if (!is_piezo_symmetric(t)) throw ValidationError("tensor is not symmetric in its last two indices");
  json triples = json::array();
  for (const auto& c : c_eigenpairs(t, starts))
    triples.push_back({{"lambda", c.lambda}, {"x", vec(c.x)}, {"y", vec(c.y)}, {"residual", c_residual(t, c)}});
  json j = {{"triples", triples}, {"classes", triples.size()}};
  if (deflate > 0) {
    json terms = json::array();
    for (const auto& term : rank_one_deflation(t, deflate, starts))
      terms.push_back({{"lambda", term.triple.lambda}, {"x", vec(term.triple.x)}, {"y", vec(term.triple.y)},
                       {"residual_norm", term.residual_norm}});
    j["deflation"] = terms;
  }
  emit(output, j);
}

void run_scan(double chi, int rho_steps, double k_max, int k_steps, const std::string& output) {
  if (chi < -std::numbers::pi / 2 - 1e-9 || chi > -std::numbers::pi / 6 + 1e-9)
    throw ValidationError("chi must lie in [-pi/2, -pi/6]");
  if (rho_steps < 2 || k_steps < 2 || !(k_max > 0)) throw ValidationError("need >= 2 steps and k-max > 0");
  Output out(output);
  std::ostream& os = out.os();
  os << "rho,chi,K,count\n";
  for (const auto& s : region_scan(chi, rho_steps, k_max, k_steps))
    os << num(s.rho) << ',' << num(s.chi) << ',' << num(s.bigk) << ',' << (s.continuum ? -1 : s.count) << '\n';
}

void run_separatrix(double chi, int rho_steps, const std::string& output) {
  if (!(chi > -std::numbers::pi / 2 && chi < -std::numbers::pi / 6))
    throw ValidationError("chi must lie strictly between -pi/2 and -pi/6");
  if (rho_steps < 1) throw ValidationError("need rho-steps >= 1");
  Output out(output);
  std::ostream& os = out.os();
  os << "rho,chi,k_star,s_star,branch\n";
  for (int i = 0; i < rho_steps; ++i) {
    const double rho = 2.0 * (i + 0.5) / rho_steps;
    const KStar k = k_star(rho, chi);
    os << num(rho) << ',' << num(chi) << ',' << num(k.bigk) << ',' << num(k.s_star) << ',' << k.branch << '\n';
  }
}

struct TraceFlags {
  std::optional<double> mu, a2, a3;
  double a1 = 0;
  std::string tetra;
  TetraFree free;
};

json trace_point_json(const TraceCriticalPoint& q) {
  return {{"label", q.label}, {"x1", q.x1}, {"x2", q.x2}, {"value", q.value}, {"kind", to_string(q.kind)},
          {"index", q.index}, {"multiplicity", q.multiplicity}, {"on_continuum", q.on_continuum},
          {"hessian_eigs", json::array({q.hessian_eigs[0], q.hessian_eigs[1]})}};
}

json sym_json(const SymFullParams& s) {
  return {{"alpha0", s.alpha0}, {"alpha", vec(s.alpha)}, {"beta", vec(s.beta)}, {"A", vec(s.A)}};
}

void run_trace(const TraceFlags& f, const std::string& output) {
  if (!f.tetra.empty()) {
    const TetraMode mode = f.tetra == "perturbative" ? TetraMode::perturbative
                           : f.tetra == "oriented"   ? TetraMode::oriented
                                                     : TetraMode::nonperturbative;
    const TetraResult r = tetra_constraints(f.free, mode);
    json j = {{"mode", f.tetra}, {"coefficients", sym_json(r.coeffs)}, {"vertex_values", r.values}};
    if (r.hessian)
      j["hessian"] = {{"p1", r.hessian->p1}, {"p2_p4", json::array({r.hessian->p234[0], r.hessian->p234[1]})},
                      {"all_maxima", r.all_maxima}};
    return emit(output, j);
  }
  TraceParams p;
  p.a1 = f.a1;
  if (f.mu) {
    p = TraceParams::from_mu(*f.mu, f.a2.value_or(1.0));
    p.a1 = f.a1;
  } else {
    if (!f.a2 || !f.a3) throw ValidationError("trace: give --mu, or both --a2 and --a3");
    p.a2 = *f.a2;
    p.a3 = *f.a3;
  }
  const TraceReport r = trace_critical_points(p);
  json pts = json::array();
  for (const auto& q : r.points) pts.push_back(trace_point_json(q));
  json j = {{"params", {{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}}},
            {"points", pts},
            {"meridian_continuum", r.meridian_continuum},
            {"equator_saddles", r.equator_saddles}};
  if (p.a2 != 0) j["params"]["mu"] = p.mu();
  if (!r.meridian_continuum) j["index_sum"] = r.index_sum();
  emit(output, j);
}

void run_lc(const std::string& input, const FrankConstants& k, const std::string& output) {
  const json in = read_json(input);
  const auto g = numbers(in, "gradient", 9);
  const auto n = numbers(in, "n", 3);
  DirectorGradient dg;
  for (int i = 0; i < 9; ++i) dg.g(i / 3, i % 3) = g[i];
  dg.n = {n[0], n[1], n[2]};
  const DistortionCharacteristics dc = decompose_gradient(dg);
  const FrankEnergy e = oseen_frank(dc, k);
  emit(output, {{"S", dc.S}, {"T", dc.T}, {"b1", dc.b1}, {"b2", dc.b2}, {"q", dc.q},
                {"frame", {{"n1", vec(dc.frame.n1)}, {"n2", vec(dc.frame.n2)}, {"n", vec(dc.frame.n)}}},
                {"frame_arbitrary", dc.frame_arbitrary},
                {"energy", {{"w_classic", e.w_classic}, {"w_selinger", e.w_selinger}, {"ericksen_ok", e.ericksen_ok}}},
                {"octupolar_tensor", octupolar_json(lc_octupolar_tensor(dg))}});
}

void run_grid(const Tensor3d& t, const SphereGrid& g, const std::string& chart, const std::string& output) {
  if (g.theta_steps < 2 || g.phi_steps < 2) throw ValidationError("grid needs at least 2 steps per axis");
  const Chart c = chart == "north" ? Chart::north
                  : chart == "south" ? Chart::south
                  : chart == "contour" ? Chart::x2_positive
                                       : Chart::sphere;
  Output out(output);
  std::ostream& os = out.os();
  os << "theta,phi,x1,x2,x3,phi_value\n";
  for (const auto& r : sample_grid(t, g, c))
    os << num(r.theta) << ',' << num(r.phi) << ',' << num(r.x[0]) << ',' << num(r.x[1]) << ',' << num(r.x[2])
       << ',' << num(r.value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octupolar tensor toolkit"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "output file (default stdout)");

  std::string input;
  auto* dec = app.add_subcommand("decompose", "symmetry and harmonic decomposition of a tensor");
  dec->add_option("--input", input, "tensor JSON")->required();

  ParamFlags pf;
  std::string format = "json";
  auto* eig = app.add_subcommand("eigen", "all eigenpairs of an oriented potential");
  pf.add(eig);
  eig->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  int starts = 64, deflate = 0;
  auto* ce = app.add_subcommand("ceigen", "C-eigenpairs of a piezoelectric-symmetry tensor");
  ce->add_option("--input", input, "tensor JSON")->required();
  ce->add_option("--starts", starts)->check(CLI::PositiveNumber);
  ce->add_option("--deflate", deflate, "incremental rank-one steps")->check(CLI::NonNegativeNumber);

  double k_max = 2;
  int rho_steps = 40, k_steps = 40;
  auto* sc = app.add_subcommand("scan", "critical-point counts on a (rho, K) grid");
  sc->add_option("--chi", pf.chi);
  sc->add_option("--chi-degrees", pf.chi_deg);
  sc->add_option("--rho-steps", rho_steps);
  sc->add_option("--k-max", k_max);
  sc->add_option("--k-steps", k_steps);

  auto* sep = app.add_subcommand("separatrix", "critical K along rho at fixed chi");
  sep->add_option("--chi", pf.chi);
  sep->add_option("--chi-degrees", pf.chi_deg);
  sep->add_option("--rho-steps", rho_steps);

  TraceFlags tf;
  auto* tr = app.add_subcommand("trace", "trace-type potential analysis");
  tr->add_option("--mu", tf.mu);
  tr->add_option("--a1", tf.a1);
  tr->add_option("--a2", tf.a2);
  tr->add_option("--a3", tf.a3);
  tr->add_option("--tetra", tf.tetra, "tetrahedral constraint mode")
      ->check(CLI::IsMember({"perturbative", "oriented", "nonperturbative"}));
  tr->add_option("--alpha1", tf.free.alpha1);
  tr->add_option("--alpha2", tf.free.alpha2);
  tr->add_option("--alpha3", tf.free.alpha3);
  tr->add_option("--beta1", tf.free.beta1);
  tr->add_option("--beta3", tf.free.beta3);
  tr->add_option("--epsilon", tf.free.epsilon);
  tr->add_flag("--equal-levels", tf.free.equal_levels);

  FrankConstants fk{1, 1, 1, 0};
  auto* lc = app.add_subcommand("lc", "director-gradient distortion characteristics");
  lc->add_option("--input", input, "gradient JSON")->required();
  lc->add_option("--k11", fk.k11);
  lc->add_option("--k22", fk.k22);
  lc->add_option("--k33", fk.k33);
  lc->add_option("--k24", fk.k24);

  SphereGrid grid;
  std::string chart = "sphere";
  auto* gr = app.add_subcommand("grid", "potential sampled on a (theta, phi) grid");
  pf.add(gr);
  gr->add_option("--input", input, "tensor JSON (instead of oriented parameters)");
  gr->add_option("--theta-steps", grid.theta_steps);
  gr->add_option("--phi-steps", grid.phi_steps);
  gr->add_option("--chart", chart)->check(CLI::IsMember({"sphere", "north", "south", "contour"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*dec) run_decompose(input, output);
    else if (*eig) run_eigen(pf.get(), format, output);
    else if (*ce) run_ceigen(input, starts, deflate, output);
    else if (*sc) run_scan(pf.chi_value(), rho_steps, k_max, k_steps, output);
    else if (*sep) run_separatrix(pf.chi_value(), rho_steps, output);
    else if (*tr) run_trace(tf, output);
    else if (*lc) run_lc(input, fk, output);
    else if (*gr) run_grid(input.empty() ? from_rho_chi_K(pf.get()).to_tensor() : read_tensor(input), grid, chart, output);
  } catch (const ValidationError& e) {
    std::cerr << "octo: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "octo: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "octo: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "octo: numerical failure: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
