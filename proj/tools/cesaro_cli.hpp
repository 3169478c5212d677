#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cesaro/cesaro.hpp"

namespace cesaro::cli {

using Json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string alpha = "1/2";
  std::string beta = "3/2";
  std::string gamma;  // empty: same as alpha
  std::size_t n = 256;
  std::string mode;   // empty: exact where supported
  std::uint64_t seed = 42;
  std::string out;
  std::string norm;   // empty: maxrow in exact mode, spectral in float mode
  std::string grid;
  std::string kind = "ratio";
  std::string example = "assani";
  std::size_t dim = 4;
  std::string matrix;
  std::string seq = "1,-1/2,1/4";
  std::string bound = "inf";
  std::string inject_fault;
  bool gautschi = false;
  bool timing = false;
};

struct Check {
  std::string name, ref;
  double defect = 0, tolerance = 0;
  bool pass = false;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, std::string ref, double defect, double tolerance, bool pass) {
    checks.push_back({std::move(name), std::move(ref), defect, tolerance, pass});
  }
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline double inf() { return std::numeric_limits<double>::infinity(); }

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

inline std::vector<Order> order_grid(const std::string& s) {
  std::vector<Order> g;
  for (auto& x : split(s)) g.push_back(Order::parse(x));
  if (g.empty()) throw error(errc::parse_error, "empty grid");
  return g;
}

inline std::vector<double> real_grid(const std::string& s) {
  std::vector<double> g;
  for (auto& x : split(s)) g.push_back(parse_rational(x).convert_to<double>());
  if (g.empty()) throw error(errc::parse_error, "empty grid");
  return g;
}

inline double parse_bound(const std::string& s) {
  if (s == "inf") return inf();
  return parse_rational(s).convert_to<double>();
}

inline bool exact_mode(const Config& c, bool supported) {
  if (c.mode.empty()) return supported;
  if (c.mode == "exact") {
    if (!supported) throw error(errc::exact_mode_unsupported, c.command + " runs in float mode only");
    return true;
  }
  if (c.mode == "float") return false;
  throw error(errc::parse_error, "mode must be exact or float");
}

template <class S>
NormKind norm_of(const Config& c) {
  return c.norm.empty() ? default_norm_kind<S>() : parse_norm_kind(c.norm);
}

template <class S>
Matrix<S> load_matrix(const Config& c) {
  if (!c.matrix.empty()) {
    std::ifstream in(c.matrix);
    if (!in) throw error(errc::parse_error, "cannot open " + c.matrix);
    return read_matrix_csv<S>(in);
  }
  if (c.example == "assani") return gallery_assani<S>();
  if (c.example == "shiftblock") return gallery_shift_block<S>(c.dim);
  if (c.example == "identity") return Matrix<S>::identity(c.dim);
  if (c.example == "zero") return Matrix<S>(c.dim);
  if (c.example == "random") return InstanceGenerator(c.seed).matrix<S>(c.dim, 1, 2);
  throw error(errc::parse_error, "unknown example '" + c.example + "'");
}

inline std::string example_name(const Config& c) { return c.matrix.empty() ? c.example : c.matrix; }

template <class S>
double to_d(const S& x) {
  return scalar_traits<S>::to_double(x);
}

// shortest text that reads back to the same double
inline std::string fmt_d(double x) {
  char b[64];
  auto r = std::to_chars(b, b + sizeof b, x);
  return std::string(b, r.ptr);
}

template <class S>
std::string fmt(const S& x) {
  if constexpr (is_exact_v<S>) {
    return to_string(x);
  } else {
    return fmt_d(x);
  }
}


// Exact mode: pass iff the defect is exactly zero. Float mode: against tol.
template <class M>
void add_defect(Report& r, const std::string& name, const std::string& ref, const M& defect, double tol) {
  if constexpr (std::is_same_v<M, Rational>)
    r.add(name, ref, defect.template convert_to<double>(), 0.0, defect == 0);
  else
    r.add(name, ref, defect, tol, defect <= tol);
}

template <class S>
void verify_suite(const Config& c, Report& rep) {
  const double tol = 1e-9;
  const Order alpha = Order::parse(c.alpha), beta = Order::parse(c.beta);
  const NormKind kind = norm_of<S>(c);
  InstanceGenerator gen(c.seed);

  {
    const std::size_t N = std::min<std::size_t>(c.n, 128);
    magnitude_t<S> worst{};
    for (const char* a : {"1/4", "1/2", "1", "3/2", "2"})
      for (const char* b : {"1/4", "1/2", "1", "3/2", "2"})
        worst = std::max(worst, kernel_semigroup_check<S>(Order::parse(a), Order::parse(b), N).max_abs_defect);
    add_defect(rep, "kernel_semigroup", "k^a * k^b = k^(a+b), a,b in {1/4,1/2,1,3/2,2}", worst, tol);
  }

  magnitude_t<S> inv{}, idx{}, dual{}, prod{};
  for (int t = 0; t < 20; ++t) {
    auto f = gen.sequence<S>(12), g = gen.sequence<S>(12);
    inv = std::max({inv, max_abs_diff(weyl_difference(weyl_sum(f, alpha), alpha), f),
                    max_abs_diff(weyl_sum(weyl_difference(f, alpha), alpha), f)});
    idx = std::max({idx, max_abs_diff(weyl_sum(weyl_sum(f, alpha), beta), weyl_sum(f, alpha + beta)),
                    max_abs_diff(weyl(weyl(f, beta), -alpha), weyl(f, beta - alpha))});
    const std::size_t H = 12;
    S d1 = duality_pairing(weyl_sum(f, alpha), g) - duality_pairing(f, cesaro_sum(g, alpha, H));
    S d2 = duality_pairing(f, g) - duality_pairing(weyl_difference(f, alpha), cesaro_sum(g, alpha, H));
    dual = std::max({dual, magnitude_t<S>(scalar_traits<S>::abs(d1)), magnitude_t<S>(scalar_traits<S>::abs(d2))});
    prod = std::max(prod, weyl_product_identity_defect(f, g, alpha));
  }
  add_defect(rep, "weyl_inversion", "W^a W^-a f = W^-a W^a f = f", inv, tol);
  add_defect(rep, "weyl_index_law", "W^b W^a = W^(a+b) on sums and signed orders", idx, tol);
  add_defect(rep, "duality", "<W^-a f, g> = <f, Delta^-a g> and <f, g> = <W^a f, Delta^-a g>", dual, tol);
  add_defect(rep, "product_identity", "W^a(f*g) kernel expansion in W^a f and W^a g", prod, tol);

  // operator side: 20 random matrices of dimension <= 4, orders 1/2, 1, 2
  const std::size_t M = std::min<std::size_t>(c.n, 32);
  magnitude_t<S> fe{}, gr{}, mult{}, unit{}, hcor{}, diff{}, ind{};
  double scale = 1;
  bool faulted = false;
  for (int t = 0; t < 20; ++t) {
    auto T = gen.matrix<S>(1 + t % 4, 1, 2);
    for (const char* a : {"1/2", "1", "2"}) {
      auto o = cesaro_orbit(T, Order::parse(a), M, kind);
      for (auto& m : o.table) scale = std::max(scale, to_d(operator_norm(m, kind)));
      auto g = reconstruct_generator(o.table, o.alpha, kind);
      gr = std::max(gr, g.max_defect);
      auto f = gen.sequence<S>(8), h = gen.sequence<S>(8);
      mult = std::max(mult, theta_multiplicativity_defect(f, h, o));
      unit = std::max(unit, operator_norm(Matrix<S>(theta_apply(FiniteSeq<S>::unit(1), o) - T), kind));
      for (std::size_t n = 0; n <= 8; ++n)
        hcor = std::max(hcor, operator_norm(Matrix<S>(theta_apply(h_seq<S>(o.alpha, n), o) - o.table[n]), kind));
      diff = std::max(diff, theta_difference_identity_defect(f, o));
      ind = std::max(ind, theta_order_independence_defect(f, T, o.alpha, o.alpha + Order(1), 8, kind));
      if (c.inject_fault == "orbit" && !faulted) {
        o.table[3].add_identity(scalar_traits<S>::from_int(1));
        faulted = true;
      }
      fe = std::max(fe, functional_equation_sweep(o.table, o.alpha, M, kind).max_defect);
    }
  }
  const double otol = tol * scale * scale;
  add_defect(rep, "functional_equation", "T_n T_m against the kernel combination of T_u, all n+m <= 32", fe, otol);
  add_defect(rep, "generator_round_trip", "T = T_1 - a I regenerates the table", gr, otol);
  add_defect(rep, "theta_multiplicative", "theta(f*g) = theta(f) theta(g)", mult, otol);
  add_defect(rep, "theta_unit", "theta(e_1) = T", unit, otol);
  add_defect(rep, "theta_h_family", "theta(h_n^a) = n-th Cesaro sum of the orbit", hcor, otol);
  add_defect(rep, "theta_difference", "T theta(Delta f) = (I - T) theta(f) - f(0) I", diff, otol);
  add_defect(rep, "theta_order_independence", "theta computed at orders a and a+1 agree", ind, otol);
}

inline void gautschi_checks(const Config& c, Report& rep) {
  const std::size_t N = std::max<std::size_t>(c.n, 1000);
  std::size_t viol = 0, dv = 0;
  for (int i = 1; i <= 9; ++i) {
    viol += gautschi_bounds_check(Order(i, 10), N).violations.size();
    dv += doubling_check<double>(Order(i, 10), N).sharp_violations.size();
  }
  rep.add("gautschi_bounds", "Gamma-function bounds on k^a(n), a in {0.1..0.9}, n <= 1000", double(viol), 0, viol == 0);
  rep.add("doubling_bound", "k^(a+1)(2n) < ((3+a)/(1+a))^a k^(a+1)(n), a in {0.1..0.9}", double(dv), 0, dv == 0);
}

inline Json config_echo(const Config& c) {
  Json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma.empty() ? c.alpha : c.gamma;
  j["n"] = c.n;
  j["mode"] = c.mode.empty() ? "default" : c.mode;
  j["seed"] = c.seed;
  j["norm"] = c.norm.empty() ? "default" : c.norm;
  j["grid"] = c.grid;
  j["kind"] = c.kind;
  j["example"] = example_name(c);
  j["dim"] = c.dim;
  j["inject_fault"] = c.inject_fault;
  j["gautschi"] = c.gautschi;
  return j;
}

inline Json report_json(const Config& c, const Report& r, double ms) {
  Json j;
  j["command"] = c.command;
  j["config_echo"] = config_echo(c);
  j["checks"] = Json::array();
  for (auto& k : r.checks) {
    Json x;
    x["name"] = k.name;
    x["paper_ref"] = k.ref;
    x["defect"] = k.defect;
    x["tolerance"] = k.tolerance;
    x["pass"] = k.pass;
    j["checks"].push_back(x);
  }
  j["wall_time_ms"] = ms;
  return j;
}

struct CsvRow {
  std::string example;
  std::string alpha;
  std::size_t n;
  double ratio, norm, bound;
  bool pass;
};

inline void write_rows(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << "example,alpha,n,ratio,norm,bound,pass\n";
  for (auto& r : rows)
    out << r.example << "," << r.alpha << "," << r.n << "," << fmt_d(r.ratio) << "," << fmt_d(r.norm) << ","
        << fmt_d(r.bound) << "," << (r.pass ? "true" : "false") << "\n";
}

inline std::vector<CsvRow> sweep_rows(const Config& c) {
  std::vector<CsvRow> rows;
  const std::string ex = example_name(c);
  if (c.kind == "ratio") {
    const double b = parse_bound(c.bound);
    auto T = load_matrix<double>(c);
    const NormKind kind = norm_of<double>(c);
    for (auto& a : order_grid(c.grid.empty() ? c.alpha : c.grid)) {
      auto r = c_alpha_ratio(T, a, c.n, kind);
      for (std::size_t n = 0; n <= c.n; ++n) rows.push_back({ex, a.str(), n, r.ratios[n], r.norms[n], b, r.ratios[n] <= b});
    }
  } else if (c.kind == "abel") {
    auto T = load_matrix<double>(c);
    const NormKind kind = norm_of<double>(c);
    const Order a = Order::parse(c.alpha), g = Order::parse(c.gamma.empty() ? c.alpha : c.gamma);
    const double C = measured_orbit_constant(T, a, g, c.n, kind);
    auto grid = real_grid(c.grid.empty() ? "1/2,9/10,99/100" : c.grid);
    for (auto& row : abel_bound_check(T, a, g, C, grid, kind))
      rows.push_back({ex + ";r=" + fmt_d(row.r), a.str(), c.n, row.norm / row.bound, row.norm, row.bound, row.ok});
  } else if (c.kind == "resolvent") {
    auto T = load_matrix<double>(c);
    const NormKind kind = norm_of<double>(c);
    const Order a = Order::parse(c.alpha);
    for (double l : real_grid(c.grid.empty() ? "4,8" : c.grid)) {
      auto r = pseudo_resolvent(T, a, l, c.n, kind);
      rows.push_back({ex + ";lambda=" + fmt_d(l), a.str(), c.n, r.inverse_defect, operator_norm(r.R, kind),
                      r.inverse_tail_bound + 1e-10, r.ok});
    }
  } else if (c.kind == "weights") {
    const Order a = Order::parse(c.alpha);
    for (auto& b : order_grid(c.grid.empty() ? c.beta : c.grid)) {
      auto phi = Weight<double>::kernel(b, 2 * c.n);
      auto r = certify_omega_alpha_loc(phi, a, c.n);
      double growth = 0;
      for (std::size_t i = 0; i + 3 < r.running_max.size(); ++i)
        growth = std::max(growth, r.running_max[i + 3].max_c / r.running_max[i].max_c);
      rows.push_back({"k^" + b.str(), a.str(), c.n, r.c_phi_estimate, growth, 1.5, !r.violated});
    }
  } else {
    throw error(errc::parse_error, "unknown sweep kind '" + c.kind + "'");
  }
  return rows;
}

template <class S>
void kernel_table_csv(const Config& c, std::ostream& out) {
  auto k = kernel_values<S>(Order::parse(c.alpha), c.n);
  out << "n,value\n";
  for (std::size_t n = 0; n <= c.n; ++n) out << n << "," << fmt(k[n]) << "\n";
}

template <class S>
void norm_csv(const Config& c, std::ostream& out) {
  std::vector<S> v;
  for (auto& x : split(c.seq)) v.push_back(scalar_traits<S>::from_rational(parse_rational(x)));
  FiniteSeq<S> f(v);
  const Order a = Order::parse(c.alpha);
  magnitude_t<S> l1{};
  for (auto& x : f.coeffs()) l1 += scalar_traits<S>::abs(x);
  out << "quantity,value\n";
  out << "l1," << fmt(l1) << "\n";
  out << "q_alpha," << fmt(q_alpha(f, a)) << "\n";
  if (!c.gamma.empty()) {
    auto phi = Weight<S>::kernel(Order::parse(c.gamma), f.size() + 1);
    out << "q_phi," << fmt(q_norm(f, phi, a)) << "\n";
  }
}

template <class S>
void orbit_csv(const Config& c, std::ostream& out) {
  auto T = load_matrix<S>(c);
  auto r = c_alpha_ratio(T, Order::parse(c.alpha), c.n, norm_of<S>(c));
  out << "n,ratio,norm\n";
  for (std::size_t n = 0; n <= c.n; ++n) out << n << "," << fmt_d(r.ratios[n]) << "," << fmt_d(r.norms[n]) << "\n";
}

inline void weights_checks(const Config& c, Report& rep) {
  const Order a = Order::parse(c.alpha), b = Order::parse(c.beta);
  auto phi = Weight<double>::kernel(b, 2 * c.n);
  auto r = certify_omega_alpha_loc(phi, a, c.n);
  double growth = 0;
  for (std::size_t i = 0; i + 3 < r.running_max.size(); ++i)
    growth = std::max(growth, r.running_max[i + 3].max_c / r.running_max[i].max_c);
  rep.add("weight_class_local", "k^b certified for order a: running maximum stays flat over three doublings", growth,
          1.5, !r.violated);
  if (a.sign() > 0 && a < Order(1) && b == a + Order(1)) {
    const double C = sharp_algebra_constant(a);
    rep.add("weight_constant", "estimated constant for k^(a+1) below 2((3+a)/(1+a))^a - 1", r.c_phi_estimate, C,
            r.c_phi_estimate <= C);
  }
}

inline void abel_checks(const Config& c, Report& rep) {
  auto T = load_matrix<double>(c);
  const NormKind kind = norm_of<double>(c);
  const Order a = Order::parse(c.alpha), g = Order::parse(c.gamma.empty() ? c.alpha : c.gamma);
  auto grid = real_grid(c.grid.empty() ? "1/2,9/10" : c.grid);
  for (double r : grid) {
    auto s = abel_subordination_defect(T, a, r, c.n, kind);
    rep.add("abel_subordination;r=" + fmt_d(r), "A_r(T) = (1-r)^(a+1) sum r^n (n-th Cesaro sum of T)", s.defect,
            s.tail_bound + 1e-10, s.ok);
  }
  const double C = measured_orbit_constant(T, a, g, c.n, kind);
  for (auto& row : abel_bound_check(T, a, g, C, grid, kind))
    rep.add("abel_bound;r=" + fmt_d(row.r), "||A_r(T)|| <= C (1-r)^-(g-a), C = measured orbit ratio", row.norm,
            row.bound, row.ok);
}

inline void resolvent_checks(const Config& c, Report& rep) {
  auto T = load_matrix<double>(c);
  const NormKind kind = norm_of<double>(c);
  const Order a = Order::parse(c.alpha);
  auto grid = real_grid(c.grid.empty() ? "4,8" : c.grid);
  auto o = cesaro_orbit(T, Order(1), c.n, kind);
  for (double l : grid) {
    auto r = pseudo_resolvent(T, a, l, c.n, kind);
    rep.add("resolvent_inverse;lambda=" + fmt_d(l), "R(lambda)(lambda - T) = I from the Cesaro orbit", r.inverse_defect,
            r.inverse_tail_bound + 1e-10, r.ok);
    auto x = theta_p_lambda_crosscheck(o, l);
    rep.add("theta_p_lambda;lambda=" + fmt_d(l), "theta(p_lambda) = (lambda - T)^-1", x.defect, x.tail_bound + 1e-10,
            x.ok);
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    auto h = resolvent_hilbert_check(T, a, grid[i], grid[i + 1], c.n, kind);
    rep.add("resolvent_equation;lambda=" + fmt_d(grid[i]) + ";mu=" + fmt_d(grid[i + 1]),
            "R(lambda) - R(mu) = (mu - lambda) R(lambda) R(mu)", h.defect, h.tolerance, h.ok);
  }
}

}  // namespace detail

// Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Cesaro sums, Weyl fractional calculus and operator orbits"};
  app.require_subcommand(1);
  app.add_option("--alpha", c.alpha, "order a");
  app.add_option("--beta", c.beta, "second order b");
  app.add_option("--gamma", c.gamma, "weight order g");
  app.add_option("--n", c.n, "horizon N");
  app.add_option("--mode", c.mode, "exact or float");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--out", c.out, "output file");
  app.add_option("--norm", c.norm, "spectral, maxrow or maxcol");
  app.add_option("--grid", c.grid, "comma-separated parameter grid");
  app.add_option("--kind", c.kind, "sweep kind: ratio, abel, resolvent, weights");
  app.add_option("--example", c.example, "assani, shiftblock, identity, zero, random");
  app.add_option("--dim", c.dim, "dimension for shiftblock, identity, zero, random");
  app.add_option("--matrix", c.matrix, "matrix CSV file (dim=k header)");
  app.add_option("--seq", c.seq, "finite sequence, comma-separated");
  app.add_option("--bound", c.bound, "ratio bound for sweeps");
  app.add_option("--inject-fault", c.inject_fault, "orbit: perturb one orbit table entry");
  app.add_flag("--gautschi", c.gautschi, "add the Gamma-function bound checks (float)");
  app.add_flag("--timing", c.timing, "record wall time in the report");
  for (const char* name : {"verify", "sweep", "kernel", "norm", "weights", "orbit", "abel", "resolvent"})
    app.add_subcommand(name)->fallthrough();

  std::vector<std::string> argv_s{"cesaro"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream buf;
  int code = 0;
  try {
    if (!c.inject_fault.empty() && c.inject_fault != "orbit")
      throw error(errc::parse_error, "unknown fault '" + c.inject_fault + "'");
    if (c.n == 0) throw error(errc::horizon_too_short, "--n must be positive");
    Report rep;
    bool json = true;
    if (c.command == "verify") {
      if (c.gautschi && c.mode == "exact")
        throw error(errc::exact_mode_unsupported, "Gamma-function bounds need float mode");
      if (detail::exact_mode(c, true))
        detail::verify_suite<Rational>(c, rep);
      else
        detail::verify_suite<double>(c, rep);
      if (c.gautschi) detail::gautschi_checks(c, rep);
    } else if (c.command == "weights") {
      detail::exact_mode(c, false);
      detail::weights_checks(c, rep);
    } else if (c.command == "abel") {
      detail::exact_mode(c, false);
      detail::abel_checks(c, rep);
    } else if (c.command == "resolvent") {
      detail::exact_mode(c, false);
      detail::resolvent_checks(c, rep);
    } else {
      json = false;
      if (c.command == "sweep") {
        detail::exact_mode(c, false);
        auto rows = detail::sweep_rows(c);
        detail::write_rows(buf, rows);
        for (auto& r : rows)
          if (!r.pass) code = 1;
      } else if (c.command == "kernel") {
        if (detail::exact_mode(c, true))
          detail::kernel_table_csv<Rational>(c, buf);
        else
          detail::kernel_table_csv<double>(c, buf);
      } else if (c.command == "norm") {
        if (detail::exact_mode(c, true))
          detail::norm_csv<Rational>(c, buf);
        else
          detail::norm_csv<double>(c, buf);
      } else if (c.command == "orbit") {
        if (detail::exact_mode(c, true))
          detail::orbit_csv<Rational>(c, buf);
        else
          detail::orbit_csv<double>(c, buf);
      }
    }
    if (json) {
      double ms = 0;
      if (c.timing)
        ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      buf << detail::report_json(c, rep, ms).dump(2) << "\n";
      code = rep.all_pass() ? 0 : 1;
      for (auto& k : rep.checks)
        if (!k.pass) err << "FAILED " << k.name << " defect " << k.defect << " tolerance " << k.tolerance << "\n";
    }
  } catch (const error& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (c.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(c.out);
    if (!f) {
      err << "cannot write " << c.out << "\n";
      return 2;
    }
    f << buf.str();
  }
  return code;
}

}  // namespace cesaro::cli
