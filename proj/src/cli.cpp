#include "tropdyn/cli.hpp"

#include "tropdyn/io.hpp"
#include "tropdyn/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tropdyn {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::vector<int> ms;
  std::vector<double> box;
  int res = 0;
  std::uint64_t seed = 0;
  double delta = 0.2;
  double density = 50;
  std::string svg;
  int m = 1;
  int p = 0, n = 0;
  int phases = 64;
  int numax = 10;
  std::string experiment;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

void emit(const Options& o, const Json& j, std::ostream& out) { write_text(o.output, j.dump(2) + "\n", out); }

const std::string& single_input(const Options& o) {
  if (o.inputs.size() != 1) throw CLI::ValidationError("-i", "expects exactly one input file");
  return o.inputs.front();
}

std::pair<std::vector<double>, std::vector<double>> box_of(const Options& o, std::size_t n) {
  std::vector<double> lo(n, -3), hi(n, 3);
  if (o.box.empty()) return {lo, hi};
  if (o.box.size() == 2) {
    std::fill(lo.begin(), lo.end(), o.box[0]);
    std::fill(hi.begin(), hi.end(), o.box[1]);
  } else if (o.box.size() == 2 * n) {
    for (std::size_t i = 0; i < n; ++i) lo[i] = o.box[2 * i], hi[i] = o.box[2 * i + 1];
  } else {
    throw CLI::ValidationError("--box", "expects lo,hi or one lo,hi pair per axis");
  }
  return {lo, hi};
}

GridSpec grid_of(const Options& o, std::size_t n, int default_res) {
  auto [lo, hi] = box_of(o, n);
  GridSpec g{lo, hi, std::vector<int>(n, o.res > 0 ? o.res : default_res), o.delta, o.phases};
  g.validate();
  return g;
}

ComplexPolynomial complex_input(const Options& o) { return complex_polynomial_from_json(read_json_file(single_input(o))); }

std::vector<int> ms_of(const Options& o) {
  if (!o.ms.empty()) return o.ms;
  return {o.m};
}

int cmd_tropicalize(const Options& o, std::ostream& out) {
  emit(o, to_json(tropicalize_poly(complex_input(o))), out);
  return 0;
}

int cmd_hypersurface(const Options& o, std::ostream& out) {
  const Json in = read_json_file(single_input(o));
  const TropicalPolynomial q =
      is_complex_polynomial_json(in) ? tropicalize_poly(complex_polynomial_from_json(in)) : tropical_polynomial_from_json(in);
  const TropicalCycle c = tropical_hypersurface(q);
  Json j = to_json(c.complex());
  j["balanced"] = check_balancing(c.complex()).balanced;
  emit(o, j, out);
  return 0;
}

int cmd_balance(const Options& o, std::ostream& out) {
  emit(o, to_json(check_balancing(weighted_complex_from_json(read_json_file(single_input(o))))), out);
  return 0;
}

int cmd_bergman(const Options& o, std::ostream& out) {
  const TropicalCycle c = uniform_bergman_fan(o.p, o.n);
  Json j = to_json(c.complex());
  j["balanced"] = true;
  emit(o, j, out);
  return 0;
}

int cmd_orbits(const Options& o, std::ostream& out) {
  const Fan fan = fan_from_json(read_json_file(single_input(o)));
  emit(o, orbits_to_json(fan, orbits(fan)), out);
  return 0;
}

int cmd_amoeba(const Options& o, std::ostream& out) {
  const ComplexPolynomial f = complex_input(o);
  const GridSpec g = grid_of(o, 2, 301);
  PointCloud cloud = amoeba_sample(f, g, o.m);
  cloud.seed = o.seed;
  std::ostringstream csv;
  write_csv(csv, cloud);
  write_text(o.output, csv.str(), out);
  if (!o.svg.empty()) {
    const PointCloud spine = sample_tropical_support(tropical_hypersurface(tropicalize_poly(f)), g.lo, g.hi, o.density);
    write_text(o.svg, scatter_svg({{&cloud, "gray", 0.8}, {&spine, "crimson", 1.2}}, g.lo, g.hi), out);
  }
  return 0;
}

int cmd_dequantize(const Options& o, std::ostream& out) {
  const ComplexPolynomial f = complex_input(o);
  const GridSpec g = grid_of(o, f.ambient_dim(), 61);
  Json results = Json::array();
  for (int m : ms_of(o)) {
    const auto e = dequantization_error(f, m, g, o.seed);
    results.push_back({{"m", m}, {"l_inf", e.l_inf}, {"l1", e.l1}, {"points", e.points}, {"resamples", e.resamples}});
  }
  emit(o, {{"seed", o.seed}, {"delta", o.delta}, {"results", results}}, out);
  return 0;
}

int cmd_equidist(const Options& o, std::ostream& out) {
  const int n = o.n > 0 ? o.n : 1;
  Json results = Json::array();
  for (int m : ms_of(o)) {
    const std::vector<std::complex<double>> one(n, 1.0);
    const ComplexCloud cloud = mth_roots(one, m);
    double worst = 0;
    const int k = std::min(o.numax, m - 1);
    std::vector<long long> nu(n, -k);
    while (k > 0) {
      if (std::any_of(nu.begin(), nu.end(), [](long long v) { return v != 0; }))
        worst = std::max(worst, std::abs(empirical_fourier(cloud, nu)));
      int j = n - 1;
      while (j >= 0 && ++nu[j] > k) nu[j--] = -k;
      if (j < 0) break;
    }
    Json r{{"m", m}, {"count", cloud.points.size()}, {"max_fourier", worst}};
    if (n == 1) {
      std::vector<double> xs;
      for (const auto& p : cloud.points) {
        double t = std::arg(p[0]) / (2 * M_PI);
        xs.push_back(t < 0 ? t + 1 : t);
      }
      r["discrepancy"] = star_discrepancy(std::move(xs));
    }
    results.push_back(std::move(r));
  }
  emit(o, {{"dim", n}, {"numax", o.numax}, {"results", results}}, out);
  return 0;
}

int cmd_converge(const Options& o, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.seed = o.seed;
  cfg.density = o.density;
  std::size_t n = 2;
  if (o.experiment != "equidistribution-discrepancy") {
    cfg.f = complex_input(o);
    n = cfg.f->ambient_dim();
  }
  cfg.grid = grid_of(o, n, o.experiment == "dequantization" ? 61 : 301);
  const ConvergenceReport r = convergence_report(o.experiment, o.ms, cfg);
  emit(o, to_json(r), out);
  if (!o.svg.empty()) write_text(o.svg, loglog_svg(r), out);
  return 0;
}

int cmd_refine(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 2) throw CLI::ValidationError("-i", "refine expects a complex and a fan");
  const WeightedComplex c = weighted_complex_from_json(read_json_file(o.inputs[0]));
  const Fan fan = fan_from_json(read_json_file(o.inputs[1]));
  emit(o, to_json(refine(c, fan)), out);
  return 0;
}

int cmd_add(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 2) throw CLI::ValidationError("-i", "add expects two complexes");
  const WeightedComplex sum = add_cycles(weighted_complex_from_json(read_json_file(o.inputs[0])),
                                         weighted_complex_from_json(read_json_file(o.inputs[1])));
  Json j = to_json(sum);
  j["balanced"] = check_balancing(sum).balanced;
  emit(o, j, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Tropical geometry and dynamics toolkit", "tropdyn"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* c, bool multiple = false) {
    auto* opt = c->add_option("-i", o.inputs, "input JSON")->required();
    if (!multiple) opt->expected(1);
  };
  auto output = [&](CLI::App* c) { c->add_option("-o", o.output, "output path (stdout if omitted)"); };
  auto grid = [&](CLI::App* c) {
    c->add_option("--box", o.box, "lo,hi[,lo,hi...]")->delimiter(',');
    c->add_option("--res", o.res, "grid points per axis")->check(CLI::Range(2, 100000));
  };
  auto seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed"); };

  std::vector<std::pair<CLI::App*, int (*)(const Options&, std::ostream&)>> commands;
  auto add = [&](const char* name, const char* help, int (*fn)(const Options&, std::ostream&)) {
    CLI::App* c = app.add_subcommand(name, help);
    commands.emplace_back(c, fn);
    return c;
  };

  auto* c = add("tropicalize", "tropicalize a complex polynomial", cmd_tropicalize);
  input(c), output(c);
  c = add("hypersurface", "tropical hypersurface of a polynomial", cmd_hypersurface);
  input(c), output(c);
  c = add("balance", "check the balancing condition", cmd_balance);
  input(c), output(c);
  c = add("bergman", "Bergman fan of a uniform matroid", cmd_bergman);
  c->add_option("--p", o.p, "cone dimension")->required();
  c->add_option("--n", o.n, "ambient dimension")->required();
  output(c);
  c = add("orbits", "torus orbits of a fan", cmd_orbits);
  input(c), output(c);
  c = add("amoeba", "sample a scaled amoeba (CSV)", cmd_amoeba);
  input(c), output(c), grid(c), seed(c);
  c->add_option("--m", o.m, "scale")->check(CLI::PositiveNumber);
  c->add_option("--phases", o.phases, "phase samples per slice")->check(CLI::PositiveNumber);
  c->add_option("--density", o.density, "tropical samples per unit length in the SVG overlay");
  c->add_option("--svg", o.svg, "write an SVG plot");
  c = add("dequantize", "dequantization error on a grid", cmd_dequantize);
  input(c), output(c), grid(c), seed(c);
  c->add_option("--m", o.m, "scale")->check(CLI::PositiveNumber);
  c->add_option("--ms", o.ms, "scales a,b,c")->delimiter(',');
  c->add_option("--delta", o.delta, "exclusion radius");
  c = add("equidist", "equidistribution of roots of unity", cmd_equidist);
  output(c);
  c->add_option("--m", o.m, "root order")->check(CLI::PositiveNumber);
  c->add_option("--ms", o.ms, "root orders a,b,c")->delimiter(',');
  c->add_option("--n", o.n, "torus dimension")->check(CLI::PositiveNumber);
  c->add_option("--numax", o.numax, "largest |nu_j| tested")->check(CLI::NonNegativeNumber);
  c = add("converge", "fit a convergence rate", cmd_converge);
  c->add_option("-i", o.inputs, "input JSON")->expected(1);
  output(c), grid(c), seed(c);
  c->add_option("--experiment", o.experiment, "hausdorff-to-tropical | dequantization | equidistribution-discrepancy")
      ->required();
  c->add_option("--ms", o.ms, "scales a,b,c")->delimiter(',')->required();
  c->add_option("--delta", o.delta, "exclusion radius");
  c->add_option("--density", o.density, "tropical samples per unit length");
  c->add_option("--phases", o.phases, "phase samples per slice")->check(CLI::PositiveNumber);
  c->add_option("--svg", o.svg, "write an SVG log-log plot");
  c = add("refine", "refine a weighted complex along a fan", cmd_refine);
  input(c, true), output(c);
  c = add("add", "add two weighted complexes", cmd_add);
  input(c, true), output(c);

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& [cmd, fn] : commands) {
    if (!cmd->parsed()) continue;
    try {
      return fn(o, out);
    } catch (const CLI::ParseError& e) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const nlohmann::json::exception& e) {
      err << "error: invalid JSON content: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace tropdyn
