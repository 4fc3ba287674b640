#include "levymart/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "levymart/catalog.hpp"
#include "levymart/errors.hpp"
#include "levymart/exponent.hpp"
#include "levymart/expmart.hpp"
#include "levymart/funceq.hpp"
#include "levymart/generator.hpp"
#include "levymart/moments.hpp"
#include "levymart/mtgtest.hpp"
#include "levymart/report.hpp"
#include "levymart/simulate.hpp"

namespace levy::cli {

using nlohmann::json;

std::vector<double> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw ValidationError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("expected a comma-separated list of numbers");
  return out;
}

namespace {

SmoothFunction smooth_poly(const Polynomial& p) {
  const Polynomial d1 = p.derivative();
  const Polynomial d2 = d1.derivative();
  return {[p](double x) { return p(x); }, [d1](double x) { return d1(x); },
          [d2](double x) { return d2(x); }};
}

SmoothFunction smooth_expmix(const ExpMix& g) {
  return {[g](double x) { return g(x); }, [g](double x) { return g.derivative(x); },
          [g](double x) { return g.second_derivative(x); }};
}

}  // namespace

FunctionSpec parse_function(const std::string& text) {
  FunctionSpec fs{text, {}, std::nullopt, std::nullopt};
  const auto set_poly = [&](Polynomial p) {
    fs.smooth = smooth_poly(p);
    fs.poly = std::move(p);
  };
  const auto set_expmix = [&](ExpMix g) {
    fs.smooth = smooth_expmix(g);
    fs.expmix = g;
  };
  if (text.rfind("poly:", 0) == 0) {
    set_poly(Polynomial(parse_csv(text.substr(5))));
  } else if (text.rfind("expmix:", 0) == 0) {
    const auto v = parse_csv(text.substr(7));
    if (v.size() != 4) throw ValidationError("expmix needs a,l1,b,l2");
    set_expmix(ExpMix(v[0], v[1], v[2], v[3]));
  } else if (text == "cosh") {
    set_expmix(ExpMix(0.5, -1.0, 0.5, 1.0));
  } else if (text == "exp") {
    set_expmix(ExpMix::exponential(1.0));
  } else if (text == "cube") {
    set_poly(Polynomial{0.0, 0.0, 0.0, 1.0});
  } else if (text == "square") {
    set_poly(Polynomial{0.0, 0.0, 1.0});
  } else if (text == "one") {
    set_poly(Polynomial{1.0});
  } else if (text == "sin") {
    fs.smooth = {[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
                 [](double x) { return -std::sin(x); }};
  } else if (text == "tanh") {
    fs.smooth = {[](double x) { return std::tanh(x); },
                 [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); },
                 [](double x) {
                   const double c = std::cosh(x);
                   return -2.0 * std::tanh(x) / (c * c);
                 }};
  } else {
    throw ValidationError("unknown function '" + text +
                          "' (use poly:<csv>, expmix:a,l1,b,l2, cosh, exp, cube, square, one, "
                          "sin, tanh)");
  }
  return fs;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct ProcessArgs {
  std::string name;
  std::string file;
  std::string json_text;
};

void add_process_options(CLI::App* sub, ProcessArgs& p) {
  sub->add_option("--process", p.name, "catalog process, e.g. brownian or gamma:c=2,beta=1");
  sub->add_option("--process-file", p.file, "JSON process config file");
  sub->add_option("--process-json", p.json_text, "inline JSON process config");
}

ProcessSpec resolve_process(const ProcessArgs& p) {
  const int given = !p.name.empty() + !p.file.empty() + !p.json_text.empty();
  if (given != 1) {
    throw ValidationError("give exactly one of --process, --process-file, --process-json");
  }
  if (!p.name.empty()) return catalog_process(p.name);
  json j;
  try {
    if (!p.file.empty()) {
      std::ifstream in(p.file);
      if (!in) throw ValidationError("cannot open process file '" + p.file + "'");
      j = json::parse(in);
    } else {
      j = json::parse(p.json_text);
    }
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("process config is not valid JSON: ") + e.what());
  }
  return process_from_json(j);
}

// Flags whose values are replaced by canonical entries in the echoed config.
bool strip_with_value(const std::string& a) {
  for (const char* f : {"--process", "--process-file", "--process-json", "--out", "--csv",
                        "--binary", "--seed"}) {
    if (a == f) return true;
  }
  return false;
}

bool strip_inline(const std::string& a) {
  for (const char* f : {"--process=", "--process-file=", "--process-json=", "--out=", "--csv=",
                        "--binary=", "--seed="}) {
    if (a.rfind(f, 0) == 0) return true;
  }
  return a == "--table";
}

struct Context {
  std::vector<std::string> raw;
  std::ostream& out;
  std::ostream& err;
  bool table = false;
  std::string out_path;
  std::string positional;  // describe's process name, removed from the echo
};

std::vector<std::string> canonical_argv(const Context& ctx, const std::optional<ProcessSpec>& spec,
                                        const std::optional<std::uint64_t>& seed) {
  std::vector<std::string> out;
  bool positional_dropped = ctx.positional.empty();
  for (std::size_t i = 0; i < ctx.raw.size(); ++i) {
    const std::string& a = ctx.raw[i];
    if (strip_with_value(a)) {
      ++i;
      continue;
    }
    if (strip_inline(a)) continue;
    if (!positional_dropped && a == ctx.positional) {
      positional_dropped = true;
      continue;
    }
    out.push_back(a);
  }
  if (spec) {
    out.emplace_back("--process-json");
    out.push_back(process_to_json(*spec).dump());
  }
  if (seed) {
    out.emplace_back("--seed");
    out.push_back(std::to_string(*seed));
  }
  return out;
}

void print_table(std::ostream& err, const json& result, const std::string& prefix = "") {
  for (const auto& [key, value] : result.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_table(err, value, name);
    } else {
      err << "  " << name;
      if (name.size() < 28) err << std::string(28 - name.size(), ' ');
      err << ' ' << dump17(value, -1) << '\n';
    }
  }
}

void emit(Context& ctx, const std::string& command, const json& config, const json& result,
          bool json_to_err = false) {
  const json report{{"schema", kReportSchema},
                    {"command", command},
                    {"config", config},
                    {"result", result}};
  const std::string text = dump17(report) + "\n";
  if (!ctx.out_path.empty()) {
    std::ofstream f(ctx.out_path);
    if (!f) throw ValidationError("cannot write '" + ctx.out_path + "'");
    f << text;
  } else if (json_to_err) {
    ctx.err << text;
  } else {
    ctx.out << text;
  }
  if (ctx.table) {
    ctx.err << command << '\n';
    print_table(ctx.err, result);
  }
}

json make_config(const Context& ctx, const std::optional<ProcessSpec>& spec,
                 const std::optional<std::uint64_t>& seed, json outputs = json::object()) {
  return {{"argv", canonical_argv(ctx, spec, seed)},
          {"process", spec ? process_to_json(*spec) : json(nullptr)},
          {"seed", seed ? json(*seed) : json(nullptr)},
          {"outputs", std::move(outputs)},
          {"threads_env", "LEVYMART_THREADS"}};
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (std::getenv("CI") != nullptr) throw ValidationError("--seed is required when CI is set");
  return 0;
}

json exponent_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool table_on_err) {
  Context ctx{args, out, err, table_on_err, {}, {}};
  CLI::App app{"Martingale functions of Levy processes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  QuadratureOptions quad;
  ProcessArgs proc;
  bool table_flag = false;
  std::function<void()> action;

  const auto common = [&](CLI::App* sub, bool with_process = true) {
    if (with_process) add_process_options(sub, proc);
    sub->add_option("--out", ctx.out_path, "write the JSON report to this file");
    sub->add_flag("--table", table_flag, "print a table to stderr");
    sub->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance");
  };

  // describe
  auto* describe = app.add_subcommand("describe", "triplet, exponent samples and support class");
  common(describe);
  describe->add_option("name", ctx.positional, "catalog process");
  describe->callback([&] {
    action = [&] {
      if (!ctx.positional.empty()) {
        if (!proc.name.empty()) throw ValidationError("process given twice");
        proc.name = ctx.positional;
      }
      const ProcessSpec spec = resolve_process(proc);
      const LevyTriplet& tr = spec.triplet();
      json psi = json::array();
      for (double xi : {0.5, 1.0, 2.0}) {
        psi.push_back({{"xi", xi}, {"psi", exponent_json(eval_exponent(spec, xi, quad))}});
      }
      json finite = json::object();
      for (int n = 1; n <= 6; ++n) finite[std::to_string(n)] = moment_finite(spec, n);
      const Interval dom = exp_moment_domain(spec);
      const json result{
          {"process", process_to_json(spec)},
          {"fingerprint", hex(fingerprint(spec))},
          {"triplet",
           {{"drift", tr.drift()},
            {"sigma2", tr.sigma2()},
            {"truncated_second_moment", tr.truncated_second_moment()}}},
          {"activity", to_string(tr.measure().activity())},
          {"support_class", to_string(support_class(spec, quad))},
          {"exponent_samples", psi},
          {"moment_finite", finite},
          {"exp_moment_domain", json::array({dom.lo, dom.hi})},
      };
      emit(ctx, "describe", make_config(ctx, spec, std::nullopt), result);
    };
  });

  // moments
  int n_moment = 4;
  std::optional<double> t_moment;
  auto* moments = app.add_subcommand("moments", "cumulants and moment polynomials E X_t^n");
  common(moments);
  moments->add_option("--n", n_moment, "highest order")->check(CLI::Range(0, 60));
  moments->add_option("--t", t_moment, "also evaluate at this time");
  moments->callback([&] {
    action = [&] {
      const ProcessSpec spec = resolve_process(proc);
      const std::vector<double> kappa = cumulants(spec, n_moment, quad);
      const auto mu = moments_from_cumulants(kappa);
      json polys = json::array();
      for (const Polynomial& p : mu) polys.push_back(to_json(p));
      json result{{"n", n_moment}, {"cumulants", kappa}, {"moment_polynomials", polys}};
      result["assumptions"] = {
          "moment finiteness is decided at integer orders; statements needing "
          "E|X_t|^(n+eps) < inf for some eps > 0 assume that extra margin"};
      if (t_moment) {
        std::vector<double> values;
        for (const Polynomial& p : mu) values.push_back(p(*t_moment));
        result["moments_at_t"] = {{"t", *t_moment}, {"values", values}};
      }
      emit(ctx, "moments", make_config(ctx, spec, std::nullopt), result);
    };
  });

  // gen
  std::string gen_poly;
  std::optional<double> gen_lambda;
  std::string gen_f;
  double gen_x = 0.0;
  auto* gen = app.add_subcommand("gen", "apply the generator A");
  common(gen);
  gen->add_option("--poly", gen_poly, "polynomial coefficients c0,c1,...");
  gen->add_option("--lambda", gen_lambda, "eigenvalue eta(lambda) of A on exp(lambda x)");
  gen->add_option("--f", gen_f, "function for quadrature evaluation at --x");
  gen->add_option("--x", gen_x, "evaluation point for --f");
  gen->callback([&] {
    action = [&] {
      const int given = !gen_poly.empty() + gen_lambda.has_value() + !gen_f.empty();
      if (given != 1) throw ValidationError("give exactly one of --poly, --lambda, --f");
      const ProcessSpec spec = resolve_process(proc);
      json result;
      if (!gen_poly.empty()) {
        result = {{"poly", parse_csv(gen_poly)},
                  {"Ap", to_json(apply_to_polynomial(spec, Polynomial(parse_csv(gen_poly)), quad))}};
      } else if (gen_lambda) {
        result = {{"lambda", *gen_lambda},
                  {"eta", apply_to_exponential(spec, *gen_lambda, quad)}};
      } else {
        const FunctionSpec fs = parse_function(gen_f);
        result = {{"f", fs.text}, {"x", gen_x}, {"Af", apply_numeric(spec, fs.smooth, gen_x, quad)}};
      }
      emit(ctx, "gen", make_config(ctx, spec, std::nullopt), result);
    };
  });

  // classify
  std::string cls_poly;
  std::string cls_expmix;
  std::string cls_f;
  double cls_tol = kClassifyTolerance;
  auto* classify = app.add_subcommand("classify", "exact martingale-function classification");
  common(classify);
  classify->add_option("--poly", cls_poly, "polynomial coefficients (additive test)");
  classify->add_option("--expmix", cls_expmix, "a,l1,b,l2 (multiplicative test)");
  classify->add_option("--f", cls_f, "function spec with a polynomial or expmix form");
  classify->add_option("--tol", cls_tol, "constancy tolerance");
  classify->callback([&] {
    action = [&] {
      const int given = !cls_poly.empty() + !cls_expmix.empty() + !cls_f.empty();
      if (given != 1) throw ValidationError("give exactly one of --poly, --expmix, --f");
      std::string text = cls_f;
      if (!cls_poly.empty()) text = "poly:" + cls_poly;
      if (!cls_expmix.empty()) text = "expmix:" + cls_expmix;
      const FunctionSpec fs = parse_function(text);
      const ProcessSpec spec = resolve_process(proc);
      json result;
      if (fs.poly) {
        result = to_json(classify_additive(spec, *fs.poly, cls_tol, quad));
        result["mode"] = "additive";
        json notes = json::array();
        if (!spec.flags().c1b_density) {
          notes.push_back(
              "bounded C^1 transition density not asserted for this process; the claim that "
              "only quadratics qualify among smooth f relies on it");
        }
        result["assumptions"] = notes;
      } else if (fs.expmix) {
        result = to_json(classify_multiplicative(spec, *fs.expmix, cls_tol, quad));
        result["mode"] = "multiplicative";
      } else {
        throw ValidationError("'" + text + "' has no polynomial or expmix form to classify");
      }
      result["function"] = fs.text;
      emit(ctx, "classify", make_config(ctx, spec, std::nullopt), result);
    };
  });

  // funceq
  auto* funceq = app.add_subcommand("funceq", "difference equation q(x+y) - q(x) = p");
  funceq->require_subcommand(1);
  std::string fe_p;
  std::string fe_q;
  std::string fe_q2;
  double fe_y = 1.0;
  auto* fe_solve = funceq->add_subcommand("solve", "solve for q with q(0) = 0");
  common(fe_solve, false);
  fe_solve->add_option("--p", fe_p, "coefficients of p")->required();
  fe_solve->add_option("--y", fe_y, "step")->required();
  fe_solve->callback([&] {
    action = [&] {
      const Polynomial p(parse_csv(fe_p));
      const Polynomial q = frechet_solve(p, fe_y);
      emit(ctx, "funceq solve", make_config(ctx, std::nullopt, std::nullopt),
           {{"p", to_json(p)}, {"y", fe_y}, {"q", to_json(q)}, {"degree", q.degree()}});
    };
  });
  auto* fe_diff = funceq->add_subcommand("diff", "q(x+y) - q(x)");
  common(fe_diff, false);
  fe_diff->add_option("--q", fe_q, "coefficients of q")->required();
  fe_diff->add_option("--y", fe_y, "step")->required();
  fe_diff->callback([&] {
    action = [&] {
      const Polynomial q(parse_csv(fe_q));
      emit(ctx, "funceq diff", make_config(ctx, std::nullopt, std::nullopt),
           {{"q", to_json(q)}, {"y", fe_y}, {"difference", to_json(difference(q, fe_y))}});
    };
  });
  auto* fe_verify = funceq->add_subcommand("verify", "equal differences force a constant gap");
  common(fe_verify, false);
  fe_verify->add_option("--q1", fe_q, "coefficients of q1")->required();
  fe_verify->add_option("--q2", fe_q2, "coefficients of q2")->required();
  fe_verify->add_option("--y", fe_y, "step")->required();
  fe_verify->callback([&] {
    action = [&] {
      const auto r =
          verify_general_solution(Polynomial(parse_csv(fe_q)), Polynomial(parse_csv(fe_q2)), fe_y);
      emit(ctx, "funceq verify", make_config(ctx, std::nullopt, std::nullopt),
           {{"holds", r.holds}, {"premise_false", r.premise_false}});
    };
  });

  // simulate
  std::string sim_times;
  std::optional<double> sim_tmax;
  int sim_steps = 1;
  std::size_t sim_paths = 1000;
  std::optional<std::uint64_t> seed;
  std::string sim_csv = "-";
  std::string sim_binary;
  std::string sim_tail;
  SamplerOptions sampler_opts;
  auto* simulate = app.add_subcommand("simulate", "sample paths to CSV");
  common(simulate);
  simulate->add_option("--times", sim_times, "grid times starting at 0");
  simulate->add_option("--t-max", sim_tmax, "uniform grid end time");
  simulate->add_option("--steps", sim_steps, "uniform grid steps")->check(CLI::PositiveNumber);
  simulate->add_option("--paths", sim_paths, "number of paths")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--csv", sim_csv, "CSV output path, - for stdout");
  simulate->add_option("--binary", sim_binary, "column-major binary dump path");
  simulate->add_option("--epsilon", sampler_opts.epsilon, "small-jump cutoff");
  simulate->add_option("--tail-orders", sim_tail, "heavy-tail diagnostics for these moment orders");
  simulate->callback([&] {
    action = [&] {
      if (sim_times.empty() == !sim_tmax.has_value()) {
        throw ValidationError("give exactly one of --times, --t-max");
      }
      const TimeGrid grid = sim_tmax ? TimeGrid::uniform(*sim_tmax, sim_steps)
                                     : TimeGrid(parse_csv(sim_times));
      const std::uint64_t s = resolve_seed(seed);
      const ProcessSpec spec = resolve_process(proc);
      sampler_opts.quad = quad;
      const PathBatch batch = sample_paths(spec, grid, sim_paths, s, sampler_opts);

      const auto write_csv = [&](std::ostream& os) {
        char buf[32];
        for (std::size_t j = 0; j < grid.size(); ++j) {
          std::snprintf(buf, sizeof buf, "%.17g", grid[j]);
          os << (j ? "," : "") << buf;
        }
        os << '\n';
        for (std::size_t i = 0; i < batch.n_paths; ++i) {
          for (std::size_t j = 0; j < grid.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", batch.at(i, j));
            os << (j ? "," : "") << buf;
          }
          os << '\n';
        }
      };
      if (sim_csv == "-") {
        write_csv(ctx.out);
      } else {
        std::ofstream f(sim_csv);
        if (!f) throw ValidationError("cannot write '" + sim_csv + "'");
        write_csv(f);
      }
      if (!sim_binary.empty()) {
        std::ofstream f(sim_binary, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + sim_binary + "'");
        const std::uint64_t n = batch.n_paths;
        const std::uint64_t m = grid.size();
        f.write("LVYB", 4);
        f.write(reinterpret_cast<const char*>(&n), sizeof n);
        f.write(reinterpret_cast<const char*>(&m), sizeof m);
        f.write(reinterpret_cast<const char*>(grid.times().data()),
                static_cast<std::streamsize>(m * sizeof(double)));
        for (std::size_t j = 0; j < m; ++j) {
          const std::vector<double> col = batch.column(j);
          f.write(reinterpret_cast<const char*>(col.data()),
                  static_cast<std::streamsize>(n * sizeof(double)));
        }
      }

      std::vector<double> means;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < batch.n_paths; ++i) acc += batch.at(i, j);
        means.push_back(acc / static_cast<double>(batch.n_paths));
      }
      json result{{"grid", grid.times()},
                  {"n_paths", batch.n_paths},
                  {"seed", batch.seed},
                  {"fingerprint", hex(batch.fingerprint)},
                  {"column_means", means},
                  {"sampler", to_string(spec.sampler())},
                  {"epsilon", sampler_opts.epsilon}};
      if (!sim_tail.empty()) {
        json diags = json::array();
        const std::vector<double> last = batch.column(grid.size() - 1);
        for (double order : parse_csv(sim_tail)) {
          json d = to_json(heavy_tail_diagnostic(last, static_cast<int>(order)));
          d["moment_finite"] = moment_finite(spec, static_cast<int>(order));
          diags.push_back(d);
        }
        result["heavy_tail"] = diags;
      }
      json outputs{{"csv", sim_csv}, {"binary", sim_binary.empty() ? json(nullptr) : json(sim_binary)}};
      emit(ctx, "simulate", make_config(ctx, spec, s, outputs), result, sim_csv == "-");
    };
  });

  // mtg-test
  std::string mt_mode = "additive";
  std::string mt_f;
  double mt_s = 0.5;
  double mt_t = 1.0;
  std::size_t mt_paths = 100000;
  double mt_level = 0.01;
  std::string mt_gamma_times;
  auto* mtg = app.add_subcommand("mtg-test", "Monte Carlo martingale-function test");
  common(mtg);
  mtg->add_option("--mode", mt_mode, "additive or mult")
      ->check(CLI::IsMember({"additive", "mult", "multiplicative"}));
  mtg->add_option("--f", mt_f, "function: poly:<csv>, expmix:a,l1,b,l2, cosh, cube, ...")
      ->required();
  mtg->add_option("--s", mt_s, "earlier time");
  mtg->add_option("--t", mt_t, "later time");
  mtg->add_option("--paths", mt_paths, "number of paths")->check(CLI::PositiveNumber);
  mtg->add_option("--level", mt_level, "test level");
  mtg->add_option("--seed", seed, "random seed");
  mtg->add_option("--epsilon", sampler_opts.epsilon, "small-jump cutoff");
  mtg->add_option("--gamma-times", mt_gamma_times, "also run gamma diagnostics at these times");
  mtg->callback([&] {
    action = [&] {
      const std::uint64_t s = resolve_seed(seed);
      const ProcessSpec spec = resolve_process(proc);
      const FunctionSpec fs = parse_function(mt_f);
      const bool additive = mt_mode == "additive";
      MtgTestOptions opts;
      sampler_opts.quad = quad;
      opts.sampler = sampler_opts;
      const MartingaleReport rep =
          additive ? test_additive(spec, fs.smooth.f, mt_s, mt_t, mt_paths, mt_level, s, opts)
                   : test_multiplicative(spec, fs.smooth.f, mt_s, mt_t, mt_paths, mt_level, s, opts);
      json result = to_json(rep);
      result["function"] = fs.text;
      // Exact verdict for comparison, when the function has a closed form.
      try {
        if (additive && fs.poly) {
          result["exact_verdict"] = to_json(classify_additive(spec, *fs.poly, kClassifyTolerance, quad));
        } else if (!additive && fs.expmix) {
          result["exact_verdict"] =
              to_json(classify_multiplicative(spec, *fs.expmix, kClassifyTolerance, quad));
        }
      } catch (const std::domain_error& e) {
        result["exact_verdict"] = {{"unavailable", e.what()}};
      }
      if (!mt_gamma_times.empty()) {
        result["gamma_diagnostics"] = to_json(gamma_diagnostics(
            spec, fs.smooth.f, additive ? MartingaleMode::additive : MartingaleMode::multiplicative,
            parse_csv(mt_gamma_times), mt_paths, s, sampler_opts));
      }
      emit(ctx, "mtg-test", make_config(ctx, spec, s), result);
    };
  });

  // exp-solve
  double es_alpha = 0.0;
  double es_t = 1.0;
  double es_kappa = kDefaultKappaMax;
  std::optional<double> es_a;
  std::optional<double> es_b;
  auto* exps = app.add_subcommand("exp-solve", "solve eta(lambda) = alpha");
  common(exps);
  exps->add_option("--alpha", es_alpha, "target value")->required();
  exps->add_option("--t", es_t, "nominal time (the roots do not depend on it)");
  exps->add_option("--kappa-max", es_kappa, "cap on the exponential-moment domain");
  exps->add_option("--a", es_a, "weight of the smaller root");
  exps->add_option("--b", es_b, "weight of the larger root");
  exps->callback([&] {
    action = [&] {
      const ProcessSpec spec = resolve_process(proc);
      const RootReport rep = solve_lambda(spec, es_alpha, es_kappa, quad);
      json result = to_json(rep);
      if (es_a || es_b) {
        const ExpMartingale m = build_exp_martingale(rep, es_a.value_or(0.0), es_b.value_or(0.0));
        const ClassificationVerdict v = classify_multiplicative(spec, m.g, kClassifyTolerance, quad);
        result["martingale"] = {
            {"g", {{"a", m.g.a()}, {"lambda1", m.g.lambda1()}, {"b", m.g.b()}, {"lambda2", m.g.lambda2()}}},
            {"normalizer", {{"weight", m.g.a() + m.g.b()}, {"rate", m.alpha}}},
            {"classification", to_json(v)}};
      }
      emit(ctx, "exp-solve", make_config(ctx, spec, std::nullopt), result);
    };
  });

  // rerun
  std::string rerun_path;
  auto* rerun = app.add_subcommand("rerun", "re-execute the config echoed in a report");
  rerun->add_option("report", rerun_path, "report JSON file")->required();
  rerun->add_option("--out", ctx.out_path, "write the JSON report to this file");
  rerun->callback([&] {
    action = [&] {
      std::ifstream in(rerun_path);
      if (!in) throw ValidationError("cannot open report '" + rerun_path + "'");
      json report;
      try {
        report = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ValidationError(std::string("report is not valid JSON: ") + e.what());
      }
      if (!report.contains("config") || !report.at("config").contains("argv")) {
        throw ValidationError("report lacks config.argv");
      }
      std::vector<std::string> argv;
      for (const auto& a : report.at("config").at("argv")) argv.push_back(a.get<std::string>());
      if (!ctx.out_path.empty()) {
        argv.emplace_back("--out");
        argv.push_back(ctx.out_path);
      }
      const int code = run(argv, ctx.out, ctx.err, ctx.table);
      if (code != kExitOk) throw std::runtime_error("rerun failed with exit code " + std::to_string(code));
    };
  });

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("levymart");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (table_flag) ctx.table = true;

  try {
    if (action) action();
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitConvergence;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfiniteMomentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSamplerError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace levy::cli
