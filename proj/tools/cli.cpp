#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsf/dispatch.hpp"
#include "zsf/io.hpp"

namespace zsf::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kSolveFailed = 2;
constexpr int kPrecondition = 3;
constexpr int kIo = 4;

int exit_code(Errc e) {
  switch (e) {
    case Errc::sample_failure:
    case Errc::solve_failed:
    case Errc::no_dependency:
      return kSolveFailed;
    case Errc::io_error:
    case Errc::parse_error:
      return kIo;
    default:
      return kPrecondition;
  }
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(Errc::io_error, "cannot write " + path);
}

// "1/2", "0.25" or "3"
Rational parse_rational_text(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) fail(Errc::parse_error, "zero denominator");
    return Rational(parse_int(s.substr(0, slash))) / Rational(den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_int(s));
  std::string frac = s.substr(dot + 1);
  Int den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::string whole = s.substr(0, dot);
  Int num = parse_int((whole.empty() || whole == "-" ? whole + "0" : whole) + frac);
  return Rational(num, den);
}

// A malformed number on the command line is an argument error, not a file error.
Rational parse_rational(const std::string& s) {
  try {
    return parse_rational_text(s);
  } catch (const Error&) {
    fail(Errc::precondition_violated, "bad number '" + s + "'");
  }
}

std::string fmt_ms(double ms) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(3);
  ss << ms;
  return ss.str();
}

struct RequestArgs {
  std::string problem = "sis", method, eps = "1/2", constraint;
  unsigned k = 2, r = 1;
  bool relaxed = false;

  void attach(CLI::App* app) {
    app->add_option("--problem", problem, "f3 | sis | subset | cis")->required();
    app->add_option("--method", method, "solver variant, see README");
    app->add_option("--k", k, "sis: target bound floor(q/2k)");
    app->add_option("--r", r, "sparse combination width");
    app->add_option("--eps", eps, "failure probability, e.g. 1/2");
    app->add_option("--constraint", constraint, "cis: allow:a,b,... or forbid:a,b,...");
  }
  Request build() const {
    Request req;
    req.problem = parse_problem(problem);
    req.method = method;
    req.k = k;
    req.r = r;
    req.eps = parse_rational(eps);
    if (req.eps <= 0 || req.eps >= 1) fail(Errc::precondition_violated, "--eps must lie in (0, 1)");
    req.constraint = constraint;
    req.relaxed = relaxed;
    return req;
  }
};

int cmd_gen(const std::string& q, std::size_t n, std::size_t m, std::uint64_t seed, const std::string& out) {
  emit(out, format_instance(generate(seed, Modulus(parse_int(q)), n, m)));
  return kOk;
}

int cmd_solve(const std::string& in, const RequestArgs& ra, const std::string& out) {
  VecFamily F = parse_instance(slurp(in));
  Request req = ra.build();
  Plan plan = make_plan(F.modulus(), F.dim(), req);
  if (!plan.route.empty()) std::cerr << "route: " << plan.route << "\n";
  CoeffMap x = run_plan(F, req, plan);
  VerifyReport rep = verify(Problem(F, plan.constraint), x);
  if (!rep.ok()) {
    std::cerr << "error: solver output failed " << rep.failed_check() << "; nothing written\n";
    return kSolveFailed;
  }
  emit(out, format_solution(SolutionFile{F.size(), plan.constraint.str(), x}));
  return kOk;
}

int cmd_verify(const std::string& in, const std::string& sol, const std::string& constraint) {
  VecFamily F = parse_instance(slurp(in));
  const Modulus& M = F.modulus();
  SolutionFile s = parse_solution(slurp(sol), M);
  if (s.m != F.size()) {
    std::cout << "FAIL size: solution is for " << s.m << " vectors, instance has " << F.size() << "\n";
    return kVerifyFailed;
  }
  Constraint c = Constraint::parse(M, constraint.empty() ? s.constraint : constraint);
  VerifyReport rep = verify(Problem(F, c), s.x);
  if (!rep.ok()) {
    std::cout << "FAIL " << rep.failed_check() << "\n";
    return kVerifyFailed;
  }
  std::cout << "OK support=" << s.x.support() << " max_abs=" << to_string(s.x.max_abs(M)) << "\n";
  return kOk;
}

struct BenchCell {
  RequestArgs args;
  std::string q = "5";
  std::size_t n = 1;
  std::vector<std::size_t> m;
  std::vector<std::uint64_t> seeds;
};

struct BenchRow {
  std::string problem;
  Int q;
  std::size_t n, m;
  std::uint64_t seed;
  int success;
  double wall_ms;
  std::size_t support;
  Int max_abs;
};

std::vector<BenchCell> bench_config(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bench config: ") + e.what());
  }
  std::vector<json> items;
  if (j.is_object() && j.contains("cells"))
    items = j.at("cells").get<std::vector<json>>();
  else if (j.is_array())
    items = j.get<std::vector<json>>();
  else
    items.push_back(j);
  std::vector<BenchCell> out;
  try {
    for (const auto& it : items) {
      BenchCell c;
      c.args.problem = it.at("problem").get<std::string>();
      c.args.method = it.value("method", std::string());
      c.args.constraint = it.value("constraint", std::string());
      c.args.k = it.value("k", 2u);
      c.args.r = it.value("r", 1u);
      c.args.relaxed = it.value("relaxed", false);
      if (it.contains("eps")) c.args.eps = it["eps"].is_string() ? it["eps"].get<std::string>() : it["eps"].dump();
      c.q = it.at("q").is_string() ? it.at("q").get<std::string>() : it.at("q").dump();
      c.n = it.value("n", std::size_t(1));
      c.m = it.value("m", std::vector<std::size_t>{});
      if (it.contains("seeds") && it["seeds"].is_array()) {
        c.seeds = it["seeds"].get<std::vector<std::uint64_t>>();
      } else {
        std::uint64_t count = it.value("seeds", std::uint64_t(10));
        for (std::uint64_t s = 0; s < count; ++s) c.seeds.push_back(s);
      }
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("bench config: ") + e.what());
  }
  return out;
}

int cmd_bench(const std::vector<BenchCell>& cells, const std::string& out) {
  std::vector<BenchRow> rows;
  for (const auto& cell : cells) {
    Modulus M(parse_int(cell.q));
    Request req = cell.args.build();
    std::string name = cell.args.problem + (cell.args.method.empty() ? "" : "/" + cell.args.method);
    for (std::size_t m : cell.m)
      for (std::uint64_t seed : cell.seeds) {
        VecFamily F = generate(seed, M, cell.n, m);
        BenchRow row{name, M.q(), cell.n, m, seed, 0, 0.0, 0, Int(0)};
        auto t0 = std::chrono::steady_clock::now();
        try {
          Plan plan = make_plan(M, cell.n, req);
          CoeffMap x = run_plan(F, req, plan);
          if (verify(Problem(F, plan.constraint), x).ok()) {
            row.success = 1;
            row.support = x.support();
            row.max_abs = x.max_abs(M);
          }
        } catch (const Error&) {
          // counted as a failure
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(std::move(row));
      }
  }
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.problem, a.q, a.n, a.m, a.seed) < std::tie(b.problem, b.q, b.n, b.m, b.seed);
  });
  std::ostringstream csv;
  csv << "problem,q,n,m,seed,success,wall_ms,support,max_abs_coeff\n";
  for (const auto& r : rows)
    csv << r.problem << ',' << to_string(r.q) << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << r.success << ','
        << fmt_ms(r.wall_ms) << ',' << r.support << ',' << to_string(r.max_abs) << '\n';
  emit(out, csv.str());
  return kOk;
}

int cmd_thresholds(const std::string& q, std::size_t n, const RequestArgs& ra) {
  Modulus M(parse_int(q));
  Request req = ra.build();
  for (const auto& [name, value] : thresholds(M, n, req)) std::cout << name << ": " << to_string(value) << "\n";
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"zsf: constrained zero-sums over prime fields"};
  app.require_subcommand(1);

  std::string q = "5", in = "-", out = "-", solution, constraint_override, config;
  std::size_t n = 1, m = 0;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "write a uniform random instance");
  gen->add_option("--q", q, "prime modulus")->required();
  gen->add_option("--n", n, "dimension")->required();
  gen->add_option("--m", m, "number of vectors")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output file, - for stdout");

  RequestArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve an instance and write a verified solution");
  solve->add_option("--in", in, "instance file, - for stdin");
  solve->add_option("--out", out, "solution file, - for stdout");
  solve_args.attach(solve);

  auto* ver = app.add_subcommand("verify", "check a solution file against an instance");
  ver->add_option("--in", in, "instance file")->required();
  ver->add_option("--solution", solution, "solution file")->required();
  ver->add_option("--constraint", constraint_override, "override the constraint in the solution header");

  RequestArgs bench_args;
  std::vector<std::size_t> m_grid;
  std::size_t seed_count = 10;
  auto* bench = app.add_subcommand("bench", "run seeded instances and emit CSV");
  bench->add_option("--config", config, "JSON config file");
  bench->add_option("--q", q, "prime modulus");
  bench->add_option("--n", n, "dimension");
  bench->add_option("--m", m_grid, "vector counts")->delimiter(',');
  bench->add_option("--seed", seed, "first seed");
  bench->add_option("--seeds", seed_count, "seeds per m");
  bench->add_option("--out", out, "CSV file, - for stdout");
  bench->add_option("--problem", bench_args.problem, "f3 | sis | subset | cis");
  bench->add_option("--method", bench_args.method, "solver variant");
  bench->add_option("--k", bench_args.k, "sis: target bound floor(q/2k)");
  bench->add_option("--r", bench_args.r, "sparse combination width");
  bench->add_option("--eps", bench_args.eps, "failure probability");
  bench->add_option("--constraint", bench_args.constraint, "cis: allow:... or forbid:...");
  bench->add_flag("--relaxed", bench_args.relaxed, "subset: run below the threshold");

  RequestArgs thr_args;
  auto* thr = app.add_subcommand("thresholds", "print vector-count thresholds");
  thr->add_option("--q", q, "prime modulus")->required();
  thr->add_option("--n", n, "dimension")->required();
  thr_args.attach(thr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kPrecondition;
  }

  try {
    if (*gen) return cmd_gen(q, n, m, seed, out);
    if (*solve) return cmd_solve(in, solve_args, out);
    if (*ver) return cmd_verify(in, solution, constraint_override);
    if (*bench) {
      std::vector<BenchCell> cells;
      if (!config.empty()) {
        cells = bench_config(slurp(config));
      } else {
        BenchCell c;
        c.args = bench_args;
        c.q = q;
        c.n = n;
        c.m = m_grid;
        for (std::uint64_t s = 0; s < seed_count; ++s) c.seeds.push_back(seed + s);
        cells.push_back(std::move(c));
      }
      return cmd_bench(cells, out);
    }
    if (*thr) return cmd_thresholds(q, n, thr_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return kPrecondition;
}

}  // namespace zsf::cli
