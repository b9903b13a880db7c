#include "zsf/dispatch.hpp"

#include "zsf/f3.hpp"

namespace zsf {

ProblemKind parse_problem(const std::string& s) {
  if (s == "f3") return ProblemKind::f3;
  if (s == "sis") return ProblemKind::sis;
  if (s == "subset") return ProblemKind::subset;
  if (s == "cis") return ProblemKind::cis;
  fail(Errc::precondition_violated, "unknown problem '" + s + "'");
}

const char* to_string(ProblemKind p) {
  switch (p) {
    case ProblemKind::f3: return "f3";
    case ProblemKind::sis: return "sis";
    case ProblemKind::subset: return "subset";
    case ProblemKind::cis: return "cis";
  }
  return "";
}

namespace {

bool is_pow2(unsigned k) { return k && !(k & (k - 1)); }

F3Strategy f3_strategy(const std::string& m) {
  if (m == "weak") return F3Strategy::weak;
  if (m == "quadratic") return F3Strategy::quadratic;
  if (m == "main") return F3Strategy::main;
  fail(Errc::precondition_violated, "unknown f3 method '" + m + "'");
}

std::string default_method(const Request& req) {
  if (!req.method.empty()) return req.method;
  switch (req.problem) {
    case ProblemKind::f3: return "main";
    case ProblemKind::sis: return is_pow2(req.k) ? "power2" : "oneshot";
    case ProblemKind::subset: return "random";
    case ProblemKind::cis: return "full";
  }
  return "";
}

// Coefficient set named by an allow:/forbid: constraint.
CoeffSet cis_set(const Modulus& M, const Request& req) {
  if (req.constraint.empty()) fail(Errc::precondition_violated, "cis needs --constraint allow:... or forbid:...");
  Constraint c = Constraint::parse(M, req.constraint);
  if (c.kind() != Constraint::Kind::explicit_set && c.kind() != Constraint::Kind::forbidden)
    fail(Errc::precondition_violated, "cis needs an allow: or forbid: constraint");
  return c.allowed(M);
}

// forbid set {+-a_1, ..., +-a_k} as the list a_1..a_k
std::vector<Int> centered_pairs(const Modulus& M, const CoeffSet& B) {
  CoeffSet bad = B.complement(M);
  if (!(bad.negate(M) == bad) || bad.contains(Int(0)))
    fail(Errc::precondition_violated, "centered needs a forbidden set of +- pairs without 0");
  std::vector<Int> a;
  for (const Int& x : bad.elements())
    if (x <= M.half()) a.push_back(x);
  return a;
}

}  // namespace

Plan make_plan(const Modulus& M, std::size_t n, const Request& req) {
  Plan p;
  p.method = default_method(req);
  const std::string& m = p.method;
  switch (req.problem) {
    case ProblemKind::f3:
      if (M.q() != 3) fail(Errc::precondition_violated, "f3 needs q = 3");
      p.threshold = f3_threshold(n, f3_strategy(m));
      break;
    case ProblemKind::sis: {
      if (req.k < 1 || Int(req.k) > M.half()) fail(Errc::bad_k, "k must lie in [1, floor(q/2)]");
      p.constraint = Constraint::interval(M, M.q() / (2 * req.k));
      if (m == "power2")
        p.threshold = sis_power2_threshold(M.q(), n, req.k, req.r);
      else if (m == "dependency")
        p.threshold = sis_power2_threshold(M.q(), n, req.k, req.r, HalvingBase::dependency);
      else if (m == "oneshot")
        p.threshold = sis_one_shot_threshold(n, req.k);
      else if (m == "quarter") {
        if (req.k != 2) fail(Errc::bad_k, "quarter needs k = 2");
        p.threshold = ceil_q(sis_quarter_bound(M.q(), n, req.r));
      } else
        fail(Errc::precondition_violated, "unknown sis method '" + m + "'");
      break;
    }
    case ProblemKind::subset:
      if (m == "random")
        p.threshold = subset_sum_random_threshold(M.q(), n, req.eps, req.r);
      else if (m == "improved")
        p.threshold = subset_sum_improved_threshold(M, n, req.eps, PmEngine::one_shot);
      else if (m == "cheapest")
        p.threshold = subset_sum_improved_threshold(M, n, req.eps, PmEngine::cheapest);
      else
        fail(Errc::precondition_violated, "unknown subset method '" + m + "'");
      break;
    case ProblemKind::cis: {
      CoeffSet B = cis_set(M, req);
      p.constraint = Constraint::explicit_set(M, B);
      if (m == "full") {
        CisRoute r = cis_full_plan(M, n, B, req.eps);
        p.threshold = r.threshold;
        p.route = r.describe();
      } else if (m == "centered") {
        p.threshold = cis_centered_threshold(n, centered_pairs(M, B).size());
      } else if (m == "simple") {
        p.threshold = cis_simple_plan(M, n, B, req.r, req.eps).threshold;
      } else {
        fail(Errc::precondition_violated, "unknown cis method '" + m + "'");
      }
      break;
    }
  }
  return p;
}

CoeffMap run_plan(const VecFamily& F, const Request& req, const Plan& p) {
  const Modulus& M = F.modulus();
  const std::string& m = p.method;
  if (!(req.relaxed && req.problem == ProblemKind::subset))
    require_vectors(F.size(), p.threshold, std::string(to_string(req.problem)) + " " + m);
  std::size_t t = static_cast<std::size_t>(std::min(p.threshold, Int(F.size())));
  switch (req.problem) {
    case ProblemKind::f3:
      return f3_solve(F.slice(0, t), f3_strategy(m));
    case ProblemKind::sis:
      if (m == "power2") return sis_power2(F.slice(0, t), req.k, req.r);
      if (m == "dependency") return sis_power2(F.slice(0, t), req.k, req.r, HalvingBase::dependency);
      if (m == "oneshot") return sis_one_shot(F.slice(0, t), req.k);
      return sis_quarter(F.slice(0, t), req.r);
    case ProblemKind::subset: {
      SubsetOptions opt{!req.relaxed};
      const VecFamily& G = req.relaxed ? F : F.slice(0, t);
      if (m == "random") return subset_sum_random(G, req.eps, req.r, opt);
      PmEngine e = m == "improved" ? PmEngine::one_shot : PmEngine::cheapest;
      return subset_sum_with(G, pm1_engine(M, F.dim(), e), req.eps, opt);
    }
    case ProblemKind::cis: {
      CoeffSet B = cis_set(M, req);
      if (m == "full") return cis_full(F.slice(0, t), B, req.eps);
      if (m == "centered") return cis_centered(F.slice(0, t), centered_pairs(M, B));
      return cis_simple(F.slice(0, t), B, req.r, req.eps);
    }
  }
  fail(Errc::case_dispatch_failure, "unknown problem");
}

std::vector<std::pair<std::string, Int>> thresholds(const Modulus& M, std::size_t n, const Request& req) {
  std::vector<std::pair<std::string, Int>> out;
  auto add = [&](const std::string& name, auto&& f) {
    try {
      out.emplace_back(name, f());
    } catch (const Error&) {
      // not applicable for these parameters
    }
  };
  const Int& q = M.q();
  unsigned k = req.k, r = req.r;
  switch (req.problem) {
    case ProblemKind::f3:
      for (const char* s : {"weak", "quadratic", "main"})
        out.emplace_back(std::string("f3 ") + s, f3_threshold(n, f3_strategy(s)));
      out.emplace_back("f3 closed-form bound", ceil_q(f3_closed_form(n)));
      break;
    case ProblemKind::sis:
      add("sis quarter (k=2)", [&] { return ceil_q(sis_quarter_bound(q, n, r)); });
      if (is_pow2(k)) {
        add("sis power2", [&] { return sis_power2_threshold(q, n, k, r); });
        add("sis power2, dependency base", [&] { return sis_power2_threshold(q, n, k, r, HalvingBase::dependency); });
      }
      if (k >= 2) {
        add("sis oneshot", [&] { return sis_one_shot_threshold(n, k); });
        add("sis oneshot, vectors read", [&] { return sis_one_shot_exact(q, n, k); });
      }
      break;
    case ProblemKind::subset:
      add("subset random", [&] { return subset_sum_random_threshold(q, n, req.eps, r); });
      add("subset improved", [&] { return subset_sum_improved_threshold(M, n, req.eps, PmEngine::one_shot); });
      add("subset cheapest engine", [&] { return subset_sum_improved_threshold(M, n, req.eps, PmEngine::cheapest); });
      break;
    case ProblemKind::cis: {
      CoeffSet B = cis_set(M, req);
      try {
        CisRoute route = cis_full_plan(M, n, B, req.eps);
        out.emplace_back("cis full (" + route.describe() + ")", route.threshold);
      } catch (const Error&) {
      }
      add("cis full, case route only", [&] { return cis_full_plan(M, n, B, req.eps, false).threshold; });
      add("cis centered", [&] { return cis_centered_threshold(n, centered_pairs(M, B).size()); });
      add("cis simple", [&] { return cis_simple_plan(M, n, B, r, req.eps).threshold; });
      break;
    }
  }
  return out;
}

}  // namespace zsf
