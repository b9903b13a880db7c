#pragma once

#include "zsf/general.hpp"

namespace zsf {

enum class ProblemKind { f3, sis, subset, cis };
ProblemKind parse_problem(const std::string& s);
const char* to_string(ProblemKind p);

// What to solve and how. An empty method picks the default for the problem:
//   f3      weak | quadratic | main*
//   sis     power2* (k a power of 2) | oneshot* (otherwise) | quarter | dependency
//   subset  random* | improved | cheapest
//   cis     full* | centered | simple
struct Request {
  ProblemKind problem = ProblemKind::sis;
  std::string method;
  unsigned k = 2;
  unsigned r = 1;
  Rational eps{1, 2};
  std::string constraint;  // cis: allow:... or forbid:...
  bool relaxed = false;    // subset: run on whatever input is given
};

struct Plan {
  std::string method;
  Constraint constraint = Constraint::binary();
  Int threshold;
  std::string route;  // cis full: the chosen case
};

Plan make_plan(const Modulus& M, std::size_t n, const Request& req);
// Enforces plan.threshold unless relaxed; result not yet verified.
CoeffMap run_plan(const VecFamily& F, const Request& req, const Plan& plan);

// Every vector-count bound that applies to the request, by name.
std::vector<std::pair<std::string, Int>> thresholds(const Modulus& M, std::size_t n, const Request& req);

}  // namespace zsf
