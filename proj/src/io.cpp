#include "zsf/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace zsf {

Int uniform_residue(std::mt19937_64& rng, const Int& q) {
  if (q < 1) fail(Errc::precondition_violated, "modulus must be positive");
  unsigned chunks = 1;
  Int span = Int(1) << 64;
  while (span < q) {
    span <<= 64;
    ++chunks;
  }
  Int limit = span - span % q;
  for (;;) {
    Int x = 0;
    for (unsigned c = 0; c < chunks; ++c) x = (x << 64) | Int(rng());
    if (x < limit) return x % q;
  }
}

VecFamily generate(std::uint64_t seed, const Modulus& M, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  VecFamily F(M, n);
  for (std::size_t i = 0; i < m; ++i) {
    FieldVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = uniform_residue(rng, M.q());
    F.push(std::move(v));
  }
  return F;
}

namespace {

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) fail(Errc::parse_error, std::string("missing ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

std::size_t parse_size(const std::string& w) {
  Int v = parse_int(w);
  if (v < 0 || v > Int(std::numeric_limits<std::size_t>::max())) fail(Errc::parse_error, "bad count " + w);
  return static_cast<std::size_t>(v);
}

Int parse_residue(const Modulus& M, const std::string& w) {
  Int v = parse_int(w);
  if (!M.is_canonical(v)) fail(Errc::parse_error, "residue " + w + " outside [0, q)");
  return v;
}

}  // namespace

void write_instance(std::ostream& os, const VecFamily& F) {
  os << "ZSF1 " << to_string(F.modulus().q()) << ' ' << F.dim() << ' ' << F.size() << '\n';
  for (const auto& v : F.vectors()) {
    for (std::size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << to_string(v[j]);
    os << '\n';
  }
}

VecFamily read_instance(std::istream& is) {
  auto h = words(next_line(is, "header"));
  if (h.size() != 4 || h[0] != "ZSF1") fail(Errc::parse_error, "header must be 'ZSF1 q n m'");
  Modulus M(parse_int(h[1]));
  std::size_t n = parse_size(h[2]), m = parse_size(h[3]);
  VecFamily F(M, n);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = words(next_line(is, "row"));
    if (row.size() != n) fail(Errc::parse_error, "row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
    FieldVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = parse_residue(M, row[j]);
    F.push(std::move(v));
  }
  std::string rest;
  while (std::getline(is, rest))
    if (!words(rest).empty()) fail(Errc::parse_error, "trailing data after the last row");
  return F;
}

std::string format_instance(const VecFamily& F) {
  std::ostringstream os;
  write_instance(os, F);
  return os.str();
}

VecFamily parse_instance(const std::string& text) {
  std::istringstream is(text);
  return read_instance(is);
}

void write_solution(std::ostream& os, const SolutionFile& s) {
  os << "ZSF1-SOL " << s.m << ' ' << s.constraint << '\n';
  for (const auto& [i, v] : s.x) os << i << ' ' << to_string(v) << '\n';
}

SolutionFile read_solution(std::istream& is, const Modulus& M) {
  auto h = words(next_line(is, "header"));
  if (h.size() != 3 || h[0] != "ZSF1-SOL") fail(Errc::parse_error, "header must be 'ZSF1-SOL m constraint'");
  SolutionFile s;
  s.m = parse_size(h[1]);
  s.constraint = h[2];
  bool first = true;
  std::size_t last = 0;
  for (std::string line; std::getline(is, line);) {
    auto w = words(line);
    if (w.empty()) continue;
    if (w.size() != 2) fail(Errc::parse_error, "solution lines are 'index value'");
    std::size_t i = parse_size(w[0]);
    Int v = parse_residue(M, w[1]);
    if (i >= s.m) fail(Errc::parse_error, "index " + w[0] + " out of range");
    if (!first && i <= last) fail(Errc::parse_error, "indices must increase");
    if (v == 0) fail(Errc::parse_error, "zero value listed");
    s.x.set(M, i, v);
    first = false;
    last = i;
  }
  return s;
}

std::string format_solution(const SolutionFile& s) {
  std::ostringstream os;
  write_solution(os, s);
  return os.str();
}

SolutionFile parse_solution(const std::string& text, const Modulus& M) {
  std::istringstream is(text);
  return read_solution(is, M);
}

}  // namespace zsf
