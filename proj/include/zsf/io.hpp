#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include "zsf/core.hpp"

namespace zsf {

// Uniform residue in [0, q) by rejection sampling on whole 64-bit chunks.
Int uniform_residue(std::mt19937_64& rng, const Int& q);

// Deterministic in (seed, q, n, m).
VecFamily generate(std::uint64_t seed, const Modulus& M, std::size_t n, std::size_t m);

// "ZSF1 q n m", then one row of n residues per vector.
void write_instance(std::ostream& os, const VecFamily& F);
VecFamily read_instance(std::istream& is);
std::string format_instance(const VecFamily& F);
VecFamily parse_instance(const std::string& text);

// "ZSF1-SOL m constraint", then "i v" lines with increasing i and nonzero v.
struct SolutionFile {
  std::size_t m = 0;
  std::string constraint;
  CoeffMap x;
};
void write_solution(std::ostream& os, const SolutionFile& s);
SolutionFile read_solution(std::istream& is, const Modulus& M);
std::string format_solution(const SolutionFile& s);
SolutionFile parse_solution(const std::string& text, const Modulus& M);

}  // namespace zsf
