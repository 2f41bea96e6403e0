#pragma once

#include <utility>

#include "core/circuit.hpp"
#include "core/curve.hpp"
#include "core/hilbert.hpp"

namespace tmf {

// Elementary-move gates on the qupit space, identity off the acted block.
Gate gate_F(const Theory& th, const PantsDecomposition& d, int cuff, int dir);
Gate gate_S(const Theory& th, const PantsDecomposition& d, int pant, int dir);
Gate gate_M(const Theory& th, const PantsDecomposition& d, int pant, int t);

// One elementary move as a tagged gate on the current decomposition.
Gate move_gate(const Theory& th, const PantsDecomposition& d, const Move& mv);

// Theta gates at a routed site: diagonal twist at the cuff's first end, and
// the sector-permuting braid of two boundary legs of one pant.
Gate gate_twist(const Theory& th, const PantsDecomposition& d, int cuff,
                int power, const std::string& tag);
Gate gate_braid(const Theory& th, const PantsDecomposition& d, int pant,
                int la, int lb, int dir, const std::string& tag);

struct LiteralPlan {
  WordLiteral literal;
  std::vector<CurvePart> parts;
  std::vector<std::vector<Move>> moves;  // per part, forward word
  int nmoves = 0;
  int ngates = 0;  // sum over parts of 2*|moves| + 1
};

struct CompilationPlan {
  PantsDecomposition base;
  std::vector<LiteralPlan> literals;
  int total_moves = 0;
  int total_gates = 0;
  double constant_c = 0.0;  // gates / (|word| * ceil(log2(b1+2)))
  // filled by compile_cerf: per-literal combinatorial lengths and whether the
  // gate count ran over the 11*length budget (reported, not an error)
  std::vector<int> lengths;
  std::vector<bool> over_budget;
};

std::pair<Circuit, CompilationPlan> compile(const Theory& th,
                                            const PantsDecomposition& d0,
                                            const MappingClassWord& w);

// Genus-0 words over the braid generators (and cuff twists) on the standard
// chain base; every literal localizes to at most 7 gates.
Circuit compile_braid_localized(const Theory& th, const std::vector<int>& blabels,
                                const MappingClassWord& w);

// Words whose curves come as reduced crossing sequences: recognize each
// against the base decomposition, compile, and report gate counts against
// the 11*length budget.
std::pair<Circuit, CompilationPlan> compile_cerf(const Theory& th,
                                                 const PantsDecomposition& d0,
                                                 const MappingClassWord& w);

std::string format_plan(const CompilationPlan& plan);

// Seeded word over generator_catalog: braids with exponent +-1, twists with
// exponent +-1 or +-2. Identical seeds give identical words.
MappingClassWord random_word(const Theory& th, const PantsDecomposition& d,
                             int length, std::uint64_t seed);

}  // namespace tmf
