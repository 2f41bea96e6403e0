#pragma once

#include <utility>

#include "core/compiler.hpp"

namespace tmf {

// Move kinds 'F', 'S', 'M' as in the surface module ('M' carries its twist
// power in dir), plus 'H' for a 2-handle attached along cuff `arg`.
struct BordismWord {
  std::vector<Move> moves;
};

BordismWord parse_bordism(const std::string& text);
std::string format_bordism(const BordismWord& w);

// A 2-handle along an interior cuff: project the cuff label to vacuum, then
// cap the two sides.  The target decomposition replaces the cuff with two
// vacuum boundary legs; kase 1 means the cuff was self-glued.
struct HandleMap {
  PantsDecomposition source;
  PantsDecomposition target;
  int cuff = -1;
  int kase = 2;
  Mat m;  // target basis x source basis, the projection + identification
  std::vector<Labeling> src_basis, tgt_basis;
};

HandleMap two_handle_map(const Theory& th, const PantsDecomposition& d, int cuff);

struct PartialCircuit {
  Circuit circuit;  // one ancilla qubit per handle; continue iff all |0>
  PantsDecomposition source;
  PantsDecomposition target;
  std::vector<int> handles;  // cuff ids at application time
  double constant_c = 0.0;   // gates per bordism move
};

PartialCircuit compile_bordism(const Theory& th, const PantsDecomposition& d0,
                               const BordismWord& w);

// Independent small-basis composite of the bordism's reference maps, target
// labeling basis x source labeling basis.
Mat reference_bordism(const Theory& th, const PantsDecomposition& d0,
                      const BordismWord& w, std::size_t max_dim = 512);

// Project the ancillas of a run of pc.circuit onto all-|0>; returns the
// conditional (unnormalized) state on the qupit register and its probability.
std::pair<StateVector, double> continue_projection(const PartialCircuit& pc,
                                                   const StateVector& out);

// Cut along a cuff and measure the label: probability per label, computed
// from the embedded components of `state` (length p^k).
std::vector<double> measure_cuff(const Theory& th, const PantsDecomposition& d,
                                 int cuff, const StateVector& state,
                                 double tolerance = 1e-8);

}  // namespace tmf
