#pragma once

#include <vector>

#include "core/circuit.hpp"
#include "core/curve.hpp"
#include "core/surface.hpp"
#include "core/theory.hpp"
#include "core/util.hpp"

namespace tmf {

// A basis vector of V(Sigma): one label per cuff, the value seen from the
// cuff's first end. Boundary labels live on the decomposition itself.
using Labeling = std::vector<int>;

std::vector<Labeling> enumerate_basis(const Theory& th, const PantsDecomposition& d);

// label at leg (p,l) under `lab`, dualized when the leg is the second end
int leg_label(const Theory& th, const PantsDecomposition& d, const Labeling& lab,
              int p, int l);

// dim V for any genus/labels; the degenerate shapes without a pants
// decomposition (sphere, disk, annulus, torus) get their axiom values
long dim_surface(const Theory& th, int genus, const std::vector<int>& blabels);

struct Embedding {
  PantsDecomposition d;
  int k = 0;  // pants = qupits
  int p = 1;
  std::vector<Labeling> basis;
  std::vector<std::size_t> index;  // basis -> computational index in p^k
};

Embedding embed(const Theory& th, const PantsDecomposition& d,
                std::size_t max_dim = 512, std::size_t max_state = 390625);

// One elementary move applied on the labeling basis: the matrix maps
// enumerate_basis(d) to enumerate_basis(result d).
struct SmallMove {
  PantsDecomposition d;
  Mat m;
};

SmallMove small_apply(const Theory& th, const PantsDecomposition& d, const Move& mv);
Mat small_twist(const Theory& th, const PantsDecomposition& d, int pant, int leg,
                int power);
Mat small_braid(const Theory& th, const PantsDecomposition& d, int pant, int la,
                int lb, int dir);

// Brute-force word representation on dim V, sharing only the theory data and
// the graph-level routing with the compiler; every coefficient is applied on
// the labeling basis directly, with no embedding and no gate extension.
Mat reference_rep(const Theory& th, const PantsDecomposition& d,
                  const MappingClassWord& w, std::size_t max_dim = 512);

struct VerifyResult {
  double residual = 0.0;
  cplx phase{1.0, 0.0};
  double leakage = 0.0;  // norm of the off-image component of U(image)
};

// Alignment of U(i(basis)) with i(ref basis images) over one global phase.
VerifyResult verify_intertwine(const Circuit& c, const Embedding& e, const Mat& ref);

}  // namespace tmf
