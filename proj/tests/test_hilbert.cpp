#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "core/curve.hpp"
#include "core/hilbert.hpp"

using namespace tmf;

namespace {

double mat_diff(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) return 1e9;
  double s = 0;
  for (std::size_t i = 0; i < a.a.size(); ++i) s += std::norm(a.a[i] - b.a[i]);
  return std::sqrt(s);
}

Err thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Err::ok;
}

MappingClassWord braid_word(std::initializer_list<int> gens, int exp = 1) {
  MappingClassWord w;
  for (int g : gens)
    w.literals.push_back({'b', Curve{CurveKind::braid, {g}, {}}, exp});
  return w;
}

const Curve& catalog_curve(const std::vector<CatalogEntry>& cat, const std::string& name) {
  for (const auto& ce : cat)
    if (ce.name == name) return ce.curve;
  static Curve none;
  REQUIRE(false);
  return none;
}

}  // namespace

TEST_CASE("dimension oracle values") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  Theory sem = load_theory(builtin_theory_text("semion"));
  int tau = fib.label_of("tau");
  int s = sem.label_of("s");

  long fib_want[] = {1, 2, 3, 5, 8, 13};
  long sem_want[] = {0, 1, 0, 1, 0, 1};
  for (int q = 3; q <= 8; ++q) {
    CAPTURE(q);
    CHECK(dim_surface(fib, 0, std::vector<int>(q, tau)) == fib_want[q - 3]);
    CHECK(dim_surface(sem, 0, std::vector<int>(q, s)) == sem_want[q - 3]);
  }

  CHECK(dim_surface(fib, 2, {}) == 5);
  CHECK(dim_surface(fib, 3, {}) == 15);
  CHECK(dim_surface(fib, 4, {}) == 50);

  // degenerate shapes take their axiom values
  CHECK(dim_surface(fib, 0, {}) == 1);
  CHECK(dim_surface(fib, 0, {fib.vacuum}) == 1);
  CHECK(dim_surface(fib, 0, {tau}) == 0);
  CHECK(dim_surface(fib, 0, {tau, fib.dual[tau]}) == 1);
  CHECK(dim_surface(fib, 0, {tau, fib.vacuum}) == 0);
  CHECK(dim_surface(fib, 1, {}) == fib.nlabels());
  CHECK(dim_surface(sem, 1, {}) == sem.nlabels());
  CHECK(dim_surface(fib, 1, {fib.vacuum}) == 2);
  CHECK(dim_surface(fib, 1, {tau}) == 1);

  // cutting a 6-tau sphere into two 4-holed pieces preserves the dimension
  long lhs = dim_surface(fib, 0, std::vector<int>(6, tau));
  long rhs = 0;
  for (int x = 0; x < fib.nlabels(); ++x)
    rhs += dim_surface(fib, 0, {tau, tau, tau, x}) *
           dim_surface(fib, 0, {fib.dual[x], tau, tau, tau});
  CHECK(lhs == rhs);
}

TEST_CASE("basis enumeration and embedding") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");
  auto d5 = standard_decomposition(0, std::vector<int>(5, tau));

  auto b1 = enumerate_basis(fib, d5);
  auto b2 = enumerate_basis(fib, d5);
  CHECK(b1 == b2);
  CHECK(b1.size() == 3);

  Embedding e = embed(fib, d5);
  CHECK(e.k == d5.npants());
  CHECK(e.p == 5);
  REQUIRE(e.index.size() == 3);
  std::size_t cap = 1;
  for (int t = 0; t < e.k; ++t) cap *= 5;
  for (std::size_t i = 0; i < e.index.size(); ++i) {
    CHECK(e.index[i] < cap);
    for (std::size_t j = 0; j < i; ++j) CHECK(e.index[i] != e.index[j]);
  }

  CHECK(thrown_code([&] { static_cast<void>(embed(fib, d5, 2)); }) == Err::cap_exceeded);
}

TEST_CASE("small moves are unitary and unwind exactly") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");

  auto check_unwind = [&](const PantsDecomposition& d, Move mv) {
    SmallMove a = small_apply(fib, d, mv);
    SmallMove b = small_apply(fib, a.d, inverse_move(mv));
    CHECK(b.d == d);
    CHECK(unitarity_residual(a.m) < 1e-12);
    Mat prod = matmul(b.m, a.m);
    CHECK(mat_diff(prod, Mat::eye(prod.rows)) < 1e-12);
  };

  auto d5 = standard_decomposition(0, std::vector<int>(5, tau));
  for (int j = 0; j < d5.ncuffs(); ++j)
    if (!d5.is_self_cuff(j)) {
      check_unwind(d5, Move{'F', j, +1});
      break;
    }

  auto dg2 = standard_decomposition(2, {});
  for (int p = 0; p < dg2.npants(); ++p)
    if (dg2.self_cuff_of(p) >= 0) {
      check_unwind(dg2, Move{'S', p, +1});
      break;
    }
  for (int j = 0; j < dg2.ncuffs(); ++j)
    if (!dg2.is_self_cuff(j)) {
      check_unwind(dg2, Move{'F', j, +1});
      break;
    }
  check_unwind(dg2, Move{'M', 0, +1});
}

TEST_CASE("reference representation of braids") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");
  auto d4 = standard_decomposition(0, std::vector<int>(4, tau));

  Mat lhs = reference_rep(fib, d4, braid_word({0, 1, 0}));
  Mat rhs = reference_rep(fib, d4, braid_word({1, 0, 1}));
  CHECK(mat_diff(lhs, rhs) < 1e-10);
  CHECK(unitarity_residual(lhs) < 1e-12);

  Mat fwd = reference_rep(fib, d4, braid_word({0}));
  Mat bwd = reference_rep(fib, d4, braid_word({0}, -1));
  CHECK(mat_diff(matmul(bwd, fwd), Mat::eye(2)) < 1e-12);

  // rep(w1 w2) = rep(w2) rep(w1): later literals act on the left
  Mat m01 = reference_rep(fib, d4, braid_word({0, 1}));
  Mat m0 = reference_rep(fib, d4, braid_word({0}));
  Mat m1 = reference_rep(fib, d4, braid_word({1}));
  CHECK(mat_diff(m01, matmul(m1, m0)) < 1e-12);

  auto d6 = standard_decomposition(0, std::vector<int>(6, tau));
  Mat a = reference_rep(fib, d6, braid_word({0, 3}));
  Mat b = reference_rep(fib, d6, braid_word({3, 0}));
  CHECK(mat_diff(a, b) < 1e-10);
}

TEST_CASE("reference representation of twists") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");
  auto d4 = standard_decomposition(0, std::vector<int>(4, tau));
  auto cat = generator_catalog(d4, fib);

  // a cuff twist is diagonal with the twist phases of its labels
  const Curve& alpha = catalog_curve(cat, "alpha_0");
  MappingClassWord wa;
  wa.literals.push_back({'t', alpha, 1});
  Mat m = reference_rep(fib, d4, wa);
  auto basis = enumerate_basis(fib, d4);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      cplx want = (i == j) ? fib.twist[basis[i][alpha.idx[0]]] : cplx{};
      CHECK(std::abs(m.at(i, j) - want) < 1e-12);
    }

  // monodromy: the twist about delta_1 is theta^2 times the braid squared
  const Curve& delta1 = catalog_curve(cat, "delta_1");
  MappingClassWord wt;
  wt.literals.push_back({'t', delta1, 1});
  Mat t = reference_rep(fib, d4, wt);
  Mat b2 = reference_rep(fib, d4, braid_word({1, 1}));
  cplx th2 = fib.twist[tau] * fib.twist[tau];
  for (auto& v : b2.a) v *= th2;
  CHECK(mat_diff(t, b2) < 1e-10);
}

TEST_CASE("composite curves stay unitary") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");

  auto dg2 = standard_decomposition(2, {});
  auto catg = generator_catalog(dg2, fib);
  MappingClassWord wg;
  wg.literals.push_back({'t', catalog_curve(catg, "gammap_0"), 1});
  CHECK(unitarity_residual(reference_rep(fib, dg2, wg)) < 1e-10);

  auto dmix = standard_decomposition(0, {tau, tau, fib.vacuum, tau, tau});
  auto catm = generator_catalog(dmix, fib);
  bool found_eps = false;
  for (const auto& ce : catm)
    if (ce.curve.kind == CurveKind::eps) {
      MappingClassWord w, wi;
      w.literals.push_back({'t', ce.curve, 1});
      wi.literals.push_back({'t', ce.curve, -1});
      Mat m = reference_rep(fib, dmix, w);
      Mat mi = reference_rep(fib, dmix, wi);
      CHECK(unitarity_residual(m) < 1e-10);
      CHECK(mat_diff(matmul(mi, m), Mat::eye(m.rows)) < 1e-10);
      found_eps = true;
      break;
    }
  CHECK(found_eps);

  auto dg4 = standard_decomposition(4, {fib.vacuum});
  auto cat4 = generator_catalog(dg4, fib);
  bool found_annulus = false;
  for (const auto& ce : cat4)
    if (ce.curve.kind == CurveKind::annulus) {
      MappingClassWord w;
      w.literals.push_back({'t', ce.curve, 1});
      CHECK(unitarity_residual(reference_rep(fib, dg4, w, 4096)) < 1e-9);
      found_annulus = true;
      break;
    }
  CHECK(found_annulus);
}

TEST_CASE("braid literals resolve through curve recognition") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");
  auto d4 = standard_decomposition(0, std::vector<int>(4, tau));

  Curve nc;
  nc.kind = CurveKind::normal;
  nc.crossings = canonical_crossings(d4, Curve{CurveKind::braid, {1}, {}});
  MappingClassWord w;
  w.literals.push_back({'b', nc, 1});
  Mat a = reference_rep(fib, d4, w);
  Mat b = reference_rep(fib, d4, braid_word({1}));
  CHECK(mat_diff(a, b) < 1e-12);
}

TEST_CASE("illegal and empty inputs") {
  Theory fib = load_theory(builtin_theory_text("fibonacci"));
  int tau = fib.label_of("tau");

  // braiding boundary points with unequal labels has no diagonal action
  auto dmix = standard_decomposition(0, {tau, fib.vacuum, fib.vacuum, tau});
  CHECK(thrown_code([&] {
          MappingClassWord w;
          w.literals.push_back({'b', Curve{CurveKind::braid, {0}, {}}, 1});
          static_cast<void>(reference_rep(fib, dmix, w));
        }) == Err::illegal_literal);

  // a labeling with dim V = 0 leaves nothing to verify against
  auto dzero = standard_decomposition(0, {tau, fib.vacuum, fib.vacuum});
  CHECK(dim_surface(fib, 0, {tau, fib.vacuum, fib.vacuum}) == 0);
  CHECK(thrown_code([&] { static_cast<void>(embed(fib, dzero)); }) == Err::empty_space);
}
