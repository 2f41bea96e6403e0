#include "core/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace tmf {

namespace {

constexpr std::size_t kSmallSpaceCap = 4096;

int leg_label_partial(const Theory& th, const PantsDecomposition& d,
                      const std::vector<int>& assign, int p, int l) {
  const LegRef& r = d.pants[p].leg[l];
  if (r.kind == 'b') return d.boundary_labels[r.id];
  int x = assign[r.id];
  if (x < 0) return -1;
  return d.cuffs[r.id].e[0] == End{p, l} ? x : th.dual[x];
}

}  // namespace

int leg_label(const Theory& th, const PantsDecomposition& d, const Labeling& lab,
              int p, int l) {
  int v = leg_label_partial(th, d, lab, p, l);
  if (v < 0) fail(Err::internal, "labeling incomplete at leg read");
  return v;
}

std::vector<Labeling> enumerate_basis(const Theory& th, const PantsDecomposition& d) {
  for (int a : d.boundary_labels)
    if (a < 0 || a >= th.nlabels()) fail(Err::consistency, "boundary label out of range");
  int n = d.ncuffs();
  int np = d.npants();
  std::vector<Labeling> out;
  std::vector<int> assign(n, -1);
  auto pants_ok = [&]() {
    for (int p = 0; p < np; ++p) {
      int a = leg_label_partial(th, d, assign, p, 0);
      int b = leg_label_partial(th, d, assign, p, 1);
      int c = leg_label_partial(th, d, assign, p, 2);
      if (a < 0 || b < 0 || c < 0) continue;
      if (!th.admissible(a, b, c)) return false;
    }
    return true;
  };
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (pants_ok()) out.push_back(assign);
      return;
    }
    for (int x = 0; x < th.nlabels(); ++x) {
      assign[i] = x;
      if (pants_ok()) rec(i + 1);
      assign[i] = -1;
    }
  };
  rec(0);
  return out;
}

long dim_surface(const Theory& th, int genus, const std::vector<int>& blabels) {
  int b = static_cast<int>(blabels.size());
  if (genus < 0) fail(Err::unsupported_surface, "negative genus");
  if (2 * genus - 2 + b > 0) {
    auto d = standard_decomposition(genus, blabels);
    return static_cast<long>(enumerate_basis(th, d).size());
  }
  if (genus == 0 && b == 0) return 1;
  if (genus == 0 && b == 1) return blabels[0] == th.vacuum ? 1 : 0;
  if (genus == 0 && b == 2) return blabels[1] == th.dual[blabels[0]] ? 1 : 0;
  if (genus == 1 && b == 0) return th.nlabels();
  fail(Err::unsupported_surface, "no labeled surface with this signature");
}

Embedding embed(const Theory& th, const PantsDecomposition& d,
                std::size_t max_dim, std::size_t max_state) {
  Embedding e;
  e.d = d;
  e.k = d.npants();
  e.p = th.p();
  std::size_t states = 1;
  for (int i = 0; i < e.k; ++i) {
    states *= static_cast<std::size_t>(e.p);
    if (states > max_state) fail(Err::cap_exceeded, "qupit space exceeds state cap");
  }
  e.basis = enumerate_basis(th, d);
  if (e.basis.size() > max_dim) fail(Err::cap_exceeded, "dim V exceeds cap");
  for (const auto& lab : e.basis) {
    std::size_t idx = 0;
    for (int p = 0; p < e.k; ++p) {
      int s = th.sector_of(leg_label(th, d, lab, p, 0), leg_label(th, d, lab, p, 1),
                           leg_label(th, d, lab, p, 2));
      if (s < 0) fail(Err::internal, "labeling with non-admissible pant");
      idx = idx * static_cast<std::size_t>(e.p) + static_cast<std::size_t>(s);
    }
    e.index.push_back(idx);
  }
  return e;
}

namespace {

std::map<Labeling, int> index_of(const std::vector<Labeling>& basis) {
  std::map<Labeling, int> m;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) m[basis[i]] = i;
  return m;
}

SmallMove small_F(const Theory& th, const PantsDecomposition& d, const Move& mv) {
  int cid = mv.arg;
  End e0 = d.cuffs[cid].e[0], e1 = d.cuffs[cid].e[1];
  int p1 = e0.pant, l1 = e0.leg, p2 = e1.pant, l2 = e1.leg;
  SmallMove sm;
  sm.d = apply_move(d, mv);
  auto labs = enumerate_basis(th, d);
  auto labs2 = enumerate_basis(th, sm.d);
  if (labs.size() > kSmallSpaceCap || labs2.size() > kSmallSpaceCap)
    fail(Err::cap_exceeded, "labeling basis exceeds small-space cap");
  auto idx2 = index_of(labs2);
  sm.m = Mat(labs2.size(), labs.size());
  for (int j = 0; j < static_cast<int>(labs.size()); ++j) {
    const Labeling& L = labs[j];
    int a = leg_label(th, d, L, p1, (l1 + 1) % 3);
    int b = leg_label(th, d, L, p1, (l1 + 2) % 3);
    int c = leg_label(th, d, L, p2, (l2 + 1) % 3);
    int dd = leg_label(th, d, L, p2, (l2 + 2) % 3);
    int x = leg_label(th, d, L, p1, l1);
    for (int y = 0; y < th.nlabels(); ++y) {
      cplx co;
      if (mv.dir == +1) {
        co = th.fcoef(a, b, c, dd, x, y);
      } else {
        co = std::conj(th.fcoef(dd, a, b, c, y, x));
      }
      if (co == cplx{}) continue;
      Labeling L2 = L;
      L2[cid] = y;  // seen from the first end, which stays on the p1 side
      auto it = idx2.find(L2);
      if (it == idx2.end()) continue;
      sm.m.at(it->second, j) += co;
    }
  }
  return sm;
}

SmallMove small_S(const Theory& th, const PantsDecomposition& d, const Move& mv) {
  int pid = mv.arg;
  int sid = d.self_cuff_of(pid);
  if (sid < 0) fail(Err::illegal_literal, "S needs a self-glued pant");
  int l0 = -1;
  for (int l = 0; l < 3; ++l) {
    const LegRef& r = d.pants[pid].leg[l];
    if (r.kind == 'b' || r.id != sid) l0 = l;
  }
  SmallMove sm;
  sm.d = apply_move(d, mv);
  auto labs = enumerate_basis(th, d);
  if (labs.size() > kSmallSpaceCap)
    fail(Err::cap_exceeded, "labeling basis exceeds small-space cap");
  auto idx = index_of(labs);
  sm.m = Mat(labs.size(), labs.size());
  int l1 = (l0 + 1) % 3;
  for (int j = 0; j < static_cast<int>(labs.size()); ++j) {
    const Labeling& L = labs[j];
    int aa = leg_label(th, d, L, pid, l0);
    int x = leg_label(th, d, L, pid, l1);
    auto blk = th.S.find(aa);
    if (blk == th.S.end()) continue;
    for (int y = 0; y < th.nlabels(); ++y) {
      cplx co = (mv.dir == +1) ? blk->second.get(x, y)
                               : std::conj(blk->second.get(y, x));
      if (co == cplx{}) continue;
      Labeling L2 = L;
      L2[sid] = (d.cuffs[sid].e[0] == End{pid, l1}) ? y : th.dual[y];
      auto it = idx.find(L2);
      if (it == idx.end()) continue;
      sm.m.at(it->second, j) += co;
    }
  }
  return sm;
}

}  // namespace

Mat small_twist(const Theory& th, const PantsDecomposition& d, int pant, int leg,
                int power) {
  auto labs = enumerate_basis(th, d);
  if (labs.size() > kSmallSpaceCap)
    fail(Err::cap_exceeded, "labeling basis exceeds small-space cap");
  Mat m(labs.size(), labs.size());
  for (int j = 0; j < static_cast<int>(labs.size()); ++j) {
    int x = leg_label(th, d, labs[j], pant, leg);
    cplx ph{1.0};
    cplx base = power >= 0 ? th.twist[x] : std::conj(th.twist[x]);
    for (int t = 0; t < std::abs(power); ++t) ph *= base;
    m.at(j, j) = ph;
  }
  return m;
}

Mat small_braid(const Theory& th, const PantsDecomposition& d, int pant, int la,
                int lb, int dir) {
  auto labs = enumerate_basis(th, d);
  if (labs.size() > kSmallSpaceCap)
    fail(Err::cap_exceeded, "labeling basis exceeds small-space cap");
  int lz = 3 - la - lb;
  Mat m(labs.size(), labs.size());
  for (int j = 0; j < static_cast<int>(labs.size()); ++j) {
    int a1 = leg_label(th, d, labs[j], pant, la);
    int a2 = leg_label(th, d, labs[j], pant, lb);
    if (a1 != a2) fail(Err::illegal_literal, "braid needs equal labels");
    int z = leg_label(th, d, labs[j], pant, lz);
    cplx ph = th.braid_phase(a1, z);
    if (ph == cplx{}) fail(Err::consistency, "braid phase missing from theory");
    m.at(j, j) = (dir == +1) ? ph : std::conj(ph);
  }
  return m;
}

SmallMove small_apply(const Theory& th, const PantsDecomposition& d, const Move& mv) {
  switch (mv.kind) {
    case 'F':
      return small_F(th, d, mv);
    case 'S':
      return small_S(th, d, mv);
    case 'M': {
      SmallMove sm;
      sm.d = apply_move(d, mv);
      sm.m = small_twist(th, d, mv.arg, 0, mv.dir);
      return sm;
    }
  }
  fail(Err::internal, "unknown move kind");
}

namespace {

// route, act, unwind: one literal part on the labeling basis
Mat small_literal(const Theory& th, const PantsDecomposition& d0, char op,
                  const Curve& curve, int exp) {
  RouteResult r = route_to_cuff(d0, curve);
  std::size_t dim = enumerate_basis(th, d0).size();
  Mat u = Mat::eye(dim);
  PantsDecomposition cur = d0;
  for (const Move& mv : r.moves) {
    SmallMove sm = small_apply(th, cur, mv);
    u = matmul(sm.m, u);
    cur = sm.d;
  }
  if (op == 't') {
    End e0 = cur.cuffs.at(r.cuff).e[0];
    u = matmul(small_twist(th, cur, e0.pant, e0.leg, exp), u);
  } else {
    int la = -1, lb = -1;
    for (int l = 0; l < 3; ++l) {
      const LegRef& leg = cur.pants[r.pant].leg[l];
      if (leg.kind != 'b') continue;
      if (leg.id == curve.idx[0]) la = l;
      if (leg.id == curve.idx[0] + 1) lb = l;
    }
    if (la < 0 || lb < 0) fail(Err::internal, "braid pair not on the routed pant");
    u = matmul(small_braid(th, cur, r.pant, la, lb, exp), u);
  }
  for (auto it = r.moves.rbegin(); it != r.moves.rend(); ++it) {
    SmallMove sm = small_apply(th, cur, inverse_move(*it));
    u = matmul(sm.m, u);
    cur = sm.d;
  }
  if (!(cur == d0)) fail(Err::internal, "unwinding did not restore the base");
  return u;
}

}  // namespace

Mat reference_rep(const Theory& th, const PantsDecomposition& d,
                  const MappingClassWord& w, std::size_t max_dim) {
  auto basis = enumerate_basis(th, d);
  if (basis.size() > max_dim) fail(Err::cap_exceeded, "dim V exceeds cap");
  Mat u = Mat::eye(basis.size());
  for (const auto& lit : w.literals) {
    if (lit.op == 'b') {
      Curve cv = resolve_braid_curve(d, lit.curve);
      int i = cv.idx[0];
      if (i + 1 >= d.nboundary() ||
          d.boundary_labels[i] != d.boundary_labels[i + 1])
        fail(Err::illegal_literal, "braid needs equal labels on the pair");
      u = matmul(small_literal(th, d, 'b', cv, lit.exp), u);
      continue;
    }
    for (const auto& part : expand_curve(d, lit.curve)) {
      u = matmul(small_literal(th, d, 't', part.curve, part.exp * lit.exp), u);
    }
  }
  return u;
}

VerifyResult verify_intertwine(const Circuit& c, const Embedding& e, const Mat& ref) {
  std::size_t dimv = e.basis.size();
  if (dimv == 0) fail(Err::empty_space, "surface has no admissible labelings");
  if (ref.rows != dimv || ref.cols != dimv)
    fail(Err::dimension, "reference matrix shape mismatch");
  std::size_t dim = state_dim(c);
  std::vector<StateVector> img(dimv);
  for (std::size_t j = 0; j < dimv; ++j) {
    StateVector psi(dim);
    psi[e.index[j]] = 1.0;
    img[j] = run(c, psi);
  }
  cplx align{};
  for (std::size_t j = 0; j < dimv; ++j)
    for (std::size_t m = 0; m < dimv; ++m)
      align += std::conj(ref.at(m, j)) * img[j][e.index[m]];
  VerifyResult out;
  out.phase = std::abs(align) < 1e-14 ? cplx{1.0} : align / std::abs(align);
  double resid2 = 0.0, leak2 = 0.0;
  std::vector<char> on_image(dim, 0);
  for (std::size_t m = 0; m < dimv; ++m) on_image[e.index[m]] = 1;
  for (std::size_t j = 0; j < dimv; ++j) {
    StateVector diff = img[j];
    for (std::size_t m = 0; m < dimv; ++m)
      diff[e.index[m]] -= out.phase * ref.at(m, j);
    for (std::size_t i = 0; i < dim; ++i) {
      resid2 += std::norm(diff[i]);
      if (!on_image[i]) leak2 += std::norm(img[j][i]);
    }
  }
  out.residual = std::sqrt(resid2);
  out.leakage = std::sqrt(leak2);
  return out;
}

}  // namespace tmf
