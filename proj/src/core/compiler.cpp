#include "core/compiler.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace tmf {

namespace {

cplx phase_pow(cplx base, int t) {
  cplx out{1.0};
  cplx b = t >= 0 ? base : std::conj(base);
  for (int i = 0; i < std::abs(t); ++i) out *= b;
  return out;
}

}  // namespace

Gate gate_F(const Theory& th, const PantsDecomposition& d, int cuff, int dir) {
  if (cuff < 0 || cuff >= d.ncuffs()) fail(Err::internal, "F gate: cuff out of range");
  if (d.is_self_cuff(cuff)) fail(Err::internal, "F gate: cuff must join two pants");
  End e0 = d.cuffs[cuff].e[0], e1 = d.cuffs[cuff].e[1];
  int l1 = e0.leg, l2 = e1.leg;
  int p = th.p();
  Gate g;
  g.kind = 'u';
  g.arity = 2;
  g.t[0] = e0.pant;
  g.t[1] = e1.pant;
  g.m = Mat(static_cast<std::size_t>(p) * p, static_cast<std::size_t>(p) * p);
  for (int s1 = 0; s1 < p; ++s1) {
    const auto& t1 = th.sectors[s1];
    for (int s2 = 0; s2 < p; ++s2) {
      const auto& t2 = th.sectors[s2];
      std::size_t col = static_cast<std::size_t>(s1) * p + s2;
      int x = t1[l1];
      int a = t1[(l1 + 1) % 3], b = t1[(l1 + 2) % 3];
      int c = t2[(l2 + 1) % 3], dd = t2[(l2 + 2) % 3];
      bool wrote = false;
      if (t2[l2] == th.dual[x]) {
        for (int y = 0; y < th.nlabels(); ++y) {
          cplx co = (dir == +1) ? th.fcoef(a, b, c, dd, x, y)
                                : std::conj(th.fcoef(dd, a, b, c, y, x));
          if (co == cplx{}) continue;
          std::array<int, 3> n1{}, n2{};
          n1[l1] = y;
          n2[l2] = th.dual[y];
          if (dir == +1) {
            n1[(l1 + 1) % 3] = b;
            n1[(l1 + 2) % 3] = c;
            n2[(l2 + 1) % 3] = dd;
            n2[(l2 + 2) % 3] = a;
          } else {
            n1[(l1 + 1) % 3] = dd;
            n1[(l1 + 2) % 3] = a;
            n2[(l2 + 1) % 3] = b;
            n2[(l2 + 2) % 3] = c;
          }
          int r1 = th.sector_of(n1[0], n1[1], n1[2]);
          int r2 = th.sector_of(n2[0], n2[1], n2[2]);
          if (r1 < 0 || r2 < 0) continue;
          g.m.at(static_cast<std::size_t>(r1) * p + r2, col) += co;
          wrote = true;
        }
      }
      if (!wrote) g.m.at(col, col) = 1.0;
    }
  }
  return g;
}

Gate gate_S(const Theory& th, const PantsDecomposition& d, int pant, int dir) {
  if (pant < 0 || pant >= d.npants()) fail(Err::internal, "S gate: pant out of range");
  int sid = d.self_cuff_of(pant);
  if (sid < 0) fail(Err::internal, "S gate: pant must be self-glued");
  int l0 = -1;
  for (int l = 0; l < 3; ++l) {
    const LegRef& r = d.pants[pant].leg[l];
    if (r.kind == 'b' || r.id != sid) l0 = l;
  }
  int l1 = (l0 + 1) % 3, l2 = (l0 + 2) % 3;
  int p = th.p();
  Gate g;
  g.kind = 'u';
  g.arity = 1;
  g.t[0] = pant;
  g.m = Mat(p, p);
  for (int s = 0; s < p; ++s) {
    const auto& t = th.sectors[s];
    int aa = t[l0], x = t[l1];
    bool wrote = false;
    auto blk = th.S.find(aa);
    if (t[l2] == th.dual[x] && blk != th.S.end()) {
      for (int y = 0; y < th.nlabels(); ++y) {
        cplx co = (dir == +1) ? blk->second.get(x, y)
                              : std::conj(blk->second.get(y, x));
        if (co == cplx{}) continue;
        std::array<int, 3> n{};
        n[l0] = aa;
        n[l1] = y;
        n[l2] = th.dual[y];
        int r = th.sector_of(n[0], n[1], n[2]);
        if (r < 0) continue;
        g.m.at(r, s) += co;
        wrote = true;
      }
    }
    if (!wrote) g.m.at(s, s) = 1.0;
  }
  return g;
}

Gate gate_M(const Theory& th, const PantsDecomposition& d, int pant, int t) {
  if (pant < 0 || pant >= d.npants()) fail(Err::internal, "M gate: pant out of range");
  int p = th.p();
  Gate g;
  g.kind = 'u';
  g.arity = 1;
  g.t[0] = pant;
  g.m = Mat(p, p);
  for (int s = 0; s < p; ++s)
    g.m.at(s, s) = phase_pow(th.twist[th.sectors[s][0]], t);
  return g;
}

Gate gate_twist(const Theory& th, const PantsDecomposition& d, int cuff,
                int power, const std::string& tag) {
  if (cuff < 0 || cuff >= d.ncuffs()) fail(Err::internal, "twist gate: cuff out of range");
  End e0 = d.cuffs[cuff].e[0];
  int p = th.p();
  Gate g;
  g.kind = 'u';
  g.arity = 1;
  g.t[0] = e0.pant;
  g.tag = tag;
  g.m = Mat(p, p);
  for (int s = 0; s < p; ++s)
    g.m.at(s, s) = phase_pow(th.twist[th.sectors[s][e0.leg]], power);
  return g;
}

Gate gate_braid(const Theory& th, const PantsDecomposition& d, int pant,
                int la, int lb, int dir, const std::string& tag) {
  if (pant < 0 || pant >= d.npants()) fail(Err::internal, "braid gate: pant out of range");
  int lz = 3 - la - lb;
  int p = th.p();
  Gate g;
  g.kind = 'u';
  g.arity = 1;
  g.t[0] = pant;
  g.tag = tag;
  g.m = Mat(p, p);
  for (int s = 0; s < p; ++s) {
    const auto& t = th.sectors[s];
    if (t[la] == t[lb]) {
      cplx ph = th.braid_phase(t[la], t[lz]);
      if (ph == cplx{}) ph = 1.0;
      g.m.at(s, s) = (dir >= 0) ? ph : std::conj(ph);
      continue;
    }
    std::array<int, 3> n = t;
    std::swap(n[la], n[lb]);
    int r = th.sector_of(n[0], n[1], n[2]);
    if (r < 0) {
      g.m.at(s, s) = 1.0;
    } else {
      g.m.at(r, s) = 1.0;
    }
  }
  return g;
}

Gate move_gate(const Theory& th, const PantsDecomposition& d, const Move& mv) {
  std::ostringstream tag;
  Gate g;
  switch (mv.kind) {
    case 'F':
      g = gate_F(th, d, mv.arg, mv.dir);
      tag << "Fbar cuff " << mv.arg << (mv.dir < 0 ? " inv" : "");
      break;
    case 'S':
      g = gate_S(th, d, mv.arg, mv.dir);
      tag << "Sbar pant " << mv.arg << (mv.dir < 0 ? " inv" : "");
      break;
    case 'M':
      g = gate_M(th, d, mv.arg, mv.dir);
      tag << "Mbar pant " << mv.arg << " t=" << mv.dir;
      break;
    default:
      fail(Err::internal, "unknown move kind");
  }
  g.tag = tag.str();
  return g;
}

namespace {

// route, theta, unwind for one routable curve; appends 2*|moves|+1 gates
void emit_part(const Theory& th, const PantsDecomposition& d0, char op,
               const Curve& curve, int exp, const std::string& name,
               Circuit& c, LiteralPlan& lp) {
  RouteResult r = route_to_cuff(d0, curve);
  PantsDecomposition cur = d0;
  for (const Move& mv : r.moves) {
    c.gates.push_back(move_gate(th, cur, mv));
    cur = apply_move(cur, mv);
  }
  std::string tag = "theta " + name + (exp < 0 ? " inv" : "");
  if (op == 't') {
    c.gates.push_back(gate_twist(th, cur, r.cuff, exp, tag));
  } else {
    int la = -1, lb = -1;
    for (int l = 0; l < 3; ++l) {
      const LegRef& leg = cur.pants[r.pant].leg[l];
      if (leg.kind != 'b') continue;
      if (leg.id == curve.idx[0]) la = l;
      if (leg.id == curve.idx[0] + 1) lb = l;
    }
    if (la < 0 || lb < 0) fail(Err::internal, "braid pair not on the routed pant");
    c.gates.push_back(gate_braid(th, cur, r.pant, la, lb, exp, tag));
  }
  for (auto it = r.moves.rbegin(); it != r.moves.rend(); ++it) {
    Move im = inverse_move(*it);
    c.gates.push_back(move_gate(th, cur, im));
    cur = apply_move(cur, im);
  }
  if (!(cur == d0)) fail(Err::internal, "unwinding did not restore the base");
  lp.moves.push_back(r.moves);
  lp.nmoves += static_cast<int>(r.moves.size());
  lp.ngates += 2 * static_cast<int>(r.moves.size()) + 1;
}

}  // namespace

std::pair<Circuit, CompilationPlan> compile(const Theory& th,
                                            const PantsDecomposition& d0,
                                            const MappingClassWord& w) {
  d0.validate();
  for (int a : d0.boundary_labels)
    if (a < 0 || a >= th.nlabels()) fail(Err::consistency, "boundary label out of range");
  Circuit c;
  c.k = d0.npants();
  c.p = th.p();
  CompilationPlan plan;
  plan.base = d0;
  for (const auto& lit : w.literals) {
    LiteralPlan lp;
    lp.literal = lit;
    if (lit.op == 'b') {
      Curve cv = resolve_braid_curve(d0, lit.curve);
      int i = cv.idx[0];
      if (i + 1 >= d0.nboundary() ||
          d0.boundary_labels[i] != d0.boundary_labels[i + 1])
        fail(Err::illegal_literal, "braid needs equal labels on the pair");
      lp.parts = {{cv, 1}};
      emit_part(th, d0, 'b', cv, lit.exp, catalog_name(cv), c, lp);
    } else {
      lp.parts = expand_curve(d0, lit.curve);
      for (const auto& part : lp.parts) {
        std::string name = catalog_name(part.curve.kind == CurveKind::arc &&
                                                lit.curve.kind != CurveKind::normal
                                            ? lit.curve
                                            : part.curve);
        emit_part(th, d0, 't', part.curve, part.exp * lit.exp, name, c, lp);
      }
    }
    plan.total_moves += lp.nmoves;
    plan.total_gates += lp.ngates;
    plan.literals.push_back(std::move(lp));
  }
  if (!w.literals.empty()) {
    double denom = static_cast<double>(w.literals.size()) *
                   std::ceil(std::log2(static_cast<double>(d0.b1() + 2)));
    plan.constant_c = denom > 0 ? plan.total_gates / denom : 0.0;
  }
  return {std::move(c), std::move(plan)};
}

Circuit compile_braid_localized(const Theory& th, const std::vector<int>& blabels,
                                const MappingClassWord& w) {
  if (blabels.size() < 4)
    fail(Err::unsupported_surface, "braid-localized mode wants at least 4 punctures");
  for (int a : blabels)
    if (a != blabels[0])
      fail(Err::unsupported_surface, "braid-localized mode wants identical labels");
  PantsDecomposition d = caterpillar_decomposition(blabels);
  MappingClassWord w2;
  for (const auto& lit : w.literals) {
    WordLiteral l2 = lit;
    if (lit.op == 'b') {
      l2.curve = resolve_braid_curve(d, lit.curve);
    } else {
      if (l2.curve.kind == CurveKind::normal) l2.curve = recognize_normal(d, l2.curve);
      if (l2.curve.kind != CurveKind::type1)
        fail(Err::illegal_literal,
             "braid-localized mode wants braid or cuff-twist literals");
    }
    w2.literals.push_back(l2);
  }
  auto [c, plan] = compile(th, d, w2);
  for (const auto& lp : plan.literals)
    if (lp.ngates > 7) fail(Err::internal, "localized literal exceeded 7 gates");
  return c;
}

std::pair<Circuit, CompilationPlan> compile_cerf(const Theory& th,
                                                 const PantsDecomposition& d0,
                                                 const MappingClassWord& w) {
  MappingClassWord w2;
  std::vector<int> lens;
  for (const auto& lit : w.literals) {
    WordLiteral l2 = lit;
    if (lit.curve.kind == CurveKind::normal) {
      if (!(reduce_crossings(lit.curve.crossings) == lit.curve.crossings))
        fail(Err::illegal_literal, "normal coordinates not reduced");
      l2.curve = recognize_normal(d0, lit.curve);
    }
    lens.push_back(curve_length(d0, l2.curve));
    w2.literals.push_back(l2);
  }
  auto [c, plan] = compile(th, d0, w2);
  plan.lengths = lens;
  for (std::size_t i = 0; i < plan.literals.size(); ++i)
    plan.over_budget.push_back(plan.literals[i].ngates > 11 * lens[i]);
  return {std::move(c), std::move(plan)};
}

std::string format_plan(const CompilationPlan& plan) {
  std::ostringstream os;
  os << "base pants = " << plan.base.npants() << "\n";
  os << "base b1 = " << plan.base.b1() << "\n";
  os << "literals = " << plan.literals.size() << "\n";
  os << "total moves = " << plan.total_moves << "\n";
  os << "total gates = " << plan.total_gates << "\n";
  os << "constant c = " << plan.constant_c << "\n";
  for (std::size_t i = 0; i < plan.literals.size(); ++i) {
    const LiteralPlan& lp = plan.literals[i];
    os << "literal " << i << " = " << catalog_name(lp.literal.curve)
       << ", op = " << (lp.literal.op == 'b' ? "braid" : "twist")
       << ", exp = " << lp.literal.exp << ", moves = " << lp.nmoves
       << ", gates = " << lp.ngates;
    if (i < plan.lengths.size()) {
      os << ", length = " << plan.lengths[i]
         << ", budget = " << (plan.over_budget[i] ? "over" : "ok");
    }
    os << "\n";
  }
  return os.str();
}

MappingClassWord random_word(const Theory& th, const PantsDecomposition& d,
                             int length, std::uint64_t seed) {
  auto catalog = generator_catalog(d, th);
  if (catalog.empty()) fail(Err::unsupported_surface, "no catalog generators on this surface");
  std::mt19937_64 rng(seed);
  MappingClassWord w;
  for (int i = 0; i < length; ++i) {
    const CatalogEntry& e = catalog[rng() % catalog.size()];
    int exp;
    if (e.op == 'b') {
      exp = (rng() & 1) ? +1 : -1;
    } else {
      static const int pows[4] = {+1, -1, +2, -2};
      exp = pows[rng() % 4];
    }
    w.literals.push_back({e.op, e.curve, exp});
  }
  return w;
}

}  // namespace tmf
