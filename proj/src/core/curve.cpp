#include "core/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace tmf {

namespace {

int routing_cap(const PantsDecomposition& d) {
  int b1 = d.b1();
  int lg = static_cast<int>(std::ceil(std::log2(b1 + 2)));
  return 4 * lg + 8;
}

std::vector<int> self_cuffs(const PantsDecomposition& d) {
  std::vector<int> out;
  for (int j = 0; j < d.ncuffs(); ++j)
    if (d.is_self_cuff(j)) out.push_back(j);
  return out;
}

int pos_of(const std::vector<LeafTok>& order, const LeafTok& tok) {
  for (int i = 0; i < static_cast<int>(order.size()); ++i)
    if (order[i] == tok) return i;
  fail(Err::internal, "leaf missing from walk order");
}

std::vector<LeafTok> arc_leaves(const PantsDecomposition& d, const Curve& c) {
  auto order = canon_leaves(d);
  int n = static_cast<int>(order.size());
  if (c.idx.size() != 2) fail(Err::parse, "arc curve wants start and count");
  int start = c.idx[0], count = c.idx[1];
  if (start < 0 || start >= n || count < 2 || count >= n)
    fail(Err::illegal_literal, "arc out of range");
  std::vector<LeafTok> out;
  for (int t = 0; t < count; ++t) out.push_back(order[(start + t) % n]);
  return out;
}

Curve make_arc(int start, int count) {
  return Curve{CurveKind::arc, {start, count}, {}};
}

// a run of one handle leaf is already enclosed by its gadget's up-cuff
Curve arc_or_cuff(const PantsDecomposition& d, const std::vector<LeafTok>& order,
                  int start, int count) {
  if (count == 1) {
    const LeafTok& tok = order[start];
    if (tok.kind != 'h')
      fail(Err::illegal_literal, "curve around one puncture is boundary-parallel");
    int gadget = d.cuffs[tok.id].e[0].pant;
    return Curve{CurveKind::type1, {d.upcuff_of(gadget)}, {}};
  }
  return make_arc(start, count);
}

// complement of the cyclic interval {start..start+count-1}: degenerate when
// empty or a lone boundary leaf; a lone handle still has a separating cuff
bool arc_complement_ok(const std::vector<LeafTok>& order, int start, int count) {
  int n = static_cast<int>(order.size());
  int comp = n - count;
  if (comp >= 2) return true;
  if (comp <= 0) return false;
  return order[(start + count) % n].kind == 'h';
}

}  // namespace

std::vector<LeafTok> canon_leaves(const PantsDecomposition& d) {
  auto order = walk_leaves(d);
  auto want = all_leaves(d);
  int n = static_cast<int>(order.size());
  if (n <= 2) return want;
  int at = pos_of(order, want[0]);
  std::rotate(order.begin(), order.begin() + at, order.end());
  if (!(order[1] == want[1]) && order[n - 1] == want[1]) {
    std::reverse(order.begin() + 1, order.end());
  }
  return order;
}

std::string catalog_name(const Curve& c) {
  std::ostringstream os;
  switch (c.kind) {
    case CurveKind::type1: os << "alpha_" << c.idx[0]; break;
    case CurveKind::type2: os << "gammap_" << c.idx[0]; break;
    case CurveKind::type3: os << "chain_" << c.idx[0]; break;
    case CurveKind::braid: os << "delta_" << c.idx[0]; break;
    case CurveKind::eps: os << "eps_" << c.idx[0] << "_" << c.idx[1]; break;
    case CurveKind::annulus: os << "A_" << c.idx[0]; break;
    case CurveKind::arc: os << "arc_" << c.idx[0] << "_" << c.idx[1]; break;
    case CurveKind::normal: os << "normal"; break;
  }
  return os.str();
}

std::vector<CatalogEntry> generator_catalog(const PantsDecomposition& d,
                                            const Theory& th) {
  for (int a : d.boundary_labels)
    if (a < 0 || a >= th.nlabels())
      fail(Err::consistency, "boundary label out of range");
  std::vector<CatalogEntry> out;
  for (int j = 0; j < d.ncuffs(); ++j) {
    Curve c{CurveKind::type1, {j}, {}};
    out.push_back({catalog_name(c), 't', c});
  }
  auto sids = self_cuffs(d);
  int nh = static_cast<int>(sids.size());
  for (int h = 0; h < nh; ++h) {
    Curve c{CurveKind::type2, {h}, {}};
    out.push_back({catalog_name(c), 't', c});
  }
  for (int h = 0; h + 1 < nh; ++h) {
    Curve c{CurveKind::type3, {h}, {}};
    out.push_back({catalog_name(c), 't', c});
  }
  int b = d.nboundary();
  int n = b + nh;
  for (int i = 0; i + 1 < b; ++i) {
    if (d.boundary_labels[i] != d.boundary_labels[i + 1]) continue;
    if (n == 2) continue;
    Curve c{CurveKind::braid, {i}, {}};
    out.push_back({catalog_name(c), 'b', c});
  }
  if (n >= 4) {
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j) {
        if (d.boundary_labels[i] == d.boundary_labels[j]) continue;
        Curve c{CurveKind::eps, {i, j}, {}};
        out.push_back({catalog_name(c), 't', c});
      }
  }
  if (b >= 1) {
    for (int h = 0; h < nh; ++h) {
      int comp = (b - 1) + (nh - 1 - h);
      if (comp == 0) continue;
      if (comp == 1 && b == 2) continue; // lone boundary leaf outside
      Curve c{CurveKind::annulus, {h}, {}};
      out.push_back({catalog_name(c), 't', c});
    }
  }
  return out;
}

std::vector<CurvePart> expand_curve(const PantsDecomposition& d,
                                    const Curve& curve) {
  switch (curve.kind) {
    case CurveKind::type1:
    case CurveKind::type2:
    case CurveKind::type3:
    case CurveKind::braid:
    case CurveKind::arc:
      return {{curve, 1}};
    case CurveKind::normal:
      return expand_curve(d, recognize_normal(d, curve));
    case CurveKind::annulus: {
      auto order = canon_leaves(d);
      int n = static_cast<int>(order.size());
      int b = d.nboundary();
      int nh = n - b;
      if (curve.idx.size() != 1 || curve.idx[0] < 0 || curve.idx[0] >= nh)
        fail(Err::illegal_literal, "annulus handle index out of range");
      if (b < 1) fail(Err::illegal_literal, "annulus needs a puncture");
      int h = curve.idx[0];
      // gamma carries the last puncture around handles 0..h; gamma' is the
      // handle-only side. Opposite twists realize the annulus map.
      if (!arc_complement_ok(order, b - 1, h + 2))
        fail(Err::illegal_literal, "degenerate annulus curve");
      if (h > 0 && !arc_complement_ok(order, b, h + 1))
        fail(Err::illegal_literal, "degenerate annulus curve");
      return {{make_arc(b - 1, h + 2), 1}, {arc_or_cuff(d, order, b, h + 1), -1}};
    }
    case CurveKind::eps: {
      auto order = canon_leaves(d);
      int n = static_cast<int>(order.size());
      int b = d.nboundary();
      if (curve.idx.size() != 2) fail(Err::parse, "eps wants two punctures");
      int i = curve.idx[0], j = curve.idx[1];
      if (i < 0 || j <= i || j >= b)
        fail(Err::illegal_literal, "eps puncture pair out of range");
      if (n < 4)
        fail(Err::illegal_literal, "no essential curve for this pair");
      int pi = pos_of(order, {'b', i});
      int pj = pos_of(order, {'b', j});
      int count = pj - pi + 1;
      if (arc_complement_ok(order, pi, count)) return {{make_arc(pi, count), 1}};
      if (count == n) return {{make_arc(pj, 2), 1}};
      // complement is a lone boundary leaf; try the wrapped interval
      int wcount = n - count + 2;
      if (arc_complement_ok(order, pj, wcount)) return {{make_arc(pj, wcount), 1}};
      // both writings degenerate (4 leaves): lantern substitution
      return {{make_arc(pi, 2), -1}, {make_arc(pi + 1, pj - pi), -1}};
    }
  }
  fail(Err::internal, "unhandled curve kind");
}

RouteResult route_to_cuff(const PantsDecomposition& d, const Curve& curve) {
  int cap = routing_cap(d);
  switch (curve.kind) {
    case CurveKind::type1: {
      if (curve.idx.size() != 1 || curve.idx[0] < 0 || curve.idx[0] >= d.ncuffs())
        fail(Err::illegal_literal, "cuff index out of range");
      int c = curve.idx[0];
      return {{}, d, c, d.cuffs[c].e[0].pant};
    }
    case CurveKind::type2: {
      auto sids = self_cuffs(d);
      if (curve.idx.size() != 1 || curve.idx[0] < 0 ||
          curve.idx[0] >= static_cast<int>(sids.size()))
        fail(Err::illegal_literal, "handle index out of range");
      int sid = sids[curve.idx[0]];
      int g = d.cuffs[sid].e[0].pant;
      std::vector<Move> mv{{'S', g, +1}};
      return {mv, apply_move(d, mv[0]), sid, g};
    }
    case CurveKind::type3: {
      auto sids = self_cuffs(d);
      int h = curve.idx.empty() ? -1 : curve.idx[0];
      if (h < 0 || h + 1 >= static_cast<int>(sids.size()))
        fail(Err::illegal_literal, "chain curve wants adjacent handles");
      int sa = sids[h], sb = sids[h + 1];
      int ga = d.cuffs[sa].e[0].pant;
      int gb = d.cuffs[sb].e[0].pant;
      if (gadget_parent(d, ga) == gb && gadget_parent(d, gb) == ga) {
        // two handles joined directly by one cuff
        RouteResult r;
        r.d = d;
        int join = d.upcuff_of(ga);
        for (Move mv : {Move{'F', join, +1}, Move{'F', sa, +1}, Move{'S', gb, +1}}) {
          r.d = apply_move(r.d, mv);
          r.moves.push_back(mv);
        }
        r.cuff = sb;
        r.pant = gb;
        return r;
      }
      Grouping g = group_handle_pair(d, sa, sb, cap);
      RouteResult r;
      r.moves = g.moves;
      r.d = g.d;
      int gh = r.d.cuffs[sa].e[0].pant;
      int gh1 = r.d.cuffs[sb].e[0].pant;
      int tc = r.d.upcuff_of(gh1);
      for (Move mv : {Move{'S', gh, +1}, Move{'F', r.d.upcuff_of(gh), +1},
                      Move{'S', gh1, +1}, Move{'F', r.d.upcuff_of(gh1), +1}}) {
        r.d = apply_move(r.d, mv);
        r.moves.push_back(mv);
      }
      r.cuff = tc;
      r.pant = gh1;
      return r;
    }
    case CurveKind::braid: {
      int i = curve.idx.empty() ? -1 : curve.idx[0];
      if (i < 0 || i + 1 >= d.nboundary())
        fail(Err::illegal_literal, "braid wants adjacent punctures");
      Grouping g = group_two_boundaries(d, i, i + 1, cap);
      RouteResult r;
      r.moves = g.moves;
      r.d = g.d;
      r.pant = g.d.boundary_end(i).pant;
      const Pant& p = g.d.pants[r.pant];
      r.cuff = -1;
      for (int l = 0; l < 3; ++l)
        if (p.leg[l].kind == 'c') r.cuff = p.leg[l].id;
      return r;
    }
    case CurveKind::arc: {
      auto arc = arc_leaves(d, curve);
      auto order = canon_leaves(d);
      if (!arc_complement_ok(order, curve.idx[0], curve.idx[1]))
        fail(Err::illegal_literal, "arc curve is boundary-parallel");
      Grouping g;
      try {
        g = group_arc(d, arc, cap);
      } catch (const Error& e) {
        if (e.code() != Err::routing) throw;
        auto alt = bfs_group_arc(d, arc, cap);
        if (!alt) throw;
        g = *alt;
      }
      return {g.moves, g.d, g.cuff, g.d.cuffs[g.cuff].e[0].pant};
    }
    case CurveKind::eps:
    case CurveKind::annulus:
    case CurveKind::normal:
      fail(Err::internal, "expand composite curves before routing");
  }
  fail(Err::internal, "unhandled curve kind");
}

std::vector<Crossing> reduce_crossings(std::vector<Crossing> xs) {
  bool changed = true;
  while (changed && xs.size() >= 2) {
    changed = false;
    int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i) {
      int j = (i + 1) % n;
      if (xs[i] == xs[j]) {
        if (j > i) {
          xs.erase(xs.begin() + i, xs.begin() + i + 2);
        } else {
          xs.pop_back();
          xs.erase(xs.begin());
        }
        changed = true;
        break;
      }
    }
  }
  return xs;
}

namespace {

// ribbon boundary of the subtree spanned by an arc of leaves, as a cyclic
// crossing word: splitting cuffs twice, plus the seams incident to each
// wrapped leg
std::vector<Crossing> arc_tour(const PantsDecomposition& d,
                               const std::vector<LeafTok>& arc) {
  std::set<LeafTok> a(arc.begin(), arc.end());
  std::vector<Crossing> seq;
  std::function<void(int, int)> visit = [&](int p, int in_leg) {
    for (int t = 0; t < 3; ++t) {
      int l = (in_leg < 0) ? t : (in_leg + 1 + t) % 3;
      if (t == 2 && in_leg >= 0) break;
      const LegRef& r = d.pants[p].leg[l];
      auto sub = subtree_leaves(d, p, l);
      bool inside = true, meets = false;
      for (const auto& tok : sub) {
        if (a.count(tok)) meets = true;
        else inside = false;
      }
      if (inside) {
        seq.push_back({'s', p, (l + 2) % 3});
        seq.push_back({'s', p, l});
      } else if (meets) {
        if (r.kind != 'c' || d.is_self_cuff(r.id))
          fail(Err::internal, "arc tour crossed a malformed leg");
        const Cuff& c = d.cuffs[r.id];
        End far = (c.e[0] == End{p, l}) ? c.e[1] : c.e[0];
        seq.push_back({'c', r.id, -1});
        visit(far.pant, far.leg);
        seq.push_back({'c', r.id, -1});
      }
    }
  };
  End root = holder_of(d, arc.front());
  visit(root.pant, -1);
  return reduce_crossings(seq);
}

}  // namespace

std::vector<Crossing> canonical_crossings(const PantsDecomposition& d,
                                          const Curve& curve) {
  switch (curve.kind) {
    case CurveKind::type1: {
      End e0 = d.cuffs.at(curve.idx[0]).e[0];
      return {{'s', e0.pant, (e0.leg + 2) % 3}, {'s', e0.pant, e0.leg}};
    }
    case CurveKind::type2: {
      auto sids = self_cuffs(d);
      int sid = sids.at(curve.idx[0]);
      int g = d.cuffs[sid].e[0].pant;
      return {{'c', sid, -1}, {'s', g, 1}};
    }
    case CurveKind::type3: {
      auto sids = self_cuffs(d);
      int h = curve.idx[0];
      int sa = sids.at(h), sb = sids.at(h + 1);
      int ga = d.cuffs[sa].e[0].pant;
      int gb = d.cuffs[sb].e[0].pant;
      int ua = d.upcuff_of(ga), ub = d.upcuff_of(gb);
      std::vector<Crossing> seq;
      if (ua == ub) {
        // one cuff joins the two gadgets: single transit each way
        seq = {{'c', ua, -1}, {'s', ga, 0}, {'c', sa, -1}, {'s', ga, 2},
               {'c', ua, -1}, {'s', gb, 0}, {'c', sb, -1}, {'s', gb, 2}};
        return seq;
      }
      auto path = pant_path(d, gadget_parent(d, ga), gadget_parent(d, gb));
      seq = {{'c', ua, -1}, {'s', ga, 0}, {'c', sa, -1}, {'s', ga, 2}, {'c', ua, -1}};
      for (int c : path) seq.push_back({'c', c, -1});
      seq.push_back({'c', ub, -1});
      seq.push_back({'s', gb, 0});
      seq.push_back({'c', sb, -1});
      seq.push_back({'s', gb, 2});
      seq.push_back({'c', ub, -1});
      for (auto it = path.rbegin(); it != path.rend(); ++it)
        seq.push_back({'c', *it, -1});
      return seq;
    }
    case CurveKind::braid: {
      auto order = canon_leaves(d);
      int pi = pos_of(order, {'b', curve.idx[0]});
      return arc_tour(d, arc_leaves(d, make_arc(pi, 2)));
    }
    case CurveKind::arc:
      return arc_tour(d, arc_leaves(d, curve));
    case CurveKind::normal:
      return reduce_crossings(curve.crossings);
    case CurveKind::eps:
    case CurveKind::annulus:
      break;
  }
  fail(Err::internal, "no single crossing word for a composite curve");
}

int curve_length(const PantsDecomposition& d, const Curve& curve) {
  if (curve.kind == CurveKind::eps || curve.kind == CurveKind::annulus) {
    int total = 0;
    for (const auto& part : expand_curve(d, curve))
      total += static_cast<int>(canonical_crossings(d, part.curve).size());
    return total;
  }
  return static_cast<int>(canonical_crossings(d, curve).size());
}

namespace {

bool cyclic_match(const std::vector<Crossing>& x, const std::vector<Crossing>& y) {
  int n = static_cast<int>(x.size());
  if (n != static_cast<int>(y.size())) return false;
  if (n == 0) return true;
  for (int rev = 0; rev < 2; ++rev) {
    std::vector<Crossing> yy = y;
    if (rev) std::reverse(yy.begin(), yy.end());
    for (int r = 0; r < n; ++r) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = (x[i] == yy[(i + r) % n]);
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

Curve recognize_normal(const PantsDecomposition& d, const Curve& normal) {
  auto want = reduce_crossings(normal.crossings);
  for (const auto& x : want) {
    if (x.kind == 'c' && (x.a < 0 || x.a >= d.ncuffs()))
      fail(Err::routing, "curve not realizable: unknown cuff crossing");
    if (x.kind == 's' && (x.a < 0 || x.a >= d.npants() || x.b < 0 || x.b > 2))
      fail(Err::routing, "curve not realizable: unknown seam crossing");
  }
  if (want.empty())
    fail(Err::routing, "curve not realizable: crossings cancel away");
  std::vector<Curve> targets;
  for (int j = 0; j < d.ncuffs(); ++j)
    targets.push_back({CurveKind::type1, {j}, {}});
  auto sids = self_cuffs(d);
  int nh = static_cast<int>(sids.size());
  for (int h = 0; h < nh; ++h) targets.push_back({CurveKind::type2, {h}, {}});
  for (int h = 0; h + 1 < nh; ++h) targets.push_back({CurveKind::type3, {h}, {}});
  auto order = canon_leaves(d);
  int n = static_cast<int>(order.size());
  for (int count = 2; count < n; ++count)
    for (int start = 0; start < n; ++start)
      if (arc_complement_ok(order, start, count))
        targets.push_back(make_arc(start, count));
  for (const auto& t : targets)
    if (cyclic_match(want, canonical_crossings(d, t))) return t;
  fail(Err::routing, "curve not realizable on this decomposition");
}

Curve resolve_braid_curve(const PantsDecomposition& d, const Curve& curve) {
  Curve cv = curve;
  if (cv.kind == CurveKind::normal) cv = recognize_normal(d, cv);
  if (cv.kind == CurveKind::arc) {
    auto order = canon_leaves(d);
    int n = static_cast<int>(order.size());
    LeafTok u = order[cv.idx[0] % n], v = order[(cv.idx[0] + 1) % n];
    if (cv.idx[1] != 2 || u.kind != 'b' || v.kind != 'b' ||
        std::abs(u.id - v.id) != 1)
      fail(Err::illegal_literal, "braid curve must enclose two adjacent punctures");
    cv = Curve{CurveKind::braid, {std::min(u.id, v.id)}, {}};
  }
  if (cv.kind != CurveKind::braid)
    fail(Err::illegal_literal, "braid literal wants a curve around two punctures");
  return cv;
}

Curve parse_curve_spec(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == sep) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(cur);
    return out;
  };
  auto to_int = [](const std::string& s) {
    try {
      size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) fail(Err::parse, "bad integer in curve spec: " + s);
      return v;
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail(Err::parse, "bad integer in curve spec: " + s);
    }
  };
  auto parts = split(spec, ':');
  if (parts.size() >= 2 && parts[0] == "catalog") {
    const std::string& kind = parts[1];
    std::vector<int> idx;
    for (size_t i = 2; i < parts.size(); ++i) idx.push_back(to_int(parts[i]));
    auto want = [&](size_t k, CurveKind ck) {
      if (idx.size() != k) fail(Err::parse, "curve spec " + kind + " wants " +
                                            std::to_string(k) + " indices");
      return Curve{ck, idx, {}};
    };
    if (kind == "type1") return want(1, CurveKind::type1);
    if (kind == "type2") return want(1, CurveKind::type2);
    if (kind == "type3") return want(1, CurveKind::type3);
    if (kind == "braid") return want(1, CurveKind::braid);
    if (kind == "eps") return want(2, CurveKind::eps);
    if (kind == "annulus" || kind == "A") return want(1, CurveKind::annulus);
    if (kind == "arc") return want(2, CurveKind::arc);
    fail(Err::parse, "unknown catalog kind: " + kind);
  }
  if (parts.size() == 2 && parts[0] == "normal") {
    Curve c{CurveKind::normal, {}, {}};
    for (const auto& tok : split(parts[1], ',')) {
      if (tok.empty()) fail(Err::parse, "empty crossing token");
      if (tok[0] == 'c') {
        c.crossings.push_back({'c', to_int(tok.substr(1)), -1});
      } else if (tok[0] == 's') {
        auto dot = tok.find('.');
        if (dot == std::string::npos)
          fail(Err::parse, "seam token wants pant.index: " + tok);
        c.crossings.push_back(
            {'s', to_int(tok.substr(1, dot - 1)), to_int(tok.substr(dot + 1))});
      } else {
        fail(Err::parse, "unknown crossing token: " + tok);
      }
    }
    if (c.crossings.empty()) fail(Err::parse, "normal curve needs crossings");
    return c;
  }
  fail(Err::parse, "curve spec must be catalog:... or normal:...");
}

std::string format_curve_spec(const Curve& c) {
  std::ostringstream os;
  if (c.kind == CurveKind::normal) {
    os << "normal:";
    for (size_t i = 0; i < c.crossings.size(); ++i) {
      if (i) os << ",";
      const Crossing& x = c.crossings[i];
      if (x.kind == 'c') os << "c" << x.a;
      else os << "s" << x.a << "." << x.b;
    }
    return os.str();
  }
  os << "catalog:";
  switch (c.kind) {
    case CurveKind::type1: os << "type1"; break;
    case CurveKind::type2: os << "type2"; break;
    case CurveKind::type3: os << "type3"; break;
    case CurveKind::braid: os << "braid"; break;
    case CurveKind::eps: os << "eps"; break;
    case CurveKind::annulus: os << "annulus"; break;
    case CurveKind::arc: os << "arc"; break;
    case CurveKind::normal: break;
  }
  for (int v : c.idx) os << ":" << v;
  return os.str();
}

MappingClassWord parse_word(const std::string& text) {
  MappingClassWord w;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string op, spec, exptok;
    if (!(ls >> op)) continue;
    if (!(ls >> spec >> exptok))
      fail(Err::parse, "word line " + std::to_string(lineno) +
                           ": want <twist|braid> <curve> <+1|-1>");
    std::string extra;
    if (ls >> extra)
      fail(Err::parse, "word line " + std::to_string(lineno) + ": trailing tokens");
    WordLiteral lit;
    if (op == "twist") lit.op = 't';
    else if (op == "braid") lit.op = 'b';
    else fail(Err::parse, "word line " + std::to_string(lineno) + ": unknown op " + op);
    lit.curve = parse_curve_spec(spec);
    if (exptok == "1" || exptok == "+1") lit.exp = 1;
    else if (exptok == "-1") lit.exp = -1;
    else fail(Err::parse, "word line " + std::to_string(lineno) + ": exponent must be +1 or -1");
    w.literals.push_back(lit);
  }
  return w;
}

std::string format_word(const MappingClassWord& w) {
  std::ostringstream os;
  for (const auto& lit : w.literals) {
    os << (lit.op == 't' ? "twist" : "braid") << " " << format_curve_spec(lit.curve)
       << " " << (lit.exp > 0 ? "+1" : "-1") << "\n";
  }
  return os.str();
}

}  // namespace tmf
