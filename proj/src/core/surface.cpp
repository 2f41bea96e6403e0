#include "core/surface.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tmf {

int PantsDecomposition::self_cuff_of(int p) const {
  for (int l = 0; l < 3; ++l) {
    const LegRef& r = pants[p].leg[l];
    if (r.kind == 'c' && is_self_cuff(r.id)) return r.id;
  }
  return -1;
}

int PantsDecomposition::upcuff_of(int p) const {
  for (int l = 0; l < 3; ++l) {
    const LegRef& r = pants[p].leg[l];
    if (r.kind == 'c' && !is_self_cuff(r.id)) return r.id;
  }
  return -1;
}

End PantsDecomposition::boundary_end(int bid) const {
  for (int p = 0; p < npants(); ++p)
    for (int l = 0; l < 3; ++l)
      if (pants[p].leg[l] == LegRef{'b', bid}) return End{p, l};
  fail(Err::internal, "boundary component " + std::to_string(bid) + " not found");
}

void PantsDecomposition::validate() const {
  const int k = npants(), b = nboundary(), m = ncuffs();
  if (k < 1) fail(Err::consistency, "decomposition has no pants");
  std::vector<int> bseen(b, 0), cseen(m, 0);
  for (int p = 0; p < k; ++p)
    for (int l = 0; l < 3; ++l) {
      const LegRef& r = pants[p].leg[l];
      if (r.kind == 'b') {
        if (r.id < 0 || r.id >= b)
          fail(Err::consistency, "boundary reference out of range on pant " + std::to_string(p));
        ++bseen[r.id];
      } else if (r.kind == 'c') {
        if (r.id < 0 || r.id >= m)
          fail(Err::consistency, "cuff reference out of range on pant " + std::to_string(p));
        ++cseen[r.id];
      } else {
        fail(Err::consistency, "unassigned leg on pant " + std::to_string(p));
      }
    }
  for (int i = 0; i < b; ++i)
    if (bseen[i] != 1)
      fail(Err::consistency, "boundary " + std::to_string(i) + " must appear on exactly one leg");
  for (int j = 0; j < m; ++j)
    if (cseen[j] != 2)
      fail(Err::consistency, "cuff " + std::to_string(j) + " must appear on exactly two legs");
  for (int j = 0; j < m; ++j) {
    const Cuff& c = cuffs[j];
    for (int e = 0; e < 2; ++e) {
      const End& x = c.e[e];
      if (x.pant < 0 || x.pant >= k || x.leg < 0 || x.leg > 2)
        fail(Err::consistency, "cuff " + std::to_string(j) + " end out of range");
      if (!(pants[x.pant].leg[x.leg] == LegRef{'c', j}))
        fail(Err::consistency, "cuff " + std::to_string(j) + " ends disagree with pant legs");
    }
    if (c.e[0] == c.e[1]) fail(Err::consistency, "cuff " + std::to_string(j) + " repeats one end");
  }
  if ((k + b) % 2 != 0) fail(Err::consistency, "pant and boundary counts have wrong parity");
  if (k + 2 - b < 0) fail(Err::consistency, "negative genus");
  std::vector<char> reach(k, 0);
  std::deque<int> dq{0};
  reach[0] = 1;
  while (!dq.empty()) {
    int p = dq.front();
    dq.pop_front();
    for (int l = 0; l < 3; ++l) {
      const LegRef& r = pants[p].leg[l];
      if (r.kind != 'c') continue;
      const Cuff& c = cuffs[r.id];
      int q = (c.e[0].pant == p) ? c.e[1].pant : c.e[0].pant;
      if (c.e[0].pant == p && c.e[1].pant == p) continue;
      if (!reach[q]) {
        reach[q] = 1;
        dq.push_back(q);
      }
    }
  }
  for (int p = 0; p < k; ++p)
    if (!reach[p]) fail(Err::consistency, "decomposition graph is disconnected");
}

Move inverse_move(const Move& mv) {
  Move r = mv;
  r.dir = -mv.dir;
  return r;
}

PantsDecomposition apply_move(const PantsDecomposition& d, const Move& mv) {
  PantsDecomposition out = d;
  if (mv.kind == 'M') {
    if (mv.arg < 0 || mv.arg >= d.npants())
      fail(Err::illegal_literal, "M move: pant out of range");
    out.pants[mv.arg].seam += mv.dir;
    return out;
  }
  if (mv.kind == 'S') {
    if (mv.arg < 0 || mv.arg >= d.npants())
      fail(Err::illegal_literal, "S move: pant out of range");
    if (d.self_cuff_of(mv.arg) < 0)
      fail(Err::illegal_literal, "S move needs a self-glued pant");
    if (mv.dir != 1 && mv.dir != -1) fail(Err::illegal_literal, "S move direction must be +1 or -1");
    return out;
  }
  if (mv.kind != 'F') fail(Err::illegal_literal, "unknown move kind");
  if (mv.arg < 0 || mv.arg >= d.ncuffs()) fail(Err::illegal_literal, "F move: cuff out of range");
  if (mv.dir != 1 && mv.dir != -1) fail(Err::illegal_literal, "F move direction must be +1 or -1");
  const int cid = mv.arg;
  const End eP = d.cuffs[cid].e[0], eQ = d.cuffs[cid].e[1];
  const int p1 = eP.pant, l1 = eP.leg, p2 = eQ.pant, l2 = eQ.leg;
  if (p1 == p2) fail(Err::illegal_literal, "F move needs a cuff joining distinct pants");
  // quadrant legs around the cuff, read in the rotation gauge
  const LegRef aref = d.pants[p1].leg[(l1 + 1) % 3];
  const LegRef bref = d.pants[p1].leg[(l1 + 2) % 3];
  const LegRef cref = d.pants[p2].leg[(l2 + 1) % 3];
  const LegRef dref = d.pants[p2].leg[(l2 + 2) % 3];
  // Results stay on the slots the site occupied: the acted cuff keeps both
  // ends, so the move composed with its inverse restores the graph exactly.
  auto put = [&out](int p, int l, const LegRef& r) { out.pants[p].leg[l] = r; };
  if (mv.dir == +1) {
    put(p1, (l1 + 1) % 3, bref);
    put(p1, (l1 + 2) % 3, cref);
    put(p2, (l2 + 1) % 3, dref);
    put(p2, (l2 + 2) % 3, aref);
  } else {
    put(p1, (l1 + 1) % 3, dref);
    put(p1, (l1 + 2) % 3, aref);
    put(p2, (l2 + 1) % 3, bref);
    put(p2, (l2 + 2) % 3, cref);
  }
  // Each quadrant slot has one destination; cuff ends follow their slots.
  // Stable even when one cuff occupies two of the four slots.
  std::array<std::pair<End, End>, 4> dest;
  if (mv.dir == +1) {
    dest[0] = {End{p1, (l1 + 1) % 3}, End{p2, (l2 + 2) % 3}};
    dest[1] = {End{p1, (l1 + 2) % 3}, End{p1, (l1 + 1) % 3}};
    dest[2] = {End{p2, (l2 + 1) % 3}, End{p1, (l1 + 2) % 3}};
    dest[3] = {End{p2, (l2 + 2) % 3}, End{p2, (l2 + 1) % 3}};
  } else {
    dest[0] = {End{p1, (l1 + 1) % 3}, End{p1, (l1 + 2) % 3}};
    dest[1] = {End{p1, (l1 + 2) % 3}, End{p2, (l2 + 1) % 3}};
    dest[2] = {End{p2, (l2 + 1) % 3}, End{p2, (l2 + 2) % 3}};
    dest[3] = {End{p2, (l2 + 2) % 3}, End{p1, (l1 + 1) % 3}};
  }
  auto relocate = [&dest](const End& e) {
    for (const auto& [from, to] : dest)
      if (e == from) return to;
    return e;
  };
  for (int j = 0; j < d.ncuffs(); ++j) {
    if (j == cid) continue;
    out.cuffs[j].e[0] = relocate(d.cuffs[j].e[0]);
    out.cuffs[j].e[1] = relocate(d.cuffs[j].e[1]);
  }
  return out;
}

PantsDecomposition standard_decomposition(int genus, const std::vector<int>& blabels) {
  const int b = static_cast<int>(blabels.size());
  const int g = genus;
  if (g < 0) fail(Err::unsupported_surface, "negative genus");
  if (2 - 2 * g - b >= 0)
    fail(Err::unsupported_surface, "surface admits no pants decomposition (chi >= 0)");
  PantsDecomposition d;
  d.boundary_labels = blabels;
  auto new_pant = [&d] {
    d.pants.push_back(Pant{});
    return d.npants() - 1;
  };
  auto new_cuff = [&d](End e0, End e1) {
    d.cuffs.push_back(Cuff{{e0, e1}});
    return d.ncuffs() - 1;
  };
  const int n = b + g;
  std::vector<LeafTok> leaves;
  for (int i = 0; i < b; ++i) leaves.push_back({'b', i});
  for (int j = 0; j < g; ++j) leaves.push_back({'h', j});
  auto attach = [&](const LeafTok& leaf, int p, int l) {
    if (leaf.kind == 'b') {
      d.pants[p].leg[l] = {'b', leaf.id};
      return;
    }
    int gp = new_pant();
    int cid = new_cuff(End{p, l}, End{gp, 0});
    d.pants[p].leg[l] = {'c', cid};
    d.pants[gp].leg[0] = {'c', cid};
    int sid = new_cuff(End{gp, 1}, End{gp, 2});
    d.pants[gp].leg[1] = {'c', sid};
    d.pants[gp].leg[2] = {'c', sid};
  };
  std::function<void(int, int, int, int)> build = [&](int lo, int hi, int p, int l) {
    int m = hi - lo;
    if (m == 1) {
      attach(leaves[lo], p, l);
      return;
    }
    int q = new_pant();
    int cid = new_cuff(End{p, l}, End{q, 0});
    d.pants[p].leg[l] = {'c', cid};
    d.pants[q].leg[0] = {'c', cid};
    int mid = lo + (m + 1) / 2;
    build(lo, mid, q, 1);
    build(mid, hi, q, 2);
  };
  if (n == 2) {
    if (g == 2) {
      int p0 = new_pant(), p1 = new_pant();
      int c0 = new_cuff(End{0, 0}, End{1, 0});
      d.pants[p0].leg[0] = {'c', c0};
      d.pants[p1].leg[0] = {'c', c0};
      int s0 = new_cuff(End{0, 1}, End{0, 2});
      d.pants[p0].leg[1] = {'c', s0};
      d.pants[p0].leg[2] = {'c', s0};
      int s1 = new_cuff(End{1, 1}, End{1, 2});
      d.pants[p1].leg[1] = {'c', s1};
      d.pants[p1].leg[2] = {'c', s1};
    } else { // g = 1, b = 1
      int p0 = new_pant();
      d.pants[p0].leg[0] = {'b', 0};
      int s0 = new_cuff(End{0, 1}, End{0, 2});
      d.pants[p0].leg[1] = {'c', s0};
      d.pants[p0].leg[2] = {'c', s0};
    }
  } else {
    // balanced: left group leaves[0:mid] split over root legs 1,2; the rest
    // hangs at root leg 0
    int mid = (n + 1) / 2;
    int root = new_pant();
    int lmid = (mid + 1) / 2;
    build(0, lmid, root, 1);
    build(lmid, mid, root, 2);
    if (n - mid == 1) {
      attach(leaves[mid], root, 0);
    } else {
      int root2 = new_pant();
      int cid = new_cuff(End{root, 0}, End{root2, 0});
      d.pants[root].leg[0] = {'c', cid};
      d.pants[root2].leg[0] = {'c', cid};
      int rmid = mid + (n - mid + 1) / 2;
      build(mid, rmid, root2, 1);
      build(rmid, n, root2, 2);
    }
  }
  d.validate();
  return d;
}

PantsDecomposition caterpillar_decomposition(const std::vector<int>& blabels) {
  const int q = static_cast<int>(blabels.size());
  if (q < 3) fail(Err::unsupported_surface, "sphere needs at least 3 punctures");
  PantsDecomposition d;
  d.boundary_labels = blabels;
  if (q == 3) {
    d.pants.push_back(Pant{{LegRef{'b', 0}, LegRef{'b', 1}, LegRef{'b', 2}}, 0});
    d.validate();
    return d;
  }
  auto new_pant = [&d] {
    d.pants.push_back(Pant{});
    return d.npants() - 1;
  };
  auto join = [&d](int pa, int la, int pb, int lb) {
    d.cuffs.push_back(Cuff{{End{pa, la}, End{pb, lb}}});
    int cid = d.ncuffs() - 1;
    d.pants[pa].leg[la] = {'c', cid};
    d.pants[pb].leg[lb] = {'c', cid};
  };
  auto pair_pant = [&](int i) {
    int p = new_pant();
    d.pants[p].leg[1] = {'b', i};
    d.pants[p].leg[2] = {'b', i + 1};
    return p;
  };
  const bool lone = (q % 2 == 1);
  const int objs = q / 2 + (lone ? 1 : 0);
  if (objs == 2) {
    int a0 = pair_pant(0), a1 = pair_pant(2);
    join(a0, 0, a1, 0);
  } else {
    std::vector<int> spine;
    for (int i = 0; i < objs - 2; ++i) spine.push_back(new_pant());
    int a0 = pair_pant(0);
    join(spine[0], 0, a0, 0);
    for (int j = 0; j < objs - 3; ++j) {
      int aj = pair_pant(2 * (j + 1));
      join(spine[j], 1, aj, 0);
      join(spine[j], 2, spine[j + 1], 0);
    }
    int last = spine.back();
    int aj = pair_pant(2 * (objs - 2));
    join(last, 1, aj, 0);
    if (lone) {
      d.pants[last].leg[2] = {'b', q - 1};
    } else {
      int ak = pair_pant(2 * (objs - 1));
      join(last, 2, ak, 0);
    }
  }
  d.validate();
  return d;
}

std::vector<LeafTok> all_leaves(const PantsDecomposition& d) {
  std::vector<LeafTok> out;
  for (int i = 0; i < d.nboundary(); ++i) out.push_back({'b', i});
  for (int j = 0; j < d.ncuffs(); ++j)
    if (d.is_self_cuff(j)) out.push_back({'h', j});
  return out;
}

std::vector<LeafTok> walk_leaves(const PantsDecomposition& d) {
  int p0 = -1;
  for (int p = 0; p < d.npants(); ++p)
    if (d.self_cuff_of(p) < 0) {
      p0 = p;
      break;
    }
  if (p0 < 0) return all_leaves(d); // every pant is a gadget
  const End start{p0, 0};
  End state = start;
  std::vector<LeafTok> order;
  bool first = true;
  int guard = 0;
  while (first || !(state == start)) {
    first = false;
    if (++guard > 3 * d.npants() + 8) fail(Err::internal, "boundary walk diverged");
    const int l2 = (state.leg + 1) % 3;
    const LegRef& ref = d.pants[state.pant].leg[l2];
    if (ref.kind == 'b') {
      order.push_back({'b', ref.id});
      state = End{state.pant, l2};
      continue;
    }
    const Cuff& c = d.cuffs[ref.id];
    const End here{state.pant, l2};
    const End other = (c.e[0] == here) ? c.e[1] : c.e[0];
    const int sc = d.self_cuff_of(other.pant);
    if (sc >= 0) {
      order.push_back({'h', sc});
      state = here;
    } else {
      state = other;
    }
  }
  return order;
}

namespace {

std::set<LeafTok> flood_side(const PantsDecomposition& d, int cid, int start) {
  std::set<int> seen{start};
  std::deque<int> dq{start};
  std::set<LeafTok> leaves;
  while (!dq.empty()) {
    int p = dq.front();
    dq.pop_front();
    for (int l = 0; l < 3; ++l) {
      const LegRef& r = d.pants[p].leg[l];
      if (r.kind == 'b') {
        leaves.insert({'b', r.id});
        continue;
      }
      if (r.id == cid) continue;
      const Cuff& c = d.cuffs[r.id];
      if (c.e[0].pant == c.e[1].pant) {
        leaves.insert({'h', r.id});
        continue;
      }
      int q = (c.e[0].pant == p) ? c.e[1].pant : c.e[0].pant;
      if (!seen.count(q)) {
        seen.insert(q);
        dq.push_back(q);
      }
    }
  }
  return leaves;
}

std::vector<LeafTok> to_sorted(const std::set<LeafTok>& s) { return {s.begin(), s.end()}; }

}  // namespace

std::vector<LeafTok> subtree_leaves(const PantsDecomposition& d, int p, int l) {
  const LegRef& r = d.pants[p].leg[l];
  if (r.kind == 'b') return {{'b', r.id}};
  const Cuff& c = d.cuffs[r.id];
  if (c.e[0].pant == c.e[1].pant) return {{'h', r.id}};
  int other = (c.e[0] == End{p, l}) ? c.e[1].pant : c.e[0].pant;
  return to_sorted(flood_side(d, r.id, other));
}

namespace {

// maximal legs whose subtree leaf set lies inside the arc, ordered by first
// appearance of their leaves along the arc
std::vector<std::pair<End, std::vector<LeafTok>>>
pieces_of(const PantsDecomposition& d, const std::vector<LeafTok>& arc) {
  std::set<LeafTok> a(arc.begin(), arc.end());
  std::vector<std::pair<End, std::vector<LeafTok>>> cand;
  for (int p = 0; p < d.npants(); ++p)
    for (int l = 0; l < 3; ++l) {
      const LegRef& r = d.pants[p].leg[l];
      if (r.kind == 'c' && d.is_self_cuff(r.id)) continue; // handles are seen from outside
      auto s = subtree_leaves(d, p, l);
      if (std::includes(a.begin(), a.end(), s.begin(), s.end())) cand.push_back({End{p, l}, s});
    }
  std::vector<std::pair<End, std::vector<LeafTok>>> maximal;
  for (const auto& ps : cand) {
    bool strict_sub = false;
    for (const auto& qs : cand)
      if (ps.second.size() < qs.second.size() &&
          std::includes(qs.second.begin(), qs.second.end(), ps.second.begin(), ps.second.end())) {
        strict_sub = true;
        break;
      }
    if (!strict_sub) maximal.push_back(ps);
  }
  std::map<LeafTok, int> pos;
  for (int i = 0; i < static_cast<int>(arc.size()); ++i) pos[arc[i]] = i;
  std::stable_sort(maximal.begin(), maximal.end(), [&pos](const auto& x, const auto& y) {
    auto minpos = [&pos](const std::vector<LeafTok>& s) {
      int mn = 1 << 30;
      for (const auto& t : s) mn = std::min(mn, pos.at(t));
      return mn;
    };
    return minpos(x.second) < minpos(y.second);
  });
  return maximal;
}

std::string graph_key(const PantsDecomposition& d) {
  std::ostringstream os;
  for (const auto& p : d.pants)
    for (const auto& r : p.leg) os << r.kind << r.id << ',';
  os << '|';
  for (const auto& c : d.cuffs)
    os << c.e[0].pant << '.' << c.e[0].leg << '-' << c.e[1].pant << '.' << c.e[1].leg << ';';
  return os.str();
}

Grouping forced_merge(const PantsDecomposition& d0, const std::vector<LeafTok>& arc,
                      const std::function<std::optional<int>(const PantsDecomposition&)>& stop,
                      int move_cap) {
  Grouping g;
  g.d = d0;
  for (;;) {
    if (auto hit = stop(g.d)) {
      g.cuff = *hit;
      return g;
    }
    if (static_cast<int>(g.moves.size()) >= move_cap)
      fail(Err::routing, "move cap exceeded while grouping");
    auto ps = pieces_of(g.d, arc);
    if (ps.size() < 2) fail(Err::internal, "grouping stalled with one piece");
    auto path = pant_path(g.d, ps[0].first.pant, ps[1].first.pant);
    if (path.empty()) fail(Err::internal, "grouping pieces already adjacent");
    Move mv{'F', path[0], +1};
    g.d = apply_move(g.d, mv);
    g.moves.push_back(mv);
  }
}

} // namespace

std::optional<std::array<std::vector<LeafTok>, 2>>
leaf_sides(const PantsDecomposition& d, int cid) {
  const Cuff& c = d.cuffs[cid];
  if (c.e[0].pant == c.e[1].pant) return std::nullopt;
  return std::array<std::vector<LeafTok>, 2>{to_sorted(flood_side(d, cid, c.e[0].pant)),
                                             to_sorted(flood_side(d, cid, c.e[1].pant))};
}

int find_separating(const PantsDecomposition& d, const std::vector<LeafTok>& arc) {
  std::vector<LeafTok> a = arc;
  std::sort(a.begin(), a.end());
  for (int cid = 0; cid < d.ncuffs(); ++cid) {
    auto sides = leaf_sides(d, cid);
    if (!sides) continue;
    if ((*sides)[0] == a || (*sides)[1] == a) return cid;
  }
  return -1;
}

std::vector<int> pant_path(const PantsDecomposition& d, int pa, int pb) {
  std::map<int, std::pair<int, int>> prev; // pant -> (prev pant, cuff)
  prev[pa] = {-1, -1};
  std::deque<int> dq{pa};
  while (!dq.empty()) {
    int p = dq.front();
    dq.pop_front();
    if (p == pb) break;
    for (int l = 0; l < 3; ++l) {
      const LegRef& r = d.pants[p].leg[l];
      if (r.kind != 'c') continue;
      const Cuff& c = d.cuffs[r.id];
      if (c.e[0].pant == c.e[1].pant) continue;
      int q = (c.e[0].pant == p) ? c.e[1].pant : c.e[0].pant;
      if (!prev.count(q)) {
        prev[q] = {p, r.id};
        dq.push_back(q);
      }
    }
  }
  if (!prev.count(pb)) fail(Err::internal, "pants not connected through non-self cuffs");
  std::vector<int> path;
  for (int p = pb; prev[p].first != -1; p = prev[p].first) path.push_back(prev[p].second);
  std::reverse(path.begin(), path.end());
  return path;
}

End holder_of(const PantsDecomposition& d, const LeafTok& tok) {
  if (tok.kind == 'b') return d.boundary_end(tok.id);
  // a handle is held where its gadget hangs
  const int gp = d.cuffs[tok.id].e[0].pant;
  const int up = d.upcuff_of(gp);
  const Cuff& c = d.cuffs[up];
  return (c.e[0].pant == gp) ? c.e[1] : c.e[0];
}

int gadget_parent(const PantsDecomposition& d, int gadget_pant) {
  const int up = d.upcuff_of(gadget_pant);
  if (up < 0) fail(Err::internal, "pant has no outward cuff");
  const Cuff& c = d.cuffs[up];
  return (c.e[0].pant == gadget_pant) ? c.e[1].pant : c.e[0].pant;
}

Grouping group_arc(const PantsDecomposition& d, const std::vector<LeafTok>& arc, int move_cap) {
  return forced_merge(
      d, arc,
      [&arc](const PantsDecomposition& cur) -> std::optional<int> {
        int cid = find_separating(cur, arc);
        if (cid >= 0) return cid;
        return std::nullopt;
      },
      move_cap);
}

Grouping group_handle_pair(const PantsDecomposition& d, int sid_a, int sid_b, int move_cap) {
  std::vector<LeafTok> arc{{'h', sid_a}, {'h', sid_b}};
  return forced_merge(
      d, arc,
      [sid_a, sid_b](const PantsDecomposition& cur) -> std::optional<int> {
        int ga = cur.cuffs[sid_a].e[0].pant;
        int gb = cur.cuffs[sid_b].e[0].pant;
        if (gadget_parent(cur, ga) == gadget_parent(cur, gb)) return -1;
        return std::nullopt;
      },
      move_cap);
}

Grouping group_two_boundaries(const PantsDecomposition& d, int ba, int bb, int move_cap) {
  std::vector<LeafTok> arc{{'b', ba}, {'b', bb}};
  return forced_merge(
      d, arc,
      [ba, bb](const PantsDecomposition& cur) -> std::optional<int> {
        if (cur.boundary_end(ba).pant == cur.boundary_end(bb).pant) return -1;
        return std::nullopt;
      },
      move_cap);
}

std::optional<Grouping> bfs_group_arc(const PantsDecomposition& d,
                                      const std::vector<LeafTok>& arc, int depth_cap) {
  if (int cid = find_separating(d, arc); cid >= 0) {
    Grouping g;
    g.d = d;
    g.cuff = cid;
    return g;
  }
  std::set<std::string> seen{graph_key(d)};
  std::deque<Grouping> dq;
  dq.push_back(Grouping{{}, d, -1});
  while (!dq.empty()) {
    Grouping cur = std::move(dq.front());
    dq.pop_front();
    if (static_cast<int>(cur.moves.size()) >= depth_cap) continue;
    for (int cid = 0; cid < cur.d.ncuffs(); ++cid) {
      if (cur.d.is_self_cuff(cid)) continue;
      for (int dir : {+1, -1}) {
        Move mv{'F', cid, dir};
        PantsDecomposition nd = apply_move(cur.d, mv);
        std::string key = graph_key(nd);
        if (seen.count(key)) continue;
        seen.insert(key);
        Grouping nxt;
        nxt.moves = cur.moves;
        nxt.moves.push_back(mv);
        nxt.d = std::move(nd);
        if (int sep = find_separating(nxt.d, arc); sep >= 0) {
          nxt.cuff = sep;
          return nxt;
        }
        dq.push_back(std::move(nxt));
      }
    }
  }
  return std::nullopt;
}

std::vector<Move> tree_adjacency_moves(const PantsDecomposition& tree, int leaf1, int leaf2) {
  for (int j = 0; j < tree.ncuffs(); ++j)
    if (tree.is_self_cuff(j)) fail(Err::consistency, "adjacency moves expect a tree");
  return group_two_boundaries(tree, leaf1, leaf2).moves;
}

std::vector<Move> alpha_to_beta_moves(const std::vector<int>& blabels) {
  const int q = static_cast<int>(blabels.size());
  if (q < 4) fail(Err::unsupported_surface, "base change needs at least 4 punctures");
  PantsDecomposition d = caterpillar_decomposition(blabels);
  std::vector<Move> out;
  for (int k = 0; k < q / 2; ++k) {
    const int i = 2 * k + 1, j = (2 * k + 2) % q;
    Grouping g = group_two_boundaries(d, i, j);
    out.insert(out.end(), g.moves.begin(), g.moves.end());
    d = std::move(g.d);
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

int parse_int_tok(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Err::parse, std::string("bad integer for ") + what + ": " + s);
  }
}

LegRef parse_legref(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'b' && s[0] != 'c'))
    fail(Err::parse, "leg reference must be b<i> or c<j>: " + s);
  return {s[0], parse_int_tok(s.substr(1), "leg reference")};
}

} // namespace

SurfaceHeader parse_surface_header(const std::string& text, const Theory& th) {
  SurfaceHeader h;
  bool have_genus = false;
  for (const auto& toks : tokenize_lines(text)) {
    const std::string& kw = toks[0];
    if (kw == "genus") {
      if (toks.size() != 2) fail(Err::parse, "genus line needs one value");
      h.genus = parse_int_tok(toks[1], "genus");
      have_genus = true;
    } else if (kw == "boundary") {
      for (size_t i = 1; i < toks.size(); ++i) {
        int lbl = th.label_of(toks[i]);
        if (lbl < 0) fail(Err::parse, "unknown boundary label: " + toks[i]);
        h.blabels.push_back(lbl);
      }
    } else if (kw == "pant" || kw == "cuff" || kw == "seam") {
      // shape lines do not affect the dimension
    } else {
      fail(Err::parse, "unknown surface keyword: " + kw);
    }
  }
  if (!have_genus) fail(Err::parse, "surface file missing genus line");
  return h;
}

PantsDecomposition parse_surface(const std::string& text, const Theory& th) {
  int genus_val = 0;
  bool have_genus = false;
  std::vector<int> blabels;
  std::vector<std::array<LegRef, 3>> pant_lines;
  std::vector<std::array<int, 5>> cuff_lines;
  std::vector<std::array<int, 2>> seam_lines;
  for (const auto& toks : tokenize_lines(text)) {
    const std::string& kw = toks[0];
    if (kw == "genus") {
      if (toks.size() != 2) fail(Err::parse, "genus line needs one value");
      genus_val = parse_int_tok(toks[1], "genus");
      have_genus = true;
    } else if (kw == "boundary") {
      for (size_t i = 1; i < toks.size(); ++i) {
        int lbl = th.label_of(toks[i]);
        if (lbl < 0) fail(Err::parse, "unknown boundary label: " + toks[i]);
        blabels.push_back(lbl);
      }
    } else if (kw == "pant") {
      if (toks.size() != 4) fail(Err::parse, "pant line needs three leg references");
      pant_lines.push_back({parse_legref(toks[1]), parse_legref(toks[2]), parse_legref(toks[3])});
    } else if (kw == "cuff") {
      if (toks.size() != 6) fail(Err::parse, "cuff line needs id and two ends");
      cuff_lines.push_back({parse_int_tok(toks[1], "cuff id"), parse_int_tok(toks[2], "cuff end"),
                            parse_int_tok(toks[3], "cuff end"), parse_int_tok(toks[4], "cuff end"),
                            parse_int_tok(toks[5], "cuff end")});
    } else if (kw == "seam") {
      if (toks.size() != 3) fail(Err::parse, "seam line needs pant and value");
      seam_lines.push_back({parse_int_tok(toks[1], "seam pant"), parse_int_tok(toks[2], "seam")});
    } else {
      fail(Err::parse, "unknown surface keyword: " + kw);
    }
  }
  if (!have_genus) fail(Err::parse, "surface file missing genus line");
  if (pant_lines.empty()) {
    if (!cuff_lines.empty() || !seam_lines.empty())
      fail(Err::parse, "cuff and seam lines need explicit pant lines");
    return standard_decomposition(genus_val, blabels);
  }
  PantsDecomposition d;
  d.boundary_labels = blabels;
  int ncuffs = 0;
  for (const auto& legs : pant_lines)
    for (const auto& r : legs)
      if (r.kind == 'c') ncuffs = std::max(ncuffs, r.id + 1);
  d.cuffs.assign(ncuffs, Cuff{{End{-1, -1}, End{-1, -1}}});
  for (int p = 0; p < static_cast<int>(pant_lines.size()); ++p) {
    d.pants.push_back(Pant{pant_lines[p], 0});
    for (int l = 0; l < 3; ++l) {
      const LegRef& r = pant_lines[p][l];
      if (r.kind != 'c') continue;
      if (r.id < 0) fail(Err::parse, "negative cuff id");
      Cuff& c = d.cuffs[r.id];
      if (c.e[0].pant < 0)
        c.e[0] = End{p, l};
      else if (c.e[1].pant < 0)
        c.e[1] = End{p, l};
      else
        fail(Err::consistency, "cuff " + std::to_string(r.id) + " used more than twice");
    }
  }
  for (const auto& cl : cuff_lines) {
    const int j = cl[0];
    if (j < 0 || j >= ncuffs) fail(Err::consistency, "cuff line id out of range");
    const End a{cl[1], cl[2]}, b{cl[3], cl[4]};
    const Cuff& cur = d.cuffs[j];
    if (cur.e[0] == a && cur.e[1] == b) {
      // already in this order
    } else if (cur.e[0] == b && cur.e[1] == a) {
      d.cuffs[j] = Cuff{{a, b}};
    } else {
      fail(Err::consistency, "cuff line does not match pant legs");
    }
  }
  for (const auto& sl : seam_lines) {
    if (sl[0] < 0 || sl[0] >= d.npants()) fail(Err::consistency, "seam line pant out of range");
    d.pants[sl[0]].seam = sl[1];
  }
  d.validate();
  if (d.genus() != genus_val) fail(Err::consistency, "genus line disagrees with pant graph");
  return d;
}

std::string format_surface(const PantsDecomposition& d, const Theory& th) {
  std::ostringstream os;
  os << "genus " << d.genus() << "\n";
  if (d.nboundary() > 0) {
    os << "boundary";
    for (int lbl : d.boundary_labels) os << ' ' << th.names[lbl];
    os << "\n";
  }
  for (const auto& p : d.pants) {
    os << "pant";
    for (const auto& r : p.leg) os << ' ' << r.kind << r.id;
    os << "\n";
  }
  for (int j = 0; j < d.ncuffs(); ++j) {
    const Cuff& c = d.cuffs[j];
    os << "cuff " << j << ' ' << c.e[0].pant << ' ' << c.e[0].leg << ' ' << c.e[1].pant << ' '
       << c.e[1].leg << "\n";
  }
  for (int p = 0; p < d.npants(); ++p)
    if (d.pants[p].seam != 0) os << "seam " << p << ' ' << d.pants[p].seam << "\n";
  return os.str();
}

} // namespace tmf
