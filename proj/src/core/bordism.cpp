#include "core/bordism.hpp"

#include <map>
#include <sstream>

namespace tmf {

namespace {

// replace cuff j by two vacuum boundary legs; the result may be disconnected,
// so only structural consistency is kept, not the full validate()
PantsDecomposition handle_target(const Theory& th, const PantsDecomposition& d,
                                 int j) {
  PantsDecomposition out = d;
  End e0 = d.cuffs[j].e[0], e1 = d.cuffs[j].e[1];
  int nb = d.nboundary();
  out.boundary_labels.push_back(th.vacuum);
  out.boundary_labels.push_back(th.vacuum);
  out.pants[e0.pant].leg[e0.leg] = LegRef{'b', nb};
  out.pants[e1.pant].leg[e1.leg] = LegRef{'b', nb + 1};
  out.cuffs.erase(out.cuffs.begin() + j);
  for (auto& p : out.pants)
    for (auto& leg : p.leg)
      if (leg.kind == 'c' && leg.id > j) --leg.id;
  return out;
}

}  // namespace

HandleMap two_handle_map(const Theory& th, const PantsDecomposition& d, int cuff) {
  if (cuff < 0 || cuff >= d.ncuffs())
    fail(Err::usage, "handle cuff out of range");
  HandleMap h;
  h.source = d;
  h.cuff = cuff;
  h.kase = d.is_self_cuff(cuff) ? 1 : 2;
  h.target = handle_target(th, d, cuff);
  h.src_basis = enumerate_basis(th, d);
  h.tgt_basis = enumerate_basis(th, h.target);
  std::map<Labeling, int> tgt_of;
  for (int i = 0; i < static_cast<int>(h.tgt_basis.size()); ++i)
    tgt_of[h.tgt_basis[i]] = i;
  h.m = Mat(h.tgt_basis.size(), h.src_basis.size());
  for (int s = 0; s < static_cast<int>(h.src_basis.size()); ++s) {
    const Labeling& L = h.src_basis[s];
    if (L[cuff] != th.vacuum) continue;
    Labeling t;
    for (int i = 0; i < static_cast<int>(L.size()); ++i)
      if (i != cuff) t.push_back(L[i]);
    auto it = tgt_of.find(t);
    if (it == tgt_of.end()) fail(Err::internal, "capped labeling not in target basis");
    h.m.at(it->second, s) = 1.0;
  }
  return h;
}

PartialCircuit compile_bordism(const Theory& th, const PantsDecomposition& d0,
                               const BordismWord& w) {
  d0.validate();
  for (int a : d0.boundary_labels)
    if (a < 0 || a >= th.nlabels()) fail(Err::consistency, "boundary label out of range");
  PartialCircuit pc;
  pc.source = d0;
  pc.circuit.k = d0.npants();
  pc.circuit.p = th.p();
  PantsDecomposition cur = d0;
  for (const Move& mv : w.moves) {
    if (mv.kind == 'H') {
      int j = mv.arg;
      if (j < 0 || j >= cur.ncuffs()) fail(Err::usage, "handle cuff out of range");
      End e0 = cur.cuffs[j].e[0];
      Gate g;
      g.kind = 'x';
      g.arity = 1;
      g.t[0] = e0.pant;
      g.anc = static_cast<int>(pc.handles.size());
      g.bits.assign(th.p(), 0);
      for (int s = 0; s < th.p(); ++s)
        g.bits[s] = th.sectors[s][e0.leg] != th.vacuum ? 1 : 0;
      std::ostringstream tag;
      tag << "handle cuff " << j;
      g.tag = tag.str();
      pc.circuit.gates.push_back(std::move(g));
      pc.handles.push_back(j);
      cur = handle_target(th, cur, j);
    } else {
      pc.circuit.gates.push_back(move_gate(th, cur, mv));
      cur = apply_move(cur, mv);
    }
  }
  pc.circuit.nancilla = static_cast<int>(pc.handles.size());
  pc.target = cur;
  pc.constant_c = w.moves.empty()
                      ? 0.0
                      : static_cast<double>(pc.circuit.gates.size()) /
                            static_cast<double>(w.moves.size());
  return pc;
}

Mat reference_bordism(const Theory& th, const PantsDecomposition& d0,
                      const BordismWord& w, std::size_t max_dim) {
  auto basis = enumerate_basis(th, d0);
  if (basis.size() > max_dim) fail(Err::cap_exceeded, "dim V exceeds cap");
  Mat u = Mat::eye(basis.size());
  PantsDecomposition cur = d0;
  for (const Move& mv : w.moves) {
    if (mv.kind == 'H') {
      HandleMap h = two_handle_map(th, cur, mv.arg);
      u = matmul(h.m, u);
      cur = h.target;
    } else {
      SmallMove sm = small_apply(th, cur, mv);
      u = matmul(sm.m, u);
      cur = sm.d;
    }
  }
  return u;
}

std::pair<StateVector, double> continue_projection(const PartialCircuit& pc,
                                                   const StateVector& out) {
  std::size_t h = static_cast<std::size_t>(pc.circuit.nancilla);
  std::size_t dim = state_dim(pc.circuit);
  if (out.size() != dim) fail(Err::dimension, "state length mismatch");
  std::size_t qdim = dim >> h;
  StateVector cond(qdim);
  double prob = 0.0;
  for (std::size_t m = 0; m < qdim; ++m) {
    cond[m] = out[m << h];
    prob += std::norm(cond[m]);
  }
  return {std::move(cond), prob};
}

std::vector<double> measure_cuff(const Theory& th, const PantsDecomposition& d,
                                 int cuff, const StateVector& state,
                                 double tolerance) {
  if (cuff < 0 || cuff >= d.ncuffs()) fail(Err::usage, "cuff out of range");
  Embedding e = embed(th, d);
  std::size_t want = 1;
  for (int i = 0; i < e.k; ++i) want *= static_cast<std::size_t>(e.p);
  if (state.size() != want) fail(Err::dimension, "state length mismatch");
  std::vector<double> prob(th.nlabels(), 0.0);
  double on_image = 0.0;
  for (std::size_t m = 0; m < e.basis.size(); ++m) {
    double w = std::norm(state[e.index[m]]);
    prob[e.basis[m][cuff]] += w;
    on_image += w;
  }
  double total = 0.0;
  for (const cplx& a : state) total += std::norm(a);
  if (total - on_image > tolerance)
    fail(Err::consistency, "state leaks off the embedded image");
  return prob;
}

BordismWord parse_bordism(const std::string& text) {
  BordismWord w;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    auto want_int = [&](const char* what) {
      long long v;
      if (!(ls >> v))
        fail(Err::parse, "bordism line " + std::to_string(lineno) + ": want " + what);
      return static_cast<int>(v);
    };
    Move mv{};
    if (op == "F") {
      mv = {'F', want_int("cuff id"), +1};
    } else if (op == "S") {
      mv = {'S', want_int("pant id"), +1};
    } else if (op == "M") {
      int pid = want_int("pant id");
      int t = want_int("twist power");
      mv = {'M', pid, t};
    } else if (op == "handle") {
      mv = {'H', want_int("cuff id"), 0};
    } else {
      fail(Err::parse, "bordism line " + std::to_string(lineno) + ": unknown move " + op);
    }
    std::string extra;
    if (ls >> extra)
      fail(Err::parse, "bordism line " + std::to_string(lineno) + ": trailing tokens");
    w.moves.push_back(mv);
  }
  return w;
}

std::string format_bordism(const BordismWord& w) {
  std::ostringstream os;
  for (const Move& mv : w.moves) {
    switch (mv.kind) {
      case 'F': os << "F " << mv.arg << "\n"; break;
      case 'S': os << "S " << mv.arg << "\n"; break;
      case 'M': os << "M " << mv.arg << " " << mv.dir << "\n"; break;
      case 'H': os << "handle " << mv.arg << "\n"; break;
      default: fail(Err::internal, "unknown move kind");
    }
  }
  return os.str();
}

}  // namespace tmf
