#include "core/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace tmf {

std::string format_cplx(cplx z) {
  char buf[96];
  double im = z.imag();
  std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", z.real(), im < 0 ? '-' : '+',
                std::fabs(im));
  return buf;
}

namespace {

double parse_real_strict(const std::string& s) {
  if (s.empty()) fail(Err::parse, "empty numeric token");
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end != c + s.size()) fail(Err::parse, "bad numeric token '" + s + "'");
  return v;
}

} // namespace

cplx parse_cplx(const std::string& tok) {
  if (tok.empty()) fail(Err::parse, "empty complex token");
  if (tok.back() != 'i') return {parse_real_strict(tok), 0.0};
  std::string body = tok.substr(0, tok.size() - 1);
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i) {
    char ch = body[i];
    if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
      split = i;
  }
  if (split == std::string::npos) fail(Err::parse, "bad complex token '" + tok + "'");
  double re = parse_real_strict(body.substr(0, split));
  std::string ims = body.substr(split + 1);
  double im = ims.empty() ? 1.0 : parse_real_strict(ims);
  if (body[split] == '-') im = -im;
  return {re, im};
}

int Theory::label_of(const std::string& name) const {
  for (int i = 0; i < nlabels(); ++i)
    if (names[i] == name) return i;
  return -1;
}

namespace {

std::vector<std::string> tok_split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

// index sets of an F block, derived from the fusion rules
std::vector<int> f_rows(const Theory& th, int a, int b, int c, int d) {
  std::vector<int> xs;
  for (int x = 0; x < th.nlabels(); ++x)
    if (th.admissible(x, a, b) && th.admissible(th.dual[x], c, d)) xs.push_back(x);
  return xs;
}
std::vector<int> f_cols(const Theory& th, int a, int b, int c, int d) {
  std::vector<int> ys;
  for (int y = 0; y < th.nlabels(); ++y)
    if (th.admissible(y, b, c) && th.admissible(th.dual[y], d, a)) ys.push_back(y);
  return ys;
}
std::vector<int> s_rows(const Theory& th, int a) {
  std::vector<int> xs;
  for (int x = 0; x < th.nlabels(); ++x)
    if (th.admissible(a, x, th.dual[x])) xs.push_back(x);
  return xs;
}

void build_tables(Theory& th, const std::vector<std::array<int, 3>>& triples) {
  int L = th.nlabels();
  th.adm_table.assign(static_cast<std::size_t>(L) * L * L, 0);
  for (const auto& t : triples) th.adm_table[(t[0] * L + t[1]) * L + t[2]] = 1;
  th.sectors.clear();
  th.sector_of_table.assign(static_cast<std::size_t>(L) * L * L, -1);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        if (th.admissible(a, b, c)) {
          th.sector_of_table[(a * L + b) * L + c] = static_cast<int>(th.sectors.size());
          th.sectors.push_back({a, b, c});
        }
}

} // namespace

Theory parse_theory(const std::string& text) {
  Theory th;
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      auto h = line.find('#');
      if (h != std::string::npos) line = line.substr(0, h);
      // keep blank lines out
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.push_back(line);
    }
  }
  std::size_t i = 0;
  auto expect = [&](const char* kw) {
    if (i >= lines.size() || tok_split(lines[i])[0] != kw)
      fail(Err::parse, std::string("expected '") + kw + "' section");
    ++i;
  };

  expect("labels");
  std::vector<int> dual_ids;
  int vacuum = -1;
  while (i < lines.size()) {
    auto t = tok_split(lines[i]);
    if (t[0] == "fusion") break;
    if (t.size() < 3 || t.size() > 4) fail(Err::parse, "label line needs: id name dual-id [vacuum]");
    int id = std::atoi(t[0].c_str());
    if (id != static_cast<int>(th.names.size()))
      fail(Err::parse, "label ids must be consecutive from 0");
    th.names.push_back(t[1]);
    dual_ids.push_back(std::atoi(t[2].c_str()));
    if (t.size() == 4) {
      if (t[3] != "vacuum") fail(Err::parse, "unknown label flag '" + t[3] + "'");
      if (vacuum >= 0) fail(Err::parse, "two labels flagged vacuum");
      vacuum = id;
    }
    ++i;
  }
  int L = th.nlabels();
  if (L == 0) fail(Err::parse, "no labels");
  if (vacuum < 0) fail(Err::parse, "no label flagged vacuum");
  th.vacuum = vacuum;
  th.dual = dual_ids;
  for (int d : th.dual)
    if (d < 0 || d >= L) fail(Err::parse, "dual id out of range");
  for (const auto& n : th.names)
    if (std::count(th.names.begin(), th.names.end(), n) != 1)
      fail(Err::parse, "duplicate label name '" + n + "'");

  auto label_of = [&](const std::string& n) {
    int v = th.label_of(n);
    if (v < 0) fail(Err::parse, "unknown label '" + n + "'");
    return v;
  };

  expect("fusion");
  std::vector<std::array<int, 3>> triples;
  while (i < lines.size()) {
    auto t = tok_split(lines[i]);
    if (t[0] == "F" || t[0] == "S" || t[0] == "twist" || t[0] == "braid" ||
        t[0] == "tolerance")
      break;
    if (t.size() != 3) fail(Err::parse, "fusion line needs three label names");
    triples.push_back({label_of(t[0]), label_of(t[1]), label_of(t[2])});
    ++i;
  }
  build_tables(th, triples);

  th.twist.assign(L, cplx{});
  std::vector<char> twist_seen(L, 0);

  auto read_rows = [&](std::size_t nrows, std::size_t ncols) {
    std::vector<cplx> m;
    m.reserve(nrows * ncols);
    for (std::size_t r = 0; r < nrows; ++r) {
      if (i >= lines.size()) fail(Err::parse, "truncated matrix block");
      auto t = tok_split(lines[i]);
      if (t.size() != ncols) fail(Err::parse, "matrix row has wrong width");
      for (const auto& s : t) m.push_back(parse_cplx(s));
      ++i;
    }
    return m;
  };

  bool saw_tolerance = false;
  while (i < lines.size()) {
    auto t = tok_split(lines[i]);
    if (t[0] == "F") {
      if (t.size() != 5) fail(Err::parse, "F header needs four labels");
      std::array<int, 4> k = {label_of(t[1]), label_of(t[2]), label_of(t[3]), label_of(t[4])};
      ++i;
      Block b;
      b.xs = f_rows(th, k[0], k[1], k[2], k[3]);
      b.ys = f_cols(th, k[0], k[1], k[2], k[3]);
      b.m = read_rows(b.xs.size(), b.ys.size());
      if (th.F.count(k)) fail(Err::parse, "duplicate F block");
      th.F.emplace(k, std::move(b));
    } else if (t[0] == "S") {
      if (t.size() != 2) fail(Err::parse, "S header needs one label");
      int a = label_of(t[1]);
      ++i;
      Block b;
      b.xs = s_rows(th, a);
      b.ys = b.xs;
      b.m = read_rows(b.xs.size(), b.ys.size());
      if (th.S.count(a)) fail(Err::parse, "duplicate S block");
      th.S.emplace(a, std::move(b));
    } else if (t[0] == "twist") {
      if (t.size() != 3) fail(Err::parse, "twist line needs label and value");
      int a = label_of(t[1]);
      th.twist[a] = parse_cplx(t[2]);
      twist_seen[a] = 1;
      ++i;
    } else if (t[0] == "braid") {
      if (t.size() != 5) fail(Err::parse, "braid line needs three labels and value");
      int a = label_of(t[1]), a2 = label_of(t[2]), c = label_of(t[3]);
      if (a != a2) fail(Err::parse, "braid data must have equal first labels");
      th.braid[{a, a2, c}] = parse_cplx(t[4]);
      ++i;
    } else if (t[0] == "tolerance") {
      if (t.size() != 2) fail(Err::parse, "tolerance line needs one value");
      th.tolerance = parse_real_strict(t[1]);
      if (!(th.tolerance > 0)) fail(Err::parse, "tolerance must be positive");
      saw_tolerance = true;
      ++i;
    } else {
      fail(Err::parse, "unexpected line '" + lines[i] + "'");
    }
  }
  (void)saw_tolerance; // default 1e-9 applies when absent
  for (int a = 0; a < L; ++a)
    if (!twist_seen[a]) fail(Err::parse, "missing twist for label '" + th.names[a] + "'");
  return th;
}

std::string format_theory(const Theory& th) {
  std::ostringstream os;
  os << "labels\n";
  for (int a = 0; a < th.nlabels(); ++a) {
    os << a << ' ' << th.names[a] << ' ' << th.dual[a];
    if (a == th.vacuum) os << " vacuum";
    os << '\n';
  }
  os << "fusion\n";
  for (const auto& s : th.sectors)
    os << th.names[s[0]] << ' ' << th.names[s[1]] << ' ' << th.names[s[2]] << '\n';
  for (const auto& [k, b] : th.F) {
    if (b.xs.empty()) continue;
    os << "F " << th.names[k[0]] << ' ' << th.names[k[1]] << ' ' << th.names[k[2]]
       << ' ' << th.names[k[3]] << '\n';
    for (std::size_t r = 0; r < b.xs.size(); ++r) {
      for (std::size_t c = 0; c < b.ys.size(); ++c)
        os << (c ? " " : "") << format_cplx(b.m[r * b.ys.size() + c]);
      os << '\n';
    }
  }
  for (const auto& [a, b] : th.S) {
    if (b.xs.empty()) continue;
    os << "S " << th.names[a] << '\n';
    for (std::size_t r = 0; r < b.xs.size(); ++r) {
      for (std::size_t c = 0; c < b.ys.size(); ++c)
        os << (c ? " " : "") << format_cplx(b.m[r * b.ys.size() + c]);
      os << '\n';
    }
  }
  for (int a = 0; a < th.nlabels(); ++a)
    os << "twist " << th.names[a] << ' ' << format_cplx(th.twist[a]) << '\n';
  for (const auto& [k, v] : th.braid)
    os << "braid " << th.names[k[0]] << ' ' << th.names[k[1]] << ' '
       << th.names[k[2]] << ' ' << format_cplx(v) << '\n';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", th.tolerance);
  os << "tolerance " << buf << '\n';
  return os.str();
}

int dim_pants(const Theory& th, int a, int b, int c) {
  return th.admissible(a, b, c) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Validation. The pentagon and hexagon are evaluated by replaying elementary
// moves on small fixed decompositions; this mirrors how the rest of the
// artifact uses the data and keeps the identities evaluable from stored
// blocks alone. The replay below is intentionally self-contained so the
// validator does not depend on the surface module it is meant to certify.

namespace {

struct Ref {
  char kind; // 'c' or 'b'
  int id;
  bool operator==(const Ref&) const = default;
};

struct MiniD {
  std::vector<std::array<Ref, 3>> pants;
  std::vector<std::array<std::pair<int, int>, 2>> cuffs;
  std::vector<int> blabels;
};

int leglabel(const Theory& th, const MiniD& d, const std::vector<int>& lab, int p, int l) {
  Ref r = d.pants[p][l];
  if (r.kind == 'b') return d.blabels[r.id];
  int x = lab[r.id];
  if (x < 0) return -1;
  return d.cuffs[r.id][0] == std::make_pair(p, l) ? x : th.dual[x];
}

std::vector<std::vector<int>> mini_labelings(const Theory& th, const MiniD& d) {
  int n = static_cast<int>(d.cuffs.size());
  std::vector<std::vector<int>> out;
  std::vector<int> assign(n, -1);
  auto consistent = [&]() {
    for (std::size_t p = 0; p < d.pants.size(); ++p) {
      int a = leglabel(th, d, assign, static_cast<int>(p), 0);
      int b = leglabel(th, d, assign, static_cast<int>(p), 1);
      int c = leglabel(th, d, assign, static_cast<int>(p), 2);
      if (a < 0 || b < 0 || c < 0) continue;
      if (!th.admissible(a, b, c)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (consistent()) out.push_back(assign);
      return;
    }
    for (int x = 0; x < th.nlabels(); ++x) {
      assign[i] = x;
      if (consistent()) self(self, i + 1);
      assign[i] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

int index_of(const std::vector<std::vector<int>>& labs, const std::vector<int>& l) {
  for (std::size_t i = 0; i < labs.size(); ++i)
    if (labs[i] == l) return static_cast<int>(i);
  return -1;
}

// Normalized F move at cuff cid with distinct end pants. dir=-1 applies the
// inverse rewrite with conjugated coefficients. Returns the rewritten
// decomposition and the coefficient matrix new x old.
struct MiniF {
  MiniD d;
  Mat m;
  std::vector<std::vector<int>> labs_old, labs_new;
};

MiniF mini_apply_F(const Theory& th, const MiniD& d, int cid, int dir) {
  auto [e0, e1] = d.cuffs[cid];
  int p1 = e0.first, l1 = e0.second, p2 = e1.first, l2 = e1.second;
  if (p1 == p2) fail(Err::internal, "mini F at self-glued cuff");
  MiniD d2 = d;
  Ref aref = d.pants[p1][(l1 + 1) % 3];
  Ref bref = d.pants[p1][(l1 + 2) % 3];
  Ref cref = d.pants[p2][(l2 + 1) % 3];
  Ref dref = d.pants[p2][(l2 + 2) % 3];
  if (dir > 0) {
    d2.pants[p1] = {Ref{'c', cid}, bref, cref};
    d2.pants[p2] = {Ref{'c', cid}, dref, aref};
  } else {
    d2.pants[p1] = {Ref{'c', cid}, dref, aref};
    d2.pants[p2] = {Ref{'c', cid}, bref, cref};
  }
  // each external leg slot has a definite destination; cuff ends follow their
  // slots, which keeps end order stable even when one cuff occupies two slots
  auto slot_dest = [&](std::pair<int, int> e) -> std::pair<int, int> {
    int a1 = (l1 + 1) % 3, a2 = (l1 + 2) % 3, b1 = (l2 + 1) % 3, b2 = (l2 + 2) % 3;
    if (dir > 0) {
      if (e == std::make_pair(p1, a1)) return {p2, 2};
      if (e == std::make_pair(p1, a2)) return {p1, 1};
      if (e == std::make_pair(p2, b1)) return {p1, 2};
      if (e == std::make_pair(p2, b2)) return {p2, 1};
    } else {
      if (e == std::make_pair(p1, a1)) return {p1, 2};
      if (e == std::make_pair(p1, a2)) return {p2, 1};
      if (e == std::make_pair(p2, b1)) return {p2, 2};
      if (e == std::make_pair(p2, b2)) return {p1, 1};
    }
    return e;
  };
  for (std::size_t k = 0; k < d2.cuffs.size(); ++k) {
    if (static_cast<int>(k) == cid) {
      d2.cuffs[k] = {std::make_pair(p1, 0), std::make_pair(p2, 0)};
      continue;
    }
    d2.cuffs[k] = {slot_dest(d.cuffs[k][0]), slot_dest(d.cuffs[k][1])};
  }
  auto labs = mini_labelings(th, d);
  auto labs2 = mini_labelings(th, d2);
  Mat m(labs2.size(), labs.size());
  for (std::size_t j = 0; j < labs.size(); ++j) {
    const auto& L = labs[j];
    int a = leglabel(th, d, L, p1, (l1 + 1) % 3);
    int b = leglabel(th, d, L, p1, (l1 + 2) % 3);
    int c = leglabel(th, d, L, p2, (l2 + 1) % 3);
    int dd = leglabel(th, d, L, p2, (l2 + 2) % 3);
    int x = leglabel(th, d, L, p1, l1);
    for (int y = 0; y < th.nlabels(); ++y) {
      cplx co;
      if (dir > 0)
        co = th.fcoef(a, b, c, dd, x, y);
      else
        co = std::conj(th.fcoef(dd, a, b, c, y, x));
      if (co == cplx{}) continue;
      auto L2 = L;
      L2[cid] = y;
      int i2 = index_of(labs2, L2);
      if (i2 >= 0) m.at(i2, j) += co;
    }
  }
  return {std::move(d2), std::move(m), std::move(labs), std::move(labs2)};
}

// S move at a self-glued pant; the graph is unchanged, only coefficients act.
Mat mini_apply_S(const Theory& th, const MiniD& d, int pid) {
  int self_cuff = -1, l0 = -1;
  for (int l = 0; l < 3; ++l) {
    Ref r = d.pants[pid][l];
    if (r.kind == 'c' && d.cuffs[r.id][0].first == pid && d.cuffs[r.id][1].first == pid)
      self_cuff = r.id;
  }
  if (self_cuff < 0) fail(Err::internal, "mini S needs a self-glued pant");
  for (int l = 0; l < 3; ++l) {
    Ref r = d.pants[pid][l];
    if (r.kind == 'b' || r.id != self_cuff) l0 = l;
  }
  auto labs = mini_labelings(th, d);
  Mat m(labs.size(), labs.size());
  int l1 = (l0 + 1) % 3;
  auto sit = th.S.end();
  for (std::size_t j = 0; j < labs.size(); ++j) {
    const auto& L = labs[j];
    int aa = leglabel(th, d, L, pid, l0);
    int x = leglabel(th, d, L, pid, l1);
    sit = th.S.find(aa);
    if (sit == th.S.end()) continue;
    for (int y = 0; y < th.nlabels(); ++y) {
      cplx co = sit->second.get(x, y);
      if (co == cplx{}) continue;
      int stored = d.cuffs[self_cuff][0] == std::make_pair(pid, l1) ? y : th.dual[y];
      auto L2 = L;
      L2[self_cuff] = stored;
      int i2 = index_of(labs, L2);
      if (i2 >= 0) m.at(i2, j) += co;
    }
  }
  return m;
}

struct Residual {
  double value = 0.0;
  std::string where;
  void take(double v, const std::string& w) {
    if (v > value) {
      value = v;
      where = w;
    }
  }
};

std::string tuple_name(const Theory& th, std::initializer_list<int> t) {
  std::string s = "(";
  bool first = true;
  for (int v : t) {
    if (!first) s += ",";
    s += th.names[v];
    first = false;
  }
  return s + ")";
}

Residual check_pentagon(const Theory& th) {
  // caterpillar 5-punctured sphere; five flips alternating between the two
  // cuffs return the same curve system with the cuffs exchanging ids. The
  // induced relabeling is (x,y) -> (dual y, dual x). Composition of the five
  // coefficient maps must equal that permutation.
  Residual r;
  int L = th.nlabels();
  std::vector<int> bl(5);
  for (bl[0] = 0; bl[0] < L; ++bl[0])
    for (bl[1] = 0; bl[1] < L; ++bl[1])
      for (bl[2] = 0; bl[2] < L; ++bl[2])
        for (bl[3] = 0; bl[3] < L; ++bl[3])
          for (bl[4] = 0; bl[4] < L; ++bl[4]) {
            MiniD d;
            d.pants = {{Ref{'b', 0}, Ref{'b', 1}, Ref{'c', 0}},
                       {Ref{'c', 0}, Ref{'b', 2}, Ref{'c', 1}},
                       {Ref{'c', 1}, Ref{'b', 3}, Ref{'b', 4}}};
            d.cuffs = {{std::make_pair(0, 2), std::make_pair(1, 0)},
                       {std::make_pair(1, 2), std::make_pair(2, 0)}};
            d.blabels = bl;
            auto labs0 = mini_labelings(th, d);
            if (labs0.empty()) continue;
            MiniD cur = d;
            Mat m = Mat::eye(labs0.size());
            std::vector<std::vector<int>> labs_last = labs0;
            for (int cid : {0, 1, 0, 1, 0}) {
              auto step = mini_apply_F(th, cur, cid, +1);
              m = matmul(step.m, m);
              cur = step.d;
              labs_last = step.labs_new;
            }
            Mat perm(labs_last.size(), labs0.size());
            bool ok = true;
            for (std::size_t j = 0; j < labs0.size(); ++j) {
              std::vector<int> want = {th.dual[labs0[j][1]], th.dual[labs0[j][0]]};
              int i2 = index_of(labs_last, want);
              if (i2 < 0) {
                ok = false;
                break;
              }
              perm.at(i2, j) = 1.0;
            }
            double v = 1.0;
            if (ok) {
              double s = 0;
              for (std::size_t k = 0; k < m.a.size(); ++k) s += std::norm(m.a[k] - perm.a[k]);
              v = std::sqrt(s);
            }
            r.take(v, "pentagon at " + tuple_name(th, {bl[0], bl[1], bl[2], bl[3], bl[4]}));
          }
  return r;
}

Residual check_ffswap(const Theory& th) {
  Residual r;
  int L = th.nlabels();
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        for (int d4 = 0; d4 < L; ++d4) {
          auto xs = f_rows(th, a, b, c, d4);
          if (xs.empty()) continue;
          auto zs = f_cols(th, b, c, d4, a);
          // flipping the same cuff twice swaps the pant contents and dualizes
          // the cuff label: sum_y F_abcd[x,y] F_bcda[y,z] = delta(z, dual x)
          for (int x : xs)
            for (int z : zs) {
              cplx s{};
              for (int y = 0; y < L; ++y) s += th.fcoef(a, b, c, d4, x, y) * th.fcoef(b, c, d4, a, y, z);
              if (z == th.dual[x]) s -= 1.0;
              r.take(std::abs(s), "double flip at " + tuple_name(th, {a, b, c, d4}));
            }
        }
  return r;
}

Residual check_hexagon(const Theory& th) {
  // braid relation s1 s2 s1 = s2 s1 s2 (up to a global phase) on the
  // 4-punctured sphere labeled (t,t,t,r), with s2 = F^-1 . braid . F.
  Residual r;
  int L = th.nlabels();
  for (int t = 0; t < L; ++t)
    for (int rl = 0; rl < L; ++rl) {
      MiniD d;
      d.pants = {{Ref{'b', 0}, Ref{'b', 1}, Ref{'c', 0}},
                 {Ref{'c', 0}, Ref{'b', 2}, Ref{'b', 3}}};
      d.cuffs = {{std::make_pair(0, 2), std::make_pair(1, 0)}};
      d.blabels = {t, t, t, rl};
      auto labs = mini_labelings(th, d);
      if (labs.empty()) continue;
      auto braid_diag = [&](const MiniD& dd, const std::vector<std::vector<int>>& ls,
                            int pid, int lega, int legb) {
        Mat m(ls.size(), ls.size());
        int zleg = 3 - lega - legb;
        for (std::size_t j = 0; j < ls.size(); ++j) {
          int a = leglabel(th, dd, ls[j], pid, lega);
          int b = leglabel(th, dd, ls[j], pid, legb);
          int z = leglabel(th, dd, ls[j], pid, zleg);
          if (a != b) fail(Err::internal, "hexagon braid on unequal labels");
          m.at(j, j) = th.braid_phase(a, z);
        }
        return m;
      };
      Mat b1 = braid_diag(d, labs, 0, 0, 1);
      auto f = mini_apply_F(th, d, 0, +1);
      Mat b1p = braid_diag(f.d, f.labs_new, 0, 1, 2);
      auto fi = mini_apply_F(th, f.d, 0, -1);
      Mat s2 = matmul(fi.m, matmul(b1p, f.m));
      Mat lhs = matmul(b1, matmul(s2, b1));
      Mat rhs = matmul(s2, matmul(b1, s2));
      r.take(frob_up_to_phase(lhs, rhs), "hexagon at " + tuple_name(th, {t, t, t, rl}));
    }
  return r;
}

Residual check_s_square(const Theory& th) {
  Residual r;
  for (int a = 0; a < th.nlabels(); ++a) {
    MiniD d;
    d.pants = {{Ref{'b', 0}, Ref{'c', 0}, Ref{'c', 0}}};
    d.cuffs = {{std::make_pair(0, 1), std::make_pair(0, 2)}};
    d.blabels = {a};
    auto labs = mini_labelings(th, d);
    if (labs.empty()) continue;
    Mat m = mini_apply_S(th, d, 0);
    Mat mm = matmul(m, m);
    Mat perm(labs.size(), labs.size());
    for (std::size_t j = 0; j < labs.size(); ++j) {
      std::vector<int> want = {th.dual[labs[j][0]]};
      int i2 = index_of(labs, want);
      if (i2 < 0) {
        r.take(1.0, "S^2 at " + tuple_name(th, {a}));
        continue;
      }
      perm.at(i2, j) = 1.0;
    }
    r.take(frob_up_to_phase(mm, perm), "S^2 at " + tuple_name(th, {a}));
  }
  return r;
}

} // namespace

TheoryReport validate_theory(const Theory& th) {
  TheoryReport rep;
  auto add = [&](const std::string& n, double v) {
    rep.items.push_back({n, v});
    rep.worst = std::max(rep.worst, v);
  };
  int L = th.nlabels();

  // structural label data
  double v = 0;
  for (int a = 0; a < L; ++a)
    if (th.dual[th.dual[a]] != a) v = 1;
  if (th.dual[th.vacuum] != th.vacuum) v = 1;
  add("duality involution", v);

  v = th.admissible(th.vacuum, th.vacuum, th.vacuum) ? 0 : 1;
  add("vacuum triple admissible", v);

  v = 0;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      bool want = (b == th.dual[a]);
      if (th.admissible(th.vacuum, a, b) != want) v = 1;
      if (th.admissible(a, th.vacuum, b) != (b == th.dual[a])) v = 1;
      if (th.admissible(a, b, th.vacuum) != (b == th.dual[a])) v = 1;
    }
  add("vacuum leg fusion", v);

  v = 0;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c) {
        if (th.admissible(a, b, c) != th.admissible(b, c, a)) v = 1;
        if (th.admissible(a, b, c) != th.admissible(th.dual[c], th.dual[b], th.dual[a])) v = 1;
      }
  add("admissibility symmetry", v);

  // block presence and unitarity
  Residual pres;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        for (int d4 = 0; d4 < L; ++d4) {
          auto xs = f_rows(th, a, b, c, d4);
          auto ys = f_cols(th, a, b, c, d4);
          if (xs.empty()) continue;
          auto it = th.F.find({a, b, c, d4});
          if (it == th.F.end() || xs.size() != ys.size()) {
            pres.take(1.0, "F block " + tuple_name(th, {a, b, c, d4}) +
                               (it == th.F.end() ? " missing" : " not square"));
            continue;
          }
          Mat u(xs.size(), ys.size());
          u.a = it->second.m;
          pres.take(unitarity_residual(u), "F block " + tuple_name(th, {a, b, c, d4}));
        }
  add("F unitarity [" + pres.where + "]", pres.value);

  pres = {};
  for (int a = 0; a < L; ++a) {
    auto xs = s_rows(th, a);
    if (xs.empty()) continue;
    auto it = th.S.find(a);
    if (it == th.S.end()) {
      pres.take(1.0, "S block " + tuple_name(th, {a}) + " missing");
      continue;
    }
    Mat u(xs.size(), xs.size());
    u.a = it->second.m;
    pres.take(unitarity_residual(u), "S block " + tuple_name(th, {a}));
  }
  add("S unitarity [" + pres.where + "]", pres.value);

  pres = {};
  for (int a = 0; a < L; ++a)
    pres.take(std::fabs(std::abs(th.twist[a]) - 1.0), "twist " + tuple_name(th, {a}));
  if (th.twist[th.vacuum] != cplx{1.0})
    pres.take(std::abs(th.twist[th.vacuum] - cplx{1.0}), "vacuum twist");
  for (int a = 0; a < L; ++a)
    pres.take(std::abs(th.twist[a] - th.twist[th.dual[a]]), "twist duality " + tuple_name(th, {a}));
  add("twist phases [" + pres.where + "]", pres.value);

  pres = {};
  for (int a = 0; a < L; ++a)
    for (int c = 0; c < L; ++c) {
      if (!th.admissible(a, a, c)) continue;
      auto it = th.braid.find({a, a, c});
      if (it == th.braid.end()) {
        pres.take(1.0, "braid " + tuple_name(th, {a, a, c}) + " missing");
        continue;
      }
      pres.take(std::fabs(std::abs(it->second) - 1.0), "braid " + tuple_name(th, {a, a, c}));
      // ribbon: the half twist squares to the ratio of full twists; c is the
      // third boundary, so the pair's total charge is dual(c)
      cplx want = th.twist[th.dual[c]] / (th.twist[a] * th.twist[a]);
      pres.take(std::abs(it->second * it->second - want), "ribbon " + tuple_name(th, {a, a, c}));
    }
  add("braid phases and ribbon [" + pres.where + "]", pres.value);

  Residual ff = check_ffswap(th);
  add("double flip [" + ff.where + "]", ff.value);

  Residual pent = check_pentagon(th);
  add(pent.where.empty() ? "pentagon" : pent.where, pent.value);

  Residual hex = check_hexagon(th);
  add(hex.where.empty() ? "hexagon" : hex.where, hex.value);

  Residual ss = check_s_square(th);
  add(ss.where.empty() ? "S^2 conjugation" : ss.where, ss.value);

  return rep;
}

Theory load_theory(const std::string& text) {
  Theory th = parse_theory(text);
  TheoryReport rep = validate_theory(th);
  if (rep.worst > th.tolerance) {
    std::string worst;
    for (const auto& it : rep.items)
      if (it.residual == rep.worst) worst = it.name;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", rep.worst);
    fail(Err::consistency, "consistency failure: " + worst + " residual " + buf);
  }
  return th;
}

} // namespace tmf
