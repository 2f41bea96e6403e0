#include "core/circuit.hpp"

#include <cmath>
#include <sstream>

#include "core/theory.hpp"

namespace tmf {

Gate inverse_gate(const Gate& g) {
  Gate out = g;
  if (g.kind == 'u') out.m = dagger(g.m);
  // flips are involutions
  if (!g.tag.empty()) {
    const std::string suffix = " inv";
    if (g.tag.size() > suffix.size() &&
        g.tag.compare(g.tag.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.tag = g.tag.substr(0, g.tag.size() - suffix.size());
    } else {
      out.tag = g.tag + suffix;
    }
  }
  return out;
}

std::size_t state_dim(const Circuit& c, std::size_t max_amps) {
  std::size_t d = 1;
  for (int i = 0; i < c.k; ++i) {
    d *= static_cast<std::size_t>(c.p);
    if (d > max_amps) fail(Err::cap_exceeded, "state space exceeds amplitude cap");
  }
  for (int i = 0; i < c.nancilla; ++i) {
    d *= 2;
    if (d > max_amps) fail(Err::cap_exceeded, "state space exceeds amplitude cap");
  }
  return d;
}

namespace {

void check_gate(const Circuit& c, const Gate& g) {
  std::size_t p = static_cast<std::size_t>(c.p);
  if (g.kind == 'x') {
    if (g.t[0] < 0 || g.t[0] >= c.k || g.anc < 0 || g.anc >= c.nancilla)
      fail(Err::consistency, "flip gate targets out of range");
    if (g.bits.size() != p) fail(Err::consistency, "flip gate mask size mismatch");
    return;
  }
  if (g.arity == 1) {
    if (g.t[0] < 0 || g.t[0] >= c.k) fail(Err::consistency, "gate target out of range");
    if (g.m.rows != p || g.m.cols != p) fail(Err::consistency, "1-qupit gate shape mismatch");
  } else if (g.arity == 2) {
    if (g.t[0] < 0 || g.t[0] >= c.k || g.t[1] < 0 || g.t[1] >= c.k || g.t[0] == g.t[1])
      fail(Err::consistency, "gate targets out of range");
    if (g.m.rows != p * p || g.m.cols != p * p)
      fail(Err::consistency, "2-qupit gate shape mismatch");
  } else {
    fail(Err::consistency, "gate arity must be 1 or 2");
  }
}

// stride of qupit t: product of the dimensions of everything after it
// (qupit 0 is the slowest-varying index)
std::size_t stride_of(const Circuit& c, int t) {
  std::size_t s = 1;
  for (int i = c.k - 1; i > t; --i) s *= static_cast<std::size_t>(c.p);
  for (int i = 0; i < c.nancilla; ++i) s *= 2;
  return s;
}

}  // namespace

StateVector apply_gate(const Circuit& c, const Gate& g, const StateVector& v) {
  check_gate(c, g);
  std::size_t dim = state_dim(c);
  if (v.size() != dim) fail(Err::dimension, "state size mismatch");
  std::size_t p = static_cast<std::size_t>(c.p);
  StateVector out(v.size());
  if (g.kind == 'x') {
    std::size_t sq = stride_of(c, g.t[0]);
    std::size_t sa = 1;
    for (int i = c.nancilla - 1; i > g.anc; --i) sa *= 2;
    for (std::size_t i = 0; i < dim; ++i) {
      std::size_t sector = (i / sq) % p;
      std::size_t j = g.bits[sector] ? (i ^ sa) : i;
      out[j] = v[i];
    }
    return out;
  }
  if (g.arity == 1) {
    std::size_t s = stride_of(c, g.t[0]);
    std::size_t span = s * p;
    for (std::size_t hi = 0; hi < dim / span; ++hi)
      for (std::size_t lo = 0; lo < s; ++lo) {
        std::size_t base = hi * span + lo;
        for (std::size_t r = 0; r < p; ++r) {
          cplx acc{};
          for (std::size_t x = 0; x < p; ++x) acc += g.m.at(r, x) * v[base + x * s];
          out[base + r * s] = acc;
        }
      }
    return out;
  }
  std::size_t s1 = stride_of(c, g.t[0]);
  std::size_t s2 = stride_of(c, g.t[1]);
  std::vector<cplx> col(p * p);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t x1 = (i / s1) % p, x2 = (i / s2) % p;
    if (x1 != 0 || x2 != 0) continue;
    // i is the base of one gathered column
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) col[a * p + b] = v[i + a * s1 + b * s2];
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) {
        cplx acc{};
        std::size_t r = a * p + b;
        for (std::size_t x = 0; x < p * p; ++x) {
          if (g.m.at(r, x) == cplx{}) continue;
          acc += g.m.at(r, x) * col[x];
        }
        out[i + a * s1 + b * s2] = acc;
      }
  }
  return out;
}

StateVector run(const Circuit& c, const StateVector& v) {
  StateVector cur = v;
  for (const auto& g : c.gates) cur = apply_gate(c, g, cur);
  return cur;
}

Mat circuit_unitary(const Circuit& c, std::size_t max_entries) {
  std::size_t dim = state_dim(c);
  if (dim * dim > max_entries)
    fail(Err::cap_exceeded, "dense circuit unitary exceeds entry cap");
  Mat u(dim, dim);
  StateVector basis(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(basis.begin(), basis.end(), cplx{});
    basis[j] = 1.0;
    StateVector col = run(c, basis);
    for (std::size_t i = 0; i < dim; ++i) u.at(i, j) = col[i];
  }
  return u;
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qupits " << c.k << " dim " << c.p << "\n";
  if (c.nancilla > 0) os << "ancilla " << c.nancilla << "\n";
  for (const auto& g : c.gates) {
    if (!g.tag.empty()) os << "# " << g.tag << "\n";
    if (g.kind == 'x') {
      os << "flip " << g.anc << " " << g.t[0];
      for (int b : g.bits) os << " " << b;
      os << "\n";
      continue;
    }
    os << (g.arity == 1 ? "g1 " : "g2 ") << g.t[0];
    if (g.arity == 2) os << " " << g.t[1];
    for (const auto& z : g.m.a) os << " " << format_cplx(z);
    os << "\n";
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_header = false;
  std::string tag;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto ctx = [&lineno]() { return "circuit line " + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') {
      tag = line.size() > 1 ? line.substr(line[1] == ' ' ? 2 : 1) : "";
      continue;
    }
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "qupits") {
      std::string dimkw;
      if (!(ls >> c.k >> dimkw >> c.p) || dimkw != "dim" || c.k < 0 || c.p < 1)
        fail(Err::parse, ctx() + "want `qupits <k> dim <p>`");
      have_header = true;
      continue;
    }
    if (!have_header) fail(Err::parse, ctx() + "missing qupits header");
    if (kw == "ancilla") {
      if (!(ls >> c.nancilla) || c.nancilla < 0)
        fail(Err::parse, ctx() + "bad ancilla count");
      continue;
    }
    Gate g;
    std::size_t p = static_cast<std::size_t>(c.p);
    if (kw == "g1" || kw == "g2") {
      g.kind = 'u';
      g.arity = (kw == "g1") ? 1 : 2;
      if (!(ls >> g.t[0])) fail(Err::parse, ctx() + "missing gate target");
      if (g.arity == 2 && !(ls >> g.t[1])) fail(Err::parse, ctx() + "missing second target");
      std::size_t n = (g.arity == 1) ? p : p * p;
      g.m = Mat(n, n);
      for (std::size_t i = 0; i < n * n; ++i) {
        std::string tok;
        if (!(ls >> tok)) fail(Err::parse, ctx() + "gate entry count mismatch");
        g.m.a[i] = parse_cplx(tok);
      }
      std::string extra;
      if (ls >> extra) fail(Err::parse, ctx() + "trailing tokens");
    } else if (kw == "flip") {
      g.kind = 'x';
      g.arity = 1;
      if (!(ls >> g.anc >> g.t[0])) fail(Err::parse, ctx() + "flip wants ancilla and qupit");
      g.bits.resize(p);
      for (std::size_t i = 0; i < p; ++i) {
        int b;
        if (!(ls >> b) || (b != 0 && b != 1)) fail(Err::parse, ctx() + "flip mask must be bits");
        g.bits[i] = b;
      }
      std::string extra;
      if (ls >> extra) fail(Err::parse, ctx() + "trailing tokens");
    } else {
      fail(Err::parse, ctx() + "unknown keyword " + kw);
    }
    g.tag = tag;
    tag.clear();
    c.gates.push_back(std::move(g));
  }
  if (!have_header) fail(Err::parse, "circuit file missing qupits header");
  for (const auto& g : c.gates) check_gate(c, g);
  return c;
}

}  // namespace tmf
