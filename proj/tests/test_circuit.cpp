#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/circuit.hpp"

using namespace tmf;

namespace {

Err thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Err::ok;
}

Mat random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Mat a(n, n);
  for (auto& z : a.a) z = cplx{gauss(rng), gauss(rng)};
  // Gram-Schmidt on rows
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      cplx dot{};
      for (std::size_t t = 0; t < n; ++t) dot += std::conj(a.at(j, t)) * a.at(i, t);
      for (std::size_t t = 0; t < n; ++t) a.at(i, t) -= dot * a.at(j, t);
    }
    double nrm = 0;
    for (std::size_t t = 0; t < n; ++t) nrm += std::norm(a.at(i, t));
    nrm = std::sqrt(nrm);
    for (std::size_t t = 0; t < n; ++t) a.at(i, t) /= nrm;
  }
  return a;
}

StateVector random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector v(n);
  for (auto& z : v) z = cplx{gauss(rng), gauss(rng)};
  return v;
}

double vec_diff(const StateVector& a, const StateVector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

Gate g1(int t, Mat m, std::string tag = "") {
  Gate g;
  g.arity = 1;
  g.t = {t, -1};
  g.m = std::move(m);
  g.tag = std::move(tag);
  return g;
}

Gate g2(int t0, int t1, Mat m, std::string tag = "") {
  Gate g;
  g.arity = 2;
  g.t = {t0, t1};
  g.m = std::move(m);
  g.tag = std::move(tag);
  return g;
}

}  // namespace

TEST_CASE("state dimension and caps") {
  Circuit c;
  c.k = 3;
  c.p = 5;
  CHECK(state_dim(c) == 125);
  c.nancilla = 2;
  CHECK(state_dim(c) == 500);
  CHECK(thrown_code([&] { static_cast<void>(state_dim(c, 499)); }) == Err::cap_exceeded);
  c.k = 14;
  c.nancilla = 0;
  CHECK(thrown_code([&] { static_cast<void>(state_dim(c)); }) == Err::cap_exceeded);
}

TEST_CASE("single qupit gates act with qupit 0 slowest") {
  Circuit c;
  c.k = 2;
  c.p = 3;
  Mat u = random_unitary(3, 7);

  // acting on qupit 1 maps basis state (a,b) -> sum_y u[y,b] (a,y)
  StateVector v(9);
  v[1 * 3 + 2] = 1.0;  // |a=1, b=2>
  auto w = apply_gate(c, g1(1, u), v);
  for (int y = 0; y < 3; ++y) CHECK(std::abs(w[1 * 3 + y] - u.at(y, 2)) < 1e-14);
  CHECK(std::abs(w[0 * 3 + 1]) == 0.0);

  // acting on qupit 0 touches the stride-3 slice
  v.assign(9, 0.0);
  v[2 * 3 + 1] = 1.0;
  w = apply_gate(c, g1(0, u), v);
  for (int y = 0; y < 3; ++y) CHECK(std::abs(w[y * 3 + 1] - u.at(y, 2)) < 1e-14);
}

TEST_CASE("two qupit gates index t0 as the slow factor") {
  Circuit c;
  c.k = 3;
  c.p = 2;
  Mat u = random_unitary(4, 11);
  StateVector v(8);
  v[0b101] = 1.0;  // qupits (1,0,1)
  // gate on (2,0): column index x = q2 * 2 + q0 = 1*2 + 1 = 3
  auto w = apply_gate(c, g2(2, 0, u), v);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      // row y = q2*2+q0 = a*2+b lands at state (b,0,a)
      CHECK(std::abs(w[(b << 2) | a] - u.at(a * 2 + b, 3)) < 1e-14);
    }
}

TEST_CASE("gates compose in program order and invert") {
  Circuit c;
  c.k = 2;
  c.p = 4;
  c.gates.push_back(g1(0, random_unitary(4, 1), "one"));
  c.gates.push_back(g2(0, 1, random_unitary(16, 2), "two"));
  c.gates.push_back(g1(1, random_unitary(4, 3)));

  auto v = random_state(16, 42);
  auto w = run(c, v);
  auto step = v;
  for (const auto& g : c.gates) step = apply_gate(c, g, step);
  CHECK(vec_diff(w, step) < 1e-12);

  // norm preserved
  double n0 = 0, n1 = 0;
  for (auto z : v) n0 += std::norm(z);
  for (auto z : w) n1 += std::norm(z);
  CHECK(std::abs(n0 - n1) < 1e-10);

  // inverse gates undo, in reverse order
  auto back = w;
  for (int i = c.length() - 1; i >= 0; --i)
    back = apply_gate(c, inverse_gate(c.gates[i]), back);
  CHECK(vec_diff(back, v) < 1e-12);

  // tag toggling
  CHECK(inverse_gate(c.gates[0]).tag == "one inv");
  CHECK(inverse_gate(inverse_gate(c.gates[0])).tag == "one");

  // dense unitary agrees with the strided runner
  Mat u = circuit_unitary(c);
  CHECK(unitarity_residual(u) < 1e-12);
  StateVector uv(16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t s = 0; s < 16; ++s) uv[r] += u.at(r, s) * v[s];
  CHECK(vec_diff(uv, w) < 1e-12);
}

TEST_CASE("flip gates read the sector of their qupit") {
  Circuit c;
  c.k = 2;
  c.p = 3;
  c.nancilla = 2;
  Gate f;
  f.kind = 'x';
  f.arity = 1;
  f.t = {1, -1};
  f.anc = 0;
  f.bits = {1, 0, 1};

  // ancillas are the low bits; ancilla 0 is the higher of the two
  StateVector v(36);
  int base = (2 * 3 + 1) * 4;  // qupits (2,1), ancillas 00
  v[base] = 1.0;
  auto w = apply_gate(c, f, v);
  CHECK(std::abs(w[base] - 1.0) < 1e-15);  // sector 1 carries bit 0: no flip

  v.assign(36, 0.0);
  base = (2 * 3 + 2) * 4;  // qupit 1 in sector 2: flip ancilla 0
  v[base] = 1.0;
  w = apply_gate(c, f, v);
  CHECK(std::abs(w[base + 2] - 1.0) < 1e-15);
  CHECK(std::abs(w[base]) < 1e-15);

  // flipping twice restores
  auto w2 = apply_gate(c, f, w);
  CHECK(vec_diff(w2, v) < 1e-15);

  // ancilla 1 is the lowest bit
  f.anc = 1;
  v.assign(36, 0.0);
  v[base] = 1.0;
  w = apply_gate(c, f, v);
  CHECK(std::abs(w[base + 1] - 1.0) < 1e-15);
}

TEST_CASE("circuit files round trip byte for byte") {
  Circuit c;
  c.k = 2;
  c.p = 3;
  c.nancilla = 1;
  c.gates.push_back(g1(0, random_unitary(3, 5), "theta alpha_0"));
  c.gates.push_back(g2(0, 1, random_unitary(9, 6), "Fbar cuff 2 inv"));
  Gate f;
  f.kind = 'x';
  f.arity = 1;
  f.t = {0, -1};
  f.anc = 0;
  f.bits = {0, 1, 1};
  f.tag = "handle cuff 1";
  c.gates.push_back(f);

  std::string text = format_circuit(c);
  Circuit c2 = parse_circuit(text);
  CHECK(c2.k == c.k);
  CHECK(c2.p == c.p);
  CHECK(c2.nancilla == c.nancilla);
  REQUIRE(c2.length() == c.length());
  for (int i = 0; i < c.length(); ++i) {
    CHECK(c2.gates[i].kind == c.gates[i].kind);
    CHECK(c2.gates[i].t == c.gates[i].t);
    CHECK(c2.gates[i].tag == c.gates[i].tag);
    CHECK(c2.gates[i].bits == c.gates[i].bits);
  }
  CHECK(format_circuit(c2) == text);

  // semantic agreement after the round trip
  auto v = random_state(18, 9);
  CHECK(vec_diff(run(c, v), run(c2, v)) < 1e-12);
}

TEST_CASE("parse errors carry the line and code") {
  auto code_of = [&](const std::string& text) {
    return thrown_code([&] { static_cast<void>(parse_circuit(text)); });
  };
  CHECK(code_of("") == Err::parse);
  CHECK(code_of("g1 0 1+0i\n") == Err::parse);                 // header must come first
  CHECK(code_of("qupits 1 dim 2\ng1 0 1+0i\n") == Err::parse); // wrong entry count
  CHECK(code_of("qupits 1 dim 2\ng1 0 1+0i 0+0i 0+0i 1+0i extra\n") == Err::parse);
  CHECK(code_of("qupits 1 dim 2\nwat 3\n") == Err::parse);
  CHECK(code_of("qupits -1 dim 2\n") == Err::parse);
  // flip mask entries must be bits
  CHECK(code_of("qupits 1 dim 2\nancilla 1\nflip 0 0 2 0\n") == Err::parse);
  // structural range checks run once the whole file is read
  CHECK(code_of("qupits 1 dim 2\ng1 1 1+0i 0+0i 0+0i 1+0i\n") == Err::consistency);
  CHECK(code_of("qupits 1 dim 2\nflip 0 0 1 0\n") == Err::consistency);  // no ancilla declared
  CHECK(code_of("qupits 2 dim 2\ng2 0 0 " + std::string("1+0i 0+0i 0+0i 0+0i ") +
                "0+0i 1+0i 0+0i 0+0i 0+0i 0+0i 1+0i 0+0i 0+0i 0+0i 0+0i 1+0i\n") ==
        Err::consistency);  // repeated target

  // an empty circuit on zero qupits is a legal file
  Circuit none = parse_circuit("qupits 0 dim 2\n");
  CHECK(none.k == 0);
  CHECK(state_dim(none) == 1);

  // entries are stored verbatim; nothing rescales them
  Circuit raw = parse_circuit("qupits 1 dim 2\ng1 0 1+0i 0+0i 0+0i 2+0i\n");
  CHECK(raw.gates[0].m.at(1, 1) == cplx{2.0});

  // the line number is part of the message
  try {
    static_cast<void>(parse_circuit("qupits 1 dim 2\n# fine\nwat\n"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("dense unitary cap") {
  Circuit c;
  c.k = 9;
  c.p = 5;
  CHECK(thrown_code([&] { static_cast<void>(circuit_unitary(c)); }) == Err::cap_exceeded);
}
