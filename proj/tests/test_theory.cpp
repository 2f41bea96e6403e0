#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "core/theory.hpp"

using namespace tmf;

namespace {

Theory fib() { return load_theory(builtin_theory_text("fibonacci")); }

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("built-ins load and validate cleanly") {
  auto names = builtin_theory_names();
  REQUIRE(names.size() == 3);
  for (const auto& name : names) {
    Theory th = load_theory(builtin_theory_text(name));
    TheoryReport rep = validate_theory(th);
    CAPTURE(name);
    CHECK(rep.worst < 1e-10);
    CHECK(!rep.items.empty());
  }
  CHECK(fib().p() == 5);
  CHECK(load_theory(builtin_theory_text("semion")).p() == 4);
  CHECK(load_theory(builtin_theory_text("trivial")).p() == 1);
  CHECK(fib().nlabels() == 2);
}

TEST_CASE("fibonacci golden values") {
  Theory th = fib();
  int tau = th.label_of("tau");
  REQUIRE(tau == 1);
  CHECK(th.label_of("1") == th.vacuum);
  CHECK(th.label_of("nope") == -1);

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(th.fcoef(tau, tau, tau, tau, th.vacuum, th.vacuum) - 1.0 / phi) < 1e-14);
  CHECK(std::abs(th.fcoef(tau, tau, tau, tau, th.vacuum, tau) - 1.0 / std::sqrt(phi)) < 1e-14);
  CHECK(std::abs(th.fcoef(tau, tau, tau, tau, tau, tau) + 1.0 / phi) < 1e-14);

  const Block& s = th.S.at(th.vacuum);
  double norm = std::sqrt(1.0 + phi * phi);
  CHECK(std::abs(s.get(th.vacuum, th.vacuum) - 1.0 / norm) < 1e-14);
  CHECK(std::abs(s.get(th.vacuum, tau) - phi / norm) < 1e-14);
  CHECK(std::abs(s.get(tau, tau) + 1.0 / norm) < 1e-14);

  CHECK(std::abs(th.twist[tau] - std::polar(1.0, 4.0 * M_PI / 5.0)) < 1e-14);
  CHECK(std::abs(th.braid_phase(tau, th.vacuum) - std::polar(1.0, -4.0 * M_PI / 5.0)) < 1e-14);
  CHECK(std::abs(th.braid_phase(tau, tau) - std::polar(1.0, 3.0 * M_PI / 5.0)) < 1e-14);
}

TEST_CASE("structural properties hold for every built-in") {
  for (const auto& name : builtin_theory_names()) {
    Theory th = load_theory(builtin_theory_text(name));
    CAPTURE(name);
    int L = th.nlabels();

    // duality is an involution fixing the vacuum
    CHECK(th.dual[th.vacuum] == th.vacuum);
    for (int a = 0; a < L; ++a) CHECK(th.dual[th.dual[a]] == a);

    // vacuum legs fuse trivially
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b)
        CHECK(th.admissible(th.vacuum, a, b) == (b == th.dual[a]));

    // admissibility is cyclic and dual-reversal invariant
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b)
        for (int c = 0; c < L; ++c) {
          CHECK(th.admissible(a, b, c) == th.admissible(b, c, a));
          CHECK(th.admissible(a, b, c) ==
                th.admissible(th.dual[c], th.dual[b], th.dual[a]));
        }

    // sectors enumerate the admissible triples lexicographically
    CHECK(static_cast<int>(th.sectors.size()) == th.p());
    for (int i = 0; i < th.p(); ++i) {
      const auto& t = th.sectors[i];
      CHECK(th.admissible(t[0], t[1], t[2]));
      CHECK(th.sector_of(t[0], t[1], t[2]) == i);
      if (i > 0) CHECK(th.sectors[i - 1] < t);
    }

    // twist phases: unit modulus, vacuum trivial, duality even
    CHECK(std::abs(th.twist[th.vacuum] - cplx{1.0}) < 1e-14);
    for (int a = 0; a < L; ++a) {
      CHECK(std::abs(std::abs(th.twist[a]) - 1.0) < 1e-12);
      CHECK(std::abs(th.twist[a] - th.twist[th.dual[a]]) < 1e-12);
    }

    // ribbon identity on every stored braid phase
    for (const auto& [key, r] : th.braid) {
      cplx lhs = r * r;
      cplx rhs = th.twist[key[2]] / (th.twist[key[0]] * th.twist[key[0]]);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("pants dimensions") {
  Theory th = fib();
  int tau = th.label_of("tau");
  CHECK(dim_pants(th, th.vacuum, th.vacuum, th.vacuum) == 1);
  CHECK(dim_pants(th, th.vacuum, tau, tau) == 1);
  CHECK(dim_pants(th, tau, tau, tau) == 1);
  CHECK(dim_pants(th, th.vacuum, th.vacuum, tau) == 0);
  Theory sem = load_theory(builtin_theory_text("semion"));
  int s = sem.label_of("s");
  CHECK(dim_pants(sem, s, s, s) == 0);
  CHECK(dim_pants(sem, s, s, sem.vacuum) == 1);
}

TEST_CASE("theory file round trip is byte-stable") {
  for (const auto& name : builtin_theory_names()) {
    std::string text = builtin_theory_text(name);
    Theory th = load_theory(text);
    std::string once = format_theory(th);
    Theory th2 = load_theory(once);
    CHECK(format_theory(th2) == once);
    CHECK(th2.p() == th.p());
    CHECK(th2.dual == th.dual);
    CHECK(th2.sectors == th.sectors);
  }
}

TEST_CASE("corrupted data is rejected with the right code") {
  std::string good = builtin_theory_text("fibonacci");

  SUBCASE("F entry off") {
    std::string bad = replace_once(good, "0.61803398874989479+0i 0.78615137775742328+0i",
                                   "0.7+0i 0.78615137775742328+0i");
    try {
      static_cast<void>(load_theory(bad));
      FAIL("expected a consistency error");
    } catch (const Error& e) {
      CHECK(e.code() == Err::consistency);
      CHECK(!std::string(e.what()).empty());
    }
  }
  SUBCASE("braid phase off") {
    std::string bad = replace_once(
        good, "braid tau tau tau -0.30901699437494734+0.95105651629515364i",
        "braid tau tau tau 1+0i");
    try {
      static_cast<void>(load_theory(bad));
      FAIL("expected a consistency error");
    } catch (const Error& e) {
      CHECK(e.code() == Err::consistency);
    }
  }
  SUBCASE("unknown keyword") {
    try {
      static_cast<void>(load_theory(good + "wibble 1\n"));
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Err::parse);
    }
  }
  SUBCASE("fusion row with unknown label") {
    std::string bad = replace_once(good, "tau tau tau\n", "tau tau zap\n");
    try {
      static_cast<void>(load_theory(bad));
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Err::parse);
    }
  }
  SUBCASE("tolerance is honored") {
    // absurdly loose tolerance admits the corrupted entry
    std::string bad = replace_once(good, "0.61803398874989479+0i 0.78615137775742328+0i",
                                   "0.7+0i 0.78615137775742328+0i");
    bad = replace_once(bad, "tolerance 1e-09", "tolerance 10");
    Theory th = load_theory(bad);
    CHECK(validate_theory(th).worst > 1e-2);
  }
}

TEST_CASE("complex scalar format") {
  for (const std::string tok : {"1+0i", "-0.5-0.25i", "0+1i", "0.125+0i"}) {
    cplx z = parse_cplx(tok);
    CHECK(format_cplx(z) == tok);
  }
  CHECK(parse_cplx("2-3i") == cplx{2.0, -3.0});
  for (const std::string tok : {"", "i", "1+", "1+2j", "x+0i"}) {
    CAPTURE(tok);
    try {
      static_cast<void>(parse_cplx(tok));
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Err::parse);
    }
  }
}
