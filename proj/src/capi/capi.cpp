#include "tmf.h"

#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include "core/bordism.hpp"
#include "core/compiler.hpp"
#include "core/theory.hpp"

struct tmf_theory {
  tmf::Theory v;
};
struct tmf_surface {
  tmf::PantsDecomposition v;
};
struct tmf_circuit {
  tmf::Circuit v;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// run the body, convert exceptions to status codes + message
template <class Fn>
tmf_status guarded(Fn&& fn) {
  try {
    fn();
    return TMF_OK;
  } catch (const tmf::Error& e) {
    g_last_error = e.what();
    return static_cast<tmf_status>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TMF_ERR_INTERNAL;
  }
}

tmf_status need(bool cond, const char* what) {
  if (cond) return TMF_OK;
  g_last_error = std::string("missing argument: ") + what;
  return TMF_ERR_USAGE;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

// base decomposition a mode verifies against
tmf::PantsDecomposition verify_base(const tmf::PantsDecomposition& d,
                                    const std::string& mode) {
  if (mode != "braid7") return d;
  if (d.genus() != 0)
    tmf::fail(tmf::Err::unsupported_surface, "braid-localized mode wants genus 0");
  return tmf::caterpillar_decomposition(d.boundary_labels);
}

std::string braid7_report(const tmf::Circuit& c, const tmf::MappingClassWord& w) {
  std::ostringstream os;
  int n = static_cast<int>(w.literals.size());
  os << "mode = braid7\n";
  os << "literals = " << n << "\n";
  os << "total gates = " << c.length() << "\n";
  os << "bound = " << 7 * n << "\n";
  os << "within bound = " << (c.length() <= 7 * n ? "yes" : "no") << "\n";
  return os.str();
}

// compile under a mode name; plan_text gets a key = value block
tmf::Circuit compile_mode(const tmf::Theory& th, const tmf::PantsDecomposition& d,
                          const tmf::MappingClassWord& w, const std::string& mode,
                          std::string* plan_text) {
  if (mode == "generic") {
    auto [c, plan] = tmf::compile(th, d, w);
    if (plan_text) *plan_text = "mode = generic\n" + tmf::format_plan(plan);
    return c;
  }
  if (mode == "cerf") {
    auto [c, plan] = tmf::compile_cerf(th, d, w);
    if (plan_text) *plan_text = "mode = cerf\n" + tmf::format_plan(plan);
    return c;
  }
  if (mode == "braid7") {
    if (d.genus() != 0)
      tmf::fail(tmf::Err::unsupported_surface, "braid-localized mode wants genus 0");
    tmf::Circuit c = tmf::compile_braid_localized(th, d.boundary_labels, w);
    if (plan_text) *plan_text = braid7_report(c, w);
    return c;
  }
  tmf::fail(tmf::Err::usage, "unknown mode: " + mode);
}

}  // namespace

extern "C" {

const char* tmf_last_error(void) { return g_last_error.c_str(); }

const char* tmf_status_name(tmf_status status) {
  switch (status) {
    case TMF_OK: return "ok";
    case TMF_ERR_USAGE: return "usage";
    case TMF_ERR_CONSISTENCY: return "consistency";
    case TMF_ERR_PARSE: return "parse";
    case TMF_ERR_IO: return "io";
    case TMF_ERR_UNSUPPORTED_SURFACE: return "unsupported_surface";
    case TMF_ERR_ILLEGAL_LITERAL: return "illegal_literal";
    case TMF_ERR_ROUTING: return "routing";
    case TMF_ERR_CAP_EXCEEDED: return "cap_exceeded";
    case TMF_ERR_DIMENSION: return "dimension";
    case TMF_ERR_EMPTY_SPACE: return "empty_space";
    case TMF_ERR_INTERNAL: return "internal";
    default: return "unknown";
  }
}

void tmf_string_free(char* s) { std::free(s); }

tmf_status tmf_theory_load(const char* text, tmf_theory** out) {
  if (tmf_status st = need(text && out, "text, out")) return st;
  return guarded([&] {
    auto* h = new tmf_theory{tmf::load_theory(text)};
    *out = h;
  });
}

tmf_status tmf_theory_validate(const tmf_theory* th, double* worst, char** report) {
  if (tmf_status st = need(th != nullptr, "theory")) return st;
  return guarded([&] {
    tmf::TheoryReport rep = tmf::validate_theory(th->v);
    if (worst) *worst = rep.worst;
    if (report) {
      std::ostringstream os;
      for (const auto& item : rep.items)
        os << item.name << " = " << sci(item.residual) << "\n";
      *report = dup_string(os.str());
    }
  });
}

int tmf_theory_p(const tmf_theory* th) { return th ? th->v.p() : -1; }
int tmf_theory_nlabels(const tmf_theory* th) { return th ? th->v.nlabels() : -1; }

tmf_status tmf_theory_builtin(const char* name, char** text) {
  if (tmf_status st = need(name && text, "name, text")) return st;
  return guarded([&] { *text = dup_string(tmf::builtin_theory_text(name)); });
}

void tmf_theory_free(tmf_theory* th) { delete th; }

tmf_status tmf_surface_parse(const tmf_theory* th, const char* text,
                             tmf_surface** out) {
  if (tmf_status st = need(th && text && out, "theory, text, out")) return st;
  return guarded([&] {
    auto* h = new tmf_surface{tmf::parse_surface(text, th->v)};
    *out = h;
  });
}

tmf_status tmf_surface_format(const tmf_theory* th, const tmf_surface* s,
                              char** text) {
  if (tmf_status st = need(th && s && text, "theory, surface, text")) return st;
  return guarded([&] { *text = dup_string(tmf::format_surface(s->v, th->v)); });
}

int tmf_surface_genus(const tmf_surface* s) { return s ? s->v.genus() : -1; }
int tmf_surface_pants(const tmf_surface* s) { return s ? s->v.npants() : -1; }
int tmf_surface_cuffs(const tmf_surface* s) { return s ? s->v.ncuffs() : -1; }
int tmf_surface_boundary(const tmf_surface* s) { return s ? s->v.nboundary() : -1; }

void tmf_surface_free(tmf_surface* s) { delete s; }

tmf_status tmf_dim(const tmf_theory* th, const char* surface_text,
                   long long* dim) {
  if (tmf_status st = need(th && surface_text && dim, "theory, text, dim")) return st;
  return guarded([&] {
    tmf::SurfaceHeader h = tmf::parse_surface_header(surface_text, th->v);
    *dim = tmf::dim_surface(th->v, h.genus, h.blabels);
  });
}

tmf_status tmf_compile(const tmf_theory* th, const tmf_surface* s,
                       const char* word_text, const char* mode,
                       tmf_circuit** out, char** report) {
  if (tmf_status st = need(th && s && word_text && out, "theory, surface, word, out"))
    return st;
  return guarded([&] {
    tmf::MappingClassWord w = tmf::parse_word(word_text);
    std::string plan_text;
    tmf::Circuit c = compile_mode(th->v, s->v, w, mode ? mode : "generic",
                                  report ? &plan_text : nullptr);
    *out = new tmf_circuit{std::move(c)};
    if (report) *report = dup_string(plan_text);
  });
}

tmf_status tmf_random_word(const tmf_theory* th, const tmf_surface* s,
                           int length, unsigned long long seed, char** text) {
  if (tmf_status st = need(th && s && text, "theory, surface, text")) return st;
  if (length < 0) {
    g_last_error = "length must be nonnegative";
    return TMF_ERR_USAGE;
  }
  return guarded([&] {
    tmf::MappingClassWord w = tmf::random_word(th->v, s->v, length, seed);
    *text = dup_string(tmf::format_word(w));
  });
}

tmf_status tmf_circuit_parse(const char* text, tmf_circuit** out) {
  if (tmf_status st = need(text && out, "text, out")) return st;
  return guarded([&] { *out = new tmf_circuit{tmf::parse_circuit(text)}; });
}

tmf_status tmf_circuit_format(const tmf_circuit* c, char** text) {
  if (tmf_status st = need(c && text, "circuit, text")) return st;
  return guarded([&] { *text = dup_string(tmf::format_circuit(c->v)); });
}

int tmf_circuit_qupits(const tmf_circuit* c) { return c ? c->v.k : -1; }
int tmf_circuit_p(const tmf_circuit* c) { return c ? c->v.p : -1; }
int tmf_circuit_ancillas(const tmf_circuit* c) { return c ? c->v.nancilla : -1; }
long long tmf_circuit_gates(const tmf_circuit* c) { return c ? c->v.length() : -1; }

tmf_status tmf_circuit_dim(const tmf_circuit* c, unsigned long long max_amps,
                           unsigned long long* dim) {
  if (tmf_status st = need(c && dim, "circuit, dim")) return st;
  return guarded([&] {
    std::size_t cap = max_amps ? static_cast<std::size_t>(max_amps)
                               : static_cast<std::size_t>(1u << 31);
    *dim = tmf::state_dim(c->v, cap);
  });
}

tmf_status tmf_circuit_run(const tmf_circuit* c, const double* in,
                           unsigned long long dim, double* out) {
  if (tmf_status st = need(c && in && out, "circuit, in, out")) return st;
  return guarded([&] {
    std::size_t want = tmf::state_dim(c->v);
    if (dim != want)
      tmf::fail(tmf::Err::dimension, "state length does not match the circuit");
    tmf::StateVector v(want);
    for (std::size_t i = 0; i < want; ++i) v[i] = {in[2 * i], in[2 * i + 1]};
    tmf::StateVector r = tmf::run(c->v, v);
    for (std::size_t i = 0; i < want; ++i) {
      out[2 * i] = r[i].real();
      out[2 * i + 1] = r[i].imag();
    }
  });
}

void tmf_circuit_free(tmf_circuit* c) { delete c; }

tmf_status tmf_verify(const tmf_theory* th, const tmf_surface* s,
                      const char* word_text, const char* mode,
                      unsigned long long max_dim, unsigned long long max_state,
                      double* residual, double* phase_re, double* phase_im,
                      double* leakage, char** report) {
  if (tmf_status st = need(th && s && word_text, "theory, surface, word")) return st;
  return guarded([&] {
    std::string m = mode ? mode : "generic";
    tmf::MappingClassWord w = tmf::parse_word(word_text);
    std::string plan_text;
    tmf::Circuit c = compile_mode(th->v, s->v, w, m, &plan_text);
    tmf::PantsDecomposition base = verify_base(s->v, m);
    std::size_t md = max_dim ? static_cast<std::size_t>(max_dim) : 512;
    std::size_t ms = max_state ? static_cast<std::size_t>(max_state) : 390625;
    tmf::Embedding e = tmf::embed(th->v, base, md, ms);
    tmf::Mat ref = tmf::reference_rep(th->v, base, w, md);
    tmf::VerifyResult vr = tmf::verify_intertwine(c, e, ref);
    if (residual) *residual = vr.residual;
    if (phase_re) *phase_re = vr.phase.real();
    if (phase_im) *phase_im = vr.phase.imag();
    if (leakage) *leakage = vr.leakage;
    if (report) {
      std::ostringstream os;
      os << plan_text;
      os << "qupits = " << c.k << "\n";
      os << "p = " << c.p << "\n";
      os << "dim = " << e.basis.size() << "\n";
      os << "residual = " << sci(vr.residual) << "\n";
      os << "phase = " << tmf::format_cplx(vr.phase) << "\n";
      os << "leakage = " << sci(vr.leakage) << "\n";
      *report = dup_string(os.str());
    }
  });
}

tmf_status tmf_bordism(const tmf_theory* th, const tmf_surface* s,
                       const char* bordism_text, char** circuit_text,
                       char** report) {
  if (tmf_status st = need(th && s && bordism_text, "theory, surface, bordism"))
    return st;
  return guarded([&] {
    tmf::BordismWord w = tmf::parse_bordism(bordism_text);
    tmf::PartialCircuit pc = tmf::compile_bordism(th->v, s->v, w);
    if (circuit_text) *circuit_text = dup_string(tmf::format_circuit(pc.circuit));
    if (report) {
      std::ostringstream os;
      os << "moves = " << w.moves.size() << "\n";
      os << "handles = " << pc.handles.size() << "\n";
      os << "total gates = " << pc.circuit.length() << "\n";
      os << "ancillas = " << pc.circuit.nancilla << "\n";
      os << "constant c = " << sci(pc.constant_c) << "\n";
      os << "target genus = " << pc.target.genus() << "\n";
      os << "target boundary = " << pc.target.nboundary() << "\n";
      os << "target pants = " << pc.target.npants() << "\n";
      os << "target cuffs = " << pc.target.ncuffs() << "\n";
      *report = dup_string(os.str());
    }
  });
}

}  // extern "C"
