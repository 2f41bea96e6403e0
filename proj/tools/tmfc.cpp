#include "tmf.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

[[noreturn]] void die(int status) {
  std::fprintf(stderr, "error: %s (%s)\n", tmf_last_error(), tmf_status_name(status));
  std::exit(status);
}

void check(int status) {
  if (status != TMF_OK) die(status);
}

[[noreturn]] void die_io(const std::string& what) {
  std::fprintf(stderr, "error: %s (io)\n", what.c_str());
  std::exit(TMF_ERR_IO);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die_io("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die_io("cannot write " + path);
  out << text;
  if (!out) die_io("short write to " + path);
}

// adopt a library-allocated string
std::string grab(char* s) {
  std::string out = s ? s : "";
  tmf_string_free(s);
  return out;
}

// a path, or the name of a built-in theory
tmf_theory* open_theory(const std::string& spec) {
  std::string text;
  std::ifstream in(spec, std::ios::binary);
  if (in) {
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  } else {
    char* bt = nullptr;
    if (tmf_theory_builtin(spec.c_str(), &bt) != TMF_OK)
      die_io("no file or built-in theory named " + spec);
    text = grab(bt);
  }
  tmf_theory* th = nullptr;
  check(tmf_theory_load(text.c_str(), &th));
  return th;
}

tmf_surface* open_surface(const tmf_theory* th, const std::string& path) {
  tmf_surface* s = nullptr;
  check(tmf_surface_parse(th, read_file(path).c_str(), &s));
  return s;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::vector<double> parse_state_file(const std::string& text) {
  std::vector<double> amps;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ls(body);
    double re, im;
    if (!(ls >> re)) continue;
    if (!(ls >> im)) {
      std::fprintf(stderr, "error: state line %d needs re and im (parse)\n", lineno);
      std::exit(TMF_ERR_PARSE);
    }
    std::string rest;
    if (ls >> rest) {
      std::fprintf(stderr, "error: state line %d has trailing tokens (parse)\n", lineno);
      std::exit(TMF_ERR_PARSE);
    }
    amps.push_back(re);
    amps.push_back(im);
  }
  return amps;
}

std::string format_state(const std::vector<double>& amps) {
  std::ostringstream os;
  char buf[64];
  for (std::size_t i = 0; i + 1 < amps.size(); i += 2) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", amps[i], amps[i + 1]);
    os << buf;
  }
  return os.str();
}

struct Common {
  double tolerance = 1e-9;
  unsigned long long seed = 0;
  unsigned long long max_dim = 0;    // 0 = library default
  unsigned long long max_state = 0;  // 0 = library default
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compiler pipeline for modular-functor quantum circuits"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--tolerance", common.tolerance, "verification tolerance");
  app.add_option("--seed", common.seed, "seed for generated words");
  app.add_option("--max-dim", common.max_dim, "cap on dim V (0 = default)");
  app.add_option("--max-state", common.max_state, "cap on state amplitudes (0 = default)");

  // theory validate / export
  auto* theory_cmd = app.add_subcommand("theory", "validate or export theory files");
  theory_cmd->require_subcommand(1);
  theory_cmd->fallthrough();

  std::string th_file, th_report;
  auto* validate_cmd = theory_cmd->add_subcommand("validate", "check every identity");
  validate_cmd->fallthrough();
  validate_cmd->add_option("file", th_file, "theory file or built-in name")->required();
  validate_cmd->add_option("--report", th_report, "write per-identity residuals");
  validate_cmd->callback([&] {
    tmf_theory* th = open_theory(th_file);
    double worst = 0.0;
    char* rep = nullptr;
    check(tmf_theory_validate(th, &worst, th_report.empty() ? nullptr : &rep));
    if (!th_report.empty()) write_file(th_report, grab(rep));
    std::printf("OK, p=%d, max residual %s\n", tmf_theory_p(th), sci(worst).c_str());
    tmf_theory_free(th);
  });

  std::string exp_name, exp_out;
  auto* export_cmd = theory_cmd->add_subcommand("export", "emit a built-in theory file");
  export_cmd->fallthrough();
  export_cmd->add_option("name", exp_name, "built-in name")->required();
  export_cmd->add_option("--out", exp_out, "output file (default stdout)");
  export_cmd->callback([&] {
    char* text = nullptr;
    check(tmf_theory_builtin(exp_name.c_str(), &text));
    std::string body = grab(text);
    if (exp_out.empty())
      std::fputs(body.c_str(), stdout);
    else
      write_file(exp_out, body);
  });

  // dim
  std::string dim_theory, dim_surface;
  auto* dim_cmd = app.add_subcommand("dim", "dimension of V for a labeled surface");
  dim_cmd->fallthrough();
  dim_cmd->add_option("--theory", dim_theory, "theory file or built-in name")->required();
  dim_cmd->add_option("--surface", dim_surface, "surface file")->required();
  dim_cmd->callback([&] {
    tmf_theory* th = open_theory(dim_theory);
    std::string stext = read_file(dim_surface);
    long long dim = -1;
    check(tmf_dim(th, stext.c_str(), &dim));
    std::printf("p = %d\n", tmf_theory_p(th));
    std::printf("dim = %lld\n", dim);
    tmf_theory_free(th);
  });

  // compile
  std::string co_theory, co_surface, co_word, co_out, co_report, co_mode = "generic";
  auto* co_cmd = app.add_subcommand("compile", "word file to circuit file");
  co_cmd->fallthrough();
  co_cmd->add_option("--theory", co_theory, "theory file or built-in name")->required();
  co_cmd->add_option("--surface", co_surface, "surface file")->required();
  co_cmd->add_option("--word", co_word, "word file")->required();
  co_cmd->add_option("--out", co_out, "circuit file")->required();
  co_cmd->add_option("--mode", co_mode, "generic, braid7 or cerf")
      ->check(CLI::IsMember({"generic", "braid7", "cerf"}));
  co_cmd->add_option("--report", co_report, "write the compilation plan");
  co_cmd->callback([&] {
    tmf_theory* th = open_theory(co_theory);
    tmf_surface* s = open_surface(th, co_surface);
    tmf_circuit* c = nullptr;
    char* plan = nullptr;
    check(tmf_compile(th, s, read_file(co_word).c_str(), co_mode.c_str(), &c, &plan));
    std::string plan_text = grab(plan);
    char* ctext = nullptr;
    check(tmf_circuit_format(c, &ctext));
    write_file(co_out, grab(ctext));
    if (!co_report.empty()) write_file(co_report, plan_text);
    std::fputs(plan_text.c_str(), stdout);
    std::printf("qupits = %d\n", tmf_circuit_qupits(c));
    std::printf("p = %d\n", tmf_circuit_p(c));
    std::printf("ancillas = %d\n", tmf_circuit_ancillas(c));
    std::printf("gates = %lld\n", tmf_circuit_gates(c));
    tmf_circuit_free(c);
    tmf_surface_free(s);
    tmf_theory_free(th);
  });

  // simulate
  std::string si_circuit, si_state, si_out;
  unsigned long long si_basis = 0;
  auto* si_cmd = app.add_subcommand("simulate", "run a circuit file on a state");
  si_cmd->fallthrough();
  si_cmd->add_option("--circuit", si_circuit, "circuit file")->required();
  si_cmd->add_option("--state", si_state, "input state file (re im per line)");
  si_cmd->add_option("--basis", si_basis, "input basis index (default 0)");
  si_cmd->add_option("--out", si_out, "output state file (default stdout)");
  si_cmd->callback([&] {
    tmf_circuit* c = nullptr;
    check(tmf_circuit_parse(read_file(si_circuit).c_str(), &c));
    unsigned long long dim = 0;
    check(tmf_circuit_dim(c, common.max_state, &dim));
    std::vector<double> in(2 * dim, 0.0);
    if (!si_state.empty()) {
      in = parse_state_file(read_file(si_state));
      if (in.size() != 2 * dim) {
        std::fprintf(stderr, "error: state has %zu amplitudes, circuit wants %llu (dimension)\n",
                     in.size() / 2, dim);
        std::exit(TMF_ERR_DIMENSION);
      }
    } else {
      if (si_basis >= dim) {
        std::fprintf(stderr, "error: basis index %llu out of range (usage)\n", si_basis);
        std::exit(TMF_ERR_USAGE);
      }
      in[2 * si_basis] = 1.0;
    }
    std::vector<double> out(2 * dim, 0.0);
    check(tmf_circuit_run(c, in.data(), dim, out.data()));
    std::string body = format_state(out);
    if (si_out.empty()) {
      std::fputs(body.c_str(), stdout);
    } else {
      write_file(si_out, body);
      double norm2 = 0;
      for (std::size_t i = 0; i + 1 < out.size(); i += 2)
        norm2 += out[i] * out[i] + out[i + 1] * out[i + 1];
      std::printf("dim = %llu\n", dim);
      std::printf("gates = %lld\n", tmf_circuit_gates(c));
      std::printf("norm = %s\n", sci(std::sqrt(norm2)).c_str());
    }
    tmf_circuit_free(c);
  });

  // verify
  std::string ve_theory, ve_surface, ve_word, ve_report, ve_emit, ve_mode = "generic";
  int ve_random = 0;
  auto* ve_cmd = app.add_subcommand("verify", "compile and check the intertwining contract");
  ve_cmd->fallthrough();
  ve_cmd->add_option("--theory", ve_theory, "theory file or built-in name")->required();
  ve_cmd->add_option("--surface", ve_surface, "surface file")->required();
  auto* ve_word_opt = ve_cmd->add_option("--word", ve_word, "word file");
  auto* ve_rand_opt =
      ve_cmd->add_option("--random", ve_random, "generate a seeded word of this length");
  ve_word_opt->excludes(ve_rand_opt);
  ve_cmd->add_option("--mode", ve_mode, "generic, braid7 or cerf")
      ->check(CLI::IsMember({"generic", "braid7", "cerf"}));
  ve_cmd->add_option("--report", ve_report, "write the report (without wall time)");
  ve_cmd->add_option("--emit-word", ve_emit, "write the verified word file");
  ve_cmd->callback([&] {
    tmf_theory* th = open_theory(ve_theory);
    tmf_surface* s = open_surface(th, ve_surface);
    std::string word_text;
    if (ve_rand_opt->count() > 0) {
      char* wt = nullptr;
      check(tmf_random_word(th, s, ve_random, common.seed, &wt));
      word_text = grab(wt);
    } else if (ve_word_opt->count() > 0) {
      word_text = read_file(ve_word);
    } else {
      std::fprintf(stderr, "error: verify needs --word or --random (usage)\n");
      std::exit(TMF_ERR_USAGE);
    }
    if (!ve_emit.empty()) write_file(ve_emit, word_text);
    double residual = 0, pre = 0, pim = 0, leak = 0;
    char* rep = nullptr;
    auto t0 = std::chrono::steady_clock::now();
    check(tmf_verify(th, s, word_text.c_str(), ve_mode.c_str(), common.max_dim,
                     common.max_state, &residual, &pre, &pim, &leak, &rep));
    auto t1 = std::chrono::steady_clock::now();
    double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    bool pass = residual <= common.tolerance;
    std::string body = grab(rep);
    body += "tolerance = " + sci(common.tolerance) + "\n";
    body += std::string("verdict = ") + (pass ? "pass" : "fail") + "\n";
    if (!ve_report.empty()) write_file(ve_report, body);
    char wbuf[64];
    std::snprintf(wbuf, sizeof wbuf, "wall ms = %.1f\n", wall_ms);
    std::fputs((body + wbuf).c_str(), stdout);
    tmf_surface_free(s);
    tmf_theory_free(th);
    if (!pass) {
      std::fprintf(stderr, "error: residual above tolerance (consistency)\n");
      std::exit(TMF_ERR_CONSISTENCY);
    }
  });

  // bordism
  std::string bo_theory, bo_surface, bo_file, bo_out, bo_report;
  auto* bo_cmd = app.add_subcommand("bordism", "bordism file to partial circuit file");
  bo_cmd->fallthrough();
  bo_cmd->add_option("--theory", bo_theory, "theory file or built-in name")->required();
  bo_cmd->add_option("--surface", bo_surface, "surface file")->required();
  bo_cmd->add_option("--bordism", bo_file, "bordism file")->required();
  bo_cmd->add_option("--out", bo_out, "partial circuit file")->required();
  bo_cmd->add_option("--report", bo_report, "write the bordism report");
  bo_cmd->callback([&] {
    tmf_theory* th = open_theory(bo_theory);
    tmf_surface* s = open_surface(th, bo_surface);
    char* ctext = nullptr;
    char* rep = nullptr;
    check(tmf_bordism(th, s, read_file(bo_file).c_str(), &ctext, &rep));
    write_file(bo_out, grab(ctext));
    std::string body = grab(rep);
    if (!bo_report.empty()) write_file(bo_report, body);
    std::fputs(body.c_str(), stdout);
    tmf_surface_free(s);
    tmf_theory_free(th);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : TMF_ERR_USAGE;
  }
  return 0;
}
