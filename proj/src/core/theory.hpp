#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "core/util.hpp"

namespace tmf {

// One F or S block: a small unitary indexed by the admissible labels on each
// side. Row/column index sets are derived from the fusion rules, never stored
// in the file.
struct Block {
  std::vector<int> xs, ys;
  std::vector<cplx> m; // row-major, xs.size() x ys.size()

  cplx get(int x, int y) const {
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i] == x)
        for (std::size_t j = 0; j < ys.size(); ++j)
          if (ys[j] == y) return m[i * ys.size() + j];
    return {};
  }
};

struct Theory {
  std::vector<std::string> names;
  std::vector<int> dual;
  int vacuum = 0;
  double tolerance = 1e-9;

  std::vector<char> adm_table;            // L^3, 1 if admissible
  std::vector<std::array<int, 3>> sectors; // lexicographic
  std::vector<int> sector_of_table;        // L^3 -> sector index or -1

  std::map<std::array<int, 4>, Block> F;
  std::map<int, Block> S;
  std::vector<cplx> twist;
  std::map<std::array<int, 3>, cplx> braid; // keys (a,a,c), admissible

  int nlabels() const { return static_cast<int>(names.size()); }
  int p() const { return static_cast<int>(sectors.size()); }

  bool admissible(int a, int b, int c) const {
    int L = nlabels();
    return adm_table[(a * L + b) * L + c] != 0;
  }
  int sector_of(int a, int b, int c) const {
    int L = nlabels();
    return sector_of_table[(a * L + b) * L + c];
  }
  int label_of(const std::string& name) const; // -1 when absent

  // F coefficient for the normalized move; zero when not admissible.
  cplx fcoef(int a, int b, int c, int d, int x, int y) const {
    auto it = F.find({a, b, c, d});
    return it == F.end() ? cplx{} : it->second.get(x, y);
  }
  cplx braid_phase(int a, int c) const {
    auto it = braid.find({a, a, c});
    return it == braid.end() ? cplx{} : it->second;
  }
};

// Residuals of every consistency identity, for reporting. `worst` is the max.
struct TheoryReport {
  struct Item {
    std::string name;
    double residual;
  };
  std::vector<Item> items;
  double worst = 0.0;
};

Theory parse_theory(const std::string& text);
TheoryReport validate_theory(const Theory& th);
// parse + validate; throws Err::consistency naming the worst identity when
// any residual exceeds the file's tolerance.
Theory load_theory(const std::string& text);
std::string format_theory(const Theory& th);

int dim_pants(const Theory& th, int a, int b, int c);

// names: "fibonacci", "semion", "trivial"
const std::string& builtin_theory_text(const std::string& name);
std::vector<std::string> builtin_theory_names();

std::string format_cplx(cplx z);
cplx parse_cplx(const std::string& tok); // throws Err::parse

} // namespace tmf
