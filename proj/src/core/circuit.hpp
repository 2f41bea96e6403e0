#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/util.hpp"

namespace tmf {

// 'u': unitary gate on 1 or 2 qupits.
// 'x': ancilla flip, NOT on ancilla `anc` controlled by the bit mask over the
//      sectors of qupit t[0] (the conditional piece of a partial circuit).
struct Gate {
  char kind = 'u';
  int arity = 1;
  std::array<int, 2> t{-1, -1};
  Mat m;                     // p x p or p^2 x p^2, row-major
  int anc = -1;              // flip gates only
  std::vector<int> bits;     // flip gates only, one 0/1 per sector
  std::string tag;
};

Gate inverse_gate(const Gate& g);

struct Circuit {
  int k = 0;         // qupit count
  int p = 1;         // qupit dimension
  int nancilla = 0;  // ancilla qubits, appended after the qupits
  std::vector<Gate> gates;

  int length() const { return static_cast<int>(gates.size()); }
};

using StateVector = std::vector<cplx>;

// p^k * 2^nancilla; throws Err::cap_exceeded above max_amps
std::size_t state_dim(const Circuit& c, std::size_t max_amps = (1u << 31));

StateVector apply_gate(const Circuit& c, const Gate& g, const StateVector& v);
StateVector run(const Circuit& c, const StateVector& v);

// Dense unitary on the enlarged space; dim^2 capped by max_entries.
Mat circuit_unitary(const Circuit& c, std::size_t max_entries = 1u << 24);

std::string format_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace tmf
