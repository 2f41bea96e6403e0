#include "core/theory.hpp"

namespace tmf {

namespace {

const std::string k_fibonacci = R"(labels
0 1 0 vacuum
1 tau 1
fusion
1 1 1
1 tau tau
tau 1 tau
tau tau 1
tau tau tau
F 1 1 1 1
1+0i
F 1 1 tau tau
1+0i
F 1 tau 1 tau
1+0i
F 1 tau tau 1
1+0i
F 1 tau tau tau
1+0i
F tau 1 1 tau
1+0i
F tau 1 tau 1
1+0i
F tau 1 tau tau
1+0i
F tau tau 1 1
1+0i
F tau tau 1 tau
1+0i
F tau tau tau 1
1+0i
F tau tau tau tau
0.61803398874989479+0i 0.78615137775742328+0i
0.78615137775742328+0i -0.61803398874989479+0i
S 1
0.52573111211913359+0i 0.85065080835203999+0i
0.85065080835203999+0i -0.52573111211913359+0i
S tau
1+0i
twist 1 1+0i
twist tau -0.80901699437494734+0.58778525229247325i
braid 1 1 1 1+0i
braid tau tau 1 -0.80901699437494734-0.58778525229247325i
braid tau tau tau -0.30901699437494734+0.95105651629515364i
tolerance 1e-09
)";

const std::string k_semion = R"(labels
0 1 0 vacuum
1 s 1
fusion
1 1 1
1 s s
s 1 s
s s 1
F 1 1 1 1
1+0i
F 1 1 s s
1+0i
F 1 s 1 s
1+0i
F 1 s s 1
1+0i
F s 1 1 s
1+0i
F s 1 s 1
1+0i
F s s 1 1
1+0i
F s s s s
-1+0i
S 1
0.70710678118654746+0i 0.70710678118654746+0i
0.70710678118654746+0i -0.70710678118654746+0i
twist 1 1+0i
twist s 0+1i
braid 1 1 1 1+0i
braid s s 1 0+1i
tolerance 1e-09
)";

const std::string k_trivial = R"(labels
0 1 0 vacuum
fusion
1 1 1
F 1 1 1 1
1+0i
S 1
1+0i
twist 1 1+0i
braid 1 1 1 1+0i
tolerance 1e-09
)";

} // namespace

const std::string& builtin_theory_text(const std::string& name) {
  if (name == "fibonacci") return k_fibonacci;
  if (name == "semion") return k_semion;
  if (name == "trivial") return k_trivial;
  fail(Err::usage, "unknown built-in theory '" + name + "'");
}

std::vector<std::string> builtin_theory_names() { return {"fibonacci", "semion", "trivial"}; }

} // namespace tmf
