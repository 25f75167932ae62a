#pragma once

// Rule sets shared by the unit suites and the acceptance gate.

namespace evotest {

// Product rule with function variables, sum rule, and the two base cases.
inline constexpr const char* kDerivativeRules = R"({
  #0 {
    lhs : d {
      #0 : prod { #0 : $F { #0 = $X } #1 : $G { #0 = $X } }
      #1 = $X
    }
    rhs : sum {
      #0 : prod { #0 : $F { #0 = $X } #1 : d { #0 : $G { #0 = $X } #1 = $X } }
      #1 : prod { #0 : $G { #0 = $X } #1 : d { #0 : $F { #0 = $X } #1 = $X } }
    }
  }
  #1 {
    lhs : d { #0 : sum { #0 = $A #1 = $B } #1 = $X }
    rhs : sum { #0 : d { #0 = $A #1 = $X } #1 : d { #0 = $B #1 = $X } }
  }
  #2 {
    lhs : d { #0 = $X #1 = $X }
    rhs = 1
  }
  #3 {
    lhs : d { #0 = $C #1 = $X }
    rhs = 0
  }
})";

}  // namespace evotest
