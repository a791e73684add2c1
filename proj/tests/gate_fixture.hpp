#pragma once

// Hand-evaluated accept/refuse table for the parameter gate, spanning every
// inequality it enforces.  expect_ok / expect_global were worked out on paper
// from the published ranges; the suite asserts the implementation matches.

#include <string>
#include <vector>

#include "nlsbvp/nonlinear.hpp"

namespace nlsbvp::fixture {

struct GateCase {
  DomainKind domain;
  Real s, p, lambda;
  bool expect_ok;
  bool expect_global;
  std::string reason_fragment;  // must appear in the refusal text when !expect_ok
};

inline std::vector<GateCase> gate_table() {
  using D = DomainKind;
  return {
      // half line, s < 1/2: 3 <= p < (6-4s)/(1-2s)
      {D::half_line, 0.0, 5.0, 1.0, true, false, ""},
      {D::half_line, 0.0, 6.0, 1.0, false, false, "(6-4s)/(1-2s)"},
      {D::half_line, 0.4, 21.0, -1.0, true, false, ""},
      {D::half_line, 0.4, 22.5, -1.0, false, false, "(6-4s)/(1-2s)"},
      // interval, s < 1/2: 3 <= p <= 4
      {D::interval, 0.25, 4.0, 1.0, true, false, ""},
      {D::interval, 0.25, 4.5, -1.0, false, false, "3 <= p <= 4"},
      {D::interval, 0.0, 3.0, -1.0, true, false, ""},
      // excluded half-integers
      {D::half_line, 1.5, 4.0, 1.0, false, false, "n + 1/2"},
      {D::interval, 0.5, 3.0, 1.0, false, false, "n + 1/2"},
      // range of s
      {D::interval, 2.6, 4.0, 1.0, false, false, "0 <= s < 5/2"},
      // p and lambda basics
      {D::half_line, 0.0, 2.5, -1.0, false, false, "3 <= p"},
      {D::half_line, 1.2, 4.0, 0.0, false, false, "lambda != 0"},
      // smoothness of the nonlinearity
      {D::half_line, 2.2, 3.0, -1.0, false, false, "odd p"},
      {D::half_line, 1.8, 3.0, -1.0, true, true, ""},
      {D::interval, 2.2, 3.5, -1.0, false, false, "non-integer p"},
      {D::interval, 1.8, 3.5, -1.0, true, true, ""},
      {D::half_line, 2.4, 100.0, -1.0, true, true, ""},   // even p: s free
      // global regimes
      {D::half_line, 2.4, 100.0, 1.0, true, false, ""},   // lambda>0 needs p<=4
      {D::half_line, 1.0, 4.0, 1.0, true, true, ""},
      {D::interval, 1.0, 4.0, 1.0, true, false, ""},      // interval cap is 10/3
      {D::interval, 1.0, 10.0 / 3.0, 1.0, true, true, ""},
      {D::interval, 1.0, 3.5, 1.0, true, false, ""},
      {D::half_line, 0.25, 4.0, -1.0, true, false, ""},   // lambda<0 but s<1
      {D::half_line, 2.0, 7.0, -1.0, true, true, ""},
  };
}

}  // namespace nlsbvp::fixture
