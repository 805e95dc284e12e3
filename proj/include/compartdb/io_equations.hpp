#pragma once

#include <string>
#include <vector>

#include "compartdb/model.hpp"
#include "compartdb/poly.hpp"

namespace compartdb {

/// One signed flow term sign * param * x_state inside a state equation.
struct OdeTerm {
  int sign = 1;
  ParamKey param;
  int state = 0;
};

struct OdeEquation {
  std::vector<OdeTerm> terms;
  bool has_input = false;  // adds the forcing term u_i
};

/// The ODE system of a model: x'_i = sum of flow terms (+ u_i on input
/// vertices), plus one reading y = x_o per output vertex.
struct OdeSystem {
  int n = 0;
  std::vector<ParamKey> params;
  std::vector<OdeEquation> equations;  // index = state
  std::vector<int> inputs, outputs;
};

OdeSystem to_ode_system(const Model& m);

/// n x n system matrix over the parameter ring: A[j][i] holds the rate of
/// edge i->j, A[i][i] the negated outflow sum (leak plus outgoing edges),
/// so that x' = A x + u.
std::vector<std::vector<RatPoly>> compartmental_matrix(const Model& m);

/// det(dI - A) y = sum over inputs j of (-1)^(o+j) minor_{j,o}(dI - A) u_j,
/// stored by derivative order. lhs[d] multiplies y^(d); lhs[n] is the
/// constant 1. Each rhs group's coeff[d] multiplies u_input^(d).
struct IOEquation {
  int n = 0;
  int output = 0;
  std::vector<ParamKey> params;
  std::vector<RatPoly> lhs;

  struct RhsGroup {
    int input = 0;
    std::vector<RatPoly> coeff;
  };
  std::vector<RhsGroup> rhs;  // ascending input vertex
};

IOEquation io_equation(const Model& m, int output);

/// The identifiable-function generators read off an IO equation: the lhs
/// coefficients below the leading 1 (descending order), then the rhs
/// coefficients grouped by ascending input (descending order inside each
/// group). Constant polynomials carry no parameter information and are
/// dropped, as are zeros.
struct CoefficientMap {
  std::vector<ParamKey> params;
  std::vector<RatPoly> polys;
};

CoefficientMap coefficient_map(const IOEquation& eq);

/// Generators pooled over every output of the model (each output evaluated
/// independently); equals coefficient_map(io_equation(m, o)) for the
/// single-output models the database stores.
CoefficientMap coefficient_map(const Model& m);

/// Stable text rendering used by the explain command.
std::string ode_system_to_string(const OdeSystem& sys);
std::string io_equation_to_string(const IOEquation& eq);

}  // namespace compartdb
