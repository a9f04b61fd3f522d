#ifndef ARGGRAD_POLY_HPP
#define ARGGRAD_POLY_HPP

#include <vector>

#include "arggrad/complex_core.hpp"

namespace arggrad {

// Dense complex polynomials, coefficients in ascending degree order.
namespace poly {

Complex eval(const std::vector<Complex>& c, Complex s);

/// Coefficients of the formal derivative.
std::vector<Complex> derivative(const std::vector<Complex>& c);

std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> subtract(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Drops leading coefficients with magnitude <= rel_tol * max|c_i|.
/// Exactly-cancelled leading terms (e.g. the numerator of W' when
/// deg N == deg D) otherwise leave O(eps) junk that breaks root finding.
std::vector<Complex> trim_leading(const std::vector<Complex>& c, double rel_tol = 1e-12);

int degree(const std::vector<Complex>& c);

/// All roots of a trimmed polynomial via Aberth-Ehrlich simultaneous
/// iteration followed by a few Newton polish steps. Deterministic:
/// initial guesses are placed on a fixed circle. Intended for the
/// desk-scale degrees this library deals with (<= ~25).
std::vector<Complex> roots(const std::vector<Complex>& c);

}  // namespace poly

}  // namespace arggrad

#endif
