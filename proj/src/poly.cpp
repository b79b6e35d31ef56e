#include "r2opuc/poly.hpp"

#include <algorithm>
#include <cmath>

namespace r2opuc {

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPoly ComplexPoly::reversed() const {
  ComplexPoly out;
  out.coeffs.reserve(coeffs.size());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out.coeffs.push_back(std::conj(*it));
  return out;
}

double ComplexPoly::norm() const {
  double m = 0.0;
  for (const cplx& a : coeffs) m = std::max(m, std::abs(a));
  return m;
}

}  // namespace r2opuc
