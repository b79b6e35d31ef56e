#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace r2opuc {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients in ascending degree.
struct ComplexPoly {
  std::vector<cplx> coeffs;

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cplx leading() const { return coeffs.empty() ? cplx{} : coeffs.back(); }
  cplx operator()(cplx z) const;

  /// p*(z) = z^deg conj(p(1/conj z)), taken at the nominal degree.
  ComplexPoly reversed() const;
  /// max |coefficient|
  double norm() const;
};

}  // namespace r2opuc
