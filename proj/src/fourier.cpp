#include "oddext/fourier.hpp"

namespace oddext {

FourierForm<std::complex<double>> to_complex(const FourierForm<GaussRational>& form) {
  FourierForm<std::complex<double>> out(form.n(), form.degree());
  for (const auto& [k, coeffs] : form.spectrum()) {
    AlgForm<std::complex<double>> converted(form.n(), form.degree());
    for (const auto& [index, c] : coeffs.terms()) converted.add_term(index, c.to_complex());
    out.add(k, converted);
  }
  return out;
}

} // namespace oddext
