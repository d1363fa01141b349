#pragma once

// Independent numerical oracles used by the tests. Everything here is
// computed by adaptive quadrature straight from the defining integrals;
// none of it shares code with the library's closed forms.

#include <complex>
#include <functional>

namespace oracles {

// Adaptive Simpson quadrature (complex integrand).
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               double a, double b, double tol = 1e-11);

// Fresnel C(x), S(x) from their defining integrals.
std::pair<double, double> fresnel_quad(double x, double tol = 1e-11);

// Half-plane diffraction loss evaluated as
//   (1+j)/2 * [ int_nu^T exp(-j pi t^2/2) dt + tail(T) ]
// with the tail handled by an integration-by-parts series.
std::complex<double> loss_quad(double nu, double tol = 1e-11);

} // namespace oracles
