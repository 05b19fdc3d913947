#pragma once

namespace normbound {

// Standard normal density phi(t) = (2*pi)^{-1/2} exp(-t^2/2).
double phi(double t);

// Upper tail Psi(t) = P(Z >= t). Underflows to 0 beyond the representable
// range of double.
double upper_tail(double t);

// Mills ratio Psi(t)/phi(t). Direct ratio for t < 8, continued fraction for
// t >= 8. For t below about -37.5 the true value exceeds the double range and
// +infinity is returned.
double mills_ratio(double t);

// Truncated power moment m_alpha(t) = E (Z - t)_+^alpha for integer
// alpha in {0,...,5}. Recursion m_a = (a-1) m_{a-2} - t m_{a-1} up to
// t = 10, descending series in 1/t^2 beyond (the recursion cancels
// catastrophically for large t).
double truncated_moment(int alpha, double t);

// The alpha = 5 moment in closed form: P(t) phi(t) - Q(t) Psi(t) with
// P(t) = 8 + 9 t^2 + t^4 and Q(t) = t (15 + 10 t^2 + t^4). Switches to the
// cancellation-free series branch past t = 10.
double closed_form_R(double t);

// E (sZ - t)_+^alpha = s^alpha m_alpha(t/s), s > 0.
double scaled_moment(double s, double t, int alpha);

}  // namespace normbound
