#pragma once

#include <cmath>
#include <concepts>

namespace normbound {

// Adaptive Gauss-Kronrod (G7, K15) integration in long double. The interval
// is bisected until the local K15-G7 discrepancy drops below rel_tol of the
// running global estimate.
namespace detail {

// K15 abscissae (positive half) and weights; the first four abscissae carry
// the embedded G7 rule.
inline constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144838258730L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
inline constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <typename F>
void gk15(F&& f, long double a, long double b, long double& kres,
          long double& err) {
  const long double c = (a + b) / 2, h = (b - a) / 2;
  const long double fc = f(c);
  long double resk = kWgk[7] * fc;
  long double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const long double dx = h * kXgk[i];
    const long double fsum = f(c - dx) + f(c + dx);
    resk += kWgk[i] * fsum;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;  // odd-index nodes carry G7
  }
  kres = resk * h;
  err = std::fabs((resk - resg) * h);
}

template <typename F>
long double integrate_rec(F&& f, long double a, long double b,
                          long double rel_tol, long double scale, int depth) {
  long double kres, err;
  gk15(f, a, b, kres, err);
  if (depth > 48 || err <= rel_tol * std::max(scale, std::fabs(kres))) {
    return kres;
  }
  const long double c = (a + b) / 2;
  const long double sc = std::max(scale, std::fabs(kres));
  return integrate_rec(f, a, c, rel_tol, sc, depth + 1) +
         integrate_rec(f, c, b, rel_tol, sc, depth + 1);
}

}  // namespace detail

template <typename F>
long double integrate(F&& f, long double a, long double b,
                      long double rel_tol = 1e-13L) {
  if (a == b) return 0;
  return detail::integrate_rec(f, a, b, rel_tol, 0, 0);
}

}  // namespace normbound
