#include "refcurve/qseries.hpp"

#include <stdexcept>

namespace refcurve {

namespace {

// exp of sum_m c_m q^m with c_m = -sum_{k|m} w(k)/k (a product of (1 - .q^n) factors).
template <class W>
SeriesQ product_from_weights(int T, W w) {
  SeriesQ lg(T, 0);
  for (int m = 1; m <= T; ++m) {
    LaurentY s;
    for (int k = 1; k <= m; ++k)
      if (m % k == 0) s += w(k, m / k) * Rational(-1, k);
    lg.at(m) = s;
  }
  return exp(lg);
}

}  // namespace

SeriesQ dg2_tilde(int T) {
  if (T < 1) throw std::invalid_argument("dg2_tilde: order must be >= 1");
  SeriesQ s(T, 0);
  for (int m = 1; m <= T; ++m) {
    LaurentY c;
    for (int d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      LaurentY qd = LaurentY::quantum_int(d);
      c += qd * qd * Rational(m / d);
    }
    s.at(m) = c;
  }
  return s;
}

SeriesQ delta_tilde(int T) {
  if (T < 1) throw std::invalid_argument("delta_tilde: order must be >= 1");
  // log of (1 - y^a q^n) contributes -y^{ak} q^{nk}/k; for fixed k the
  // exponent set is {0 (x20), y (x2), 1/y (x2)}.
  SeriesQ p = product_from_weights(T - 1, [](int k, int) {
    return LaurentY(20L) + LaurentY::y_pow(k, 2) + LaurentY::y_pow(-k, 2);
  });
  return p.shift(1);
}

SeriesQ g2(int T) {
  SeriesQ s(T, 0);
  s.at(0) = LaurentY(Rational(1, 24));
  for (int m = 1; m <= T; ++m) {
    long sig = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) sig += d;
    s.at(m) = LaurentY(sig);
  }
  return s;
}

SeriesQ g2bar(int T) {
  SeriesQ s(T, 0);
  for (int n = 1; n <= T; ++n) {
    long c = 0;
    for (int d = 1; d <= n; d += 2)
      if (n % d == 0) c += n / d;
    s.at(n) = LaurentY(c);
  }
  return s;
}

SeriesQ delta(int T) {
  return product_from_weights(T - 1, [](int, int) { return LaurentY(24L); }).shift(1);
}

EtaProduct eta_product(int e1, int e2, int T) {
  EtaProduct e;
  e.e1 = e1;
  e.e2 = e2;
  e.prefix = frac(e1 + 2 * e2, 24);
  // (1-q^{2n})^{e2} contributes to q^{nk} weights only when n is even.
  e.series = product_from_weights(T, [e1, e2](int, int n) {
    return LaurentY(static_cast<long>(e1 + (n % 2 == 0 ? e2 : 0)));
  });
  return e;
}

SeriesQ substitute_y_shift(const SeriesQ& f, int T) {
  if (f.valuation() < 0) throw std::domain_error("substitute_y_shift: negative q-powers");
  SeriesQ one_plus_q(T, 0);
  one_plus_q.at(0) = LaurentY(1L);
  if (T >= 1) one_plus_q.at(1) = LaurentY(1L);
  SeriesQ r(T, 0);
  for (int k = 0; k <= T; ++k) {
    const LaurentY fk = f.coeff(k);
    for (const auto& [h, c] : fk.terms()) {
      // y^{h/2} -> y^{h/2} (1+q)^{3h/2}
      SeriesQ factor = pow_rational(one_plus_q.truncated(T - k), frac(3 * h, 2));
      r += (factor * LaurentY::monomial(h, c)).shift(k);
    }
  }
  return r;
}

IdentityReport dg2_footnote_identity_check(int T, bool plus_sign, const Rational& g2_offset,
                                           int perturb_at) {
  SeriesQ lhs = dg2_tilde(T) * (LaurentY::y_pow(1) - LaurentY(2L) + LaurentY::y_pow(-1));
  if (perturb_at >= 0 && perturb_at <= T) lhs.at(perturb_at) += LaurentY(1L);
  SeriesQ rhs = (g2(T) + SeriesQ::constant(LaurentY(g2_offset), T)) * LaurentY(-2L);
  for (int d = 1; d <= T; ++d)
    for (int e = 1; d * e <= T; ++e) {
      LaurentY t = LaurentY::y_pow(d, e) + LaurentY::y_pow(-d, plus_sign ? e : -e);
      rhs.at(d * e) += t;
    }
  IdentityReport rep;
  int k = lhs.first_difference(rhs, T);
  if (k <= T) {
    rep.pass = false;
    rep.first_failure = k;
    rep.lhs = lhs.coeff(k);
    rep.rhs = rhs.coeff(k);
  }
  return rep;
}

}  // namespace refcurve
