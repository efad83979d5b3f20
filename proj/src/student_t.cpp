#include "isee/student_t.hpp"

#include "isee/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace isee {
namespace {

// Continued fraction for the incomplete beta (modified Lentz). Converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalFailure("incomplete beta continued fraction did not converge");
}

// log of x^a (1-x)^b / (a B(a, b))
double log_beta_prefactor(double a, double b, double x) {
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
         a * std::log(x) + b * std::log1p(-x);
}

// Upper tail P(T > t) for t >= 0.
double student_t_upper_tail(double t, double df) {
  const double x = df / (df + t * t);
  return 0.5 * incomplete_beta(0.5 * df, 0.5, x);
}

double student_t_pdf(double t, double df) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) -
                          std::lgamma(0.5 * df) -
                          0.5 * std::log(df * M_PI);
  return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

// Solves P(T > t) = tail for t >= 0, tail in (0, 1/2].
double upper_quantile(double tail, double df) {
  if (tail == 0.5) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_upper_tail(hi, df) > tail) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw NumericalFailure("t quantile bracket diverged");
    }
  }
  // Safeguarded Newton on g(t) = upper_tail(t) - tail, g decreasing in t.
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double g = student_t_upper_tail(t, df) - tail;
    if (g > 0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = -student_t_pdf(t, df);
    double next = t - g / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = 0.5 * (lo + hi);
    }
    const double step = std::fabs(next - t);
    t = next;
    if (step <= 1e-12 * std::max(1.0, std::fabs(t)) || hi - lo <= 1e-12) {
      return t;
    }
  }
  return t;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidInput("incomplete beta requires positive shape parameters");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidInput("incomplete beta argument outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_beta_prefactor(a, b, x)) *
           beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_beta_prefactor(b, a, 1.0 - x)) *
                   beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw InvalidInput("t distribution needs df > 0");
  if (t >= 0.0) return 1.0 - student_t_upper_tail(t, df);
  return student_t_upper_tail(-t, df);
}

double student_t_quantile(double prob, double df) {
  if (!(df > 0.0)) throw InvalidInput("t distribution needs df > 0");
  if (!(prob > 0.0 && prob < 1.0)) {
    throw InvalidConfiguration("t quantile level " + std::to_string(prob) +
                               " outside (0, 1)");
  }
  if (prob >= 0.5) return upper_quantile(1.0 - prob, df);
  return -upper_quantile(prob, df);
}

}  // namespace isee
