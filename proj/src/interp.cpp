#include "wspdiff/interp.hpp"

#include <algorithm>
#include <cmath>

namespace wspdiff {

namespace {

void check_nodes(std::span<const double> x, std::span<const double> y, const char* what) {
  if (x.size() != y.size() || x.size() < 2) {
    throw invalid_argument_error(std::string(what) + ": need matching arrays of >= 2 points");
  }
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i + 1] > x[i])) {
      throw invalid_argument_error(std::string(what) + ": abscissae must strictly increase");
    }
  }
}

/// Hermite basis evaluation on cell [x0, x1].
double hermite(double x0, double x1, double y0, double y1, double m0, double m1, double xq) {
  const double h = x1 - x0;
  const double t = (xq - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return y0 * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) + y1 * (-2 * t3 + 3 * t2) +
         h * m1 * (t3 - t2);
}

double hermite_deriv(double x0, double x1, double y0, double y1, double m0, double m1, double xq) {
  const double h = x1 - x0;
  const double t = (xq - x0) / h;
  const double t2 = t * t;
  return (y0 * (6 * t2 - 6 * t) + h * m0 * (3 * t2 - 4 * t + 1) + y1 * (-6 * t2 + 6 * t) +
          h * m1 * (3 * t2 - 2 * t)) /
         h;
}

}  // namespace

// ---------------------------------------------------------------------------
// MonotoneCubic
// ---------------------------------------------------------------------------

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  check_nodes(x, y, "MonotoneCubic");
  const std::size_t n = x_.size();

  increasing_ = y_[1] > y_[0];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool up = y_[i + 1] > y_[i];
    if (up != increasing_) {
      throw invalid_argument_error("MonotoneCubic: data must be strictly monotone");
    }
  }

  // Secant slopes.
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

  // Initial tangents: arithmetic means, one-sided at the ends.
  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) m_[i] = 0.5 * (d[i - 1] + d[i]);

  // Fritsch–Carlson limiting keeps each cubic monotone on its cell.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m_[i] = 0.0;
      m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / d[i];
    const double b = m_[i + 1] / d[i];
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m_[i] = tau * a * d[i];
      m_[i + 1] = tau * b * d[i];
    }
  }
}

std::size_t MonotoneCubic::cell_of(double xq) const {
  if (xq <= x_.front()) return 0;
  if (xq >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double MonotoneCubic::operator()(double xq) const {
  if (xq < x_.front()) return y_.front() + m_.front() * (xq - x_.front());
  if (xq > x_.back()) return y_.back() + m_.back() * (xq - x_.back());
  const std::size_t i = cell_of(xq);
  return hermite(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], xq);
}

double MonotoneCubic::derivative(double xq) const {
  if (xq < x_.front()) return m_.front();
  if (xq > x_.back()) return m_.back();
  const std::size_t i = cell_of(xq);
  return hermite_deriv(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], xq);
}

double MonotoneCubic::inverse(double yq, double tol) const {
  const double ylo = increasing_ ? y_.front() : y_.back();
  const double yhi = increasing_ ? y_.back() : y_.front();
  if (yq < ylo - 1e-12 || yq > yhi + 1e-12) {
    throw invalid_argument_error("MonotoneCubic::inverse: target outside value range");
  }
  double lo = x_.front();
  double hi = x_.back();
  // Bisection is unconditionally safe for a monotone interpolant.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double v = (*this)(mid);
    const bool go_right = increasing_ ? (v < yq) : (v > yq);
    if (go_right) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// CubicHermite
// ---------------------------------------------------------------------------

CubicHermite::CubicHermite(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  check_nodes(x, y, "CubicHermite");
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    return;
  }
  m_[0] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
  m_[n - 1] = (y_[n - 1] - y_[n - 2]) / (x_[n - 1] - x_[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    m_[i] = (y_[i + 1] - y_[i - 1]) / (x_[i + 1] - x_[i - 1]);
  }
}

std::size_t CubicHermite::cell_of(double xq) const {
  if (xq <= x_.front()) return 0;
  if (xq >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicHermite::operator()(double xq) const {
  if (xq < x_.front()) return y_.front() + m_.front() * (xq - x_.front());
  if (xq > x_.back()) return y_.back() + m_.back() * (xq - x_.back());
  const std::size_t i = cell_of(xq);
  return hermite(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], xq);
}

}  // namespace wspdiff
