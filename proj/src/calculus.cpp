#include "wspdiff/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wspdiff {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

std::vector<double> quadrature_weights(const Grid1D& grid) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<double> w(n, h);
  if (grid.domain() != Domain::kCircle) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
  }
  return w;
}

double integrate(const SampledFunction& f) {
  const auto w = quadrature_weights(f.grid);
  std::vector<double> terms(f.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = w[i] * f.values[i];
  return pairwise_sum(terms);
}

std::vector<double> cumulative_integral(const SampledFunction& f) {
  const double h = f.grid.spacing();
  std::vector<double> F(f.values.size(), 0.0);
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    F[i] = F[i - 1] + 0.5 * h * (f.values[i - 1] + f.values[i]);
  }
  return F;
}

double lp_integral(const SampledFunction& f, double p) {
  const auto w = quadrature_weights(f.grid);
  std::vector<double> terms(f.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = w[i] * abs_pow(f.values[i], p);
  return pairwise_sum(terms);
}

std::vector<double> circle_antiderivative(const SampledFunction& f) {
  if (f.grid.domain() != Domain::kCircle) {
    throw invalid_argument_error("circle_antiderivative: circle grids only");
  }
  const std::size_t n = f.grid.size();
  std::vector<std::complex<double>> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = f.values[i];
  fft(a, false);
  const double mean = a[0].real() / static_cast<double>(n);
  const double two_pi = 2.0 * std::numbers::pi;
  a[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = (k <= n / 2) ? static_cast<double>(k)
                                   : static_cast<double>(k) - static_cast<double>(n);
    if (n % 2 == 0 && k == n / 2) {
      a[k] = 0.0;  // unpaired Nyquist mode: no odd antiderivative
      continue;
    }
    a[k] /= std::complex<double>(0.0, two_pi * kk);
  }
  fft(a, true);
  std::vector<double> F(n);
  const double F0 = a[0].real();
  for (std::size_t i = 0; i < n; ++i) {
    F[i] = mean * f.grid.node(i) + a[i].real() - F0;
  }
  return F;
}

// ---------------------------------------------------------------------------
// FFT
// ---------------------------------------------------------------------------

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& z : a) z /= static_cast<double>(n);
  }
}

void dft_dense(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n, {0.0, 0.0});
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ang =
          sign * 2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
      out[k] += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
  }
  if (inverse) {
    for (auto& z : out) z /= static_cast<double>(n);
  }
  a = std::move(out);
}

}  // namespace

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  if (a.empty()) return;
  if (is_pow2(a.size())) {
    fft_radix2(a, inverse);
  } else {
    dft_dense(a, inverse);
  }
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

/// Spectral derivative of periodic samples with period `span`.
std::vector<double> periodic_spectral_derivative(const std::vector<double>& v, double span) {
  const std::size_t n = v.size();
  std::vector<std::complex<double>> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = v[i];
  fft(a, false);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < n; ++k) {
    // Signed frequency in [-n/2, n/2).
    const double kk = (k <= n / 2) ? static_cast<double>(k)
                                   : static_cast<double>(k) - static_cast<double>(n);
    std::complex<double> ik(0.0, two_pi * kk / span);
    // The unpaired Nyquist mode has no well-defined odd derivative; drop it.
    if (n % 2 == 0 && k == n / 2) ik = 0.0;
    a[k] *= ik;
  }
  fft(a, true);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i].real();
  return out;
}

/// 4th-order finite differences on a uniform non-periodic grid.
std::vector<double> fd4_derivative(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  const double c = 1.0 / (12.0 * h);
  // One-sided 5-point closures at the two nodes nearest each boundary.
  out[0] = c * (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]);
  out[1] = c * (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]);
  out[n - 2] = -c * (-3 * v[n - 1] - 10 * v[n - 2] + 18 * v[n - 3] - 6 * v[n - 4] + v[n - 5]);
  out[n - 1] = -c * (-25 * v[n - 1] + 48 * v[n - 2] - 36 * v[n - 3] + 16 * v[n - 4] - 3 * v[n - 5]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = c * (v[i - 2] - 8 * v[i - 1] + 8 * v[i + 1] - v[i + 2]);
  }
  return out;
}

}  // namespace

SampledFunction derivative(const SampledFunction& f) {
  if (f.grid.domain() == Domain::kCircle) {
    return SampledFunction{f.grid, periodic_spectral_derivative(f.values, f.grid.span())};
  }
  return SampledFunction{f.grid, fd4_derivative(f.values, f.grid.spacing())};
}

SampledFunction derivative_k(const SampledFunction& f, int k) {
  if (k < 0) throw invalid_argument_error("derivative_k: negative order");
  SampledFunction g = f;
  for (int j = 0; j < k; ++j) g = derivative(g);
  return g;
}

std::vector<double> circle_diffeo_derivative(const CircleDiffeo& phi) {
  const std::size_t n = phi.grid().size();
  std::vector<double> disp(n);
  for (std::size_t i = 0; i < n; ++i) disp[i] = phi.lift()[i] - phi.grid().node(i);
  auto d = periodic_spectral_derivative(disp, 1.0);
  for (auto& x : d) x += 1.0;
  return d;
}

std::vector<double> interval_diffeo_derivative(const IntervalDiffeo& phi) {
  return fd4_derivative(phi.values(), phi.grid().spacing());
}

// ---------------------------------------------------------------------------
// Mollification
// ---------------------------------------------------------------------------

namespace {

/// Discrete bump kernel of radius h on a grid of spacing dx, normalized to
/// unit sum.  Returns the one-sided radius r and weights w[-r..r] flattened
/// as w[0..2r].  Degenerates to the identity kernel when h < dx.
std::pair<int, std::vector<double>> bump_kernel(double h, double dx) {
  if (!(h > 0.0)) throw invalid_argument_error("mollify: radius must be positive");
  const int r = static_cast<int>(std::floor(h / dx - 1e-12));
  if (r <= 0) return {0, {1.0}};
  std::vector<double> w(2 * r + 1, 0.0);
  for (int j = -r; j <= r; ++j) {
    const double u = static_cast<double>(j) * dx / h;
    w[j + r] = std::exp(1.0 / (u * u - 1.0));
  }
  const double total = pairwise_sum(w);
  for (auto& x : w) x /= total;
  return {r, w};
}

/// Convolve with explicit out-of-range extension rule.
/// ext(i) must return the value for any integer index (possibly outside).
template <typename Ext>
std::vector<double> convolve(std::size_t n, int r, const std::vector<double>& w, Ext&& ext) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -r; j <= r; ++j) {
      acc += w[j + r] * ext(static_cast<long>(i) + j);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

SampledFunction mollify(const SampledFunction& f, double h) {
  const auto [r, w] = bump_kernel(h, f.grid.spacing());
  if (r == 0) return f;
  const long n = static_cast<long>(f.values.size());
  const auto& v = f.values;
  std::vector<double> out;
  switch (f.grid.domain()) {
    case Domain::kCircle:
      out = convolve(v.size(), r, w, [&](long i) { return v[((i % n) + n) % n]; });
      break;
    case Domain::kLine:
      out = convolve(v.size(), r, w, [&](long i) { return (i < 0 || i >= n) ? 0.0 : v[i]; });
      break;
    case Domain::kInterval:
      out = convolve(v.size(), r, w, [&](long i) {
        if (i < 0) return v[0] + (v[1] - v[0]) * static_cast<double>(i);
        if (i >= n) return v[n - 1] + (v[n - 1] - v[n - 2]) * static_cast<double>(i - (n - 1));
        return v[i];
      });
      break;
  }
  return SampledFunction{f.grid, std::move(out)};
}

CircleDiffeo mollify(const CircleDiffeo& phi, double h) {
  const auto [r, w] = bump_kernel(h, phi.grid().spacing());
  if (r == 0) return phi;
  const long n = static_cast<long>(phi.grid().size());
  std::vector<double> disp(n);
  for (long i = 0; i < n; ++i) disp[i] = phi.lift()[i] - phi.grid().node(i);
  auto smoothed = convolve(disp.size(), r, w, [&](long i) { return disp[((i % n) + n) % n]; });
  for (long i = 0; i < n; ++i) smoothed[i] += phi.grid().node(i);
  return CircleDiffeo::create(phi.grid(), std::move(smoothed));
}

IntervalDiffeo mollify(const IntervalDiffeo& phi, double h) {
  const auto [r, w] = bump_kernel(h, phi.grid().spacing());
  if (r == 0) return phi;
  const long n = static_cast<long>(phi.grid().size());
  std::vector<double> disp(n);
  for (long i = 0; i < n; ++i) disp[i] = phi.values()[i] - phi.grid().node(i);
  // Odd reflection: disp(-x) = -disp(x) about both endpoints pins them and
  // continues boundary-linear displacements exactly.
  auto ext = [&](long i) {
    if (i < 0) return -disp[-i];
    if (i >= n) return -disp[2 * (n - 1) - i];
    return disp[i];
  };
  auto smoothed = convolve(disp.size(), r, w, ext);
  for (long i = 0; i < n; ++i) smoothed[i] += phi.grid().node(i);
  smoothed.front() = 0.0;
  smoothed.back() = phi.grid().span();
  return IntervalDiffeo::create(phi.grid(), std::move(smoothed));
}

// ---------------------------------------------------------------------------
// Reference integrators
// ---------------------------------------------------------------------------

namespace {

// 7-point Gauss–Legendre nodes/weights on [-1, 1].
constexpr double kGx[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                           0.0,                 0.4058451513773972,  0.7415311855993945,
                           0.9491079123427585};
constexpr double kGw[7] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                           0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                           0.1294849661688697};

double gauss7_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double rad = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 7; ++i) acc += kGw[i] * f(mid + rad * kGx[i]);
  return acc * rad;
}

}  // namespace

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int panels) {
  if (!(b > a)) return 0.0;
  std::vector<double> terms(static_cast<std::size_t>(panels));
  const double dx = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    terms[static_cast<std::size_t>(i)] = gauss7_panel(f, a + i * dx, a + (i + 1) * dx);
  }
  return pairwise_sum(terms);
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        bool singular_at_a, bool singular_at_b, int levels, double ratio) {
  if (!(b > a)) return 0.0;
  if (!singular_at_a && !singular_at_b) return integrate_gauss(f, a, b, 64);

  std::vector<double> terms;
  auto graded_half = [&](double from, double to, bool toward_from) {
    // Panels shrink geometrically toward `from` (if toward_from) or `to`.
    double len = to - from;
    double lo = from;
    double hi = to;
    for (int l = 0; l < levels; ++l) {
      len *= ratio;
      if (toward_from) {
        const double cut = from + len;
        if (!(cut > from && cut < hi)) break;  // below floating-point resolution
        terms.push_back(gauss7_panel(f, cut, hi));
        hi = cut;
      } else {
        const double cut = to - len;
        if (!(cut < to && cut > lo)) break;  // below floating-point resolution
        terms.push_back(gauss7_panel(f, lo, cut));
        lo = cut;
      }
    }
    // Final sliver next to the singular endpoint: the integrand is
    // integrable there, so a last explicit panel bounds the omission.  A
    // sliver thinner than about 100 ulps of the endpoint can place Gauss
    // nodes exactly on the singularity and evaluate non-finite; its true
    // contribution is below double resolution, so it is dropped rather than
    // poisoning the sum.
    const double sliver = toward_from ? gauss7_panel(f, from, hi) : gauss7_panel(f, lo, to);
    if (std::isfinite(sliver)) terms.push_back(sliver);
  };

  if (singular_at_a && singular_at_b) {
    const double mid = 0.5 * (a + b);
    graded_half(a, mid, true);
    graded_half(mid, b, false);
  } else if (singular_at_a) {
    graded_half(a, b, true);
  } else {
    graded_half(a, b, false);
  }
  return pairwise_sum(terms);
}

}  // namespace wspdiff
