#include "wspdiff/norms.hpp"

#include <algorithm>
#include <cmath>

namespace wspdiff {

namespace {

/// Invoke `body` with a concrete |x|^p functor, specializing the common
/// exponents so the O(n^2) pair loops avoid std::pow.
template <typename Body>
double dispatch_pow(double p, Body&& body) {
  if (p == 2.0) return body([](double x) { return x * x; });
  if (p == 1.0) return body([](double x) { return std::abs(x); });
  if (p == 3.0) return body([](double x) { return std::abs(x) * x * x; });
  if (p == 4.0) return body([](double x) {
    const double x2 = x * x;
    return x2 * x2;
  });
  if (p == 1.5) return body([](double x) {
    const double a = std::abs(x);
    return a * std::sqrt(a);
  });
  return body([p](double x) { return std::pow(std::abs(x), p); });
}

/// Circle pair sum: h^2 * sum_{i != j} |v_i - v_j|^p * d_arc(i,j)^{-beta},
/// exploiting the offset symmetry d <-> n-d.
double gag_main_circle(const std::vector<double>& v, double h, double beta, double p) {
  const std::size_t n = v.size();
  return dispatch_pow(p, [&](auto pw) {
    std::vector<double> terms;
    terms.reserve(n / 2 + 1);
    for (std::size_t d = 1; d <= n / 2; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + d < n) ? i + d : i + d - n;
        s += pw(v[i] - v[j]);
      }
      const double mult = (2 * d == n) ? 1.0 : 2.0;
      terms.push_back(mult * std::pow(static_cast<double>(d) * h, -beta) * s);
    }
    return pairwise_sum(terms) * h * h;
  });
}

/// Line/interval pair sum over the core square [0, span]^2 (ordered pairs).
double gag_main_core(const std::vector<double>& v, double h, double beta, double p) {
  const std::size_t n = v.size();
  return dispatch_pow(p, [&](auto pw) {
    std::vector<double> terms;
    terms.reserve(n - 1);
    for (std::size_t d = 1; d < n; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i + d < n; ++i) s += pw(v[i] - v[i + d]);
      terms.push_back(2.0 * std::pow(static_cast<double>(d) * h, -beta) * s);
    }
    return pairwise_sum(terms) * h * h;
  });
}

/// Pairs between the core [0, span] and the zero-padded window extension
/// [-span, 0) u (span, 2span]: 2 * h^2 * sum_i |v_i|^p * W(i), with W built
/// from prefix sums of m^{-beta}.
double gag_window_ext(const std::vector<double>& v, double h, double beta, double p) {
  const std::size_t n = v.size();
  // P[m] = sum_{j=1}^m j^{-beta}
  std::vector<double> P(2 * n - 1, 0.0);
  for (std::size_t m = 1; m < P.size(); ++m) {
    P[m] = P[m - 1] + std::pow(static_cast<double>(m), -beta);
  }
  return dispatch_pow(p, [&](auto pw) {
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double W =
          (P[i + n - 1] - P[i]) + (P[2 * (n - 1) - i] - P[n - 1 - i]);
      terms[i] = pw(v[i]) * W;
    }
    return 2.0 * std::pow(h, -beta) * h * h * pairwise_sum(terms);
  });
}

/// Closed-form remainder beyond the window [-span, 2span], exact for
/// functions vanishing outside [0, span]:
///   2/(sigma p) * int |f(y)|^p [ (y+span)^{-sigma p} + (2span-y)^{-sigma p} ] dy.
double gag_tail_beyond_window(const SampledFunction& f, double sp, double p) {
  const auto w = quadrature_weights(f.grid);
  const double span = f.grid.span();
  return dispatch_pow(p, [&](auto pw) {
    std::vector<double> terms(f.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double y = f.grid.node(i);
      terms[i] =
          w[i] * pw(f.values[i]) * (std::pow(y + span, -sp) + std::pow(2.0 * span - y, -sp));
    }
    return (2.0 / sp) * pairwise_sum(terms);
  });
}

/// Analytic value of the excluded band iint_{|x-y|<h}:
///   ||f'||_p^p * 2 h^{p - sigma p} / (p - sigma p).
double gag_band_correction(const SampledFunction& f, double h, double sp, double p) {
  const SampledFunction df = derivative(f);
  return lp_integral(df, p) * 2.0 * std::pow(h, p - sp) / (p - sp);
}

/// The p-th power of the seminorm at the function's own resolution.
double gag_pth_power(const SampledFunction& f, double sigma, double p) {
  const double h = f.grid.spacing();
  const double sp = sigma * p;
  const double beta = 1.0 + sp;
  double total = gag_band_correction(f, h, sp, p);
  switch (f.grid.domain()) {
    case Domain::kCircle:
      total += gag_main_circle(f.values, h, beta, p);
      break;
    case Domain::kLine:
      total += gag_main_core(f.values, h, beta, p);
      total += gag_window_ext(f.values, h, beta, p);
      total += gag_tail_beyond_window(f, sp, p);
      break;
    case Domain::kInterval:
      total += gag_main_core(f.values, h, beta, p);
      break;
  }
  return total;
}

/// Stride-2 subsample for the self-estimate, when the node count allows an
/// exact sub-grid (circle: even n; interval/line: odd n).
std::optional<SampledFunction> half_resolution(const SampledFunction& f) {
  const std::size_t n = f.grid.size();
  const bool ok = f.grid.domain() == Domain::kCircle ? (n % 2 == 0 && n / 2 >= 8)
                                                     : (n % 2 == 1 && (n + 1) / 2 >= 8);
  if (!ok) return std::nullopt;
  const std::size_t m = f.grid.domain() == Domain::kCircle ? n / 2 : (n + 1) / 2;
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = f.values[2 * i];
  Grid1D g = f.grid.domain() == Domain::kCircle ? Grid1D::circle(m)
             : f.grid.domain() == Domain::kInterval
                 ? Grid1D::interval(m, f.grid.span())
                 : Grid1D::line(m, f.grid.span());
  return SampledFunction{g, std::move(v)};
}

}  // namespace

// ---------------------------------------------------------------------------
// SobolevIndex
// ---------------------------------------------------------------------------

SobolevIndex SobolevIndex::create(double s, double p) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw invalid_argument_error("SobolevIndex: s must be finite and >= 0");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw invalid_argument_error("SobolevIndex: p must be finite and >= 1");
  }
  const int k = static_cast<int>(std::floor(s));
  return SobolevIndex{s, p, k, s - k};
}

// ---------------------------------------------------------------------------
// Basic norms
// ---------------------------------------------------------------------------

double lp_norm(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw invalid_argument_error("lp_norm: p must be >= 1");
  return std::pow(lp_integral(f, p), 1.0 / p);
}

double homogeneous_kp_seminorm(const SampledFunction& f, int k, double p) {
  if (k < 0) throw invalid_argument_error("homogeneous_kp_seminorm: negative order");
  if (f.grid.size() < static_cast<std::size_t>(32 * std::max(k, 1))) {
    throw invalid_argument_error(
        "homogeneous_kp_seminorm: grid too coarse for derivative order " + std::to_string(k) +
        " (need >= " + std::to_string(32 * std::max(k, 1)) + " nodes)");
  }
  return lp_norm(derivative_k(f, k), p);
}

static GagliardoResult gagliardo_impl(const SampledFunction& f, double sigma, double p,
                                      bool with_err) {
  GagliardoResult r;
  r.band_h = f.grid.spacing();
  switch (f.grid.domain()) {
    case Domain::kCircle: r.convention = "circle-arc-distance"; break;
    case Domain::kLine: r.convention = "line-window-with-exact-tail"; break;
    case Domain::kInterval: r.convention = "interval-restricted"; break;
  }
  const double fine = gag_pth_power(f, sigma, p);
  r.value = std::pow(fine, 1.0 / p);
  if (with_err) {
    if (auto coarse_f = half_resolution(f)) {
      const double coarse = std::pow(gag_pth_power(*coarse_f, sigma, p), 1.0 / p);
      if (r.value > 0.0) r.est_rel_err = std::abs(r.value - coarse) / r.value;
    }
  }
  return r;
}

GagliardoResult gagliardo_seminorm_1d(const SampledFunction& f, double sigma, double p,
                                      bool with_error_estimate) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw invalid_argument_error("gagliardo_seminorm_1d: sigma must lie in (0, 1)");
  }
  if (!(p >= 1.0)) throw invalid_argument_error("gagliardo_seminorm_1d: p must be >= 1");
  if (f.grid.size() < 8) throw invalid_argument_error("gagliardo_seminorm_1d: grid too coarse");
  return gagliardo_impl(f, sigma, p, with_error_estimate);
}

NormReport wsp_norm(const SampledFunction& f, const SobolevIndex& idx) {
  NormReport rep;
  rep.s = idx.s;
  rep.p = idx.p;
  rep.dim = 1;
  rep.quad.grid_n = f.grid.size();
  rep.quad.p_equals_1 = (idx.p == 1.0);
  if (rep.quad.p_equals_1) {
    rep.quad.conventions.push_back("p=1:norm-valid-but-not-smooth");
  }

  if (idx.k > 0 && f.grid.size() < static_cast<std::size_t>(32 * idx.k)) {
    throw invalid_argument_error("wsp_norm: grid too coarse for derivative order " +
                                 std::to_string(idx.k));
  }

  rep.lp_part = lp_norm(f, idx.p);

  SampledFunction g = f;
  for (int j = 1; j <= idx.k; ++j) {
    g = derivative(g);
    rep.parts.emplace_back(static_cast<double>(j), lp_norm(g, idx.p));
  }
  if (idx.sigma > 0.0) {
    const GagliardoResult gr = gagliardo_seminorm_1d(g, idx.sigma, idx.p);
    rep.parts.emplace_back(idx.s, gr.value);
    rep.quad.band_h = gr.band_h;
    rep.quad.est_rel_err = gr.est_rel_err;
    rep.quad.conventions.push_back(gr.convention);
  }

  rep.total = rep.lp_part;
  for (const auto& [order, value] : rep.parts) rep.total += value;
  return rep;
}

double top_seminorm(const SampledFunction& f, const SobolevIndex& idx) {
  if (idx.sigma > 0.0) {
    const SampledFunction g = derivative_k(f, idx.k);
    return gagliardo_seminorm_1d(g, idx.sigma, idx.p, /*with_error_estimate=*/false).value;
  }
  if (idx.k == 0) return lp_norm(f, idx.p);
  return homogeneous_kp_seminorm(f, idx.k, idx.p);
}

// ---------------------------------------------------------------------------
// Rescaling and embedding diagnostics
// ---------------------------------------------------------------------------

SampledFunction scaling_op(const SampledFunction& f, double lambda) {
  if (f.grid.domain() != Domain::kLine) {
    throw invalid_argument_error("scaling_op: defined for line-domain functions only");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw invalid_argument_error("scaling_op: lambda must be positive");
  }
  Grid1D g = Grid1D::line(f.grid.size(), f.grid.span() / lambda);
  std::vector<double> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i] / lambda;
  return SampledFunction{g, std::move(v)};
}

double critical_embedding_ratio(const SampledFunction& f, double p, double q) {
  if (!(q >= 1.0)) throw invalid_argument_error("critical_embedding_ratio: q must be >= 1");
  const double num = lp_norm(f, q);
  const NormReport den = wsp_norm(f, SobolevIndex::create(1.0 / p, p));
  if (!(den.total > 0.0)) {
    throw numerical_error("critical_embedding_ratio: vanishing critical norm");
  }
  return num / (std::pow(q, 1.0 - 1.0 / p) * den.total);
}

}  // namespace wspdiff
