#include "wspdiff/paths.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "wspdiff/calculus.hpp"
#include "wspdiff/constructions.hpp"

namespace wspdiff {

// ---------------------------------------------------------------------------
// TimeGrid / DiffPath
// ---------------------------------------------------------------------------

TimeGrid TimeGrid::create(std::size_t m) {
  if (m < 8) throw invalid_argument_error("TimeGrid: need at least 8 steps");
  return TimeGrid{m};
}

DiffPath DiffPath::create(TimeGrid times, std::vector<AnyDiffeo> maps) {
  if (maps.size() != times.nodes()) {
    throw invalid_argument_error("DiffPath: need exactly m+1 maps, got " +
                                 std::to_string(maps.size()));
  }
  const bool circle0 = std::holds_alternative<CircleDiffeo>(maps.front());
  const Grid1D& g0 = diffeo_grid(maps.front());
  for (const auto& m2 : maps) {
    if (std::holds_alternative<CircleDiffeo>(m2) != circle0 || diffeo_grid(m2) != g0) {
      throw invalid_argument_error("DiffPath: all maps must share one kind and one grid");
    }
  }
  return DiffPath{times, std::move(maps)};
}

// ---------------------------------------------------------------------------
// Velocity extraction
// ---------------------------------------------------------------------------

namespace {

/// Time-difference of the map values at node j (2nd order; one-sided ends).
std::vector<double> time_difference(const std::vector<AnyDiffeo>& maps, TimeGrid times,
                                    std::size_t j) {
  const std::size_t m = times.m;
  const double dt = times.dt();
  const auto& at = [&maps](std::size_t idx) -> const std::vector<double>& {
    return diffeo_values(maps[idx]);
  };
  const std::size_t n = at(0).size();
  std::vector<double> d(n);
  if (j == 0) {
    const auto &v0 = at(0), &v1 = at(1), &v2 = at(2);
    for (std::size_t i = 0; i < n; ++i) d[i] = (-3 * v0[i] + 4 * v1[i] - v2[i]) / (2 * dt);
  } else if (j == m) {
    const auto &v0 = at(m), &v1 = at(m - 1), &v2 = at(m - 2);
    for (std::size_t i = 0; i < n; ++i) d[i] = (3 * v0[i] - 4 * v1[i] + v2[i]) / (2 * dt);
  } else {
    const auto &va = at(j + 1), &vb = at(j - 1);
    for (std::size_t i = 0; i < n; ++i) d[i] = (va[i] - vb[i]) / (2 * dt);
  }
  return d;
}

/// u_j resampled onto the uniform grid from its exact values at the warped
/// nodes phi_j(x_k).
SampledFunction extract_at(const std::vector<AnyDiffeo>& maps, TimeGrid times, std::size_t j) {
  const Grid1D& grid = diffeo_grid(maps[j]);
  const std::vector<double> dphi = time_difference(maps, times, j);
  const auto& warped = diffeo_values(maps[j]);
  const std::size_t n = grid.size();

  std::vector<double> out(n);
  if (grid.domain() == Domain::kCircle) {
    // Abscissae: one full period of the lift plus the wrap node.
    std::vector<double> xs(n + 1), ys(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = warped[k];
      ys[k] = dphi[k];
    }
    xs[n] = warped[0] + 1.0;
    ys[n] = dphi[0];
    const CubicHermite interp(xs, ys);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.node(i);
      const double shifted = x - std::floor(x - xs[0]);  // into [xs0, xs0+1)
      out[i] = interp(shifted);
    }
  } else {
    const CubicHermite interp(warped, dphi);
    for (std::size_t i = 0; i < n; ++i) out[i] = interp(grid.node(i));
  }
  return SampledFunction{grid, std::move(out)};
}

std::vector<double> trapezoid_time_weights(TimeGrid times) {
  std::vector<double> w(times.nodes(), times.dt());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double slice_norm(const SampledFunction& u, const SobolevIndex& idx, bool homogeneous_only) {
  return homogeneous_only ? top_seminorm(u, idx) : wsp_norm(u, idx).total;
}

}  // namespace

SampledFunction extract_vector_field(const DiffPath& path, std::size_t j) {
  if (j >= path.maps.size()) throw invalid_argument_error("extract_vector_field: index");
  return extract_at(path.maps, path.times, j);
}

std::vector<double> path_integrand(const DiffPath& path, const SobolevIndex& idx,
                                   bool homogeneous_only) {
  std::vector<double> N(path.times.nodes());
  for (std::size_t j = 0; j < N.size(); ++j) {
    N[j] = slice_norm(extract_at(path.maps, path.times, j), idx, homogeneous_only);
  }
  return N;
}

double path_length(const DiffPath& path, const SobolevIndex& idx, bool homogeneous_only) {
  const auto N = path_integrand(path, idx, homogeneous_only);
  const auto w = trapezoid_time_weights(path.times);
  std::vector<double> terms(N.size());
  for (std::size_t j = 0; j < N.size(); ++j) terms[j] = w[j] * N[j];
  return pairwise_sum(terms);
}

DiffPath reverse(const DiffPath& path) {
  std::vector<AnyDiffeo> maps(path.maps.rbegin(), path.maps.rend());
  return DiffPath::create(path.times, std::move(maps));
}

DiffPath concatenate(const DiffPath& p, const DiffPath& q) {
  if (p.times.m != q.times.m) {
    throw invalid_argument_error("concatenate: paths must have equal step counts");
  }
  if (p.grid() != q.grid()) throw invalid_argument_error("concatenate: grids differ");
  const auto& end_p = diffeo_values(p.maps.back());
  const auto& start_q = diffeo_values(q.maps.front());
  for (std::size_t i = 0; i < end_p.size(); ++i) {
    if (std::abs(end_p[i] - start_q[i]) > 1e-9) {
      throw invalid_argument_error("concatenate: second path does not start at first's end");
    }
  }
  std::vector<AnyDiffeo> maps = p.maps;
  maps.insert(maps.end(), q.maps.begin() + 1, q.maps.end());
  return DiffPath::create(TimeGrid::create(2 * p.times.m), std::move(maps));
}

// ---------------------------------------------------------------------------
// Path construction
// ---------------------------------------------------------------------------

namespace {

AnyDiffeo affine_combination(const AnyDiffeo& a, const AnyDiffeo& b, double t) {
  const auto& va = diffeo_values(a);
  const auto& vb = diffeo_values(b);
  std::vector<double> v(va.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - t) * va[i] + t * vb[i];
  if (std::holds_alternative<CircleDiffeo>(a)) {
    return CircleDiffeo::create(diffeo_grid(a), std::move(v));
  }
  return IntervalDiffeo::create(diffeo_grid(a), std::move(v));
}

}  // namespace

DiffPath affine_path(const AnyDiffeo& a, const AnyDiffeo& b, TimeGrid times) {
  if (std::holds_alternative<CircleDiffeo>(a) != std::holds_alternative<CircleDiffeo>(b) ||
      diffeo_grid(a) != diffeo_grid(b)) {
    throw invalid_argument_error("affine_path: endpoints must share kind and grid");
  }
  std::vector<AnyDiffeo> maps;
  maps.reserve(times.nodes());
  for (std::size_t j = 0; j < times.nodes(); ++j) {
    maps.push_back(affine_combination(a, b, times.t(j)));
  }
  return DiffPath::create(times, std::move(maps));
}

DiffPath affine_path(const AnyDiffeo& target, TimeGrid times) {
  const Grid1D& g = diffeo_grid(target);
  AnyDiffeo id = std::holds_alternative<CircleDiffeo>(target)
                     ? AnyDiffeo(CircleDiffeo::identity(g))
                     : AnyDiffeo(IntervalDiffeo::identity(g));
  return affine_path(id, target, times);
}

DiffPath flow(const std::function<double(double, double)>& u, Grid1D grid, TimeGrid times) {
  const std::size_t n = grid.size();
  const bool circle = grid.domain() == Domain::kCircle;
  const double dt = times.dt();

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = grid.node(i);

  auto make_map = [&](const std::vector<double>& vals, std::size_t step) -> AnyDiffeo {
    try {
      if (circle) return CircleDiffeo::create(grid, vals);
      std::vector<double> v = vals;
      v.front() = 0.0;
      v.back() = grid.span();
      return IntervalDiffeo::create(grid, std::move(v));
    } catch (const invalid_diffeo_error& e) {
      throw numerical_error("flow: monotonicity lost at time step " + std::to_string(step) +
                            " — refine the time grid or weaken the field (" + e.what() + ")");
    }
  };

  std::vector<AnyDiffeo> maps;
  maps.reserve(times.nodes());
  maps.push_back(make_map(y, 0));

  for (std::size_t j = 0; j < times.m; ++j) {
    const double t = times.t(j);
    for (std::size_t i = circle ? 0 : 1; i < (circle ? n : n - 1); ++i) {
      const double k1 = u(t, y[i]);
      const double k2 = u(t + 0.5 * dt, y[i] + 0.5 * dt * k1);
      const double k3 = u(t + 0.5 * dt, y[i] + 0.5 * dt * k2);
      const double k4 = u(t + dt, y[i] + dt * k3);
      y[i] += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    maps.push_back(make_map(y, j + 1));
  }
  return DiffPath::create(times, std::move(maps));
}

DiffPath flow(const SampledFunction& u, TimeGrid times) {
  const Grid1D grid = u.grid;
  if (grid.domain() == Domain::kCircle) {
    const std::size_t n = grid.size();
    std::vector<double> xs(n + 1), ys(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = grid.node(i);
      ys[i] = u.values[i];
    }
    xs[n] = 1.0;
    ys[n] = u.values[0];
    auto interp = std::make_shared<CubicHermite>(xs, ys);
    return flow([interp](double, double x) { return (*interp)(x - std::floor(x)); }, grid,
                times);
  }
  std::vector<double> xs(grid.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = grid.node(i);
  auto interp = std::make_shared<CubicHermite>(xs, u.values);
  return flow([interp](double, double x) { return (*interp)(x); }, grid, times);
}

// ---------------------------------------------------------------------------
// Square-root-slope sphere geometry
// ---------------------------------------------------------------------------

DiffPath lenells_sphere_path(const CircleDiffeo& a, const CircleDiffeo& b, double q,
                             TimeGrid times) {
  const SampledFunction fa = lenells_forward(a, q);
  const SampledFunction fb = lenells_forward(b, q);

  std::vector<AnyDiffeo> maps;
  maps.reserve(times.nodes());
  maps.emplace_back(a);
  for (std::size_t j = 1; j < times.m; ++j) {
    const double t = times.t(j);
    std::vector<double> g(fa.values.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = (1.0 - t) * fa.values[i] + t * fb.values[i];
    }
    SampledFunction gt{fa.grid, std::move(g)};
    const double norm = lp_norm(gt, q);
    if (!(norm > 0.0)) throw numerical_error("lenells_sphere_path: degenerate midpoint");
    for (auto& v : gt.values) v *= q / norm;
    maps.emplace_back(lenells_inverse(gt, q));
  }
  maps.emplace_back(b);
  return DiffPath::create(times, std::move(maps));
}

double h1dot_distance_closed_form(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  const auto dphi = circle_diffeo_derivative(phi);
  const auto dpsi = circle_diffeo_derivative(psi);
  std::vector<double> prod(dphi.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    const double a = std::max(dphi[i], 0.0);
    const double b = std::max(dpsi[i], 0.0);
    prod[i] = std::sqrt(a * b);
  }
  const double inner = integrate(SampledFunction{phi.grid(), std::move(prod)});
  return std::acos(clamp_unit(inner));
}

// ---------------------------------------------------------------------------
// Length descent
// ---------------------------------------------------------------------------

namespace {

/// Fixed perturbation basis sampled on the grid.
std::vector<std::vector<double>> shorten_basis(const Grid1D& grid, int n_basis) {
  std::vector<std::vector<double>> basis;
  const std::size_t n = grid.size();
  if (grid.domain() == Domain::kCircle) {
    for (int k = 1; 2 * static_cast<int>(basis.size()) < n_basis; ++k) {
      std::vector<double> s(n), c(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i);
        s[i] = std::sin(2 * std::numbers::pi * k * x);
        c[i] = std::cos(2 * std::numbers::pi * k * x) - 1.0;
      }
      basis.push_back(std::move(s));
      basis.push_back(std::move(c));
    }
  } else {
    // Endpoint-pinned cubic bumps with disjointly staggered centers.
    auto b3 = [](double t) {
      const double a = std::abs(t);
      if (a >= 2.0) return 0.0;
      if (a >= 1.0) {
        const double u = 2.0 - a;
        return u * u * u / 6.0;
      }
      return (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0;
    };
    const double span = grid.span();
    const double w = span / static_cast<double>(n_basis + 4);
    for (int bidx = 0; bidx < n_basis; ++bidx) {
      const double c = w * static_cast<double>(bidx + 2);
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = b3((grid.node(i) - c) / w);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

/// maps[j] displaced by eta * b; throws invalid_diffeo_error if the result
/// is not a diffeomorphism.
AnyDiffeo perturb(const AnyDiffeo& map, const std::vector<double>& b, double eta) {
  const auto& v = diffeo_values(map);
  std::vector<double> nv(v.size());
  for (std::size_t i = 0; i < nv.size(); ++i) nv[i] = v[i] + eta * b[i];
  if (std::holds_alternative<CircleDiffeo>(map)) {
    return CircleDiffeo::create(diffeo_grid(map), std::move(nv));
  }
  nv.front() = 0.0;
  nv.back() = diffeo_grid(map).span();
  return IntervalDiffeo::create(diffeo_grid(map), std::move(nv));
}

}  // namespace

DiffPath path_shorten(const DiffPath& path, const SobolevIndex& idx, const ShortenOptions& opts) {
  if (opts.iterations < 0) throw invalid_argument_error("path_shorten: negative iterations");
  const std::size_t m = path.times.m;
  std::vector<AnyDiffeo> maps = path.maps;
  const auto basis = shorten_basis(path.grid(), opts.n_basis);
  const auto tw = trapezoid_time_weights(path.times);

  auto norm_at = [&](const std::vector<AnyDiffeo>& ms, std::size_t j) {
    return slice_norm(extract_at(ms, path.times, j), idx, opts.homogeneous_only);
  };

  std::vector<double> N(path.times.nodes());
  for (std::size_t j = 0; j < N.size(); ++j) N[j] = norm_at(maps, j);

  // Local weighted objective around slice j (only these terms can change).
  auto local = [&](const std::vector<double>& norms, std::size_t j) {
    double v = tw[j] * norms[j];
    if (j > 0) v += tw[j - 1] * norms[j - 1];
    if (j + 1 < norms.size()) v += tw[j + 1] * norms[j + 1];
    return v;
  };

  const double scale = std::max(1e-3, max_displacement(path.maps[m / 2]) + 1e-3);
  std::vector<std::vector<double>> step(
      m + 1, std::vector<double>(basis.size(), opts.initial_step * scale));

  for (int it = 0; it < opts.iterations; ++it) {
    for (std::size_t j = 1; j < m; ++j) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        double& eta = step[j][b];
        bool accepted = false;
        for (const double sign : {+1.0, -1.0}) {
          std::vector<AnyDiffeo> trial = maps;
          try {
            trial[j] = perturb(maps[j], basis[b], sign * eta);
          } catch (const invalid_diffeo_error&) {
            continue;
          }
          std::vector<double> tn = N;
          for (std::size_t jj = (j > 0 ? j - 1 : j); jj <= std::min(j + 1, m); ++jj) {
            tn[jj] = norm_at(trial, jj);
          }
          if (local(tn, j) < local(N, j) - 1e-15) {
            maps = std::move(trial);
            N = std::move(tn);
            accepted = true;
            break;
          }
        }
        if (accepted) {
          eta = std::min(eta * 1.6, 0.5 * scale);
        } else {
          eta = std::max(eta * 0.5, 1e-7 * scale);
        }
      }
    }
  }
  return DiffPath::create(path.times, std::move(maps));
}

}  // namespace wspdiff
