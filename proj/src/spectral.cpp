#include "anneal/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace anneal {

namespace {

constexpr std::uint64_t kDenseMaxDim = 512;  // Auto switches to Davidson above

double degeneracy_tol(double e0) { return 1e-8 * std::max(1.0, std::fabs(e0)); }

}  // namespace

const char* to_string(SpectralError code) {
  switch (code) {
    case SpectralError::TooManyQubits: return "TOO_MANY_QUBITS";
    case SpectralError::LengthMismatch: return "LENGTH_MISMATCH";
    case SpectralError::NoConvergence: return "NO_CONVERGENCE";
    case SpectralError::GroundStateInfeasible: return "GROUND_STATE_INFEASIBLE";
  }
  return "UNKNOWN";
}

SpectralFailure::SpectralFailure(SpectralError c, const std::string& detail,
                                 int iters, double resid)
    : std::runtime_error(std::string(to_string(c)) + (detail.empty() ? "" : ": " + detail)),
      code(c),
      iterations(iters),
      residual(resid) {}

DiagonalOperator diagonalize_problem(const IsingModel& ising, int max_qubits) {
  const int n = ising.num_qubits;
  if (n < 1 || n > max_qubits)
    throw SpectralFailure(SpectralError::TooManyQubits,
                          std::to_string(n) + " qubits exceeds cap " +
                              std::to_string(max_qubits));

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& [key, j] : ising.coupling) {
    adj[key.first].emplace_back(key.second, j);
    adj[key.second].emplace_back(key.first, j);
  }

  DiagonalOperator d;
  d.num_qubits = n;
  d.diag.resize(std::uint64_t{1} << n);

  // Gray-code walk: index 0 is all spins +1; each step flips one spin.
  std::vector<int> spin(n, 1);
  double energy = ising.offset;
  for (int i = 0; i < n; ++i) energy -= ising.h[i];
  for (const auto& [key, j] : ising.coupling) energy -= j;
  d.diag[0] = energy;

  for (std::uint64_t k = 1; k < d.dim(); ++k) {
    const int b = std::countr_zero(k);
    double delta = 2.0 * ising.h[b] * spin[b];
    for (const auto& [j, coupling] : adj[b]) delta += 2.0 * coupling * spin[b] * spin[j];
    energy += delta;
    spin[b] = -spin[b];
    d.diag[k ^ (k >> 1)] = energy;
  }
  return d;
}

void apply_hamiltonian(double s, const DriverSpec& driver, const DiagonalOperator& d,
                       std::span<const double> v, std::span<double> out) {
  const std::uint64_t dim = d.dim();
  if (v.size() != dim || out.size() != dim)
    throw SpectralFailure(SpectralError::LengthMismatch, "state vector length");
  const int n = d.num_qubits;
  const double drive = (1.0 - s) * driver.h0;

  for (std::uint64_t k = 0; k < dim; ++k) out[k] = s * d.diag[k] * v[k];
  if (drive == 0.0) return;

  if (driver.kind == DriverKind::TransverseField) {
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      for (std::uint64_t k = 0; k < dim; ++k) out[k] -= drive * v[k ^ bit];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
        for (std::uint64_t k = 0; k < dim; ++k) out[k] -= drive * v[k ^ mask];
      }
    }
  }
}

namespace {

// Exact lowest-k read-off of the diagonal endpoint s = 1.
EigenResult diagonal_lowest(const DiagonalOperator& d, int k) {
  const std::uint64_t dim = d.dim();
  k = static_cast<int>(std::min<std::uint64_t>(k, dim));
  EigenResult r;
  r.values.resize(k);
  std::partial_sort_copy(d.diag.begin(), d.diag.end(), r.values.begin(), r.values.end());
  const auto argmin = std::min_element(d.diag.begin(), d.diag.end()) - d.diag.begin();
  r.ground_state.assign(dim, 0.0);
  r.ground_state[argmin] = 1.0;
  r.degenerate_ground = k > 1 && r.values[1] - r.values[0] <= degeneracy_tol(r.values[0]);
  return r;
}

EigenResult dense_lowest(double s, const DriverSpec& driver, const DiagonalOperator& d,
                         int k) {
  const std::uint64_t dim = d.dim();
  if (dim > 4096)
    throw SpectralFailure(SpectralError::TooManyQubits,
                          "dense solve capped at 4096 states");
  k = static_cast<int>(std::min<std::uint64_t>(k, dim));
  const int n = d.num_qubits;

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i) H(i, i) = s * d.diag[i];
  const double drive = (1.0 - s) * driver.h0;
  if (driver.kind == DriverKind::TransverseField) {
    for (std::uint64_t i = 0; i < dim; ++i)
      for (int b = 0; b < n; ++b) H(i, i ^ (std::uint64_t{1} << b)) -= drive;
  } else {
    for (std::uint64_t i = 0; i < dim; ++i)
      for (int b = 0; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          H(i, i ^ (std::uint64_t{1} << b) ^ (std::uint64_t{1} << c)) -= drive;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  EigenResult r;
  for (int i = 0; i < k; ++i) r.values.push_back(solver.eigenvalues()(i));
  r.ground_state.assign(solver.eigenvectors().col(0).data(),
                        solver.eigenvectors().col(0).data() + dim);
  r.degenerate_ground = k > 1 && r.values[1] - r.values[0] <= degeneracy_tol(r.values[0]);
  return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// Block Davidson with a diagonal preconditioner. The problem diagonal
// dominates H(s) for moderate s (driver entries are O(h0), the diagonal
// spread is O(penalty * capacity^2)), which makes preconditioned residual
// expansion converge in tens of iterations where plain Lanczos stalls on the
// tightly clustered low spectrum. Near s = 0 the preconditioner degrades to
// a constant and the method reduces to block Lanczos, which is fast there
// because the driver spectrum is well separated.
EigenResult davidson_lowest(double s, const DriverSpec& driver,
                            const DiagonalOperator& d, int k, double tol) {
  const std::uint64_t dim = d.dim();
  k = static_cast<int>(std::min<std::uint64_t>(k, dim));
  const int block = static_cast<int>(std::min<std::uint64_t>(std::max(k + 2, 6), dim));
  const int max_basis =
      static_cast<int>(std::min<std::uint64_t>(std::max(6 * block, 48), dim));
  const int max_outer = 400;

  double norm_bound = std::fabs(driver.h0) * d.num_qubits;
  for (double e : d.diag) norm_bound = std::max(norm_bound, std::fabs(e));
  const double drop_tol = 1e-13 * std::max(1.0, norm_bound);

  std::mt19937_64 rng(0x1d8a5f32u);
  std::normal_distribution<double> gauss;

  std::vector<std::vector<double>> V, W;  // basis and H * basis
  V.reserve(max_basis);
  W.reserve(max_basis);

  // Orthonormalize w against V (two modified Gram-Schmidt passes); returns
  // false when w is numerically contained in the span.
  auto add_vector = [&](std::vector<double> w) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : V) {
        const double c = dot(u, w);
        for (std::uint64_t i = 0; i < dim; ++i) w[i] -= c * u[i];
      }
    const double nrm = std::sqrt(dot(w, w));
    if (nrm <= drop_tol) return false;
    for (auto& x : w) x /= nrm;
    V.push_back(std::move(w));
    W.emplace_back(dim);
    apply_hamiltonian(s, driver, d, V.back(), W.back());
    return true;
  };
  auto add_random = [&] {
    for (int attempt = 0; attempt < 16; ++attempt) {
      std::vector<double> w(dim);
      for (auto& x : w) x = gauss(rng);
      if (add_vector(std::move(w))) return;
    }
  };

  // Seed with unit vectors at the lowest diagonal entries (the dominant
  // components of the low eigenvectors away from s = 0) plus dense random
  // vectors, which guarantee overlap with every symmetry sector the driver
  // preserves (the pairwise-XX driver conserves bit parity, so localized
  // seeds alone can leave a whole sector unexplored).
  {
    std::vector<std::uint64_t> order(dim);
    for (std::uint64_t i = 0; i < dim; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + block, order.end(),
                      [&](std::uint64_t a, std::uint64_t b) {
                        return d.diag[a] < d.diag[b];
                      });
    for (int i = 0; i < block; ++i) {
      std::vector<double> e(dim, 0.0);
      e[order[i]] = 1.0;
      add_vector(std::move(e));
    }
    const int random_seeds =
        static_cast<int>(std::min<std::uint64_t>(2, dim - V.size()));
    for (int i = 0; i < random_seeds; ++i) add_random();
    while (static_cast<int>(V.size()) < block) add_random();
  }

  // Rounding puts a floor of roughly eps * ||H|| * basis growth under the
  // attainable residual; when the request dips below it, accept once the
  // Ritz values have stagnated well inside the eigenvalue tolerance (the
  // residual bound |lambda - theta| <= ||r|| is then loose by the quadratic
  // factor ||r|| / gap).
  double scale = 0.0;
  for (double e : d.diag) scale = std::max(scale, std::fabs(s) * std::fabs(e));
  scale += std::fabs(1.0 - s) * std::fabs(driver.h0) * d.num_qubits;
  const double residual_floor = 1e-6 * std::max(1.0, scale);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
  int matvecs = block;
  double worst_residual = std::numeric_limits<double>::infinity();
  std::vector<double> prev_theta;

  for (int outer = 0; outer < max_outer; ++outer) {
    const int m = static_cast<int>(V.size());
    Eigen::MatrixXd G(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) G(i, j) = G(j, i) = dot(V[i], W[j]);
    small.compute(G);

    const int want = std::min(k, m);
    std::vector<std::vector<double>> ritz(want), ritz_h(want);
    worst_residual = 0.0;
    std::vector<std::vector<double>> expansions;
    for (int i = 0; i < want; ++i) {
      const double theta = small.eigenvalues()(i);
      ritz[i].assign(dim, 0.0);
      ritz_h[i].assign(dim, 0.0);
      for (int j = 0; j < m; ++j) {
        const double c = small.eigenvectors()(j, i);
        if (c == 0.0) continue;
        for (std::uint64_t p = 0; p < dim; ++p) {
          ritz[i][p] += c * V[j][p];
          ritz_h[i][p] += c * W[j][p];
        }
      }
      std::vector<double> r(dim);
      for (std::uint64_t p = 0; p < dim; ++p) r[p] = ritz_h[i][p] - theta * ritz[i][p];
      const double rnorm = std::sqrt(dot(r, r));
      worst_residual = std::max(worst_residual, rnorm);
      if (rnorm > tol) {
        // Diagonal (Davidson) preconditioner with a guarded denominator.
        const double guard = std::max(1e-8, 1e-8 * std::fabs(theta));
        for (std::uint64_t p = 0; p < dim; ++p) {
          double denom = theta - s * d.diag[p];
          if (std::fabs(denom) < guard) denom = denom < 0 ? -guard : guard;
          r[p] /= denom;
        }
        expansions.push_back(std::move(r));
      }
    }

    double theta_change = std::numeric_limits<double>::infinity();
    if (static_cast<int>(prev_theta.size()) >= want) {
      theta_change = 0.0;
      for (int i = 0; i < want; ++i)
        theta_change =
            std::max(theta_change, std::fabs(small.eigenvalues()(i) - prev_theta[i]));
    }
    prev_theta.assign(small.eigenvalues().data(), small.eigenvalues().data() + want);

    const bool stagnated =
        worst_residual <= residual_floor && theta_change <= 0.1 * std::max(tol, 1e-12);
    if (worst_residual <= tol || stagnated || m >= static_cast<int>(dim)) {
      EigenResult out;
      for (int i = 0; i < want; ++i) out.values.push_back(small.eigenvalues()(i));
      out.ground_state = std::move(ritz[0]);
      out.iterations = matvecs;
      out.degenerate_ground =
          out.values.size() > 1 &&
          out.values[1] - out.values[0] <= degeneracy_tol(out.values[0]);
      return out;
    }

    if (m + static_cast<int>(expansions.size()) > max_basis) {
      // Thick restart: keep the lowest 2k Ritz vectors (recombining W too,
      // so no matvecs are repeated).
      const int keep = std::min(std::max(2 * k, block), m);
      std::vector<std::vector<double>> nv(keep), nw(keep);
      for (int i = 0; i < keep; ++i) {
        nv[i].assign(dim, 0.0);
        nw[i].assign(dim, 0.0);
        for (int j = 0; j < m; ++j) {
          const double c = small.eigenvectors()(j, i);
          if (c == 0.0) continue;
          for (std::uint64_t p = 0; p < dim; ++p) {
            nv[i][p] += c * V[j][p];
            nw[i][p] += c * W[j][p];
          }
        }
      }
      // Repair the orthogonality lost to rounding across restarts, applying
      // the same combination to W so W = H * V stays exact.
      for (int i = 0; i < keep; ++i) {
        for (int j = 0; j < i; ++j) {
          const double c = dot(nv[j], nv[i]);
          for (std::uint64_t p = 0; p < dim; ++p) {
            nv[i][p] -= c * nv[j][p];
            nw[i][p] -= c * nw[j][p];
          }
        }
        const double nrm = std::sqrt(dot(nv[i], nv[i]));
        for (std::uint64_t p = 0; p < dim; ++p) {
          nv[i][p] /= nrm;
          nw[i][p] /= nrm;
        }
      }
      V = std::move(nv);
      W = std::move(nw);
    }

    const std::size_t before = V.size();
    for (auto& t : expansions) add_vector(std::move(t));
    if (V.size() == before) add_random();  // stagnation: inject a fresh direction
    matvecs += static_cast<int>(V.size() - before);
  }

  throw SpectralFailure(SpectralError::NoConvergence,
                        "s=" + std::to_string(s) + " after " + std::to_string(matvecs) +
                            " matrix applications, residual " +
                            std::to_string(worst_residual),
                        matvecs, worst_residual);
}

}  // namespace

EigenResult lowest_eigenvalues(double s, const DriverSpec& driver,
                               const DiagonalOperator& d, int k, EigenMethod method,
                               double tol) {
  switch (method) {
    case EigenMethod::Dense:
      return dense_lowest(s, driver, d, k);
    case EigenMethod::Krylov:
      return davidson_lowest(s, driver, d, k, tol);
    case EigenMethod::Auto:
      if (s == 1.0) return diagonal_lowest(d, k);
      if (d.dim() <= kDenseMaxDim) return dense_lowest(s, driver, d, k);
      return davidson_lowest(s, driver, d, k, tol);
  }
  throw std::logic_error("unreachable");
}

std::vector<double> uniform_grid(int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

GapCurve sweep_gap(const DriverSpec& driver, const DiagonalOperator& d,
                   std::vector<double> grid, int k_levels, bool parallel) {
  std::sort(grid.begin(), grid.end());
  const int points = static_cast<int>(grid.size());

  GapCurve curve;
  curve.s_values = grid;
  curve.e0.resize(points);
  curve.e1.resize(points);
  curve.gap.resize(points);
  curve.gap_distinct.resize(points);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (int i = next.fetch_add(1); i < points; i = next.fetch_add(1)) {
      if (failed.load()) return;
      const double s = grid[i];
      try {
        if (s == 1.0) {
          // Exact endpoint: scan the diagonal, honoring exact degeneracy.
          const double e0 = *std::min_element(d.diag.begin(), d.diag.end());
          double e1 = std::numeric_limits<double>::infinity();
          double distinct = std::numeric_limits<double>::infinity();
          const double tol = degeneracy_tol(e0);
          bool ground_seen = false;
          for (double e : d.diag) {
            if (e == e0 && !ground_seen) {
              ground_seen = true;
              continue;
            }
            e1 = std::min(e1, e);
            if (e - e0 > tol) distinct = std::min(distinct, e);
          }
          curve.e0[i] = e0;
          curve.e1[i] = e1;
          curve.gap[i] = e1 - e0;
          curve.gap_distinct[i] = distinct - e0;
        } else {
          const EigenResult r =
              lowest_eigenvalues(s, driver, d, k_levels, EigenMethod::Auto);
          curve.e0[i] = r.values[0];
          curve.e1[i] = r.values.size() > 1 ? r.values[1] : r.values[0];
          curve.gap[i] = curve.e1[i] - curve.e0[i];
          const double tol = degeneracy_tol(r.values[0]);
          double distinct = curve.gap[i];
          for (double e : r.values)
            if (e - r.values[0] > tol) {
              distinct = e - r.values[0];
              break;
            }
          curve.gap_distinct[i] = distinct;
        }
      } catch (const SpectralFailure& ex) {
        std::scoped_lock lock(failure_mutex);
        failed.store(true);
        failure = ex.what();
      }
    }
  };

  if (parallel && points > 1) {
    const int threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                        static_cast<unsigned>(points)));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  } else {
    worker();
  }
  if (failed.load()) throw SpectralFailure(SpectralError::NoConvergence, failure);

  curve.min_gap = std::numeric_limits<double>::infinity();
  curve.argmin_s = 0.0;
  for (int i = 0; i < points; ++i) {
    if (grid[i] <= 0.0 || grid[i] >= 1.0) continue;
    if (curve.gap[i] < curve.min_gap) {
      curve.min_gap = curve.gap[i];
      curve.argmin_s = grid[i];
    }
  }
  return curve;
}

GapCurve sweep_gap_refined(const DriverSpec& driver, const DiagonalOperator& d,
                           int coarse_points, int refine_points, int k_levels,
                           bool parallel) {
  GapCurve coarse = sweep_gap(driver, d, uniform_grid(coarse_points), k_levels, parallel);

  const auto it = std::find(coarse.s_values.begin(), coarse.s_values.end(),
                            coarse.argmin_s);
  const int idx = static_cast<int>(it - coarse.s_values.begin());
  const double lo = coarse.s_values[std::max(idx - 1, 0)];
  const double hi = coarse.s_values[std::min(idx + 1, coarse_points - 1)];

  std::vector<double> grid = coarse.s_values;
  for (int i = 1; i <= refine_points; ++i)
    grid.push_back(lo + (hi - lo) * i / (refine_points + 1));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return sweep_gap(driver, d, std::move(grid), k_levels, parallel);
}

std::vector<GroundDecoding> ground_state_decode(const DiagonalOperator& d,
                                                const EncodingMap& map,
                                                double tolerance) {
  const double e0 = *std::min_element(d.diag.begin(), d.diag.end());
  std::vector<GroundDecoding> out;
  for (std::uint64_t k = 0; k < d.dim(); ++k) {
    if (d.diag[k] - e0 > tolerance) continue;
    std::vector<int> bits(d.num_qubits);
    for (int i = 0; i < d.num_qubits; ++i) bits[i] = (k >> i) & 1u;
    GroundDecoding g;
    g.basis_index = k;
    g.energy = d.diag[k];
    g.decoded = decode_bits(map, bits);
    if (!g.decoded.feasible)
      throw SpectralFailure(SpectralError::GroundStateInfeasible,
                            "basis state " + std::to_string(k) +
                                " decodes to an infeasible selection");
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace anneal
