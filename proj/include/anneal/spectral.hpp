#ifndef ANNEAL_SPECTRAL_HPP
#define ANNEAL_SPECTRAL_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "anneal/qubo.hpp"

namespace anneal {

enum class SpectralError {
  TooManyQubits,
  LengthMismatch,
  NoConvergence,
  GroundStateInfeasible,
};

const char* to_string(SpectralError code);

struct SpectralFailure : std::runtime_error {
  SpectralError code;
  int iterations = 0;
  double residual = 0.0;
  explicit SpectralFailure(SpectralError c, const std::string& detail = "",
                           int iterations = 0, double residual = 0.0);
};

/// The problem Hamiltonian in the computational basis: entry k is the Ising
/// energy of the spin assignment where bit i of k gives x_i (spin 1 - 2x_i).
struct DiagonalOperator {
  int num_qubits = 0;
  std::vector<double> diag;
  std::uint64_t dim() const { return diag.size(); }
};

/// Tabulates all 2^N energies with an incremental Gray-code pass, so each
/// entry costs O(degree) rather than O(N + |J|).
DiagonalOperator diagonalize_problem(const IsingModel& ising, int max_qubits = 24);

enum class DriverKind { TransverseField, PairwiseXX };

struct DriverSpec {
  DriverKind kind = DriverKind::TransverseField;
  double h0 = 1.0;
};

/// out = s * (diag . v) + (1-s) * (H0 v), matrix-free. The transverse-field
/// driver couples k to k^2^i; the pairwise-XX driver couples k to k^2^i^2^j.
void apply_hamiltonian(double s, const DriverSpec& driver, const DiagonalOperator& d,
                       std::span<const double> v, std::span<double> out);

enum class EigenMethod { Auto, Dense, Krylov };

struct EigenResult {
  std::vector<double> values;        // ascending
  std::vector<double> ground_state;  // eigenvector of values[0]
  int iterations = 0;
  bool degenerate_ground = false;    // E1 - E0 <= 1e-8 * max(1, |E0|)
};

/// Lowest k eigenvalues of H(s). Auto picks a dense symmetric solve for
/// small dimensions, diagonally preconditioned block Davidson above, and
/// reads the sorted diagonal exactly at s = 1 (where iterative solvers
/// cannot resolve exact degeneracy).
EigenResult lowest_eigenvalues(double s, const DriverSpec& driver,
                               const DiagonalOperator& d, int k = 4,
                               EigenMethod method = EigenMethod::Auto,
                               double tol = 1e-9);

struct GapCurve {
  std::vector<double> s_values;
  std::vector<double> e0, e1;
  std::vector<double> gap;           // e1 - e0
  std::vector<double> gap_distinct;  // smallest E_k - E0 above degeneracy tol
  double min_gap = 0.0;              // over interior points 0 < s < 1
  double argmin_s = 0.0;
  double suggested_time() const { return 1.0 / (min_gap * min_gap); }
};

std::vector<double> uniform_grid(int points);

/// Lowest-two sweep over the grid; points are independent and run on worker
/// threads, results assembled in grid order.
GapCurve sweep_gap(const DriverSpec& driver, const DiagonalOperator& d,
                   std::vector<double> grid, int k_levels = 4, bool parallel = true);

/// Coarse uniform sweep plus a refinement pass that inserts extra points
/// around the coarse gap minimum before reporting min_gap.
GapCurve sweep_gap_refined(const DriverSpec& driver, const DiagonalOperator& d,
                           int coarse_points = 101, int refine_points = 20,
                           int k_levels = 4, bool parallel = true);

struct GroundDecoding {
  std::uint64_t basis_index = 0;
  DecodedAssignment decoded;
  double energy = 0.0;
};

/// All basis states within tolerance of min(diag), decoded through the
/// encoding map. Throws GroundStateInfeasible if any decoding violates the
/// constraint, which signals penalty miscalibration.
std::vector<GroundDecoding> ground_state_decode(const DiagonalOperator& d,
                                                const EncodingMap& map,
                                                double tolerance = 1e-6);

}  // namespace anneal

#endif
