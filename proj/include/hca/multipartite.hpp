#pragma once

// Many-time composite automata.
//
// A field Psi^{a_1..a_m}_{n_1..n_m} carries one clock per part. Its equations of motion are
//     sum_k [Psi(.. n_k + 1 ..) - Psi(.. n_k - 1 ..)] = -i (sum_k H_(k) + I) Psi
// where H_(k) acts on the k-th multi-index only. Multi-indices and clock points are both
// flattened row-major (part 0 varies slowest), matching kronecker() and tensor_product().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hca/automaton.hpp"
#include "hca/literal.hpp"

namespace hca {

struct ClockRange {
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
  bool contains(std::int64_t n) const { return n >= first && n <= last; }
  friend bool operator==(const ClockRange&, const ClockRange&) = default;
};

using ClockPoint = std::vector<std::int64_t>;
using MultiIndex = std::vector<std::size_t>;

/// Gaussian-integer field over a product clock box, zero-initialized.
class MultiWave {
 public:
  MultiWave(std::vector<std::size_t> dims, std::vector<ClockRange> box);

  std::size_t parts() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<ClockRange>& box() const { return box_; }
  /// prod_k D_k
  std::size_t flat_dim() const { return flat_dim_; }
  std::size_t lattice_size() const { return lattice_size_; }

  const GaussianInt& at(std::span<const std::int64_t> clocks, std::span<const std::size_t> indices) const;
  GaussianInt& at(std::span<const std::int64_t> clocks, std::span<const std::size_t> indices);

  /// All multi-index components at one clock point, flattened.
  GIVector slice(std::span<const std::int64_t> clocks) const;
  void set_slice(std::span<const std::int64_t> clocks, const GIVector& v);

  ClockPoint clock_point(std::size_t lattice_index) const;
  MultiIndex multi_index(std::size_t flat) const;
  std::size_t lattice_index(std::span<const std::int64_t> clocks) const;

  bool is_zero() const;

  MultiWave& operator+=(const MultiWave& o);
  MultiWave& operator*=(const GaussianInt& k);
  friend MultiWave operator+(MultiWave a, const MultiWave& b) { return a += b; }
  friend MultiWave operator*(const GaussianInt& k, MultiWave w) { return w *= k; }
  friend bool operator==(const MultiWave& a, const MultiWave& b) = default;

 private:
  std::size_t flat_index(std::span<const std::int64_t> clocks, std::span<const std::size_t> indices) const;

  std::vector<std::size_t> dims_;
  std::vector<ClockRange> box_;
  std::size_t flat_dim_ = 1;
  std::size_t lattice_size_ = 1;
  std::vector<GaussianInt> values_;
};

/// Self-adjoint coupling on the product space.
class InteractionTensor {
 public:
  InteractionTensor(std::vector<std::size_t> dims, HermitianMatrix m);
  static InteractionTensor zero(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const HermitianMatrix& matrix() const { return m_; }
  bool is_zero() const { return m_.matrix().is_zero(); }

 private:
  std::vector<std::size_t> dims_;
  HermitianMatrix m_;
};

/// sum_k 1 x .. x H_(k) x .. x 1
GIMatrix kronecker_sum(std::span<const HermitianMatrix> hs);
/// kronecker_sum(hs) + I
HermitianMatrix total_hamiltonian(std::span<const HermitianMatrix> hs, const InteractionTensor& interaction);

/// LHS - RHS of the many-time equations on the interior of the box.
struct ResidualField {
  MultiWave values;

  bool is_zero() const { return values.is_zero(); }
  /// Lattice point and multi-index of the first nonzero entry in row-major order.
  std::optional<std::pair<ClockPoint, MultiIndex>> first_nonzero() const;
  /// n_1..n_m,alpha_1..alpha_m,re,im
  std::string to_csv() const;
};

ResidualField many_time_residual(const MultiWave& psi, std::span<const HermitianMatrix> hs,
                                 const InteractionTensor& interaction);

/// Field Psi(n_1..n_m) = psi_(1)(n_1) x .. x psi_(m)(n_m) over the box [0, N_k].
MultiWave product_field(std::span<const Trajectory> factors);

struct FactorSpec {
  HermitianMatrix h;
  GIVector seed0;
  GIVector seed1;
  std::size_t steps = 1;
};

struct FactorizedEvolution {
  std::vector<Trajectory> factors;
  MultiWave field;
  ResidualField residual;
  bool certified = false;
};

/// Independent evolution of each part and the product field; residual with I = 0 recorded.
FactorizedEvolution evolve_factorized(std::span<const FactorSpec> parts);

/// Standard two-step evolution on the flattened product space under the total Hamiltonian.
Trajectory evolve_synchronized(const GIVector& slice0, const GIVector& slice1, std::span<const HermitianMatrix> hs,
                               const InteractionTensor& interaction, std::size_t steps);

struct LeibnizRow {
  std::size_t n = 0;
  /// A_{n+1} B_{n+1} - A_{n-1} B_{n-1}
  GaussianInt lhs;
  /// dA (B_{n+1} + B_{n-1}) / 2 + (A_{n+1} + A_{n-1}) / 2 dB
  HalfGaussian middle;
  /// dA B_n + A_n dB
  GaussianInt naive;
  bool identity_holds = false;
  bool naive_matches = false;
};

struct LeibnizReport {
  std::vector<LeibnizRow> rows;
  bool identity_holds_everywhere = true;
  std::optional<std::size_t> first_naive_failure;
};

LeibnizReport leibniz_failure_demo(std::span<const GaussianInt> a, std::span<const GaussianInt> b);

/// Psi^{ab}(n_1, n_2) = psi^a_{n_1} phi^b_{n_2} - phi^a_{n_1} psi^b_{n_2} with coefficient 1, over the
/// common clock range. Zero many-time residual when psi and phi solve the same two-level H and Hs = {H, H}.
MultiWave bell_state(const Trajectory& psi, const Trajectory& phi);

/// D_1 x D_2 coefficient matrix at fixed clocks.
struct BipartiteSlice {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<GaussianInt> entries;

  static BipartiteSlice from_rows(const std::vector<std::vector<GaussianInt>>& rows);
  const GaussianInt& operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

BipartiteSlice bipartite_slice(const MultiWave& psi, std::int64_t n1, std::int64_t n2);

struct MinorCertificate {
  std::size_t row0 = 0, row1 = 0, col0 = 0, col1 = 0;
  GaussianInt value;
};

/// Rank test over the Gaussian rationals: factorizable iff every 2x2 minor vanishes.
struct WitnessResult {
  bool factorizable = true;
  std::optional<MinorCertificate> certificate;
};

WitnessResult factorizability_witness(const BipartiteSlice& slice);
GaussianInt minor_value(const BipartiteSlice& slice, const MinorCertificate& at);

json to_json(const MultiWave& psi);
MultiWave multiwave_from_json(const json& j);
json to_json(const WitnessResult& w);

}  // namespace hca
