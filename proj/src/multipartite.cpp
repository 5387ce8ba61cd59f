#include "hca/multipartite.hpp"

#include <sstream>

#include "hca/errors.hpp"

namespace hca {

namespace {

void require_parts(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(want) + " parts, got " +
                            std::to_string(got));
  }
}

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

}  // namespace

MultiWave::MultiWave(std::vector<std::size_t> dims, std::vector<ClockRange> box)
    : dims_(std::move(dims)), box_(std::move(box)) {
  if (dims_.empty()) throw PreconditionViolation("MultiWave: at least one part required");
  require_parts(box_.size(), dims_.size(), "MultiWave clock box");
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] == 0) throw PreconditionViolation("MultiWave: part " + std::to_string(k) + " has dimension 0");
    if (box_[k].last < box_[k].first) throw PreconditionViolation("MultiWave: empty clock range on axis " + std::to_string(k));
    lattice_size_ *= box_[k].size();
  }
  flat_dim_ = product(dims_);
  values_.resize(lattice_size_ * flat_dim_);
}

std::size_t MultiWave::lattice_index(std::span<const std::int64_t> clocks) const {
  require_parts(clocks.size(), parts(), "MultiWave clocks");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < clocks.size(); ++k) {
    if (!box_[k].contains(clocks[k])) {
      throw PreconditionViolation("MultiWave: clock " + std::to_string(clocks[k]) + " outside axis " +
                                  std::to_string(k) + " range");
    }
    idx = idx * box_[k].size() + static_cast<std::size_t>(clocks[k] - box_[k].first);
  }
  return idx;
}

std::size_t MultiWave::flat_index(std::span<const std::int64_t> clocks, std::span<const std::size_t> indices) const {
  require_parts(indices.size(), parts(), "MultiWave indices");
  std::size_t f = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= dims_[k]) throw DimensionMismatch("MultiWave: index out of range on part " + std::to_string(k));
    f = f * dims_[k] + indices[k];
  }
  return lattice_index(clocks) * flat_dim_ + f;
}

const GaussianInt& MultiWave::at(std::span<const std::int64_t> clocks, std::span<const std::size_t> indices) const {
  return values_[flat_index(clocks, indices)];
}

GaussianInt& MultiWave::at(std::span<const std::int64_t> clocks, std::span<const std::size_t> indices) {
  return values_[flat_index(clocks, indices)];
}

GIVector MultiWave::slice(std::span<const std::int64_t> clocks) const {
  const std::size_t base = lattice_index(clocks) * flat_dim_;
  return GIVector(std::vector<GaussianInt>(values_.begin() + static_cast<std::ptrdiff_t>(base),
                                           values_.begin() + static_cast<std::ptrdiff_t>(base + flat_dim_)));
}

void MultiWave::set_slice(std::span<const std::int64_t> clocks, const GIVector& v) {
  if (v.size() != flat_dim_) throw DimensionMismatch("MultiWave::set_slice: vector dimension");
  const std::size_t base = lattice_index(clocks) * flat_dim_;
  for (std::size_t f = 0; f < flat_dim_; ++f) values_[base + f] = v[f];
}

ClockPoint MultiWave::clock_point(std::size_t lattice_index) const {
  ClockPoint p(parts());
  for (std::size_t k = parts(); k-- > 0;) {
    p[k] = box_[k].first + static_cast<std::int64_t>(lattice_index % box_[k].size());
    lattice_index /= box_[k].size();
  }
  return p;
}

MultiIndex MultiWave::multi_index(std::size_t flat) const {
  MultiIndex m(parts());
  for (std::size_t k = parts(); k-- > 0;) {
    m[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return m;
}

bool MultiWave::is_zero() const {
  for (const auto& z : values_) {
    if (!z.is_zero()) return false;
  }
  return true;
}

MultiWave& MultiWave::operator+=(const MultiWave& o) {
  if (dims_ != o.dims_ || box_ != o.box_) throw DimensionMismatch("MultiWave: sum of fields on different boxes");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

MultiWave& MultiWave::operator*=(const GaussianInt& k) {
  for (auto& z : values_) z *= k;
  return *this;
}

InteractionTensor::InteractionTensor(std::vector<std::size_t> dims, HermitianMatrix m)
    : dims_(std::move(dims)), m_(std::move(m)) {
  if (m_.dim() != product(dims_)) {
    throw DimensionMismatch("interaction: matrix order " + std::to_string(m_.dim()) + " vs product dimension " +
                            std::to_string(product(dims_)));
  }
}

InteractionTensor InteractionTensor::zero(std::vector<std::size_t> dims) {
  const std::size_t d = product(dims);
  return InteractionTensor(std::move(dims), HermitianMatrix::zero(d));
}

GIMatrix kronecker_sum(std::span<const HermitianMatrix> hs) {
  if (hs.empty()) throw PreconditionViolation("kronecker_sum: no parts");
  std::size_t total = 1;
  for (const auto& h : hs) total *= h.dim();
  GIMatrix sum = GIMatrix::zero(total);
  for (std::size_t k = 0; k < hs.size(); ++k) {
    GIMatrix term = k == 0 ? hs[0].matrix() : GIMatrix::identity(hs[0].dim());
    for (std::size_t j = 1; j < hs.size(); ++j) {
      term = kronecker(term, j == k ? hs[j].matrix() : GIMatrix::identity(hs[j].dim()));
    }
    sum += term;
  }
  return sum;
}

HermitianMatrix total_hamiltonian(std::span<const HermitianMatrix> hs, const InteractionTensor& interaction) {
  require_parts(hs.size(), interaction.dims().size(), "total_hamiltonian");
  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (hs[k].dim() != interaction.dims()[k]) {
      throw DimensionMismatch("total_hamiltonian: part " + std::to_string(k) + " dimension");
    }
  }
  return HermitianMatrix(kronecker_sum(hs) + interaction.matrix().matrix());
}

std::optional<std::pair<ClockPoint, MultiIndex>> ResidualField::first_nonzero() const {
  for (std::size_t p = 0; p < values.lattice_size(); ++p) {
    const ClockPoint clocks = values.clock_point(p);
    const GIVector s = values.slice(clocks);
    for (std::size_t f = 0; f < s.size(); ++f) {
      if (!s[f].is_zero()) return std::make_pair(clocks, values.multi_index(f));
    }
  }
  return std::nullopt;
}

std::string ResidualField::to_csv() const {
  std::ostringstream os;
  const std::size_t m = values.parts();
  for (std::size_t k = 0; k < m; ++k) os << 'n' << (k + 1) << ',';
  for (std::size_t k = 0; k < m; ++k) os << "alpha" << (k + 1) << ',';
  os << "re,im\n";
  for (std::size_t p = 0; p < values.lattice_size(); ++p) {
    const ClockPoint clocks = values.clock_point(p);
    const GIVector s = values.slice(clocks);
    for (std::size_t f = 0; f < s.size(); ++f) {
      for (auto n : clocks) os << n << ',';
      for (auto a : values.multi_index(f)) os << a << ',';
      os << s[f].re().get_str() << ',' << s[f].im().get_str() << '\n';
    }
  }
  return os.str();
}

ResidualField many_time_residual(const MultiWave& psi, std::span<const HermitianMatrix> hs,
                                 const InteractionTensor& interaction) {
  require_parts(hs.size(), psi.parts(), "many_time_residual");
  if (interaction.dims() != psi.dims()) throw DimensionMismatch("many_time_residual: interaction dimensions");
  std::vector<ClockRange> interior;
  for (std::size_t k = 0; k < psi.parts(); ++k) {
    const ClockRange& r = psi.box()[k];
    if (r.size() < 3) {
      throw PreconditionViolation("many_time_residual: axis " + std::to_string(k) + " has no interior clock");
    }
    interior.push_back({r.first + 1, r.last - 1});
  }
  const HermitianMatrix total = total_hamiltonian(hs, interaction);

  ResidualField out{MultiWave(psi.dims(), interior)};
  for (std::size_t p = 0; p < out.values.lattice_size(); ++p) {
    const ClockPoint clocks = out.values.clock_point(p);
    ClockPoint shifted = clocks;
    GIVector r(psi.flat_dim());
    for (std::size_t k = 0; k < clocks.size(); ++k) {
      shifted[k] = clocks[k] + 1;
      r += psi.slice(shifted);
      shifted[k] = clocks[k] - 1;
      r -= psi.slice(shifted);
      shifted[k] = clocks[k];
    }
    const GIVector h_psi = apply(total, psi.slice(clocks));
    for (std::size_t f = 0; f < r.size(); ++f) r[f] += h_psi[f].times_i();
    out.values.set_slice(clocks, r);
  }
  return out;
}

MultiWave product_field(std::span<const Trajectory> factors) {
  if (factors.empty()) throw PreconditionViolation("product_field: no factors");
  std::vector<std::size_t> dims;
  std::vector<ClockRange> box;
  for (const auto& f : factors) {
    dims.push_back(f.dim());
    box.push_back({0, static_cast<std::int64_t>(f.last_index())});
  }
  MultiWave field(dims, box);
  std::vector<GIVector> parts(factors.size());
  for (std::size_t p = 0; p < field.lattice_size(); ++p) {
    const ClockPoint clocks = field.clock_point(p);
    for (std::size_t k = 0; k < factors.size(); ++k) parts[k] = factors[k][static_cast<std::size_t>(clocks[k])];
    field.set_slice(clocks, tensor_product(parts));
  }
  return field;
}

FactorizedEvolution evolve_factorized(std::span<const FactorSpec> parts) {
  if (parts.empty()) throw PreconditionViolation("evolve_factorized: no parts");
  std::vector<Trajectory> factors;
  std::vector<HermitianMatrix> hs;
  std::vector<std::size_t> dims;
  for (const auto& part : parts) {
    if (part.steps < 1) throw PreconditionViolation("evolve_factorized: each part needs steps >= 1");
    factors.push_back(evolve(part.seed0, part.seed1, part.h, part.steps));
    hs.push_back(part.h);
    dims.push_back(part.h.dim());
  }
  MultiWave field = product_field(factors);
  ResidualField residual = many_time_residual(field, hs, InteractionTensor::zero(dims));
  const bool certified = residual.is_zero();
  return {std::move(factors), std::move(field), std::move(residual), certified};
}

Trajectory evolve_synchronized(const GIVector& slice0, const GIVector& slice1, std::span<const HermitianMatrix> hs,
                               const InteractionTensor& interaction, std::size_t steps) {
  return evolve(slice0, slice1, total_hamiltonian(hs, interaction), steps);
}

LeibnizReport leibniz_failure_demo(std::span<const GaussianInt> a, std::span<const GaussianInt> b) {
  if (a.size() != b.size()) throw DimensionMismatch("leibniz_failure_demo: sequences differ in length");
  if (a.size() < 3) throw PreconditionViolation("leibniz_failure_demo: sequences need length >= 3");
  LeibnizReport report;
  for (std::size_t n = 1; n + 1 < a.size(); ++n) {
    LeibnizRow row;
    row.n = n;
    const GaussianInt da = a[n + 1] - a[n - 1];
    const GaussianInt db = b[n + 1] - b[n - 1];
    row.lhs = a[n + 1] * b[n + 1] - a[n - 1] * b[n - 1];
    row.middle = HalfGaussian::from_twice(da * (b[n + 1] + b[n - 1]) + (a[n + 1] + a[n - 1]) * db);
    row.naive = da * b[n] + a[n] * db;
    row.identity_holds = row.middle.twice() == GaussianInt(2) * row.lhs;
    row.naive_matches = row.naive == row.lhs;
    if (!row.identity_holds) report.identity_holds_everywhere = false;
    if (!row.naive_matches && !report.first_naive_failure) report.first_naive_failure = n;
    report.rows.push_back(std::move(row));
  }
  return report;
}

MultiWave bell_state(const Trajectory& psi, const Trajectory& phi) {
  if (psi.dim() != 2 || phi.dim() != 2) throw PreconditionViolation("bell_state: both parts must have dimension 2");
  const std::size_t count = std::min(psi.size(), phi.size());
  const auto last = static_cast<std::int64_t>(count - 1);
  MultiWave field({2, 2}, {{0, last}, {0, last}});
  for (std::int64_t n1 = 0; n1 <= last; ++n1) {
    for (std::int64_t n2 = 0; n2 <= last; ++n2) {
      const GIVector& p1 = psi[static_cast<std::size_t>(n1)];
      const GIVector& f1 = phi[static_cast<std::size_t>(n1)];
      const GIVector& p2 = psi[static_cast<std::size_t>(n2)];
      const GIVector& f2 = phi[static_cast<std::size_t>(n2)];
      GIVector s(4);
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) s[a * 2 + b] = p1[a] * f2[b] - f1[a] * p2[b];
      }
      const std::int64_t clocks[] = {n1, n2};
      field.set_slice(clocks, s);
    }
  }
  return field;
}

BipartiteSlice BipartiteSlice::from_rows(const std::vector<std::vector<GaussianInt>>& rows) {
  BipartiteSlice s;
  s.rows = rows.size();
  s.cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != s.cols) throw DimensionMismatch("bipartite slice: ragged rows");
    s.entries.insert(s.entries.end(), r.begin(), r.end());
  }
  return s;
}

BipartiteSlice bipartite_slice(const MultiWave& psi, std::int64_t n1, std::int64_t n2) {
  if (psi.parts() != 2) throw PreconditionViolation("bipartite_slice: field is not bipartite");
  const std::int64_t clocks[] = {n1, n2};
  const GIVector v = psi.slice(clocks);
  return BipartiteSlice{psi.dims()[0], psi.dims()[1], v.entries()};
}

GaussianInt minor_value(const BipartiteSlice& s, const MinorCertificate& at) {
  return s(at.row0, at.col0) * s(at.row1, at.col1) - s(at.row0, at.col1) * s(at.row1, at.col0);
}

WitnessResult factorizability_witness(const BipartiteSlice& slice) {
  for (std::size_t r0 = 0; r0 < slice.rows; ++r0) {
    for (std::size_t r1 = r0 + 1; r1 < slice.rows; ++r1) {
      for (std::size_t c0 = 0; c0 < slice.cols; ++c0) {
        for (std::size_t c1 = c0 + 1; c1 < slice.cols; ++c1) {
          MinorCertificate cert{r0, r1, c0, c1, {}};
          cert.value = minor_value(slice, cert);
          if (!cert.value.is_zero()) return {false, cert};
        }
      }
    }
  }
  return {true, std::nullopt};
}

json to_json(const MultiWave& psi) {
  json box = json::array();
  for (const auto& r : psi.box()) box.push_back({r.first, r.last});
  json records = json::array();
  for (std::size_t p = 0; p < psi.lattice_size(); ++p) {
    const ClockPoint clocks = psi.clock_point(p);
    const GIVector s = psi.slice(clocks);
    for (std::size_t f = 0; f < s.size(); ++f) {
      records.push_back({{"clocks", clocks}, {"indices", psi.multi_index(f)}, {"value", to_json(s[f])}});
    }
  }
  return json{{"dims", psi.dims()}, {"clock_box", std::move(box)}, {"records", std::move(records)}};
}

MultiWave multiwave_from_json(const json& j) {
  try {
    std::vector<ClockRange> box;
    for (const auto& r : j.at("clock_box")) {
      if (!r.is_array() || r.size() != 2) throw LiteralError("clock_box entries must be [first, last]");
      box.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>()});
    }
    MultiWave psi(j.at("dims").get<std::vector<std::size_t>>(), std::move(box));
    for (const auto& rec : j.at("records")) {
      const auto clocks = rec.at("clocks").get<std::vector<std::int64_t>>();
      const auto indices = rec.at("indices").get<std::vector<std::size_t>>();
      psi.at(clocks, indices) = gaussian_from_json(rec.at("value"));
    }
    return psi;
  } catch (const json::exception& e) {
    throw LiteralError(std::string("MultiWave JSON: ") + e.what());
  }
}

json to_json(const WitnessResult& w) {
  json out{{"factorizable", w.factorizable}};
  if (w.certificate) {
    const auto& c = *w.certificate;
    out["certificate"] = {{"rows", {c.row0, c.row1}}, {"cols", {c.col0, c.col1}}, {"minor", to_json(c.value)}};
  }
  return out;
}

}  // namespace hca
