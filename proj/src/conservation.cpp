#include "hca/conservation.hpp"

#include <sstream>

#include "hca/errors.hpp"

namespace hca {

namespace {

void require_index(std::size_t n, std::size_t lo, std::size_t hi, const char* op) {
  if (n < lo || n > hi) {
    throw PreconditionViolation(std::string(op) + ": clock index " + std::to_string(n) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void require_dim(const Trajectory& traj, const HermitianMatrix& g, const char* op) {
  if (traj.dim() != g.dim()) {
    throw DimensionMismatch(std::string(op) + ": observable dimension " + std::to_string(g.dim()) +
                            " vs trajectory dimension " + std::to_string(traj.dim()));
  }
}

}  // namespace

GaussianInt two_point_invariant(const Trajectory& traj, const HermitianMatrix& g, std::size_t n) {
  require_index(n, 1, traj.last_index(), "two_point_invariant");
  require_dim(traj, g, "two_point_invariant");
  return inner(traj[n], apply(g, traj[n - 1])) + inner(traj[n - 1], apply(g, traj[n]));
}

BigInt norm_like_invariant(const Trajectory& traj, std::size_t n) {
  require_index(n, 1, traj.last_index(), "norm_like_invariant");
  return 2 * inner(traj[n], traj[n - 1]).re();
}

HalfInteger symmetrized_q(const Trajectory& traj, std::size_t n) {
  require_index(n, 1, traj.last_index() - 1, "symmetrized_q");
  return HalfInteger::from_twice(inner(traj[n], traj[n + 1] + traj[n - 1]).re());
}

GaussianInt conservation_bilinear(const Trajectory& traj, const HermitianMatrix& g, std::size_t n) {
  require_index(n, 1, traj.last_index() - 1, "conservation_bilinear");
  require_dim(traj, g, "conservation_bilinear");
  const GIVector dpsi = traj[n + 1] - traj[n - 1];
  return inner(traj[n], apply(g, dpsi)) + inner(dpsi, apply(g, traj[n]));
}

std::vector<LabeledObservable> commutant_basis(const HermitianMatrix& h) {
  std::vector<LabeledObservable> basis;
  basis.push_back({"1", HermitianMatrix::identity(h.dim())});
  basis.push_back({"H", h});
  basis.push_back({"H^2", HermitianMatrix(power(h.matrix(), 2))});
  basis.push_back({"H^3", HermitianMatrix(power(h.matrix(), 3))});
  return basis;
}

bool AuditReport::commuting_all_conserved() const {
  for (const auto& o : observables) {
    if (o.commutes && !(o.conserved && o.bilinear_vanishes)) return false;
  }
  return true;
}

AuditReport audit_conservation(const Trajectory& traj, const HermitianMatrix& h,
                               std::span<const LabeledObservable> observables) {
  if (traj.dim() != h.dim()) throw DimensionMismatch("audit_conservation: trajectory/Hamiltonian dimension");
  AuditReport report;
  if (traj.size() >= 3) report.first_equation_violation = first_equation_violation(traj, h);
  report.trajectory_is_solution = !report.first_equation_violation.has_value();
  report.norm_like_zero = sgn(norm_like_invariant(traj, 1)) == 0;

  const std::size_t last = traj.last_index();
  for (const auto& obs : observables) {
    require_dim(traj, obs.matrix, "audit_conservation");
    ObservableAudit audit;
    audit.label = obs.label;
    audit.commutes = commutator(obs.matrix.matrix(), h.matrix()).is_zero();

    std::vector<GIVector> g_psi;
    g_psi.reserve(traj.size());
    for (const auto& s : traj.states()) g_psi.push_back(apply(obs.matrix, s));

    for (std::size_t n = 1; n <= last; ++n) {
      audit.values_by_n.push_back(inner(traj[n], g_psi[n - 1]) + inner(traj[n - 1], g_psi[n]));
    }
    for (std::size_t k = 0; k < audit.values_by_n.size(); ++k) {
      audit.drift.push_back(audit.values_by_n[k] - audit.values_by_n.front());
      if (!audit.first_drift_site && !audit.drift.back().is_zero()) audit.first_drift_site = k + 1;
    }
    audit.conserved = !audit.first_drift_site.has_value();

    audit.bilinear_vanishes = true;
    for (std::size_t n = 1; n + 1 <= last; ++n) {
      GaussianInt b = inner(traj[n], g_psi[n + 1]) - inner(traj[n], g_psi[n - 1]) +
                      inner(traj[n + 1], g_psi[n]) - inner(traj[n - 1], g_psi[n]);
      if (!b.is_zero()) {
        audit.bilinear_vanishes = false;
        break;
      }
    }
    report.observables.push_back(std::move(audit));
  }
  return report;
}

json to_json(const AuditReport& report) {
  json out;
  out["trajectory_is_solution"] = report.trajectory_is_solution;
  out["first_equation_violation"] =
      report.first_equation_violation ? json(*report.first_equation_violation) : json(nullptr);
  out["norm_like_zero"] = report.norm_like_zero;
  json entries = json::array();
  for (const auto& o : report.observables) {
    json e;
    e["label"] = o.label;
    e["commutes"] = o.commutes;
    e["conserved"] = o.conserved;
    e["bilinear_vanishes"] = o.bilinear_vanishes;
    if (o.conserved) {
      e["value"] = to_json(o.values_by_n.front());
    } else {
      json drift = json::array();
      for (const auto& d : o.drift) drift.push_back(to_json(d));
      e["drift"] = std::move(drift);
      e["first_drift_site"] = *o.first_drift_site;
    }
    entries.push_back(std::move(e));
  }
  out["observables"] = std::move(entries);
  return out;
}

std::string values_csv(const AuditReport& report) {
  std::ostringstream os;
  os << "label,n,re,im\n";
  for (const auto& o : report.observables) {
    for (std::size_t k = 0; k < o.values_by_n.size(); ++k) {
      os << o.label << ',' << (k + 1) << ',' << o.values_by_n[k].re().get_str() << ','
         << o.values_by_n[k].im().get_str() << '\n';
    }
  }
  return os.str();
}

}  // namespace hca
