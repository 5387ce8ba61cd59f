#include "hca/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hca/errors.hpp"

namespace hca {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxOracleDim = 64;

struct KernelPoint {
  std::int64_t nearest;  // round(u)
  double frac;           // u - nearest, in [-1/2, 1/2]
};

KernelPoint locate(double u) {
  const double m = std::nearbyint(u);
  // t = n l rarely divides back to exactly n
  const double frac = std::abs(u - m) <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u)) ? 0.0 : u - m;
  return {static_cast<std::int64_t>(m), frac};
}

double parity(std::int64_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// sinc(pi x) with x = frac + k; sin(pi x) = (-1)^k sin(pi frac), exact zeros at integers.
double sinc_kernel(double frac, std::int64_t k) {
  const double x = frac + static_cast<double>(k);
  if (x == 0.0) return 1.0;
  if (frac == 0.0) return 0.0;
  return parity(k) * std::sin(kPi * frac) / (kPi * x);
}

// d^2/dx^2 sinc(pi x)
double sinc_kernel_dd(double frac, std::int64_t k) {
  const double x = frac + static_cast<double>(k);
  if (std::abs(x) < 0.05) {
    const double p2 = kPi * kPi;
    const double x2 = x * x;
    return -p2 / 3.0 + p2 * p2 * x2 / 10.0 - p2 * p2 * p2 * x2 * x2 / 168.0 +
           p2 * p2 * p2 * p2 * x2 * x2 * x2 / 6480.0;
  }
  const double s = parity(k) * std::sin(kPi * frac);
  const double c = parity(k) * std::cos(kPi * frac);
  return -kPi * s / x - 2.0 * c / (x * x) + 2.0 * s / (kPi * x * x * x);
}

template <class Kernel>
ComplexVector kernel_sum(const ContinuumSignal& signal, double t, Kernel kernel, Reconstruction* meta) {
  const double u = t / signal.scale.value();
  const KernelPoint p = locate(u);
  const auto w = static_cast<std::int64_t>(signal.window);
  const std::int64_t lo = std::max(p.nearest - w, signal.first_clock);
  const std::int64_t hi = std::min(p.nearest + w, signal.last_clock());
  if (meta) {
    meta->extrapolated = u < static_cast<double>(signal.first_clock) || u > static_cast<double>(signal.last_clock());
    meta->window_clipped = (p.nearest - w < signal.first_clock) || (p.nearest + w > signal.last_clock());
  }
  ComplexVector out(signal.dim(), Complex(0.0, 0.0));
  for (std::int64_t n = lo; n <= hi; ++n) {
    const double k = kernel(p.frac, p.nearest - n);
    if (k == 0.0) continue;
    const ComplexVector& s = signal.at_clock(n);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] += k * s[a];
  }
  return out;
}

double norm2(const ComplexVector& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Eigen::VectorXcd to_eigen(const ComplexVector& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t a = 0; a < v.size(); ++a) out(static_cast<Eigen::Index>(a)) = v[a];
  return out;
}

ComplexVector from_eigen(const Eigen::VectorXcd& v) { return ComplexVector(v.data(), v.data() + v.size()); }

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> diagonalize(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver did not converge");
  return solver;
}

ComplexVector step_relaxed(const Eigen::MatrixXcd& h, const ComplexVector& outer, const ComplexVector& middle,
                           double sign) {
  // outer + sign * (-i) h middle
  const Eigen::VectorXcd hm = h * to_eigen(middle);
  ComplexVector out = outer;
  const Complex factor(0.0, -sign);
  for (std::size_t a = 0; a < out.size(); ++a) out[a] += factor * hm(static_cast<Eigen::Index>(a));
  return out;
}

}  // namespace

DiscretenessScale::DiscretenessScale(double l) : l_(l) {
  if (!(l > 0.0) || !std::isfinite(l)) throw PreconditionViolation("discreteness scale must be positive and finite");
}

double DiscretenessScale::band_limit() const { return kPi / l_; }

ComplexVector to_complex(const GIVector& v) {
  ComplexVector out(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = Complex(v[a].re().get_d(), v[a].im().get_d());
  return out;
}

Eigen::MatrixXcd to_complex_matrix(const HermitianMatrix& h) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const GaussianInt& z = h(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      m(r, c) = Complex(z.re().get_d(), z.im().get_d());
    }
  }
  return m;
}

ContinuumSignal ContinuumSignal::from_trajectory(const Trajectory& traj, DiscretenessScale scale, std::size_t window) {
  if (window < 1) throw PreconditionViolation("reconstruction window must be >= 1");
  ContinuumSignal s{{}, 0, scale, window};
  s.samples.reserve(traj.size());
  for (const auto& v : traj.states()) s.samples.push_back(to_complex(v));
  return s;
}

Reconstruction reconstruct(const ContinuumSignal& signal, double t) {
  if (signal.window < 1) throw PreconditionViolation("reconstruction window must be >= 1");
  if (signal.samples.empty()) throw PreconditionViolation("reconstruct: empty signal");
  Reconstruction r;
  r.values = kernel_sum(signal, t, sinc_kernel, &r);
  return r;
}

Reconstruction reconstruct(const Trajectory& traj, DiscretenessScale scale, double t, std::size_t window) {
  return reconstruct(ContinuumSignal::from_trajectory(traj, scale, window), t);
}

ComplexVector reconstruct_second_derivative(const ContinuumSignal& signal, double t) {
  const double l = signal.scale.value();
  ComplexVector out = kernel_sum(signal, t, sinc_kernel_dd, nullptr);
  for (auto& z : out) z /= l * l;
  return out;
}

ShiftMapResidual shift_map_check(const Trajectory& traj, DiscretenessScale scale, std::size_t n, std::size_t window) {
  if (n == 0 || n >= traj.last_index()) throw PreconditionViolation("shift_map_check: site is not interior");
  const ContinuumSignal signal = ContinuumSignal::from_trajectory(traj, scale, window);
  const double l = scale.value();
  auto residual = [&](std::size_t m) {
    const ComplexVector got = reconstruct(signal, static_cast<double>(m) * l).values;
    const ComplexVector& want = signal.samples[m];
    double worst = 0;
    for (std::size_t a = 0; a < got.size(); ++a) worst = std::max(worst, std::abs(got[a] - want[a]));
    return worst;
  };
  return {residual(n + 1), residual(n - 1)};
}

double continuum_q(const ContinuumSignal& signal, double t, QTruncation mode) {
  const double l = signal.scale.value();
  const ComplexVector psi = reconstruct(signal, t).values;
  double q = 0;
  if (mode == QTruncation::exact_cosh) {
    const ComplexVector ahead = reconstruct(signal, t + l).values;
    const ComplexVector behind = reconstruct(signal, t - l).values;
    for (std::size_t a = 0; a < psi.size(); ++a) q += (std::conj(psi[a]) * (ahead[a] + behind[a])).real();
    return q / 2.0;
  }
  const ComplexVector dd = reconstruct_second_derivative(signal, t);
  double curvature = 0;
  for (std::size_t a = 0; a < psi.size(); ++a) {
    q += std::norm(psi[a]);
    curvature += (std::conj(psi[a]) * dd[a]).real();
  }
  return q + 0.5 * l * l * curvature;
}

DispersionPoint dispersion_theta(double energy) {
  DispersionPoint p;
  p.energy = energy;
  if (std::abs(energy) <= 2.0) {
    p.theta = std::asin(energy / 2.0);
    return p;
  }
  // lambda = -i mu with mu + 1/mu = E
  p.oscillatory = false;
  p.theta = std::copysign(kPi / 2.0, energy);
  p.growth_factor = (std::abs(energy) + std::sqrt(energy * energy - 4.0)) / 2.0;
  return p;
}

ComplexVector continuum_oracle(const Eigen::MatrixXcd& h, const ComplexVector& psi0, double t) {
  if (h.rows() != h.cols()) throw DimensionMismatch("continuum_oracle: matrix is not square");
  if (static_cast<std::size_t>(h.rows()) > kMaxOracleDim) {
    throw PreconditionViolation("continuum_oracle: dimension exceeds " + std::to_string(kMaxOracleDim));
  }
  if (static_cast<std::size_t>(h.rows()) != psi0.size()) throw DimensionMismatch("continuum_oracle: psi0 dimension");
  if (t == 0.0) return psi0;
  const auto solver = diagonalize(h);
  const Eigen::VectorXd& e = solver.eigenvalues();
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  Eigen::VectorXcd c = v.adjoint() * to_eigen(psi0);
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(Complex(0.0, -e(k) * t));
  ComplexVector out = from_eigen(v * c);

  const double n0 = norm2(psi0);
  const double n1 = norm2(out);
  if (std::abs(n1 - n0) > 1e-10 * std::max(1.0, n0)) {
    throw ConvergenceFailure("continuum_oracle: norm drift " + format_double(n1 - n0) + " exceeds 1e-10");
  }
  return out;
}

ComplexVector continuum_oracle(const HermitianMatrix& h, const ComplexVector& psi0, double t) {
  return continuum_oracle(to_complex_matrix(h), psi0, t);
}

std::vector<ComplexVector> evolve_relaxed(const Eigen::MatrixXcd& h, const ComplexVector& psi0,
                                          const ComplexVector& psi1, std::size_t steps) {
  if (psi0.size() != static_cast<std::size_t>(h.rows()) || psi1.size() != psi0.size()) {
    throw DimensionMismatch("evolve_relaxed: seed dimension");
  }
  std::vector<ComplexVector> out{psi0, psi1};
  out.reserve(steps + 2);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t n = out.size() - 1;
    out.push_back(step_relaxed(h, out[n - 1], out[n], 1.0));
  }
  return out;
}

std::vector<EigenmodePhase> dispersion_check(const HermitianMatrix& h, std::size_t steps) {
  if (steps == 0) throw PreconditionViolation("dispersion_check: steps must be >= 1");
  const Eigen::MatrixXcd hc = to_complex_matrix(h);
  const auto solver = diagonalize(hc);
  std::vector<EigenmodePhase> modes;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    double e = solver.eigenvalues()(k);
    // Integer spectra often sit exactly on the band edge.
    if (std::abs(std::abs(e) - 2.0) < 1e-12) e = std::copysign(2.0, e);
    const DispersionPoint dp = dispersion_theta(e);
    EigenmodePhase mode{e, dp.theta, 0.0, dp.oscillatory};
    if (dp.oscillatory) {
      const Eigen::VectorXcd v = solver.eigenvectors().col(k);
      // Roundoff feeds any growing modes of H, so each step is projected back onto v.
      std::vector<ComplexVector> run{from_eigen(v), from_eigen(v * std::exp(Complex(0.0, -dp.theta)))};
      while (run.size() < steps + 1) {
        const Eigen::VectorXcd next = to_eigen(step_relaxed(hc, run[run.size() - 2], run.back(), 1.0));
        run.push_back(from_eigen(v * v.dot(next)));
      }
      double total = 0;
      Complex prev = v.dot(to_eigen(run[0]));
      for (std::size_t n = 1; n < run.size(); ++n) {
        const Complex cur = v.dot(to_eigen(run[n]));  // <v, psi_n>
        total += std::arg(cur / prev);
        prev = cur;
      }
      mode.empirical_theta = -total / static_cast<double>(run.size() - 1);
    }
    modes.push_back(mode);
  }
  return modes;
}

std::optional<double> fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DimensionMismatch("fit_power_law: length mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!(xs[k] > 0) || !(ys[k] > 0)) continue;
    const double lx = std::log(xs[k]);
    const double ly = std::log(ys[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double n = static_cast<double>(count);
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

ConvergenceReport convergence_study(const HermitianMatrix& h, const ComplexVector& psi0,
                                    const ConvergenceOptions& options) {
  if (psi0.size() != h.dim()) throw DimensionMismatch("convergence_study: psi0 dimension");
  if (options.time < 0) throw PreconditionViolation("convergence_study: time must be >= 0");
  if (options.window < 1) throw PreconditionViolation("convergence_study: window must be >= 1");
  const Eigen::MatrixXcd hc = to_complex_matrix(h);
  const auto solver = diagonalize(hc);
  const double max_energy = solver.eigenvalues().cwiseAbs().maxCoeff();
  const ComplexVector reference = continuum_oracle(hc, psi0, options.time / 2.0);

  ConvergenceReport report;
  std::vector<double> ls, errors;
  for (double l : options.scales) {
    ScalePoint point;
    point.l = l;
    const DiscretenessScale scale(l);
    if (max_energy * l > 2.0) {
      point.note = "excluded: growing mode (max |E| l = " + format_double(max_energy * l) + " > 2)";
      report.points.push_back(point);
      continue;
    }
    const Eigen::MatrixXcd hl = hc * l;

    ComplexVector psi1;
    if (options.seed_rule == SeedRule::oracle_slice) {
      psi1 = continuum_oracle(hc, psi0, l / 2.0);
    } else {
      Eigen::VectorXcd c = solver.eigenvectors().adjoint() * to_eigen(psi0);
      for (Eigen::Index k = 0; k < c.size(); ++k) {
        const double e = std::clamp(solver.eigenvalues()(k) * l / 2.0, -1.0, 1.0);
        c(k) *= std::exp(Complex(0.0, -std::asin(e)));
      }
      psi1 = from_eigen(solver.eigenvectors() * c);
    }

    const double u = options.time / l;
    const auto w = static_cast<std::int64_t>(options.window);
    const auto forward_to = static_cast<std::int64_t>(std::ceil(u)) + w;
    point.steps = static_cast<std::size_t>(std::llround(u));

    std::vector<ComplexVector> forward = evolve_relaxed(hl, psi0, psi1, static_cast<std::size_t>(forward_to - 1));
    std::vector<ComplexVector> backward{psi1, psi0};  // clocks 1, 0, -1, ...
    for (std::int64_t k = 0; k < w; ++k) {
      const std::size_t m = backward.size() - 1;
      backward.push_back(step_relaxed(hl, backward[m - 1], backward[m], -1.0));
    }
    ContinuumSignal signal{{}, -w, scale, options.window};
    for (std::size_t k = backward.size() - 1; k >= 2; --k) signal.samples.push_back(backward[k]);
    for (auto& s : forward) signal.samples.push_back(std::move(s));

    const ComplexVector got = reconstruct(signal, options.time).values;
    ComplexVector diff(got.size());
    Complex overlap(0.0, 0.0);
    for (std::size_t a = 0; a < got.size(); ++a) {
      diff[a] = got[a] - reference[a];
      overlap += std::conj(reference[a]) * got[a];
    }
    point.error = norm2(diff);
    point.phase_error_rate = options.time > 0 ? std::abs(std::arg(overlap)) / options.time : 0.0;
    point.included = true;
    ls.push_back(l);
    errors.push_back(point.error);
    report.points.push_back(point);
  }
  report.fitted_order = fit_power_law(ls, errors);
  return report;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os << "l,error,fitted_order\n";
  const std::string order = report.fitted_order ? format_double(*report.fitted_order) : "";
  for (const auto& p : report.points) {
    if (!p.included) continue;
    os << format_double(p.l) << ',' << format_double(p.error) << ',' << order << '\n';
  }
  return os.str();
}

json to_json(const ConvergenceReport& report) {
  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back({{"l", p.l},
                      {"steps", p.steps},
                      {"included", p.included},
                      {"note", p.note},
                      {"error", p.error},
                      {"phase_error_rate", p.phase_error_rate}});
  }
  return json{{"points", std::move(points)},
              {"fitted_order", report.fitted_order ? json(*report.fitted_order) : json(nullptr)}};
}

std::string reconstruction_csv(const ContinuumSignal& signal, std::span<const double> times) {
  std::ostringstream os;
  os << "t,alpha,re,im\n";
  for (double t : times) {
    const ComplexVector v = reconstruct(signal, t).values;
    for (std::size_t a = 0; a < v.size(); ++a) {
      os << format_double(t) << ',' << a << ',' << format_double(v[a].real()) << ',' << format_double(v[a].imag())
         << '\n';
    }
  }
  return os.str();
}

}  // namespace hca
