#include "thinwall/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thinwall/errors.hpp"

namespace thinwall {

namespace {

constexpr double kPi = std::numbers::pi;

struct Factor {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

TestFunction product(std::string id, const Factor& psi, const Factor& chi, double T) {
  TestFunction tf;
  tf.id = std::move(id);
  tf.phi = [=](double t, double x) { return psi.value(t) * chi.value(x); };
  tf.phi_t = [=](double t, double x) { return psi.derivative(t) * chi.value(x); };
  tf.phi_x = [=](double t, double x) { return psi.value(t) * chi.derivative(x); };
  tf.t_supp = T;
  return tf;
}

// Σ_n ½(t_{n+1} − t_n)(a_n + a_{n+1})
double time_trapezoid(const std::vector<double>& t, const std::vector<double>& a) {
  double s = 0;
  for (std::size_t n = 0; n + 1 < t.size(); ++n) s += (t[n + 1] - t[n]) * (a[n] + a[n + 1]) / 2;
  return s;
}

// ∫ w·f(x) over an uniform grid segment, trapezoidal.
template <typename Values, typename Fn>
double pair_nodes(const Values& w, const VectorXd& x, double h, Fn&& f) {
  VectorXd prod(w.size());
  for (Index j = 0; j < w.size(); ++j) prod(j) = w(j) * f(x(j));
  return trapezoid(prod, h);
}

// Σ_cells Δw · f(cell midpoint), i.e. ∫ w′ f with w′ piecewise constant.
template <typename Values, typename Fn>
double pair_gradient(const Values& w, const VectorXd& x, Fn&& f) {
  double s = 0;
  for (Index j = 0; j + 1 < w.size(); ++j) s += (w(j + 1) - w(j)) * f((x(j) + x(j + 1)) / 2);
  return s;
}

template <typename State>
void require_horizon(const Trajectory<State>& traj, const TestFunction& phi) {
  if (traj.size() < 2 || !traj.consistent()) throw TooFewSamples("pairing needs a trajectory");
  if (traj.times.back() < phi.t_supp * (1 - 1e-12))
    throw HorizonTooShort("trajectory ends before the test function support");
}

PairingReport finish(PairingReport r) {
  r.residual = r.recomputed_residual();
  return r;
}

}  // namespace

std::vector<TestFunction> builtin_test_functions(const PhysicalParams& p, double T) {
  if (!(T > 0)) throw InvalidArgument("test function support must be positive");
  const double L1 = p.L1(), L2 = p.L2(), L = L1 + L2;
  const Factor psi1{[=](double t) { const double s = std::max(0.0, 1 - t / T); return s * s; },
                    [=](double t) { const double s = std::max(0.0, 1 - t / T); return -2 * s / T; }};
  const Factor psi2{[=](double t) { const double s = std::max(0.0, 1 - t / T); return t * s * s; },
                    [=](double t) {
                      const double s = std::max(0.0, 1 - t / T);
                      return s * s - 2 * t * s / T;
                    }};
  const Factor chi1{[=](double x) { return (x + L1) * (L2 - x); },
                    [=](double x) { return L2 - L1 - 2 * x; }};
  const Factor chi2{[=](double x) { return std::sin(kPi * (x + L1) / L); },
                    [=](double x) { return kPi / L * std::cos(kPi * (x + L1) / L); }};
  return {product("psi1_chi1", psi1, chi1, T), product("psi1_chi2", psi1, chi2, T),
          product("psi2_chi1", psi2, chi1, T), product("psi2_chi2", psi2, chi2, T)};
}

TestFunction zero_test_function(double T) {
  TestFunction tf;
  tf.id = "zero";
  tf.phi = tf.phi_t = tf.phi_x = [](double, double) { return 0.0; };
  tf.t_supp = T;
  return tf;
}

double PairingReport::initial_sum() const {
  return term(Term::kInitU) + term(Term::kInitV) + term(Term::kInitZ);
}
double PairingReport::evolution_sum() const {
  return term(Term::kDotU) + term(Term::kDotV) + term(Term::kDotZ);
}
double PairingReport::gradient_sum() const {
  return term(Term::kGradU) + term(Term::kGradV) + term(Term::kGradZ);
}
double PairingReport::recomputed_residual() const {
  return std::abs(initial_sum() - (-evolution_sum() + gradient_sum()));
}

PairingReport weak_pairing_limit(const Trajectory<LimitState>& traj, const TestFunction& phi,
                                 const PhysicalParams& p, const LimitMesh& m) {
  require_horizon(traj, phi);
  const VectorXd x1 = m.rod1_nodes(), x2 = m.rod2_nodes();
  const std::size_t n = traj.size();
  std::vector<double> dot_u(n), dot_v(n), dot_z(n), grad_u(n), grad_v(n);
  for (std::size_t s = 0; s < n; ++s) {
    const LimitState& y = traj.states[s];
    y.require_conforms(m);
    const double t = traj.times[s];
    auto ft = [&](double x) { return phi.phi_t(t, x); };
    auto fx = [&](double x) { return phi.phi_x(t, x); };
    dot_u[s] = p.cap1() * pair_nodes(y.u(), x1, m.h1(), ft);
    dot_v[s] = p.cap2() * pair_nodes(y.v(), x2, m.h2(), ft);
    dot_z[s] = p.c() * y.z() * phi.phi_t(t, 0.0);
    grad_u[s] = p.k1() * pair_gradient(y.u(), x1, fx);
    grad_v[s] = p.k2() * pair_gradient(y.v(), x2, fx);
  }
  const LimitState& y0 = traj.states.front();
  const double t0 = traj.times.front();
  auto f0 = [&](double x) { return phi.phi(t0, x); };

  PairingReport r;
  r.testfn_id = phi.id;
  r.eps_problem = false;
  r.terms = {p.cap1() * pair_nodes(y0.u(), x1, m.h1(), f0),
             p.cap2() * pair_nodes(y0.v(), x2, m.h2(), f0),
             p.c() * y0.z() * phi.phi(t0, 0.0),
             time_trapezoid(traj.times, dot_u),
             time_trapezoid(traj.times, dot_v),
             time_trapezoid(traj.times, dot_z),
             time_trapezoid(traj.times, grad_u),
             time_trapezoid(traj.times, grad_v),
             0.0};
  return finish(r);
}

PairingReport weak_pairing_eps(const Trajectory<EpsState>& traj, const TestFunction& phi,
                               const PhysicalParams& p, const EpsMesh& m) {
  require_horizon(traj, phi);
  const VectorXd x1 = m.rod1_nodes(), xw = m.wall_nodes(), x2 = m.rod2_nodes();
  const double wall_capacity = p.c() / (2 * m.eps());
  const std::size_t n = traj.size();
  std::vector<double> dot_u(n), dot_v(n), dot_z(n), grad_u(n), grad_v(n), grad_z(n);
  for (std::size_t s = 0; s < n; ++s) {
    const EpsState& y = traj.states[s];
    y.require_conforms(m);
    const double t = traj.times[s];
    auto ft = [&](double x) { return phi.phi_t(t, x); };
    auto fx = [&](double x) { return phi.phi_x(t, x); };
    dot_u[s] = p.cap1() * pair_nodes(y.u(), x1, m.h1(), ft);
    dot_v[s] = p.cap2() * pair_nodes(y.v(), x2, m.h2(), ft);
    dot_z[s] = wall_capacity * pair_nodes(y.z(), xw, m.hw(), ft);
    grad_u[s] = p.k1() * pair_gradient(y.u(), x1, fx);
    grad_v[s] = p.k2() * pair_gradient(y.v(), x2, fx);
    grad_z[s] = p.k() * pair_gradient(y.z(), xw, fx);
  }
  const EpsState& y0 = traj.states.front();
  const double t0 = traj.times.front();
  auto f0 = [&](double x) { return phi.phi(t0, x); };

  PairingReport r;
  r.testfn_id = phi.id;
  r.eps_problem = true;
  r.terms = {p.cap1() * pair_nodes(y0.u(), x1, m.h1(), f0),
             p.cap2() * pair_nodes(y0.v(), x2, m.h2(), f0),
             wall_capacity * pair_nodes(y0.z(), xw, m.hw(), f0),
             time_trapezoid(traj.times, dot_u),
             time_trapezoid(traj.times, dot_v),
             time_trapezoid(traj.times, dot_z),
             time_trapezoid(traj.times, grad_u),
             time_trapezoid(traj.times, grad_v),
             time_trapezoid(traj.times, grad_z)};
  return finish(r);
}

GapRecord pairing_gap(const PairingReport& limit_report, const PairingReport& eps_report) {
  if (limit_report.testfn_id != eps_report.testfn_id)
    throw MismatchedTestFunction("pairing_gap: " + limit_report.testfn_id + " vs " +
                                 eps_report.testfn_id);
  GapRecord g;
  g.testfn_id = limit_report.testfn_id;
  for (std::size_t i = 0; i < kNumTerms; ++i)
    g.gap[i] = std::abs(eps_report.terms[i] - limit_report.terms[i]);
  return g;
}

template <typename State>
std::vector<double> dissipation_residual(const Trajectory<State>& traj) {
  if (traj.size() < 2 || !traj.consistent()) throw TooFewSamples("dissipation residual");
  const bool midpoint = traj.theta == 0.5;
  std::vector<double> r(traj.size() - 1);
  for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
    const double dt = traj.times[n + 1] - traj.times[n];
    const double w = midpoint ? (traj.w_sq[n] + traj.w_sq[n + 1]) / 2 : traj.w_sq[n + 1];
    r[n] = (traj.energy[n + 1] - traj.energy[n]) / dt + w;
  }
  return r;
}

template std::vector<double> dissipation_residual(const Trajectory<LimitState>&);
template std::vector<double> dissipation_residual(const Trajectory<EpsState>&);

}  // namespace thinwall
