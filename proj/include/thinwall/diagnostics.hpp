#pragma once

// Weak-form pairings of computed trajectories against C¹ test functions with
// compact time support, their term-by-term gaps, and dissipation residuals.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "thinwall/core.hpp"
#include "thinwall/system.hpp"

namespace thinwall {

struct TestFunction {
  std::string id;
  std::function<double(double, double)> phi;    ///< φ(t, x)
  std::function<double(double, double)> phi_t;  ///< ∂φ/∂t
  std::function<double(double, double)> phi_x;  ///< ∂φ/∂x
  double t_supp{0};                             ///< φ ≡ 0 for t ≥ t_supp
  bool zero_at_left{true};
  bool zero_at_right{true};
};

/// ψ_m(t)·χ_n(x) for m, n ∈ {1, 2}:
///   ψ₁ = (1 − t/T)₊², ψ₂ = t(1 − t/T)₊², χ₁ = (x+L1)(L2−x), χ₂ = sin(π(x+L1)/(L1+L2)).
/// Ids are "psi<m>_chi<n>".
std::vector<TestFunction> builtin_test_functions(const PhysicalParams& p, double T);

/// φ ≡ 0; only useful for exercising the pairings.
TestFunction zero_test_function(double T);

/// Terms of the weak forms in a fixed order. For the limit problem the
/// "z" entries are the point-mass terms and kGradZ is identically zero.
enum class Term : std::size_t {
  kInitU,  ///< ∫ c₁ρ₁ u⁰ φ(0,x)
  kInitV,  ///< ∫ c₂ρ₂ v⁰ φ(0,x)
  kInitZ,  ///< c z⁰ φ(0,0)  |  ∫ (c/2ε) z⁰_ε φ(0,x)
  kDotU,   ///< ∫∫ c₁ρ₁ u φ̇
  kDotV,   ///< ∫∫ c₂ρ₂ v φ̇
  kDotZ,   ///< ∫ c z φ̇(t,0)  |  ∫∫ (c/2ε) z_ε φ̇
  kGradU,  ///< ∫∫ k₁ u′ φ′
  kGradV,  ///< ∫∫ k₂ v′ φ′
  kGradZ,  ///< 0  |  ∫∫ k z_ε′ φ′
};
inline constexpr std::size_t kNumTerms = 9;
inline constexpr std::array<std::string_view, kNumTerms> kTermNames{
    "init_u", "init_v", "init_z", "dot_u", "dot_v", "dot_z", "grad_u", "grad_v", "grad_z"};

struct PairingReport {
  std::string testfn_id;
  bool eps_problem{false};
  /// φ̇ terms are stored without the leading minus of the weak form.
  std::array<double, kNumTerms> terms{};
  double residual{0};

  double term(Term t) const { return terms[static_cast<std::size_t>(t)]; }
  double initial_sum() const;
  double evolution_sum() const;
  double gradient_sum() const;
  /// |Σ initial − (−Σ φ̇ + Σ gradient)| from the stored terms.
  double recomputed_residual() const;
};

PairingReport weak_pairing_limit(const Trajectory<LimitState>& traj, const TestFunction& phi,
                                 const PhysicalParams& p, const LimitMesh& m);
PairingReport weak_pairing_eps(const Trajectory<EpsState>& traj, const TestFunction& phi,
                               const PhysicalParams& p, const EpsMesh& m);

/// |ε-term − limit term| for each of the nine ε-terms; the wall gradient term
/// is compared against zero.
struct GapRecord {
  std::string testfn_id;
  std::array<double, kNumTerms> gap{};
  double operator[](Term t) const { return gap[static_cast<std::size_t>(t)]; }
};

GapRecord pairing_gap(const PairingReport& limit_report, const PairingReport& eps_report);

/// r_n = (E_{n+1} − E_n)/Δt_n + W*, with W* = (W_n + W_{n+1})/2 for θ = 1/2
/// and W* = W_{n+1} for θ = 1.
template <typename State>
std::vector<double> dissipation_residual(const Trajectory<State>& traj);

extern template std::vector<double> dissipation_residual(const Trajectory<LimitState>&);
extern template std::vector<double> dissipation_residual(const Trajectory<EpsState>&);

}  // namespace thinwall
