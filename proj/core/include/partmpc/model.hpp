#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

namespace partmpc {

/// Componentwise interval bounds. lo(i) <= hi(i) is required everywhere.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& v, double tol = 0.0) const;
  void validate(const char* what) const;

  static Box uniform(int n, double l, double h);
};

/// x(k+1) = A x(k) + B u(k), optionally y(k) = C x(k).
struct LinearDynamics {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  std::optional<Eigen::MatrixXd> C;
};

/// One branch of a scalar two-mode subsystem. The guard is the sign of the
/// local state: x >= 0 when `nonneg`, x < 0 otherwise.
struct PwaMode {
  bool nonneg = true;
  double a = 0.0;
  double b = 0.0;
};

/// Scalar piecewise-affine dynamics with exactly one mode per sign.
struct PwaDynamics {
  PwaMode pos;  // active on x >= 0
  PwaMode neg;  // active on x < 0

  const PwaMode& active(double x) const { return x >= 0.0 ? pos : neg; }
};

/// A single subsystem of a dynamical network.
struct SubsystemModel {
  int n_x = 0;
  int n_u = 0;
  std::variant<LinearDynamics, PwaDynamics> dynamics;
  Box state_box;
  Box input_box;

  bool is_pwa() const { return std::holds_alternative<PwaDynamics>(dynamics); }
  const LinearDynamics& linear() const { return std::get<LinearDynamics>(dynamics); }
  const PwaDynamics& pwa() const { return std::get<PwaDynamics>(dynamics); }

  /// Local state coefficient and input coefficient for a scalar subsystem,
  /// resolved against the current state when the dynamics switch.
  double coeff_a(double x) const;
  double coeff_b(double x) const;

  void validate(int id) const;
};

/// Directed coupling: the state of subsystem `from` enters the dynamics of
/// subsystem `to` through `gain` (rows: n_x of `to`, cols: n_x of `from`).
struct Coupling {
  int from = -1;
  int to = -1;
  Eigen::MatrixXd gain;
};

/// A network of subsystems with directed state couplings.
struct NetworkModel {
  std::vector<SubsystemModel> subsystems;
  std::vector<Coupling> couplings;

  int size() const { return static_cast<int>(subsystems.size()); }
  bool any_pwa() const;

  /// All subsystems are scalar (n_x == n_u == 1).
  bool all_scalar() const;

  /// Throws std::invalid_argument on inconsistent ids, gain shapes, or boxes.
  void validate() const;
};

}  // namespace partmpc
