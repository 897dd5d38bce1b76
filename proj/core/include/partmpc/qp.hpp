#pragma once

#include <Eigen/Dense>

namespace partmpc {

/// Convex quadratic program
///   min 0.5 v'Pv + q'v   s.t.  l <= Av <= u
/// with P symmetric positive semidefinite. Equality rows use l == u;
/// one-sided rows use +-infinity.
struct QpProblem {
  Eigen::MatrixXd p;
  Eigen::VectorXd q;
  Eigen::MatrixXd a;
  Eigen::VectorXd l;
  Eigen::VectorXd u;

  int vars() const { return static_cast<int>(p.rows()); }
  int rows() const { return static_cast<int>(a.rows()); }
  void validate() const;
};

struct QpSettings {
  double rho = 0.1;        // constraint penalty
  double sigma = 1e-6;     // proximal regularization
  double relax = 1.6;      // over-relaxation
  double eps = 1e-8;       // residual target
  int max_iter = 50000;
  int check_every = 10;    // residual check cadence
  bool polish = true;      // active-set refinement of the final iterate
};

struct QpResult {
  Eigen::VectorXd v;
  Eigen::VectorXd dual;    // row multipliers
  double objective = 0.0;  // 0.5 v'Pv + q'v
  int iterations = 0;
  bool converged = false;
  bool polished = false;
};

/// Operator-splitting solver. The factorization of P + sigma I + rho A'A is
/// computed once and reused across solves, so callers may change q and the
/// row bounds freely between solves (the branch-and-bound search and the
/// consensus iterations both rely on this).
class QpSolver {
 public:
  explicit QpSolver(QpProblem problem, QpSettings settings = {});

  void set_linear_cost(const Eigen::VectorXd& q);
  void set_row_bounds(int row, double lo, double hi);

  /// Cold start from zeros.
  QpResult solve();
  /// Warm start from a previous primal/dual pair.
  QpResult solve(const Eigen::VectorXd& v0, const Eigen::VectorXd& y0);

  const QpProblem& problem() const { return problem_; }

 private:
  QpProblem problem_;
  QpSettings settings_;
  Eigen::LLT<Eigen::MatrixXd> kkt_;

  QpResult run(Eigen::VectorXd v, Eigen::VectorXd z, Eigen::VectorXd y);
  bool polish(QpResult& result) const;
};

/// Norm of the objective gradient with the components blocked by active
/// simple bounds removed; the optimality measure used by the tests. Rows of A
/// must be unit vectors for the blocked components to be recognized, which
/// holds for pure box problems.
double projected_gradient_norm(const QpProblem& problem, const Eigen::VectorXd& v,
                               double active_tol = 1e-7);

}  // namespace partmpc
