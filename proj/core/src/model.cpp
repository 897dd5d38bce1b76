#include "partmpc/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace partmpc {

bool Box::contains(const Eigen::VectorXd& v, double tol) const {
  if (v.size() != lo.size()) return false;
  for (int i = 0; i < v.size(); ++i)
    if (v(i) < lo(i) - tol || v(i) > hi(i) + tol) return false;
  return true;
}

void Box::validate(const char* what) const {
  if (lo.size() != hi.size())
    throw std::invalid_argument(std::string(what) + ": bound sizes differ");
  for (int i = 0; i < lo.size(); ++i) {
    if (!(std::isfinite(lo(i)) && std::isfinite(hi(i))))
      throw std::invalid_argument(std::string(what) + ": bounds must be finite");
    if (lo(i) > hi(i))
      throw std::invalid_argument(std::string(what) + ": empty interval at component " +
                                  std::to_string(i));
  }
}

Box Box::uniform(int n, double l, double h) {
  Box b;
  b.lo = Eigen::VectorXd::Constant(n, l);
  b.hi = Eigen::VectorXd::Constant(n, h);
  return b;
}

double SubsystemModel::coeff_a(double x) const {
  if (is_pwa()) return pwa().active(x).a;
  return linear().A(0, 0);
}

double SubsystemModel::coeff_b(double x) const {
  if (is_pwa()) return pwa().active(x).b;
  return linear().B(0, 0);
}

void SubsystemModel::validate(int id) const {
  const std::string tag = "subsystem " + std::to_string(id);
  if (n_x <= 0 || n_u < 0) throw std::invalid_argument(tag + ": bad dimensions");
  state_box.validate((tag + " state box").c_str());
  input_box.validate((tag + " input box").c_str());
  if (state_box.dim() != n_x || input_box.dim() != n_u)
    throw std::invalid_argument(tag + ": box dimensions do not match n_x/n_u");
  if (is_pwa()) {
    if (n_x != 1 || n_u != 1)
      throw std::invalid_argument(tag + ": switched dynamics require scalar subsystems");
    const auto& d = pwa();
    if (!d.pos.nonneg || d.neg.nonneg)
      throw std::invalid_argument(tag + ": modes must cover x >= 0 and x < 0 exactly once");
    for (double v : {d.pos.a, d.pos.b, d.neg.a, d.neg.b})
      if (!std::isfinite(v)) throw std::invalid_argument(tag + ": non-finite coefficient");
  } else {
    const auto& d = linear();
    if (d.A.rows() != n_x || d.A.cols() != n_x)
      throw std::invalid_argument(tag + ": A must be n_x by n_x");
    if (d.B.rows() != n_x || d.B.cols() != n_u)
      throw std::invalid_argument(tag + ": B must be n_x by n_u");
    if (d.C && d.C->cols() != n_x)
      throw std::invalid_argument(tag + ": C must have n_x columns");
  }
}

bool NetworkModel::any_pwa() const {
  for (const auto& s : subsystems)
    if (s.is_pwa()) return true;
  return false;
}

bool NetworkModel::all_scalar() const {
  for (const auto& s : subsystems)
    if (s.n_x != 1 || s.n_u != 1) return false;
  return true;
}

void NetworkModel::validate() const {
  for (int i = 0; i < size(); ++i) subsystems[i].validate(i);
  for (const auto& c : couplings) {
    if (c.from < 0 || c.from >= size() || c.to < 0 || c.to >= size())
      throw std::invalid_argument("coupling references unknown subsystem");
    if (c.from == c.to)
      throw std::invalid_argument("subsystem " + std::to_string(c.from) +
                                  " cannot couple to itself");
    if (c.gain.rows() != subsystems[c.to].n_x || c.gain.cols() != subsystems[c.from].n_x)
      throw std::invalid_argument("coupling gain has wrong shape for (" +
                                  std::to_string(c.from) + " -> " + std::to_string(c.to) +
                                  ")");
    if (!c.gain.allFinite())
      throw std::invalid_argument("coupling gain must be finite");
  }
}

}  // namespace partmpc
