#include "partmpc/mld.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "partmpc/netio.hpp"

namespace partmpc {

namespace {

// Extrema of a linear functional over a box, picked vertex by vertex from the
// coefficient signs.
double row_max_over_box(const Eigen::RowVectorXd& a, const Box& box) {
  double m = 0.0;
  for (int c = 0; c < a.size(); ++c) m += std::max(a(c) * box.lo(c), a(c) * box.hi(c));
  return m;
}

double row_min_over_box(const Eigen::RowVectorXd& a, const Box& box) {
  double m = 0.0;
  for (int c = 0; c < a.size(); ++c) m += std::min(a(c) * box.lo(c), a(c) * box.hi(c));
  return m;
}

void require_bounded(const Box& box, const std::string& what) {
  if (!box.lo.allFinite() || !box.hi.allFinite()) {
    throw std::invalid_argument(what + " must be bounded");
  }
}

}  // namespace

BigM compute_bigM(const Eigen::MatrixXd& gain, const Box& state_box) {
  if (gain.cols() != state_box.dim()) {
    throw std::invalid_argument("compute_bigM: gain has " + std::to_string(gain.cols()) +
                                " columns but the box has dimension " +
                                std::to_string(state_box.dim()));
  }
  require_bounded(state_box, "compute_bigM: the state box");

  BigM out;
  out.row_max.resize(gain.rows());
  for (int r = 0; r < gain.rows(); ++r) {
    const double hi = row_max_over_box(gain.row(r), state_box);
    const double lo = row_min_over_box(gain.row(r), state_box);
    out.row_max(r) = std::max(hi, -lo);
  }
  out.big = gain.rows() > 0 ? out.row_max.maxCoeff() : 0.0;
  out.small = -out.big;
  return out;
}

namespace {

Eigen::VectorXd guard_extreme(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                              const Eigen::VectorXd& t, const Box& state_box,
                              const Box& input_box, bool maximum) {
  if (s.rows() != r.rows() || s.rows() != t.size()) {
    throw std::invalid_argument("guard data: S, R and T row counts differ");
  }
  if (s.cols() != state_box.dim() || r.cols() != input_box.dim()) {
    throw std::invalid_argument("guard data: column counts do not match the boxes");
  }
  require_bounded(state_box, "guard bounds: the state box");
  require_bounded(input_box, "guard bounds: the input box");

  Eigen::VectorXd out(s.rows());
  for (int row = 0; row < s.rows(); ++row) {
    if (maximum) {
      out(row) = row_max_over_box(s.row(row), state_box) +
                 row_max_over_box(r.row(row), input_box) - t(row);
    } else {
      out(row) = row_min_over_box(s.row(row), state_box) +
                 row_min_over_box(r.row(row), input_box) - t(row);
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXd compute_guard_bigM(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                                   const Eigen::VectorXd& t, const Box& state_box,
                                   const Box& input_box) {
  return guard_extreme(s, r, t, state_box, input_box, true);
}

Eigen::VectorXd compute_guard_min(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                                  const Eigen::VectorXd& t, const Box& state_box,
                                  const Box& input_box) {
  return guard_extreme(s, r, t, state_box, input_box, false);
}

std::string to_string(MldRowKind kind) {
  switch (kind) {
    case MldRowKind::Indicator: return "indicator";
    case MldRowKind::BinaryDomain: return "binary domain";
    case MldRowKind::ZUpperBinary: return "z upper bound against the binary";
    case MldRowKind::ZLowerBinary: return "z lower bound against the binary";
    case MldRowKind::ZUpperSource: return "z upper bound against the source";
    case MldRowKind::ZLowerSource: return "z lower bound against the source";
    case MldRowKind::Dynamics: return "dynamics";
  }
  return "?";
}

int MldSystem::var_z(int edge, int level, int i) const {
  const MldEdge& e = edges[static_cast<std::size_t>(edge)];
  const int dim = static_cast<int>(e.gain.rows());
  return n_x + n_u + n_eps + e.z_offset + (level - 1) * dim + i;
}

std::string MldSystem::row_label(const MldRow& row) const {
  std::string label = to_string(row.kind);
  if (row.edge >= 0) {
    const MldEdge& e = edges[static_cast<std::size_t>(row.edge)];
    label += ", coupling " + std::to_string(e.from + 1) + " -> " +
             std::to_string(e.to + 1) + ", level " + std::to_string(row.level);
  }
  return label;
}

MldSystem to_mld(const NetworkModel& net, const TopologyLayerSpec& layers) {
  net.validate();
  layers.validate(net);

  MldSystem mld;
  mld.n_agents = net.size();
  for (int i = 0; i < mld.n_agents; ++i) {
    const SubsystemModel& sub = net.subsystems[static_cast<std::size_t>(i)];
    if (sub.is_pwa()) {
      throw std::invalid_argument("to_mld: subsystem " + std::to_string(i + 1) +
                                  " has piecewise-affine local dynamics; only the "
                                  "couplings may switch");
    }
    require_bounded(sub.state_box, "to_mld: state box of subsystem " + std::to_string(i + 1));
    mld.x_offset.push_back(mld.n_x);
    mld.u_offset.push_back(mld.n_u);
    mld.n_x += sub.n_x;
    mld.n_u += sub.n_u;
  }

  mld.a_local = Eigen::MatrixXd::Zero(mld.n_x, mld.n_x);
  mld.b_local = Eigen::MatrixXd::Zero(mld.n_x, mld.n_u);
  mld.state_box.lo.resize(mld.n_x);
  mld.state_box.hi.resize(mld.n_x);
  mld.input_box.lo.resize(mld.n_u);
  mld.input_box.hi.resize(mld.n_u);
  for (int i = 0; i < mld.n_agents; ++i) {
    const SubsystemModel& sub = net.subsystems[static_cast<std::size_t>(i)];
    const LinearDynamics& dyn = sub.linear();
    mld.a_local.block(mld.x_offset[i], mld.x_offset[i], sub.n_x, sub.n_x) = dyn.A;
    mld.b_local.block(mld.x_offset[i], mld.u_offset[i], sub.n_x, sub.n_u) = dyn.B;
    mld.state_box.lo.segment(mld.x_offset[i], sub.n_x) = sub.state_box.lo;
    mld.state_box.hi.segment(mld.x_offset[i], sub.n_x) = sub.state_box.hi;
    mld.input_box.lo.segment(mld.u_offset[i], sub.n_u) = sub.input_box.lo;
    mld.input_box.hi.segment(mld.u_offset[i], sub.n_u) = sub.input_box.hi;
  }

  // Edge bookkeeping first; row emission needs the final variable widths.
  for (const Coupling& c : net.couplings) {
    const EdgeLayers* entry = layers.find(c.from, c.to);
    if (!entry) {
      throw std::invalid_argument("to_mld: no topology layers given for the coupling " +
                                  std::to_string(c.from + 1) + " -> " +
                                  std::to_string(c.to + 1));
    }
    const SubsystemModel& src = net.subsystems[static_cast<std::size_t>(c.from)];
    MldEdge e;
    e.from = c.from;
    e.to = c.to;
    e.gain = c.gain;
    e.levels = static_cast<int>(entry->layers.size());
    e.eps_offset = mld.n_eps;
    e.z_offset = mld.n_z;
    e.big_m = compute_bigM(c.gain, src.state_box).big;
    e.layers = entry->layers;
    e.empty_guard.assign(static_cast<std::size_t>(e.levels), 0);
    for (int q = 1; q <= e.levels; ++q) {
      const TopologyLayer& layer = e.layers[static_cast<std::size_t>(q - 1)];
      if (layer.kind != LayerKind::StateDependent) continue;
      const Eigen::VectorXd guard_min = compute_guard_min(
          layer.guard_s, layer.guard_r, layer.guard_t, src.state_box, src.input_box);
      if ((guard_min.array() > 0.0).any()) {
        e.empty_guard[static_cast<std::size_t>(q - 1)] = 1;
        mld.notes.push_back("coupling " + std::to_string(c.from + 1) + " -> " +
                            std::to_string(c.to + 1) + " level " + std::to_string(q) +
                            ": guard region is empty over the operating box; link "
                            "pinned inactive");
      }
    }
    mld.n_eps += e.levels;
    mld.n_z += e.levels * static_cast<int>(c.gain.rows());
    mld.edges.push_back(std::move(e));
  }

  const int width = mld.width();
  auto add_row = [&](MldRowKind kind, int edge, int level, bool equality) -> MldRow& {
    MldRow row;
    row.a = Eigen::RowVectorXd::Zero(width);
    row.kind = kind;
    row.edge = edge;
    row.level = level;
    row.equality = equality;
    mld.rows.push_back(std::move(row));
    return mld.rows.back();
  };

  for (int k = 0; k < static_cast<int>(mld.edges.size()); ++k) {
    const MldEdge& e = mld.edges[static_cast<std::size_t>(k)];
    const int dim = static_cast<int>(e.gain.rows());
    const int x_from = mld.x_offset[e.from];

    for (int q = 1; q <= e.levels; ++q) {
      const TopologyLayer& layer = e.layers[static_cast<std::size_t>(q - 1)];
      const bool pinned = e.empty_guard[static_cast<std::size_t>(q - 1)] != 0;
      const int eps_col = mld.var_eps(k, q);

      if (layer.kind == LayerKind::StateDependent && !pinned) {
        const SubsystemModel& src = net.subsystems[static_cast<std::size_t>(e.from)];
        const Eigen::VectorXd m_star = compute_guard_bigM(
            layer.guard_s, layer.guard_r, layer.guard_t, src.state_box, src.input_box);
        for (int r = 0; r < layer.guard_s.rows(); ++r) {
          // S x - T <= M*(1 - eps)
          MldRow& row = add_row(MldRowKind::Indicator, k, q, false);
          row.a.segment(x_from, layer.guard_s.cols()) = layer.guard_s.row(r);
          row.a(eps_col) = m_star(r);
          row.rhs = layer.guard_t(r) + m_star(r);
        }
      }

      {
        // eps <= 1, tightened to eps <= 0 over an empty guard region
        MldRow& row = add_row(MldRowKind::BinaryDomain, k, q, false);
        row.a(eps_col) = 1.0;
        row.rhs = pinned ? 0.0 : 1.0;
      }

      for (int i = 0; i < dim; ++i) {
        const int z_col = mld.var_z(k, q, i);
        {
          // z <= M eps
          MldRow& row = add_row(MldRowKind::ZUpperBinary, k, q, false);
          row.a(z_col) = 1.0;
          row.a(eps_col) = -e.big_m;
          row.rhs = 0.0;
        }
        {
          // z >= m eps
          MldRow& row = add_row(MldRowKind::ZLowerBinary, k, q, false);
          row.a(z_col) = -1.0;
          row.a(eps_col) = -e.big_m;  // m = -M
          row.rhs = 0.0;
        }
        {
          // z <= source - m (1 - eps)
          MldRow& row = add_row(MldRowKind::ZUpperSource, k, q, false);
          row.a(z_col) = 1.0;
          if (q == 1) {
            row.a.segment(x_from, e.gain.cols()) = -e.gain.row(i);
          } else {
            row.a(mld.var_z(k, q - 1, i)) = -1.0;
          }
          row.a(eps_col) += e.big_m;  // -m = M
          row.rhs = e.big_m;
        }
        {
          // z >= source - M (1 - eps)
          MldRow& row = add_row(MldRowKind::ZLowerSource, k, q, false);
          row.a(z_col) = -1.0;
          if (q == 1) {
            row.a.segment(x_from, e.gain.cols()) = e.gain.row(i);
          } else {
            row.a(mld.var_z(k, q - 1, i)) = 1.0;
          }
          row.a(eps_col) += e.big_m;
          row.rhs = e.big_m;
        }
      }
    }
  }

  // x_next = A x + B u + sum of top-level auxiliaries
  for (int i = 0; i < mld.n_agents; ++i) {
    const SubsystemModel& sub = net.subsystems[static_cast<std::size_t>(i)];
    for (int r = 0; r < sub.n_x; ++r) {
      MldRow& row = add_row(MldRowKind::Dynamics, -1, 0, true);
      row.a(mld.var_x_next(i, r)) = 1.0;
      row.a.segment(mld.x_offset[i], sub.n_x) -=
          mld.a_local.block(mld.x_offset[i] + r, mld.x_offset[i], 1, sub.n_x);
      row.a.segment(mld.n_x + mld.u_offset[i], sub.n_u) -=
          mld.b_local.block(mld.x_offset[i] + r, mld.u_offset[i], 1, sub.n_u);
      for (int k = 0; k < static_cast<int>(mld.edges.size()); ++k) {
        const MldEdge& e = mld.edges[static_cast<std::size_t>(k)];
        if (e.to == i) row.a(mld.var_z(k, e.levels, r)) -= 1.0;
      }
      row.rhs = 0.0;
    }
  }

  return mld;
}

void export_mld_rows(std::ostream& out, const MldSystem& mld) {
  out << "# columns:";
  for (int i = 0; i < mld.n_x; ++i) out << " x" << i;
  for (int i = 0; i < mld.n_u; ++i) out << " u" << i;
  for (int i = 0; i < mld.n_eps; ++i) out << " e" << i;
  for (int i = 0; i < mld.n_z; ++i) out << " z" << i;
  for (int i = 0; i < mld.n_x; ++i) out << " xn" << i;
  out << "\n";
  for (const MldRow& row : mld.rows) {
    for (int c = 0; c < row.a.size(); ++c) {
      if (c > 0) out << ' ';
      out << format_real(row.a(c));
    }
    out << (row.equality ? " = " : " <= ") << format_real(row.rhs);
    out << "  # " << mld.row_label(row) << "\n";
  }
}

void export_mld_rows_file(const std::string& path, const MldSystem& mld) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open listing file for writing: " + path);
  export_mld_rows(out, mld);
}

}  // namespace partmpc
