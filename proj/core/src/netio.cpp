#include "partmpc/netio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace partmpc {
namespace {

struct ModeLine {
  bool nonneg;
  double a, b;
};

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double parse_real(const std::string& tok, int lineno, const char* what) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(lineno, std::string("expected a finite number for ") + what +
                                 ", got '" + tok + "'");
  }
}

int parse_id(const std::string& tok, int lineno, int n_agents) {
  int v;
  try {
    size_t used = 0;
    v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
  } catch (...) {
    throw ParseError(lineno, "expected an agent id, got '" + tok + "'");
  }
  if (v < 1 || v > n_agents)
    throw ParseError(lineno, "agent id " + std::to_string(v) + " out of range 1.." +
                                 std::to_string(n_agents));
  return v - 1;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

NetworkModel read_network(std::istream& in) {
  std::string raw;
  int lineno = 0;
  int n_agents = -1;
  double xlo = -1.0, xhi = 1.0, ulo = -1.0, uhi = 1.0;
  bool saw_xb = false, saw_ub = false;
  std::map<int, std::vector<ModeLine>> modes;
  std::vector<std::tuple<int, int, double, int>> edges;  // to, from, w, line

  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(strip_comment(raw));
    std::string key;
    if (!(ls >> key)) continue;

    if (key == "nodes") {
      std::string tok;
      if (!(ls >> tok)) throw ParseError(lineno, "nodes: missing count");
      int n = 0;
      try {
        n = std::stoi(tok);
      } catch (...) {
        throw ParseError(lineno, "nodes: bad count '" + tok + "'");
      }
      if (n <= 0) throw ParseError(lineno, "nodes: count must be positive");
      if (n_agents != -1) throw ParseError(lineno, "duplicate nodes line");
      n_agents = n;
    } else if (key == "bounds") {
      std::string var, lo, hi;
      if (!(ls >> var >> lo >> hi)) throw ParseError(lineno, "bounds: expected 'x|u lo hi'");
      double l = parse_real(lo, lineno, "lower bound");
      double h = parse_real(hi, lineno, "upper bound");
      if (l > h) throw ParseError(lineno, "bounds: lower bound exceeds upper bound");
      if (var == "x") {
        xlo = l; xhi = h; saw_xb = true;
      } else if (var == "u") {
        ulo = l; uhi = h; saw_ub = true;
      } else {
        throw ParseError(lineno, "bounds: unknown variable '" + var + "'");
      }
    } else if (key == "mode") {
      if (n_agents < 0) throw ParseError(lineno, "mode line before nodes line");
      std::string idtok, kw_guard, guard, kw_a, atok, kw_b, btok;
      if (!(ls >> idtok >> kw_guard >> guard >> kw_a >> atok >> kw_b >> btok) ||
          kw_guard != "guard" || kw_a != "a" || kw_b != "b")
        throw ParseError(lineno, "mode: expected '<id> guard x>=0|x<0 a <real> b <real>'");
      int id = parse_id(idtok, lineno, n_agents);
      bool nonneg;
      if (guard == "x>=0") nonneg = true;
      else if (guard == "x<0") nonneg = false;
      else throw ParseError(lineno, "mode: unknown guard '" + guard + "'");
      modes[id].push_back({nonneg, parse_real(atok, lineno, "a"), parse_real(btok, lineno, "b")});
    } else if (key == "edge") {
      if (n_agents < 0) throw ParseError(lineno, "edge line before nodes line");
      std::string itok, jtok, wtok;
      if (!(ls >> itok >> jtok >> wtok)) throw ParseError(lineno, "edge: expected '<i> <j> <w>'");
      int i = parse_id(itok, lineno, n_agents);
      int j = parse_id(jtok, lineno, n_agents);
      if (i == j) throw ParseError(lineno, "edge: self couplings are not allowed");
      double w = parse_real(wtok, lineno, "coupling gain");
      edges.emplace_back(i, j, w, lineno);
    } else {
      throw ParseError(lineno, "unknown directive '" + key + "'");
    }
  }
  if (n_agents < 0) throw ParseError(lineno == 0 ? 1 : lineno, "missing nodes line");
  (void)saw_xb;
  (void)saw_ub;

  NetworkModel net;
  net.subsystems.reserve(n_agents);
  for (int id = 0; id < n_agents; ++id) {
    SubsystemModel s;
    s.n_x = 1;
    s.n_u = 1;
    s.state_box = Box::uniform(1, xlo, xhi);
    s.input_box = Box::uniform(1, ulo, uhi);
    auto it = modes.find(id);
    if (it == modes.end()) {
      LinearDynamics lin;
      lin.A = Eigen::MatrixXd::Constant(1, 1, 0.5);
      lin.B = Eigen::MatrixXd::Constant(1, 1, 1.0);
      s.dynamics = lin;
    } else {
      const auto& ms = it->second;
      if (ms.size() != 2)
        throw ParseError(lineno, "agent " + std::to_string(id + 1) + " needs exactly two mode lines");
      const ModeLine* pos = nullptr;
      const ModeLine* neg = nullptr;
      for (const auto& m : ms) (m.nonneg ? pos : neg) = &m;
      if (!pos || !neg)
        throw ParseError(lineno, "agent " + std::to_string(id + 1) +
                                     " must cover both guards x>=0 and x<0");
      if (pos->a == neg->a && pos->b == neg->b) {
        LinearDynamics lin;
        lin.A = Eigen::MatrixXd::Constant(1, 1, pos->a);
        lin.B = Eigen::MatrixXd::Constant(1, 1, pos->b);
        s.dynamics = lin;
      } else {
        PwaDynamics d;
        d.pos = {true, pos->a, pos->b};
        d.neg = {false, neg->a, neg->b};
        s.dynamics = d;
      }
    }
    net.subsystems.push_back(std::move(s));
  }

  for (const auto& [to, from, w, line] : edges) {
    for (const auto& c : net.couplings)
      if (c.from == from && c.to == to)
        throw ParseError(line, "duplicate edge " + std::to_string(to + 1) + " " +
                                   std::to_string(from + 1));
    net.couplings.push_back({from, to, Eigen::MatrixXd::Constant(1, 1, w)});
  }
  net.validate();
  return net;
}

NetworkModel read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file: " + path);
  return read_network(in);
}

void write_network(std::ostream& out, const NetworkModel& net) {
  net.validate();
  if (!net.all_scalar())
    throw std::invalid_argument("only scalar networks can be serialized");
  if (net.size() == 0) throw std::invalid_argument("cannot serialize an empty network");

  const Box& xb = net.subsystems.front().state_box;
  const Box& ub = net.subsystems.front().input_box;
  for (const auto& s : net.subsystems)
    if (s.state_box.lo(0) != xb.lo(0) || s.state_box.hi(0) != xb.hi(0) ||
        s.input_box.lo(0) != ub.lo(0) || s.input_box.hi(0) != ub.hi(0))
      throw std::invalid_argument("only uniform boxes can be serialized");

  out << "nodes " << net.size() << "\n";
  out << "bounds x " << format_real(xb.lo(0)) << " " << format_real(xb.hi(0)) << "\n";
  out << "bounds u " << format_real(ub.lo(0)) << " " << format_real(ub.hi(0)) << "\n";
  for (int id = 0; id < net.size(); ++id) {
    const auto& s = net.subsystems[id];
    double ap, bp, an, bn;
    if (s.is_pwa()) {
      ap = s.pwa().pos.a; bp = s.pwa().pos.b;
      an = s.pwa().neg.a; bn = s.pwa().neg.b;
    } else {
      ap = an = s.linear().A(0, 0);
      bp = bn = s.linear().B(0, 0);
    }
    out << "mode " << id + 1 << " guard x>=0 a " << format_real(ap) << " b "
        << format_real(bp) << "\n";
    out << "mode " << id + 1 << " guard x<0 a " << format_real(an) << " b "
        << format_real(bn) << "\n";
  }
  for (const auto& c : net.couplings)
    out << "edge " << c.to + 1 << " " << c.from + 1 << " " << format_real(c.gain(0, 0))
        << "\n";
}

void write_network_file(const std::string& path, const NetworkModel& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open network file for writing: " + path);
  write_network(out, net);
}

}  // namespace partmpc
