#include "partmpc/layers.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "partmpc/netio.hpp"

namespace partmpc {

std::string to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::StateDependent: return "state-dep";
    case LayerKind::Decision: return "decision";
    case LayerKind::Signal: return "signal";
  }
  return "?";
}

TopologyLayer TopologyLayer::state_dependent(Eigen::MatrixXd s, Eigen::MatrixXd r,
                                             Eigen::VectorXd t) {
  if (s.rows() != r.rows() || s.rows() != t.size()) {
    throw std::invalid_argument("state-dependent layer: S, R and T row counts differ");
  }
  if (s.rows() == 0) {
    throw std::invalid_argument("state-dependent layer: empty guard");
  }
  if (!s.allFinite() || !r.allFinite() || !t.allFinite()) {
    throw std::invalid_argument("state-dependent layer: non-finite guard data");
  }
  TopologyLayer layer;
  layer.kind = LayerKind::StateDependent;
  layer.guard_s = std::move(s);
  layer.guard_r = std::move(r);
  layer.guard_t = std::move(t);
  return layer;
}

namespace {

void check_binary_schedule(const std::vector<int>& schedule, const char* what) {
  for (int b : schedule) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument(std::string(what) + " layer: schedule entry " +
                                  std::to_string(b) + " is not binary");
    }
  }
}

}  // namespace

TopologyLayer TopologyLayer::decision(std::vector<int> schedule) {
  check_binary_schedule(schedule, "decision");
  TopologyLayer layer;
  layer.kind = LayerKind::Decision;
  layer.schedule = std::move(schedule);
  return layer;
}

TopologyLayer TopologyLayer::signal(std::vector<int> schedule) {
  check_binary_schedule(schedule, "signal");
  TopologyLayer layer;
  layer.kind = LayerKind::Signal;
  layer.schedule = std::move(schedule);
  return layer;
}

int TopologyLayerSpec::levels() const {
  if (edges.empty()) return 0;
  const std::size_t n = edges.front().layers.size();
  for (const EdgeLayers& e : edges) {
    if (e.layers.empty()) {
      throw std::invalid_argument("topology spec: coupling " + std::to_string(e.from + 1) +
                                  " -> " + std::to_string(e.to + 1) + " has no layers");
    }
    if (e.layers.size() != n) {
      throw std::invalid_argument("topology spec: edges disagree on the layer count");
    }
  }
  return static_cast<int>(n);
}

const EdgeLayers* TopologyLayerSpec::find(int from, int to) const {
  for (const EdgeLayers& e : edges) {
    if (e.from == from && e.to == to) return &e;
  }
  return nullptr;
}

void TopologyLayerSpec::validate(const NetworkModel& net) const {
  levels();
  const int n = net.size();
  for (const EdgeLayers& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to) {
      throw std::invalid_argument("topology spec: coupling " + std::to_string(e.from + 1) +
                                  " -> " + std::to_string(e.to + 1) +
                                  " does not name two distinct agents");
    }
    const SubsystemModel& src = net.subsystems[static_cast<std::size_t>(e.from)];
    for (std::size_t q = 0; q < e.layers.size(); ++q) {
      const TopologyLayer& layer = e.layers[q];
      if (layer.kind != LayerKind::StateDependent) continue;
      if (layer.guard_s.cols() != src.n_x || layer.guard_r.cols() != src.n_u) {
        throw std::invalid_argument(
            "topology spec: guard of coupling " + std::to_string(e.from + 1) + " -> " +
            std::to_string(e.to + 1) + " level " + std::to_string(q + 1) +
            " does not match the source agent's dimensions");
      }
    }
  }
}

int layer_value(const TopologyLayer& layer, int t, const Eigen::VectorXd& x_from,
                const Eigen::VectorXd& u_from) {
  if (t < 0) throw std::invalid_argument("layer_value: negative time step");
  if (layer.kind == LayerKind::StateDependent) {
    const Eigen::VectorXd slack =
        layer.guard_s * x_from + layer.guard_r * u_from - layer.guard_t;
    return (slack.array() <= 0.0).all() ? 1 : 0;
  }
  if (layer.schedule.empty()) return 1;  // unscheduled layers stay active
  if (t >= static_cast<int>(layer.schedule.size())) {
    throw std::out_of_range("layer_value: " + to_string(layer.kind) +
                            " schedule ends before step " + std::to_string(t));
  }
  return layer.schedule[static_cast<std::size_t>(t)];
}

int compose_links(const std::vector<int>& layer_values) {
  if (layer_values.empty()) {
    throw std::invalid_argument("compose_links: no layer values given");
  }
  int product = 1;
  for (int v : layer_values) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("compose_links: layer value " + std::to_string(v) +
                                  " is not binary");
    }
    product *= v;
  }
  return product;
}

int compose_links(const EdgeLayers& edge, int t, const Eigen::VectorXd& x_from,
                  const Eigen::VectorXd& u_from) {
  if (edge.layers.empty()) {
    throw std::invalid_argument("compose_links: edge has no layers");
  }
  int product = 1;
  for (const TopologyLayer& layer : edge.layers) {
    product *= layer_value(layer, t, x_from, u_from);
    if (product == 0) break;
  }
  return product;
}

namespace {

double parse_real(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
}

int parse_bit(const std::string& token, int line) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  throw ParseError(line, "expected 0 or 1, got '" + token + "'");
}

int parse_agent_id(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size() || v < 1) throw std::invalid_argument(token);
    return v - 1;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a positive agent id, got '" + token + "'");
  }
}

}  // namespace

TopologyLayerSpec read_layers(std::istream& in) {
  TopologyLayerSpec spec;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string word;
    if (!(line >> word)) continue;
    if (word != "layer") throw ParseError(line_no, "unknown directive '" + word + "'");

    std::string from_tok, to_tok, kind;
    if (!(line >> from_tok >> to_tok >> kind)) {
      throw ParseError(line_no, "layer line needs <from> <to> <kind>");
    }
    const int from = parse_agent_id(from_tok, line_no);
    const int to = parse_agent_id(to_tok, line_no);

    TopologyLayer layer;
    if (kind == "state-dep") {
      std::string s_tok, r_tok, t_tok;
      if (!(line >> s_tok >> r_tok >> t_tok)) {
        throw ParseError(line_no, "state-dep layer needs <S> <R> <T>");
      }
      Eigen::MatrixXd s(1, 1), r(1, 1);
      Eigen::VectorXd t(1);
      s(0, 0) = parse_real(s_tok, line_no);
      r(0, 0) = parse_real(r_tok, line_no);
      t(0) = parse_real(t_tok, line_no);
      layer = TopologyLayer::state_dependent(s, r, t);
    } else if (kind == "decision" || kind == "signal") {
      std::vector<int> bits;
      std::string tok;
      while (line >> tok) bits.push_back(parse_bit(tok, line_no));
      if (kind == "signal" && bits.empty()) {
        throw ParseError(line_no, "signal layer needs at least one bit");
      }
      layer = kind == "decision" ? TopologyLayer::decision(std::move(bits))
                                 : TopologyLayer::signal(std::move(bits));
    } else {
      throw ParseError(line_no, "unknown layer kind '" + kind + "'");
    }
    std::string extra;
    if (line >> extra) throw ParseError(line_no, "trailing content '" + extra + "'");

    EdgeLayers* entry = nullptr;
    for (EdgeLayers& e : spec.edges) {
      if (e.from == from && e.to == to) entry = &e;
    }
    if (!entry) {
      spec.edges.push_back(EdgeLayers{from, to, {}});
      entry = &spec.edges.back();
    }
    entry->layers.push_back(std::move(layer));
  }
  spec.levels();  // uniform layer counts
  return spec;
}

TopologyLayerSpec read_layers_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open layer file: " + path);
  return read_layers(in);
}

void write_layers(std::ostream& out, const TopologyLayerSpec& spec) {
  for (const EdgeLayers& e : spec.edges) {
    for (const TopologyLayer& layer : e.layers) {
      out << "layer " << e.from + 1 << ' ' << e.to + 1 << ' ' << to_string(layer.kind);
      if (layer.kind == LayerKind::StateDependent) {
        if (layer.guard_s.rows() != 1 || layer.guard_s.cols() != 1) {
          throw std::invalid_argument(
              "write_layers: only single-row scalar guards have a line form");
        }
        out << ' ' << format_real(layer.guard_s(0, 0)) << ' '
            << format_real(layer.guard_r(0, 0)) << ' ' << format_real(layer.guard_t(0));
      } else {
        for (int b : layer.schedule) out << ' ' << b;
      }
      out << '\n';
    }
  }
}

void write_layers_file(const std::string& path, const TopologyLayerSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open layer file for writing: " + path);
  write_layers(out, spec);
}

}  // namespace partmpc
