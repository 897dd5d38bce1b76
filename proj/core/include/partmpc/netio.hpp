#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "partmpc/model.hpp"

namespace partmpc {

/// Parse error with the 1-based line it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

///// Reads a network description. The format is line oriented:
///
///   nodes N
///   bounds x <lo> <hi>
///   bounds u <lo> <hi>
///   mode <id> guard x>=0|x<0 a <real> b <real>
///   edge <i> <j> <w>
///
/// Decimal form with enough digits to round-trip a double; used by the file
/// writers.
std::string format_real(double v);

/// `#` starts a comment. Agent ids are 1-based in the file. `edge i j w`
/// declares that agent j drives agent i with gain w. Agents with two distinct
/// mode lines switch on the sign of their state; agents with identical or no
/// mode lines are linear (default a 0.5, b 1). All agents are scalar.
NetworkModel read_network(std::istream& in);
NetworkModel read_network_file(const std::string& path);

/// Writes a network in the same format; the result re-parses to an equivalent
/// model. Only scalar networks with uniform boxes can be serialized.
void write_network(std::ostream& out, const NetworkModel& net);
void write_network_file(const std::string& path, const NetworkModel& net);

/// Scalar network generators used by the command line tool and the tests.

/// The 50-agent switched benchmark network: every agent follows
/// x+ = 0.5 x + u (on x >= 0) or x+ = -0.5 x + u (on x < 0), with
/// x in [-0.9, 0.9], u in [-0.5, 0.5], and a fixed sparse set of 52 couplings.
NetworkModel make_benchmark_network();

/// 64 linear agents arranged in three coupling tiers: cliques of 4 at 0.1,
/// the four cliques of each group of 16 linked through their lead agents at
/// 0.01, and the four groups linked through their lead agents at 0.001. All
/// couplings are bidirectional.
NetworkModel make_modular64_network();

/// Seeded random scalar network: every ordered pair (i, j), i != j, receives
/// a coupling with probability `density`, with gain drawn uniformly from
/// [0.05, 0.8]. Agents are linear (a 0.5, b 1) unless `pwa` is set, in which
/// case they switch between +a and -a like the benchmark agents.
NetworkModel make_random_network(int n, double density, std::uint64_t seed,
                                 bool pwa = false);

}  // namespace partmpc
