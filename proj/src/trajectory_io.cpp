#include "hca/trajectory_io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "hca/errors.hpp"

namespace hca {

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << "n,alpha,re,im\n";
  for (std::size_t n = 0; n < traj.size(); ++n) {
    for (std::size_t a = 0; a < traj.dim(); ++a) {
      os << n << ',' << a << ',' << traj[n][a].re().get_str() << ',' << traj[n][a].im().get_str() << '\n';
    }
  }
}

std::string to_csv(const Trajectory& traj) {
  std::ostringstream os;
  write_csv(os, traj);
  return os.str();
}

Trajectory trajectory_from_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "n,alpha,re,im") throw LiteralError("trajectory CSV: bad header");
  std::map<std::size_t, std::map<std::size_t, GaussianInt>> cells;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f[4];
    for (auto& field : f) {
      if (!std::getline(ls, field, ',')) throw LiteralError("trajectory CSV row " + std::to_string(row) + ": too few fields");
    }
    try {
      const std::size_t n = std::stoul(f[0]);
      const std::size_t a = std::stoul(f[1]);
      cells[n][a] = GaussianInt(bigint_from_json(json(f[2])), bigint_from_json(json(f[3])));
    } catch (const std::exception& e) {
      throw LiteralError("trajectory CSV row " + std::to_string(row) + ": " + e.what());
    }
  }
  std::vector<GIVector> states;
  for (const auto& [n, dofs] : cells) {
    if (n != states.size()) throw LiteralError("trajectory CSV: missing clock index " + std::to_string(states.size()));
    GIVector v(dofs.size());
    std::size_t expect = 0;
    for (const auto& [a, z] : dofs) {
      if (a != expect++) throw LiteralError("trajectory CSV: missing dof at clock " + std::to_string(n));
      v[a] = z;
    }
    states.push_back(std::move(v));
  }
  return Trajectory(std::move(states));
}

json to_json(const Trajectory& traj) {
  json states = json::array();
  for (const auto& s : traj.states()) states.push_back(to_json(s));
  return json{{"dim", traj.dim()}, {"states", std::move(states)}};
}

Trajectory trajectory_from_json(const json& j) {
  if (!j.is_object() || !j.contains("states")) throw LiteralError("trajectory JSON: missing \"states\"");
  std::vector<GIVector> states;
  for (const auto& s : j.at("states")) states.push_back(vector_from_json(s));
  Trajectory traj(std::move(states));
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != traj.dim()) {
    throw LiteralError("trajectory JSON: \"dim\" disagrees with the states");
  }
  return traj;
}

}  // namespace hca
