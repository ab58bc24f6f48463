#include "gmekit/fixtures.hpp"

#include <cmath>

#include "gmekit/errors.hpp"

namespace gmekit {

PureState ghz(std::size_t n) {
  const auto shape = SystemShape::qubits(n);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return PureState::normalized(shape, v);
}

PureState w_state(std::size_t n) {
  const auto shape = SystemShape::qubits(n);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
  for (std::size_t k = 0; k < n; ++k) v(Eigen::Index{1} << k) = 1.0;
  return PureState::normalized(shape, v);
}

std::vector<std::string> fixture_names() { return {"ghz3", "ghz4", "w", "phi+0", "paper"}; }

PureState fixture(const std::string& name) {
  if (name == "ghz3") return ghz(3);
  if (name == "ghz4") return ghz(4);
  if (name == "w") return w_state(3);
  if (name == "phi+0") {
    Vector v = Vector::Zero(8);
    v(0b000) = v(0b110) = 1.0 / std::sqrt(2.0);
    return PureState(SystemShape::qubits(3), v);
  }
  if (name == "paper") {
    Vector v = Vector::Zero(16);
    const double s = std::sqrt(5.0) / 4.0;
    v(0b0000) = s;
    v(0b1111) = 0.25;
    v(0b0100) = s;
    v(0b1010) = s;
    return PureState(SystemShape::qubits(4), v);
  }
  throw InvalidArgument("unknown fixture '" + name + "'");
}

}  // namespace gmekit
