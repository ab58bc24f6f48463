#pragma once

#include <string>
#include <vector>

#include "gmekit/state.hpp"

namespace gmekit {

/// Names of the built-in states: "ghz3", "ghz4", "w", "phi+0" and "paper".
std::vector<std::string> fixture_names();

/// Built-in state by name; throws InvalidArgument for an unknown name.
///
/// "paper" is sqrt(5)/4 |0000> + 1/4 |1111> + sqrt(5)/4 |0100> + sqrt(5)/4 |1010>.
/// "phi+0" is (|00> + |11>)/sqrt(2) on AB times |0> on C.
PureState fixture(const std::string& name);

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
PureState ghz(std::size_t n);
/// Equal superposition of the n single-excitation basis states.
PureState w_state(std::size_t n);

}  // namespace gmekit
