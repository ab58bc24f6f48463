#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmekit/state.hpp"

namespace gmekit {

/// One reproduced number or statement about the example states.
struct PaperCheck {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string observed;
};

/// The embedded four-qubit state with amplitudes sqrt(5)/4 on |0000>, |0100>,
/// |1010> and 1/4 on |1111>, unless `state` replaces it.
std::vector<PaperCheck> run_paper_checks(const std::optional<PureState>& state = std::nullopt);

/// Xi(A|B|CD|E - A|B) elements listed for the five-party example.
std::vector<std::string> listed_xi_example();

}  // namespace gmekit
