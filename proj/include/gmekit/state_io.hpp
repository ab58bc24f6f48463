#pragma once

#include <string>
#include <string_view>

#include "gmekit/state.hpp"

namespace gmekit {

/// Parses a state document:
///
///   {"labels": ["A", "B"], "dims": [2, 2], "kind": "pure",
///    "amplitudes": [[re, im], ...]}
///
/// or with "kind": "mixed" and a row-major "matrix" of [re, im] pairs.
/// An optional "name" string is accepted and ignored. Structural problems
/// throw ParseError, normalization/hermiticity/positivity problems throw
/// StateInvariantError; both carry the line of the offending value.
AnyState parse_state(std::string_view text);

/// Reads and parses a file; unreadable files throw ParseError.
AnyState read_state_file(const std::string& path);

/// Serializes in the format accepted by parse_state, with round-trip
/// precision. `name` is stored when nonempty.
std::string format_state(const AnyState& state, const std::string& name = {}, int indent = 2);

/// Writes format_state output to `path`; throws Error when unwritable.
void write_state_file(const std::string& path, const AnyState& state, const std::string& name = {});

}  // namespace gmekit
