#include "gmekit/state_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gmekit/errors.hpp"

namespace gmekit {

namespace {

using nlohmann::json;

// Line of the first character of every value, keyed by JSON pointer. Only
// run on text nlohmann has already accepted, so it can be lenient.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) { value(""); }

  int line(const std::string& pointer) const {
    auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& ptr) {
    skip();
    if (pos_ >= text_.size()) return;
    lines_.emplace(ptr, line_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      for (;;) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] == '}') break;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        const std::string key = string();
        skip();
        ++pos_;  // ':'
        value(ptr + "/" + key);
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      int index = 0;
      for (;;) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] == ']') break;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        value(ptr + "/" + std::to_string(index++));
      }
      ++pos_;
    } else if (c == '"') {
      string();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '}' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

int line_of_byte(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

class Reader {
 public:
  explicit Reader(const LineIndex& index) : index_(index) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
    throw ParseError(what + (ptr.empty() ? "" : " (at " + ptr + ")"), index_.line(ptr));
  }

  Complex complex(const json& v, const std::string& ptr) const {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(ptr, "expected a complex number as [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  int line(const std::string& ptr) const { return index_.line(ptr); }

 private:
  const LineIndex& index_;
};

}  // namespace

AnyState parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  const LineIndex index(text);
  const Reader r(index);
  if (!doc.is_object()) r.fail("", "a state document must be a JSON object");

  static const std::set<std::string> known = {"labels", "dims", "kind", "amplitudes", "matrix", "name"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) r.fail("/" + key, "unknown key '" + key + "'");
  for (const char* key : {"labels", "dims", "kind"})
    if (!doc.contains(key)) r.fail("", std::string("missing key '") + key + "'");
  if (doc.contains("name") && !doc["name"].is_string()) r.fail("/name", "name must be a string");

  const json& jl = doc["labels"];
  if (!jl.is_array()) r.fail("/labels", "labels must be an array of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    if (!jl[i].is_string()) r.fail("/labels/" + std::to_string(i), "labels must be strings");
    labels.push_back(jl[i].get<std::string>());
  }
  const json& jd = doc["dims"];
  if (!jd.is_array()) r.fail("/dims", "dims must be an array of integers");
  std::vector<int> dims;
  for (std::size_t i = 0; i < jd.size(); ++i) {
    if (!jd[i].is_number_integer()) r.fail("/dims/" + std::to_string(i), "dims must be integers");
    dims.push_back(jd[i].get<int>());
  }
  SystemShape shape;
  try {
    shape = SystemShape(labels, dims);
  } catch (const InvalidArgument& e) {
    r.fail("/labels", e.what());
  }

  const json& jk = doc["kind"];
  if (!jk.is_string() || (jk != "pure" && jk != "mixed")) r.fail("/kind", "kind must be \"pure\" or \"mixed\"");
  const auto dim = static_cast<Eigen::Index>(shape.total_dim());

  if (jk == "pure") {
    if (doc.contains("matrix")) r.fail("/matrix", "a pure state takes \"amplitudes\", not \"matrix\"");
    if (!doc.contains("amplitudes")) r.fail("", "missing key 'amplitudes'");
    const json& ja = doc["amplitudes"];
    if (!ja.is_array() || static_cast<Eigen::Index>(ja.size()) != dim)
      r.fail("/amplitudes", "amplitudes must hold " + std::to_string(dim) + " entries");
    Vector amps(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      amps(i) = r.complex(ja[static_cast<std::size_t>(i)], "/amplitudes/" + std::to_string(i));
    try {
      return PureState(shape, amps);
    } catch (const StateInvariantError& e) {
      throw StateInvariantError(e.what(), r.line("/amplitudes"));
    }
  }

  if (doc.contains("amplitudes")) r.fail("/amplitudes", "a mixed state takes \"matrix\", not \"amplitudes\"");
  if (!doc.contains("matrix")) r.fail("", "missing key 'matrix'");
  const json& jm = doc["matrix"];
  if (!jm.is_array() || static_cast<Eigen::Index>(jm.size()) != dim)
    r.fail("/matrix", "matrix must have " + std::to_string(dim) + " rows");
  Matrix rho(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::string row = "/matrix/" + std::to_string(i);
    const json& jr = jm[static_cast<std::size_t>(i)];
    if (!jr.is_array() || static_cast<Eigen::Index>(jr.size()) != dim)
      r.fail(row, "matrix rows must have " + std::to_string(dim) + " entries");
    for (Eigen::Index j = 0; j < dim; ++j) rho(i, j) = r.complex(jr[static_cast<std::size_t>(j)], row + "/" + std::to_string(j));
  }
  try {
    return DensityOperator(shape, rho);
  } catch (const StateInvariantError& e) {
    throw StateInvariantError(e.what(), r.line("/matrix"));
  }
}

AnyState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

std::string format_state(const AnyState& state, const std::string& name, int indent) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  if (!name.empty()) doc["name"] = name;
  const SystemShape& shape = shape_of(state);
  doc["labels"] = shape.labels();
  doc["dims"] = shape.dims();
  auto pair = [](Complex z) { return ojson::array({z.real(), z.imag()}); };
  if (const auto* psi = std::get_if<PureState>(&state)) {
    doc["kind"] = "pure";
    ojson amps = ojson::array();
    for (Eigen::Index i = 0; i < psi->amplitudes().size(); ++i) amps.push_back(pair(psi->amplitudes()(i)));
    doc["amplitudes"] = std::move(amps);
  } else {
    const Matrix& m = std::get<DensityOperator>(state).matrix();
    doc["kind"] = "mixed";
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      ojson row = ojson::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(pair(m(i, j)));
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
  }
  return doc.dump(indent) + "\n";
}

void write_state_file(const std::string& path, const AnyState& state, const std::string& name) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << format_state(state, name);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace gmekit
