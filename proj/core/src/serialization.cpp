#include "triplelab/serialization.hpp"

#include <fstream>
#include <sstream>

#include "triplelab/error.hpp"

namespace triplelab {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

int read_count(const json& j, const char* key) {
  if (!j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer()) parse_error(std::string("field \"") + key + "\" must be an integer");
  const auto n = v.get<long long>();
  if (n < 0 || n > 1'000'000) parse_error(std::string("field \"") + key + "\" out of range");
  return static_cast<int>(n);
}

}  // namespace

json to_json(const FactorDescriptor& f) {
  switch (f.kind) {
    case FactorKind::Rectangular: return {{"type", 1}, {"p", f.p}, {"q", f.q}};
    case FactorKind::Antisymmetric: return {{"type", 2}, {"n", f.p}};
    case FactorKind::Symmetric: return {{"type", 3}, {"n", f.p}};
    case FactorKind::Spin: return {{"type", 4}, {"n", f.p}};
  }
  return {};
}

FactorDescriptor parse_factor(const json& j) {
  if (!j.is_object()) parse_error("factor descriptor must be an object");
  const int type = read_count(j, "type");
  switch (type) {
    case 1: return FactorDescriptor::rectangular(read_count(j, "p"), read_count(j, "q"));
    case 2: return FactorDescriptor::antisymmetric(read_count(j, "n"));
    case 3: return FactorDescriptor::symmetric(read_count(j, "n"));
    case 4: return FactorDescriptor::spin(read_count(j, "n"));
    default:
      throw Error(ErrorKind::InvalidDescriptor,
                  "unsupported factor type " + std::to_string(type) + " (expected 1-4)");
  }
}

json to_json(const AtomicTriple& t) {
  json summands = json::array();
  for (const auto& f : t.summands()) summands.push_back(to_json(f));
  return {{"summands", summands}};
}

AtomicTriple parse_atomic_triple(const json& j) {
  if (!j.is_object() || !j.contains("summands") || !j.at("summands").is_array()) {
    parse_error("factor spec must be an object with a \"summands\" array");
  }
  std::vector<FactorDescriptor> summands;
  for (const auto& s : j.at("summands")) summands.push_back(parse_factor(s));
  return AtomicTriple(std::move(summands));
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error("complex scalars are [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) parse_error("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) parse_error("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_complex(j[i][k]);
    }
  }
  return m;
}

json element_to_json(const AtomicTriple& t, const Element& x) {
  t.validate(x, Tolerance{1e-6, 1e-6});
  json blocks = json::array();
  for (std::size_t i = 0; i < t.summand_count(); ++i) {
    const auto& b = x.blocks[i];
    if (t.summand(i).kind == FactorKind::Spin) {
      json v = json::array();
      for (Eigen::Index k = 0; k < b.rows(); ++k) v.push_back(complex_to_json(b(k, 0)));
      blocks.push_back(std::move(v));
    } else {
      blocks.push_back(matrix_to_json(b));
    }
  }
  return {{"blocks", blocks}};
}

Element parse_element(const AtomicTriple& t, const json& j) {
  const json* blocks = &j;
  if (j.is_object()) {
    if (!j.contains("blocks")) parse_error("element object needs a \"blocks\" array");
    blocks = &j.at("blocks");
  }
  if (!blocks->is_array()) parse_error("element blocks must be an array");
  if (blocks->size() != t.summand_count()) {
    throw Error(ErrorKind::ShapeMismatch, "element has " + std::to_string(blocks->size()) +
                                              " blocks, factor spec has " +
                                              std::to_string(t.summand_count()));
  }
  Element x;
  for (std::size_t i = 0; i < t.summand_count(); ++i) {
    const json& b = (*blocks)[i];
    if (t.summand(i).kind == FactorKind::Spin) {
      if (!b.is_array() || b.empty()) parse_error("spin blocks are arrays of [re, im] pairs");
      ComplexMatrix v(static_cast<Eigen::Index>(b.size()), 1);
      for (std::size_t k = 0; k < b.size(); ++k) v(static_cast<Eigen::Index>(k), 0) = parse_complex(b[k]);
      x.blocks.push_back(std::move(v));
    } else {
      x.blocks.push_back(parse_matrix(b));
    }
  }
  t.validate(x);
  return x;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    parse_error(path + ": " + ex.what());
  }
}

}  // namespace triplelab
