#include "charfock/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "charfock/error.hpp"

namespace charfock {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

Index count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string("'") + key + "' must be a nonnegative integer");
  return static_cast<Index>(v.get<long long>());
}

double finite_number(const Json& v) {
  if (!v.is_number()) bad("expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad("non-finite number");
  return x;
}

std::vector<ComplexMatrix> matrix_list(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad(std::string("'") + key + "' must be an array");
  std::vector<ComplexMatrix> out;
  for (const auto& m : v) out.push_back(matrix_from_json(m));
  return out;
}

void expect_shape(const ComplexMatrix& m, Index rows, Index cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    bad(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
        ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {finite_number(j), 0.0};
  if (!j.is_array() || j.size() != 2) bad("complex scalar must be [re, im]");
  return {finite_number(j[0]), finite_number(j[1])};
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Index rows = count_field(j, "rows");
  const Index cols = count_field(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    bad("matrix data must hold rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[static_cast<size_t>(r * cols + c)]);
  return m;
}

Json rowcon_to_json(const RowContraction& t) {
  Json blocks = Json::array();
  for (const auto& b : t.blocks()) blocks.push_back(matrix_to_json(b));
  return {{"dim", t.dim()}, {"arity", t.arity()}, {"blocks", blocks}};
}

RowContraction rowcon_from_json(const Json& j) {
  const Index dim = count_field(j, "dim");
  const Index arity = count_field(j, "arity");
  std::vector<ComplexMatrix> blocks = matrix_list(j, "blocks");
  if (arity < 1 || static_cast<Index>(blocks.size()) != arity) bad("arity must match the number of blocks");
  for (const auto& b : blocks) expect_shape(b, dim, dim, "row contraction block");
  return RowContraction(std::move(blocks));
}

Json series_to_json(const NCSeries& s) {
  Json coeffs = Json::array();
  const std::vector<Word> words = enumerate_words(s.arity(), s.degree());
  for (size_t k = 0; k < words.size(); ++k) {
    coeffs.push_back({{"word", words[k].letters()}, {"matrix", matrix_to_json(s.coeff(static_cast<Index>(k)))}});
  }
  return {{"arity", s.arity()}, {"in_dim", s.in_dim()},   {"out_dim", s.out_dim()},
          {"degree", s.degree()}, {"coeffs", coeffs}};
}

NCSeries series_from_json(const Json& j) {
  const Index arity = count_field(j, "arity");
  const Index in_dim = count_field(j, "in_dim");
  const Index out_dim = count_field(j, "out_dim");
  const Index degree = count_field(j, "degree");
  if (arity < 1) bad("arity must be positive");
  NCSeries s(static_cast<int>(arity), in_dim, out_dim, static_cast<int>(degree));
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array() || static_cast<Index>(coeffs.size()) != s.size()) {
    bad("coeffs must list every word up to the degree");
  }
  const std::vector<Word> words = enumerate_words(static_cast<int>(arity), static_cast<int>(degree));
  for (size_t k = 0; k < words.size(); ++k) {
    const Json& entry = coeffs[k];
    const Json& w = field(entry, "word");
    if (!w.is_array()) bad("word must be an array of letters");
    std::vector<int> letters;
    for (const auto& l : w) {
      if (!l.is_number_integer()) bad("letters must be integers");
      letters.push_back(l.get<int>());
    }
    if (Word(letters) != words[k]) bad("coefficient " + std::to_string(k) + " is not in graded-lex order");
    ComplexMatrix m = matrix_from_json(field(entry, "matrix"));
    expect_shape(m, out_dim, in_dim, "coefficient");
    s.set_coeff(static_cast<Index>(k), std::move(m));
  }
  return s;
}

Json colligation_to_json(const Colligation& w) {
  Json a = Json::array();
  for (const auto& m : w.state_ops) a.push_back(matrix_to_json(m));
  return {{"arity", w.arity},
          {"state_dim", w.state_dim},
          {"in_dim", w.in_dim},
          {"out_dim", w.out_dim},
          {"A", a},
          {"B", matrix_to_json(w.input_map)},
          {"C", matrix_to_json(w.output_map)},
          {"D", matrix_to_json(w.feedthrough)}};
}

Colligation colligation_from_json(const Json& j) {
  const Index arity = count_field(j, "arity");
  const Index n = count_field(j, "state_dim");
  const Index p = count_field(j, "in_dim");
  const Index q = count_field(j, "out_dim");
  std::vector<ComplexMatrix> a = matrix_list(j, "A");
  if (arity < 1 || static_cast<Index>(a.size()) != arity) bad("arity must match the number of state operators");
  for (const auto& m : a) expect_shape(m, n, n, "state operator");
  ComplexMatrix b = matrix_from_json(field(j, "B"));
  ComplexMatrix c = matrix_from_json(field(j, "C"));
  ComplexMatrix d = matrix_from_json(field(j, "D"));
  expect_shape(b, arity * n, p, "B");
  expect_shape(c, q, n, "C");
  expect_shape(d, q, p, "D");
  return Colligation::from_blocks(std::move(a), std::move(b), std::move(c), std::move(d));
}

Json lifting_to_json(const Lifting& e) {
  return {{"E", rowcon_to_json(e.assembled())}, {"split", e.base_dim()}};
}

Lifting lifting_from_json(const Json& j, double rank_tol) {
  if (j.is_object() && j.contains("E")) {
    const RowContraction lifted = rowcon_from_json(field(j, "E"));
    const Index split = count_field(j, "split");
    if (split > lifted.dim()) bad("split exceeds the dimension of E");
    return Lifting::from_assembled(lifted, split);
  }
  const RowContraction base = rowcon_from_json(field(j, "C"));
  const RowContraction ext = rowcon_from_json(field(j, "A"));
  if (base.arity() != ext.arity()) bad("C and A must have the same arity");
  const ComplexMatrix link = matrix_from_json(field(j, "gamma"));
  return build_lifting(base, ext, link, rank_tol);
}

DocumentKind classify(const Json& j) {
  if (!j.is_object()) return DocumentKind::Unknown;
  if (j.contains("E") || j.contains("gamma")) return DocumentKind::Lifting;
  if (j.contains("coeffs")) return DocumentKind::Series;
  if (j.contains("state_dim")) return DocumentKind::Colligation;
  if (j.contains("blocks")) return DocumentKind::RowContraction;
  return DocumentKind::Unknown;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& ex) {
    bad(std::string("malformed JSON: ") + ex.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

}  // namespace charfock
