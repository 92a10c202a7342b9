#include "charfock/fockseries.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "charfock/error.hpp"

namespace charfock {

Word Word::append(int letter) const {
  std::vector<int> out = letters_;
  out.push_back(letter);
  return Word(std::move(out));
}

Word Word::prepend(int letter) const {
  std::vector<int> out;
  out.reserve(letters_.size() + 1);
  out.push_back(letter);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word Word::concat(const Word& tail) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
  return Word(std::move(out));
}

std::string Word::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < letters_.size(); ++i) os << (i ? "," : "") << letters_[i];
  os << ')';
  return os.str();
}

Index word_count(int arity, int degree) {
  if (arity < 1 || degree < 0) throw Error(ErrorCode::OutOfRange, "word_count");
  Index total = 0;
  Index level = 1;
  for (int k = 0; k <= degree; ++k) {
    total += level;
    if (total > (Index{1} << 40)) return total;  // saturate; callers compare against a budget
    level *= arity;
  }
  return total;
}

Index word_index(const Word& w, int arity) {
  const Index m = w.length();
  Index offset = 0;
  Index level = 1;
  for (Index k = 0; k < m; ++k) {
    offset += level;
    level *= arity;
  }
  Index pos = 0;
  for (Index k = 0; k < m; ++k) {
    const int letter = w[k];
    if (letter < 1 || letter > arity) throw Error(ErrorCode::OutOfRange, "word letter " + std::to_string(letter));
    pos = pos * arity + (letter - 1);
  }
  return offset + pos;
}

std::vector<Word> enumerate_words(int arity, int degree) {
  if (arity < 1 || degree < 0) throw Error(ErrorCode::OutOfRange, "enumerate_words");
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(word_count(arity, degree)));
  out.emplace_back();
  size_t level_begin = 0;
  for (int len = 1; len <= degree; ++len) {
    const size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (int letter = 1; letter <= arity; ++letter) out.push_back(out[i].append(letter));
    level_begin = level_end;
  }
  return out;
}

std::vector<ComplexMatrix> word_recursion(const std::vector<ComplexMatrix>& first,
                                          const std::vector<ComplexMatrix>& step, int degree) {
  const int d = static_cast<int>(first.size());
  if (d == 0 || step.size() != first.size()) throw Error(ErrorCode::ShapeMismatch, "word_recursion");
  const std::vector<Word> words = enumerate_words(d, degree);
  std::vector<ComplexMatrix> states(words.size());
  // Children of the word at position k sit at 1 + d*k + (letter-1) in graded-lex order.
  for (size_t k = 0; k < words.size(); ++k) {
    const size_t child0 = 1 + static_cast<size_t>(d) * k;
    if (child0 >= words.size()) break;
    for (int letter = 0; letter < d; ++letter) {
      states[child0 + static_cast<size_t>(letter)] =
          k == 0 ? first[static_cast<size_t>(letter)] : ComplexMatrix(step[static_cast<size_t>(letter)] * states[k]);
    }
  }
  return states;
}

NCSeries::NCSeries(int arity, Index in_dim, Index out_dim, int degree)
    : arity_(arity), in_dim_(in_dim), out_dim_(out_dim), degree_(degree) {
  if (arity < 1 || degree < 0 || in_dim < 0 || out_dim < 0) {
    throw Error(ErrorCode::OutOfRange, "NCSeries dimensions");
  }
  const Index count = word_count(arity, degree);
  if (count > kFockWordBudget) throw Error(ErrorCode::TooLarge, "NCSeries word count");
  coeffs_.assign(static_cast<size_t>(count), ComplexMatrix::Zero(out_dim, in_dim));
}

const ComplexMatrix& NCSeries::coeff(const Word& w) const {
  if (w.length() > degree_) throw Error(ErrorCode::OutOfRange, "word longer than degree");
  return coeff(word_index(w, arity_));
}

void NCSeries::set_coeff(Index word_pos, ComplexMatrix value) {
  if (value.rows() != out_dim_ || value.cols() != in_dim_) {
    throw Error(ErrorCode::ShapeMismatch, "NCSeries::set_coeff");
  }
  coeffs_.at(static_cast<size_t>(word_pos)) = std::move(value);
}

void NCSeries::set_coeff(const Word& w, ComplexMatrix value) {
  if (w.length() > degree_) throw Error(ErrorCode::OutOfRange, "word longer than degree");
  set_coeff(word_index(w, arity_), std::move(value));
}

NCSeries NCSeries::truncated(int degree) const {
  if (degree > degree_) throw Error(ErrorCode::OutOfRange, "truncated: degree grows");
  NCSeries out(arity_, in_dim_, out_dim_, degree);
  for (Index k = 0; k < out.size(); ++k) out.set_coeff(k, coeff(k));
  return out;
}

double max_coeff_deviation(const NCSeries& a, const NCSeries& b) {
  if (a.arity() != b.arity() || a.degree() != b.degree() || a.in_dim() != b.in_dim() ||
      a.out_dim() != b.out_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "max_coeff_deviation");
  }
  double worst = 0.0;
  for (Index k = 0; k < a.size(); ++k) worst = std::max(worst, (a.coeff(k) - b.coeff(k)).norm());
  return worst;
}

NCSeries series_apply_output(const ComplexMatrix& g, const NCSeries& s) {
  if (g.cols() != s.out_dim()) throw Error(ErrorCode::ShapeMismatch, "series_apply_output");
  NCSeries out(s.arity(), s.in_dim(), g.rows(), s.degree());
  for (Index k = 0; k < s.size(); ++k) out.set_coeff(k, g * s.coeff(k));
  return out;
}

NCSeries series_apply_input(const NCSeries& s, const ComplexMatrix& g) {
  if (g.rows() != s.in_dim()) throw Error(ErrorCode::ShapeMismatch, "series_apply_input");
  NCSeries out(s.arity(), g.cols(), s.out_dim(), s.degree());
  for (Index k = 0; k < s.size(); ++k) out.set_coeff(k, s.coeff(k) * g);
  return out;
}

NCSeries series_hconcat(const NCSeries& s1, const NCSeries& s2) {
  if (s1.arity() != s2.arity() || s1.degree() != s2.degree() || s1.out_dim() != s2.out_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "series_hconcat");
  }
  NCSeries out(s1.arity(), s1.in_dim() + s2.in_dim(), s1.out_dim(), s1.degree());
  for (Index k = 0; k < s1.size(); ++k) {
    ComplexMatrix c(s1.out_dim(), s1.in_dim() + s2.in_dim());
    c << s1.coeff(k), s2.coeff(k);
    out.set_coeff(k, std::move(c));
  }
  return out;
}

ComplexMatrix series_eval_scalar(const NCSeries& s, Complex lambda) {
  if (s.arity() != 1) throw Error(ErrorCode::ArityNotOne, "series_eval_scalar");
  // Horner from the top degree down.
  ComplexMatrix acc = ComplexMatrix::Zero(s.out_dim(), s.in_dim());
  for (Index n = s.size() - 1; n >= 0; --n) acc = acc * lambda + s.coeff(n);
  return acc;
}

double series_tail_bound(int degree, double radius) {
  if (radius >= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(radius, degree + 1) / (1.0 - radius);
}

std::shared_ptr<const TruncatedFock> build_fock(int arity, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const TruncatedFock>> cache;

  const Index count = word_count(arity, degree);
  if (count > kFockWordBudget) {
    throw Error(ErrorCode::TooLarge, "Fock space with " + std::to_string(count) + " words");
  }
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find({arity, degree}); it != cache.end()) return it->second;
  }

  auto fock = std::make_shared<TruncatedFock>();
  fock->arity = arity;
  fock->degree = degree;
  fock->words = enumerate_words(arity, degree);
  const Index dim = fock->dim();
  for (int i = 1; i <= arity; ++i) {
    std::vector<Eigen::Triplet<double>> right, left;
    for (Index col = 0; col < dim; ++col) {
      const Word& w = fock->words[static_cast<size_t>(col)];
      if (w.length() == degree) continue;
      right.emplace_back(word_index(w.append(i), arity), col, 1.0);
      left.emplace_back(word_index(w.prepend(i), arity), col, 1.0);
    }
    TruncatedFock::SparseMatrix r(dim, dim), l(dim, dim);
    r.setFromTriplets(right.begin(), right.end());
    l.setFromTriplets(left.begin(), left.end());
    fock->creation_right.push_back(std::move(r));
    fock->creation_left.push_back(std::move(l));
  }

  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(arity, degree), std::move(fock));
  return it->second;
}

Eigen::SparseMatrix<Complex> kron(const TruncatedFock::SparseMatrix& r, const ComplexMatrix& m) {
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>(r.nonZeros() * m.size()));
  for (Index outer = 0; outer < r.outerSize(); ++outer) {
    for (TruncatedFock::SparseMatrix::InnerIterator it(r, outer); it; ++it) {
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
          if (m(i, j) != Complex(0.0, 0.0))
            entries.emplace_back(it.row() * m.rows() + i, it.col() * m.cols() + j, it.value() * m(i, j));
    }
  }
  Eigen::SparseMatrix<Complex> out(r.rows() * m.rows(), r.cols() * m.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

NCSeries series_from_fock_operator(const ComplexMatrix& m, int arity, Index in_dim, Index out_dim,
                                   int degree) {
  const Index words = word_count(arity, degree);
  if (m.rows() != words * out_dim || (m.cols() != words * in_dim && m.cols() != in_dim)) {
    throw Error(ErrorCode::ShapeMismatch, "series_from_fock_operator");
  }
  NCSeries out(arity, in_dim, out_dim, degree);
  for (Index k = 0; k < words; ++k) out.set_coeff(k, m.block(k * out_dim, 0, out_dim, in_dim));
  return out;
}

ComplexMatrix multianalytic_matrix(const NCSeries& s, const TruncatedFock& fock) {
  if (fock.arity != s.arity() || fock.degree != s.degree()) {
    throw Error(ErrorCode::ShapeMismatch, "multianalytic_matrix: Fock space does not match symbol");
  }
  const Index p = s.in_dim();
  const Index q = s.out_dim();
  const Index dim = fock.dim();
  if (dim * std::max(p, q) > 20000) throw Error(ErrorCode::TooLarge, "multianalytic_matrix");
  ComplexMatrix out = ComplexMatrix::Zero(dim * q, dim * p);
  for (Index in = 0; in < dim; ++in) {
    const Word& alpha = fock.words[static_cast<size_t>(in)];
    for (Index k = 0; k < s.size(); ++k) {
      const Word& w = fock.words[static_cast<size_t>(k)];
      if (alpha.length() + w.length() > fock.degree) continue;
      const Index row = word_index(alpha.concat(w), fock.arity);
      out.block(row * q, in * p, q, p) = s.coeff(k);
    }
  }
  return out;
}

double power_norm(const ComplexMatrix& m, int iterations, double rel_tol) {
  if (m.size() == 0) return 0.0;
  ComplexVector x(m.cols());
  for (Index i = 0; i < x.size(); ++i) x(i) = Complex(1.0 + 0.01 * static_cast<double>(i % 7), 0.003 * static_cast<double>(i % 5));
  x.normalize();
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    ComplexVector y = m.adjoint() * (m * x);
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    const double next = std::sqrt(ny);
    x = y / ny;
    if (std::abs(next - estimate) <= rel_tol * next) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace charfock
