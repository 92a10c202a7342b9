#pragma once

// Words over d letters, truncated noncommutative power series (symbols of
// multi-analytic operators) and explicit truncated Fock-space operators.

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "charfock/numlin.hpp"

namespace charfock {

/// Finite word over the alphabet {1..d}. The empty word is the vacuum index.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  Index length() const { return static_cast<Index>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int operator[](Index i) const { return letters_[static_cast<size_t>(i)]; }
  const std::vector<int>& letters() const { return letters_; }

  Word append(int letter) const;
  Word prepend(int letter) const;
  Word concat(const Word& tail) const;

  /// "()" for the empty word, otherwise "(1,2,1)".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

/// Number of words of length <= degree over `arity` letters.
Index word_count(int arity, int degree);

/// Position of `w` in graded lexicographic order (length first, then letters).
Index word_index(const Word& w, int arity);

/// All words of length <= degree in graded lexicographic order.
std::vector<Word> enumerate_words(int arity, int degree);

/// Truncated symbol: a q x p coefficient matrix for every word of length <= N.
class NCSeries {
 public:
  NCSeries(int arity, Index in_dim, Index out_dim, int degree);

  int arity() const { return arity_; }
  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }
  int degree() const { return degree_; }
  Index size() const { return static_cast<Index>(coeffs_.size()); }

  const ComplexMatrix& coeff(Index word_pos) const { return coeffs_[static_cast<size_t>(word_pos)]; }
  const ComplexMatrix& coeff(const Word& w) const;
  void set_coeff(Index word_pos, ComplexMatrix value);
  void set_coeff(const Word& w, ComplexMatrix value);

  const std::vector<ComplexMatrix>& coeffs() const { return coeffs_; }

  /// Same coefficients with a smaller truncation degree.
  NCSeries truncated(int degree) const;

 private:
  int arity_;
  Index in_dim_;
  Index out_dim_;
  int degree_;
  std::vector<ComplexMatrix> coeffs_;
};

/// Per-word matrices X_w in graded-lex order with X_() left empty,
/// X_(j) = first[j-1] and X_{w k} = step[k-1] X_w.
std::vector<ComplexMatrix> word_recursion(const std::vector<ComplexMatrix>& first,
                                          const std::vector<ComplexMatrix>& step, int degree);

/// Largest entrywise-in-norm deviation max_w ||a_w - b_w||_F.
double max_coeff_deviation(const NCSeries& a, const NCSeries& b);

/// (I (x) G) s: every coefficient replaced by G * c_w.
NCSeries series_apply_output(const ComplexMatrix& g, const NCSeries& s);
/// s G: every coefficient replaced by c_w * G.
NCSeries series_apply_input(const NCSeries& s, const ComplexMatrix& g);

/// Horizontal concatenation [s1 s2] acting on the direct sum of input spaces.
NCSeries series_hconcat(const NCSeries& s1, const NCSeries& s2);

/// One-variable symbol evaluated at lambda: sum_{n<=N} lambda^n c_n.
ComplexMatrix series_eval_scalar(const NCSeries& s, Complex lambda);

/// Truncation bound |lambda|^{N+1} / (1 - |lambda|) for symbols with ||c_n|| <= 1.
double series_tail_bound(int degree, double radius);

/// Truncated Fock space over `arity` letters with words of length <= degree.
struct TruncatedFock {
  using SparseMatrix = Eigen::SparseMatrix<double>;

  int arity = 0;
  int degree = 0;
  std::vector<Word> words;
  std::vector<SparseMatrix> creation_right;  // R_i: e_a -> e_{a i}
  std::vector<SparseMatrix> creation_left;   // L_i: e_a -> e_{i a}

  Index dim() const { return static_cast<Index>(words.size()); }
};

inline constexpr Index kFockWordBudget = 200000;

/// Builds (or fetches from a process-wide cache) the truncated Fock space.
std::shared_ptr<const TruncatedFock> build_fock(int arity, int degree);

/// Sparse Kronecker product R (x) M with R a 0/1 Fock operator.
Eigen::SparseMatrix<Complex> kron(const TruncatedFock::SparseMatrix& r, const ComplexMatrix& m);

/// Coefficients of a multi-analytic operator: c_w is the (w, vacuum) block.
/// `m` is either the full (W*q) x (W*p) matrix or only its vacuum column block
/// of shape (W*q) x p.
NCSeries series_from_fock_operator(const ComplexMatrix& m, int arity, Index in_dim, Index out_dim,
                                   int degree);

/// Matrix of M_theta on the truncated space; block (a.w, a) = c_w.
ComplexMatrix multianalytic_matrix(const NCSeries& s, const TruncatedFock& fock);

/// Largest singular value of a matrix via power iteration on M*M.
double power_norm(const ComplexMatrix& m, int iterations = 500, double rel_tol = 1e-13);

}  // namespace charfock
