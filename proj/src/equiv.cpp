#include "charfock/equiv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "charfock/error.hpp"
#include "charfock/random.hpp"

namespace charfock {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "confirmed";
    case Verdict::RefutedByInvariant: return "refuted_by_invariant";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

double default_symbol_tol(const NCSeries& s) {
  double total = 0.0;
  for (const auto& c : s.coeffs()) total += c.norm();
  return 1e-8 * (1.0 + total);
}

double LiftingUnitaryReport::worst() const {
  return std::max({unitarity_residual, state_residual, output_residual, input_residual, feedthrough_residual,
                   coupling_residual, extension_residual});
}

namespace {

Eigen::VectorXd singular_values_padded(const ComplexMatrix& m, Index length) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(length);
  if (m.size() == 0) return out;
  const ThinSvd svd = thin_svd(m, 0.0);
  for (Index i = 0; i < std::min(length, svd.values.size()); ++i) out(i) = svd.values(i);
  return out;
}

// Largest gap between the singular values of two matrices.
double spectrum_gap(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index len = std::max(std::min(a.rows(), a.cols()), std::min(b.rows(), b.cols()));
  if (len == 0) return 0.0;
  return (singular_values_padded(a, len) - singular_values_padded(b, len)).cwiseAbs().maxCoeff();
}

ComplexMatrix stacked(const NCSeries& s, bool vertical) {
  if (vertical) return vstack(s.coeffs(), s.in_dim());
  return hstack(s.coeffs(), s.out_dim());
}

void check_compatible(const NCSeries& s1, const NCSeries& s2) {
  if (s1.arity() != s2.arity() || s1.degree() != s2.degree()) {
    throw Error(ErrorCode::ShapeMismatch, "symbols differ in arity or degree");
  }
}

// Phases with phase[u] * conj(phase[v]) ~ ratio on every edge of a maximum-weight
// spanning forest; unreached components start at phase 1.
struct PhaseEdge {
  Index u, v;
  double weight;
  Complex ratio;
};

std::vector<Complex> propagate_phases(Index nodes, std::vector<PhaseEdge> edges) {
  std::stable_sort(edges.begin(), edges.end(),
                   [](const PhaseEdge& a, const PhaseEdge& b) { return a.weight > b.weight; });
  std::vector<Complex> phase(static_cast<size_t>(nodes), Complex(1.0, 0.0));
  std::vector<bool> known(static_cast<size_t>(nodes), false);
  Index reached = 0;
  while (reached < nodes) {
    bool grew = false;
    for (const auto& e : edges) {
      const bool ku = known[static_cast<size_t>(e.u)];
      const bool kv = known[static_cast<size_t>(e.v)];
      if (ku == kv) continue;
      if (ku) {
        phase[static_cast<size_t>(e.v)] = std::conj(e.ratio) * phase[static_cast<size_t>(e.u)];
        known[static_cast<size_t>(e.v)] = true;
      } else {
        phase[static_cast<size_t>(e.u)] = e.ratio * phase[static_cast<size_t>(e.v)];
        known[static_cast<size_t>(e.u)] = true;
      }
      ++reached;
      grew = true;
      break;
    }
    if (grew) continue;
    // Seed a new component at the heaviest edge with no known endpoint, else any node.
    Index seed = -1;
    for (const auto& e : edges) {
      if (!known[static_cast<size_t>(e.u)] && !known[static_cast<size_t>(e.v)]) {
        seed = e.u;
        break;
      }
    }
    if (seed < 0) {
      for (Index i = 0; i < nodes; ++i)
        if (!known[static_cast<size_t>(i)]) {
          seed = i;
          break;
        }
    }
    known[static_cast<size_t>(seed)] = true;
    ++reached;
  }
  return phase;
}

// Collects edges from matrix pairs with x2(a,b) ~ phase_out[a] x1(a,b) conj(phase_in[b]).
std::vector<PhaseEdge> phase_edges(const std::vector<ComplexMatrix>& x1, const std::vector<ComplexMatrix>& x2,
                                   const std::vector<double>& weights, Index in_offset, bool skip_diagonal) {
  if (x1.empty()) return {};
  const Index rows = x1.front().rows();
  const Index cols = x1.front().cols();
  std::vector<PhaseEdge> edges;
  for (Index a = 0; a < rows; ++a) {
    for (Index b = 0; b < cols; ++b) {
      if (skip_diagonal && a == b) continue;
      double best = 0.0;
      Complex ratio(1.0, 0.0);
      for (size_t k = 0; k < x1.size(); ++k) {
        const double w = weights[k] * std::abs(x1[k](a, b));
        if (w > best && std::abs(x2[k](a, b)) > 0.0) {
          best = w;
          const Complex r = x2[k](a, b) / x1[k](a, b);
          ratio = r / std::abs(r);
        }
      }
      if (best > 1e-12) edges.push_back({a, in_offset + b, best, ratio});
    }
  }
  return edges;
}

ComplexMatrix diag_phase(const std::vector<Complex>& phase, Index offset, Index count) {
  ComplexMatrix d = ComplexMatrix::Zero(count, count);
  for (Index i = 0; i < count; ++i) d(i, i) = phase[static_cast<size_t>(offset + i)];
  return d;
}

double coincidence_objective(const NCSeries& s1, const NCSeries& s2, const ComplexMatrix& u,
                             const ComplexMatrix& u_out) {
  double total = 0.0;
  for (Index k = 0; k < s1.size(); ++k) total += (u_out * s1.coeff(k) - s2.coeff(k) * u).squaredNorm();
  return total;
}

struct CoincidenceRun {
  ComplexMatrix u, u_out;
  double objective = 0.0;
  double max_increase = 0.0;
};

CoincidenceRun alternate(const NCSeries& s1, const NCSeries& s2, ComplexMatrix u, int iters, double target) {
  const Index p = s1.in_dim();
  const Index q = s1.out_dim();
  auto fit_output = [&](const ComplexMatrix& in) {
    ComplexMatrix k = ComplexMatrix::Zero(q, q);
    for (Index w = 0; w < s1.size(); ++w) k += s2.coeff(w) * in * s1.coeff(w).adjoint();
    return polar_unitary(k);
  };
  auto fit_input = [&](const ComplexMatrix& out) {
    ComplexMatrix k = ComplexMatrix::Zero(p, p);
    for (Index w = 0; w < s1.size(); ++w) k += s2.coeff(w).adjoint() * out * s1.coeff(w);
    return polar_unitary(k);
  };
  CoincidenceRun run;
  run.u = std::move(u);
  run.u_out = fit_output(run.u);
  run.objective = coincidence_objective(s1, s2, run.u, run.u_out);
  for (int it = 0; it < iters && run.objective > target; ++it) {
    const double before = run.objective;
    run.u = fit_input(run.u_out);
    const double mid = coincidence_objective(s1, s2, run.u, run.u_out);
    run.u_out = fit_output(run.u);
    run.objective = coincidence_objective(s1, s2, run.u, run.u_out);
    run.max_increase = std::max({run.max_increase, mid - before, run.objective - mid});
    if (before - run.objective <= 1e-15 * (1.0 + before)) break;
  }
  return run;
}

// Input unitary from eigenbases of weighted Gram matrices plus aligned phases.
ComplexMatrix gram_candidate(const NCSeries& s1, const NCSeries& s2) {
  const Index p = s1.in_dim();
  const Index q = s1.out_dim();
  const std::vector<Word> words = enumerate_words(s1.arity(), s1.degree());
  std::vector<double> weights;
  ComplexMatrix gin1 = ComplexMatrix::Zero(p, p), gin2 = gin1;
  ComplexMatrix gout1 = ComplexMatrix::Zero(q, q), gout2 = gout1;
  for (Index k = 0; k < s1.size(); ++k) {
    const double w = std::pow(0.37, static_cast<double>(words[static_cast<size_t>(k)].length()));
    weights.push_back(w);
    gin1 += w * s1.coeff(k).adjoint() * s1.coeff(k);
    gin2 += w * s2.coeff(k).adjoint() * s2.coeff(k);
    gout1 += w * s1.coeff(k) * s1.coeff(k).adjoint();
    gout2 += w * s2.coeff(k) * s2.coeff(k).adjoint();
  }
  auto herm = [](const ComplexMatrix& m) { return ComplexMatrix(0.5 * (m + m.adjoint())); };
  const ComplexMatrix v1 = hermitian_eig(herm(gin1)).vectors, v2 = hermitian_eig(herm(gin2)).vectors;
  const ComplexMatrix w1 = hermitian_eig(herm(gout1)).vectors, w2 = hermitian_eig(herm(gout2)).vectors;
  std::vector<ComplexMatrix> x1, x2;
  for (Index k = 0; k < s1.size(); ++k) {
    x1.push_back(w1.adjoint() * s1.coeff(k) * v1);
    x2.push_back(w2.adjoint() * s2.coeff(k) * v2);
  }
  const std::vector<Complex> phase = propagate_phases(q + p, phase_edges(x1, x2, weights, q, false));
  return v2 * diag_phase(phase, q, p) * v1.adjoint();
}

}  // namespace

EquivalenceResult equivalence_solve(const NCSeries& s1, const NCSeries& s2, double tol) {
  check_compatible(s1, s2);
  if (s1.out_dim() != s2.out_dim()) throw Error(ErrorCode::ShapeMismatch, "symbols differ in output dimension");
  EquivalenceResult r;
  r.tol = tol > 0.0 ? tol : default_symbol_tol(s1);
  if (s1.in_dim() != s2.in_dim()) {
    r.status = Verdict::RefutedByInvariant;
    r.certificate = "input dimensions " + std::to_string(s1.in_dim()) + " and " + std::to_string(s2.in_dim());
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  ComplexMatrix k = ComplexMatrix::Zero(s1.in_dim(), s1.in_dim());
  for (Index w = 0; w < s1.size(); ++w) k += s2.coeff(w).adjoint() * s1.coeff(w);
  const ComplexMatrix v = polar_unitary(k);
  double total = 0.0;
  for (Index w = 0; w < s1.size(); ++w) total += (s1.coeff(w) - s2.coeff(w) * v).squaredNorm();
  r.residual = std::sqrt(total);
  r.unitaries = {v};
  if (r.residual <= r.tol) {
    r.status = Verdict::Confirmed;
    return r;
  }
  const double gap = spectrum_gap(stacked(s1, true), stacked(s2, true));
  if (gap > 10.0 * r.tol) {
    r.status = Verdict::RefutedByInvariant;
    std::ostringstream os;
    os << "singular values of the stacked coefficients differ by " << gap;
    r.certificate = os.str();
  }
  return r;
}

EquivalenceResult coincidence_solve(const NCSeries& s1, const NCSeries& s2, const SolverOptions& options) {
  check_compatible(s1, s2);
  EquivalenceResult r;
  r.tol = options.tol > 0.0 ? options.tol : default_symbol_tol(s1);
  if (s1.in_dim() != s2.in_dim() || s1.out_dim() != s2.out_dim()) {
    r.status = Verdict::RefutedByInvariant;
    r.certificate = "coefficient shapes differ";
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const double refute_at = 10.0 * r.tol;
  for (Index w = 0; w < s1.size(); ++w) {
    const double gap = spectrum_gap(s1.coeff(w), s2.coeff(w));
    if (gap > refute_at) {
      r.status = Verdict::RefutedByInvariant;
      std::ostringstream os;
      os << "singular values at word " << enumerate_words(s1.arity(), s1.degree())[static_cast<size_t>(w)].to_string()
         << " differ by " << gap;
      r.certificate = os.str();
      r.residual = std::numeric_limits<double>::infinity();
      return r;
    }
  }
  for (bool vertical : {true, false}) {
    const double gap = spectrum_gap(stacked(s1, vertical), stacked(s2, vertical));
    if (gap > refute_at) {
      r.status = Verdict::RefutedByInvariant;
      std::ostringstream os;
      os << "singular values of the " << (vertical ? "column" : "row") << "-stacked coefficients differ by " << gap;
      r.certificate = os.str();
      r.residual = std::numeric_limits<double>::infinity();
      return r;
    }
  }

  const Index p = s1.in_dim();
  const double target = 1e-6 * r.tol * r.tol;
  CoincidenceRun best;
  best.objective = std::numeric_limits<double>::infinity();
  const int total = options.restarts + 1;
  for (int start = 0; start < total; ++start) {
    ComplexMatrix initial;
    if (start == 0) {
      initial = gram_candidate(s1, s2);
    } else {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(start)));
      initial = random_unitary(rng, p);
    }
    CoincidenceRun run = alternate(s1, s2, std::move(initial), options.iters, target);
    r.max_objective_increase = std::max(r.max_objective_increase, run.max_increase);
    r.restarts_used = start + 1;
    if (run.objective < best.objective) best = std::move(run);
    if (std::sqrt(best.objective) <= r.tol) break;
  }
  r.residual = std::sqrt(best.objective);
  r.unitaries = {best.u, best.u_out};
  r.status = r.residual <= r.tol ? Verdict::Confirmed : Verdict::Unknown;
  return r;
}

namespace {

double rowcon_objective(const RowContraction& t1, const RowContraction& t2, const ComplexMatrix& u) {
  double total = 0.0;
  for (int i = 0; i < t1.arity(); ++i) total += (u * t1.block(i) - t2.block(i) * u).squaredNorm();
  return total;
}

ComplexMatrix rowcon_gram_candidate(const RowContraction& t1, const RowContraction& t2) {
  auto gram = [](const RowContraction& t) {
    ComplexMatrix g = ComplexMatrix::Zero(t.dim(), t.dim());
    for (const auto& b : t.blocks()) g += b * b.adjoint() + 0.61 * b.adjoint() * b + 0.31 * (b + b.adjoint());
    return ComplexMatrix(0.5 * (g + g.adjoint()));
  };
  const ComplexMatrix v1 = hermitian_eig(gram(t1)).vectors;
  const ComplexMatrix v2 = hermitian_eig(gram(t2)).vectors;
  std::vector<ComplexMatrix> x1, x2;
  for (int i = 0; i < t1.arity(); ++i) {
    x1.push_back(v1.adjoint() * t1.block(i) * v1);
    x2.push_back(v2.adjoint() * t2.block(i) * v2);
  }
  const std::vector<double> weights(x1.size(), 1.0);
  const std::vector<Complex> phase = propagate_phases(t1.dim(), phase_edges(x1, x2, weights, 0, true));
  return v2 * diag_phase(phase, 0, t1.dim()) * v1.adjoint();
}

}  // namespace

EquivalenceResult rowcon_unitary_equiv(const RowContraction& t1, const RowContraction& t2,
                                       const SolverOptions& options) {
  if (t1.dim() != t2.dim() || t1.arity() != t2.arity()) {
    throw Error(ErrorCode::ShapeMismatch, "row contractions differ in dimension or arity");
  }
  EquivalenceResult r;
  double scale = 0.0;
  for (const auto& b : t1.blocks()) scale += b.norm();
  r.tol = options.tol > 0.0 ? options.tol : 1e-8 * (1.0 + scale);
  const double refute_at = 10.0 * r.tol;
  const Index n = t1.dim();

  // Unitary invariants: spectra of sum T T* and sum T* T, traces of short words.
  auto refute = [&](const std::string& what, double gap) {
    r.status = Verdict::RefutedByInvariant;
    std::ostringstream os;
    os << what << " differ by " << gap;
    r.certificate = os.str();
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  };
  {
    const ComplexMatrix r1 = t1.row(), r2 = t2.row();
    const double gap = spectrum_gap(r1, r2);
    if (gap > refute_at) return refute("singular values of the row operators", gap);
    ComplexMatrix c1 = ComplexMatrix::Zero(n, n), c2 = c1;
    for (int i = 0; i < t1.arity(); ++i) {
      c1 += t1.block(i).adjoint() * t1.block(i);
      c2 += t2.block(i).adjoint() * t2.block(i);
    }
    const double gap2 = spectrum_gap(c1, c2);
    if (gap2 > refute_at) return refute("eigenvalues of sum T_i* T_i", gap2);
    const std::vector<Word> words = enumerate_words(t1.arity(), 3);
    for (size_t k = 1; k < words.size(); ++k) {
      ComplexMatrix p1 = ComplexMatrix::Identity(n, n), p2 = p1;
      for (int letter : words[k].letters()) {
        p1 = p1 * t1.block(letter - 1);
        p2 = p2 * t2.block(letter - 1);
      }
      const double gap3 = std::abs(p1.trace() - p2.trace());
      if (gap3 > refute_at) return refute("traces at word " + words[k].to_string(), gap3);
    }
  }

  const double target = 1e-6 * r.tol * r.tol;
  double best_obj = std::numeric_limits<double>::infinity();
  ComplexMatrix best_u;
  const int total = options.restarts + 1;
  for (int start = 0; start < total; ++start) {
    ComplexMatrix u;
    if (start == 0) {
      u = rowcon_gram_candidate(t1, t2);
    } else {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(start)));
      u = random_unitary(rng, n);
    }
    double obj = rowcon_objective(t1, t2, u);
    for (int it = 0; it < options.iters && obj > target; ++it) {
      ComplexMatrix k = ComplexMatrix::Zero(n, n);
      for (int i = 0; i < t1.arity(); ++i) k += t2.block(i) * u * t1.block(i).adjoint();
      u = polar_unitary(k);
      const double next = rowcon_objective(t1, t2, u);
      const bool stalled = std::abs(obj - next) <= 1e-15 * (1.0 + obj);
      obj = next;
      if (stalled) break;
    }
    r.restarts_used = start + 1;
    if (obj < best_obj) {
      best_obj = obj;
      best_u = u;
    }
    if (std::sqrt(best_obj) <= r.tol) break;
  }
  r.residual = std::sqrt(best_obj);
  r.unitaries = {best_u};
  r.status = r.residual <= r.tol ? Verdict::Confirmed : Verdict::Unknown;
  return r;
}

namespace {

ComplexMatrix observability_stack(const Colligation& w) {
  std::vector<ComplexMatrix> rows{w.output_map};
  std::vector<ComplexMatrix> level{w.output_map};
  for (Index len = 1; len <= w.state_dim; ++len) {
    std::vector<ComplexMatrix> next;
    for (const auto& r : level)
      for (const auto& a : w.state_ops) next.push_back(r * a);
    rows.insert(rows.end(), next.begin(), next.end());
    level = std::move(next);
    if (rows.size() > 4000) break;
  }
  return vstack(rows, w.state_dim);
}

}  // namespace

LiftingUnitaryReport reconstruct_lifting_unitary(const Lifting& e1, const Lifting& e2, const ComplexMatrix& v,
                                                 double rank_tol) {
  if (e1.arity() != e2.arity()) throw Error(ErrorCode::ShapeMismatch, "liftings differ in arity");
  const Colligation w1 = lifting_colligation(e1, rank_tol);
  Colligation w2 = lifting_colligation(e2, rank_tol);
  if (v.rows() != w2.in_dim || v.cols() != w1.in_dim || w1.out_dim != w2.out_dim) {
    throw Error(ErrorCode::ShapeMismatch, "input unitary does not match the lifting colligations");
  }
  w2.input_map = w2.input_map * v;
  w2.feedthrough = w2.feedthrough * v;
  w2.in_dim = v.cols();

  LiftingUnitaryReport rep;
  const ComplexMatrix o1 = observability_stack(w1);
  const ComplexMatrix o2 = observability_stack(w2);
  if (o1.rows() != o2.rows()) throw Error(ErrorCode::ShapeMismatch, "extension spaces differ in dimension");
  rep.unitary = pinv(o2, rank_tol) * o1;
  const ComplexMatrix& u = rep.unitary;
  rep.unitarity_residual = unitarity_residual(u);
  const int d = e1.arity();
  for (int i = 0; i < d; ++i) {
    const auto ii = static_cast<size_t>(i);
    rep.state_residual = std::max(rep.state_residual, spectral_norm(w2.state_ops[ii] * u - u * w1.state_ops[ii]));
    rep.coupling_residual =
        std::max(rep.coupling_residual, spectral_norm(u * e1.coupling()[ii] - e2.coupling()[ii]));
    rep.extension_residual = std::max(
        rep.extension_residual, spectral_norm(u * e1.extension().block(i) - e2.extension().block(i) * u));
  }
  rep.output_residual = spectral_norm(w2.output_map * u - w1.output_map);
  rep.input_residual = spectral_norm(w2.input_map - repeat_diag(u, d) * w1.input_map);
  rep.feedthrough_residual = spectral_norm(w2.feedthrough - w1.feedthrough);
  return rep;
}

}  // namespace charfock
