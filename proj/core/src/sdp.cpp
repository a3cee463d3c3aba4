// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/sdp.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fhstep/log.hpp"

namespace fhstep {

namespace {

Eigen::MatrixXd block_value(const BlockLmi::Block& blk, const Vector& x) {
  Eigen::MatrixXd s = blk.g0;
  for (Index k = 0; k < x.size(); ++k)
    if (x[k] != 0.0) s += x[k] * blk.g[static_cast<std::size_t>(k)];
  return s;
}

bool cholesky_pd(const Eigen::MatrixXd& s, Eigen::LLT<Eigen::MatrixXd>* llt = nullptr) {
  Eigen::LLT<Eigen::MatrixXd> fact(s);
  if (fact.info() != Eigen::Success) return false;
  if (llt != nullptr) *llt = std::move(fact);
  return true;
}

double min_eigenvalue(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void validate(const BlockLmi& p) {
  if (p.blocks.empty()) throw std::invalid_argument("solve_block_sdp: no blocks");
  if (p.objective.size() != p.num_vars)
    throw std::invalid_argument("solve_block_sdp: objective length mismatch");
  if (!p.objective.allFinite()) throw std::invalid_argument("solve_block_sdp: non-finite objective");
  for (const auto& blk : p.blocks) {
    if (blk.g0.rows() != blk.g0.cols()) throw std::invalid_argument("solve_block_sdp: non-square block");
    if (static_cast<Index>(blk.g.size()) != p.num_vars)
      throw std::invalid_argument("solve_block_sdp: block variable count mismatch");
    auto check_sym = [&](const DenseMatrix& g) {
      if (g.rows() != blk.g0.rows() || g.cols() != blk.g0.cols())
        throw std::invalid_argument("solve_block_sdp: block dimension mismatch");
      const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
      if ((DenseMatrix(g.transpose()) - g).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("solve_block_sdp: block matrix not symmetric");
    };
    check_sym(blk.g0);
    for (const auto& g : blk.g) check_sym(g);
  }
}

// strictly feasible start: x = 0 with the identity-direction variable lifted
// so every block has minimum eigenvalue >= 1
Vector feasible_start(const BlockLmi& p) {
  Index id_var = -1;
  for (Index k = 0; k < p.num_vars && id_var < 0; ++k) {
    bool all_identity = true;
    for (const auto& blk : p.blocks) {
      const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(blk.g0.rows(), blk.g0.cols());
      if (!blk.g[static_cast<std::size_t>(k)].isApprox(ident, 1e-12)) {
        all_identity = false;
        break;
      }
    }
    if (all_identity) id_var = k;
  }

  Vector x = Vector::Zero(p.num_vars);
  if (id_var >= 0) {
    double lift = 0.0;
    for (const auto& blk : p.blocks) lift = std::max(lift, 1.0 - min_eigenvalue(blk.g0));
    x[id_var] = lift;
    return x;
  }
  for (const auto& blk : p.blocks)
    if (min_eigenvalue(blk.g0) <= 0.0)
      throw std::runtime_error("solve_block_sdp: no strictly feasible start point found");
  return x;
}

}  // namespace

SdpSolution solve_block_sdp(const BlockLmi& problem, double tol_feas, double tol_opt,
                            Index max_iter) {
  validate(problem);
  const Index K = problem.num_vars;
  const std::size_t nblocks = problem.blocks.size();

  double nu = 0.0;  // barrier parameter: sum of block dimensions
  for (const auto& blk : problem.blocks) nu += static_cast<double>(blk.g0.rows());

  Vector x = feasible_start(problem);
  double t = 1.0;
  const double t_growth = 20.0;

  Index newton_iters = 0;
  bool converged = false;
  std::deque<double> recent_obj;

  auto barrier_value = [&](const Vector& xv, bool* feasible) -> double {
    double val = 0.0;
    *feasible = true;
    for (const auto& blk : problem.blocks) {
      Eigen::LLT<Eigen::MatrixXd> llt;
      if (!cholesky_pd(block_value(blk, xv), &llt)) {
        *feasible = false;
        return 0.0;
      }
      const auto& l = llt.matrixLLT();
      for (Index i = 0; i < l.rows(); ++i) val -= 2.0 * std::log(l(i, i));
    }
    return val;
  };

  while (newton_iters < max_iter) {
    // assemble gradient and Hessian of t c'x - sum log det S_j
    Vector grad = t * problem.objective;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(K, K);
    for (std::size_t j = 0; j < nblocks; ++j) {
      const auto& blk = problem.blocks[j];
      Eigen::LLT<Eigen::MatrixXd> llt;
      if (!cholesky_pd(block_value(blk, x), &llt))
        throw std::runtime_error("solve_block_sdp: iterate left the interior");
      std::vector<Eigen::MatrixXd> w(static_cast<std::size_t>(K));
      for (Index k = 0; k < K; ++k) {
        w[static_cast<std::size_t>(k)] = llt.solve(blk.g[static_cast<std::size_t>(k)]);
        grad[k] -= w[static_cast<std::size_t>(k)].trace();
      }
      for (Index k = 0; k < K; ++k)
        for (Index l = k; l < K; ++l) {
          const double v =
              (w[static_cast<std::size_t>(k)].array() * w[static_cast<std::size_t>(l)].transpose().array())
                  .sum();
          hess(k, l) += v;
          if (l != k) hess(l, k) += v;
        }
    }

    Eigen::LDLT<Eigen::MatrixXd> hfact(hess);
    Vector dx;
    if (hfact.info() == Eigen::Success && hfact.isPositive()) {
      dx = hfact.solve(-grad);
    } else {
      const double ridge = 1e-12 * std::max(1.0, hess.trace());
      Eigen::LDLT<Eigen::MatrixXd> hreg(hess + ridge * Eigen::MatrixXd::Identity(K, K));
      if (hreg.info() != Eigen::Success)
        throw std::runtime_error(
            "solve_block_sdp: ill-conditioned SDP (Newton system indefinite); "
            "consider enabling rescaling of the block powers");
      dx = hreg.solve(-grad);
    }
    if (!dx.allFinite())
      throw std::runtime_error(
          "solve_block_sdp: ill-conditioned SDP (non-finite Newton step); "
          "consider enabling rescaling of the block powers");

    const double decrement_sq = -grad.dot(dx);
    ++newton_iters;

    if (decrement_sq / 2.0 > 1e-10) {
      // damped Newton step with backtracking that stays interior
      bool feasible = false;
      const double merit0 = t * problem.objective.dot(x) + barrier_value(x, &feasible);
      double alpha = 1.0;
      while (alpha > 1e-16) {
        const Vector xn = x + alpha * dx;
        bool ok = false;
        const double merit = t * problem.objective.dot(xn) + barrier_value(xn, &ok);
        if (ok && merit <= merit0 + 0.25 * alpha * grad.dot(dx)) {
          x = xn;
          break;
        }
        alpha *= 0.5;
      }
      if (alpha <= 1e-16) FHSTEP_LOG_DEBUG("solve_block_sdp: line search stalled at t=%g", t);
    }

    const double obj = problem.objective.dot(x);
    recent_obj.push_back(obj);
    if (recent_obj.size() > 10) recent_obj.pop_front();

    const bool centered = decrement_sq / 2.0 <= 1e-10;
    const double gap = nu / t;
    if (centered && gap <= tol_opt * (1.0 + std::abs(obj))) {
      converged = true;
      break;
    }
    // objective stagnation over 10 Newton iterations counts as converged
    if (recent_obj.size() == 10 &&
        recent_obj.back() - recent_obj.front() > -tol_opt * (1.0 + std::abs(obj)) &&
        *std::max_element(recent_obj.begin(), recent_obj.end()) -
                *std::min_element(recent_obj.begin(), recent_obj.end()) <
            tol_opt * (1.0 + std::abs(obj))) {
      converged = true;
      break;
    }
    if (centered) t *= t_growth;
  }

  SdpSolution sol;
  sol.x = x;
  sol.objective_value = problem.objective.dot(x);
  sol.iterations = newton_iters;
  sol.converged = converged;
  sol.worst_block_min_eig = std::numeric_limits<double>::infinity();
  for (const auto& blk : problem.blocks)
    sol.worst_block_min_eig = std::min(sol.worst_block_min_eig, min_eigenvalue(block_value(blk, x)));
  (void)tol_feas;  // interior iterates are strictly feasible by construction
  return sol;
}

}  // namespace fhstep
