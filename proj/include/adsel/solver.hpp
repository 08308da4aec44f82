#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adsel/dataset.hpp"
#include "adsel/types.hpp"

namespace adsel {

enum class Ablation { full, no_dual_se, no_gfrl, no_gmr };

std::string to_string(Ablation a);
Ablation ablation_from_string(const std::string& s);

struct Hyperparams {
    double lambda = 1.0;  // masked label reconstruction weight
    double alpha = 1.0;   // ||U||_{2,1} weight
    double beta = 1.0;    // graph manifold weight
    double mu = 1.0;      // feature redundancy weight
    double delta = 1.0;   // ||W||_{2,1} weight

    int q = 5;            // affinity graph neighbor count
    double sigma = 0.0;   // heat-kernel bandwidth; <= 0 selects the auto rule

    double epsilon = 1e-8;       // floor inside the l2,1 reweighting diagonals
    double epsilon_div = 1e-12;  // multiplicative-update denominator floor
    int max_iter = 200;
    double tol = 1e-6;           // relative objective change threshold
    std::uint64_t seed = 0;
    Ablation ablation = Ablation::full;

    double effective_beta() const { return ablation == Ablation::no_gmr ? 0.0 : beta; }
    double effective_mu() const { return ablation == Ablation::no_gfrl ? 0.0 : mu; }

    // Enforced on fit entry: positive trade-off weights (in the modes that use
    // them) and sane iteration controls. Single-step updates stay callable
    // with zero weights so subproblems can be exercised in isolation.
    void validate() const;
};

// Weighted contributions of the six objective terms; each already includes
// its trade-off weight, so total() is the objective value.
struct ObjectiveTerms {
    double fit = 0.0;             // ||H X^T W - H Q Y U||_F^2
    double w_sparsity = 0.0;      // delta ||W||_{2,1}
    double reconstruction = 0.0;  // lambda ||P .* (Y - Q Y U)||_F^2
    double u_sparsity = 0.0;      // alpha ||U||_{2,1}
    double manifold = 0.0;        // beta tr((QYU)^T L (QYU))
    double redundancy = 0.0;      // mu tr(W^T A W)

    double total() const {
        return fit + w_sparsity + reconstruction + u_sparsity + manifold + redundancy;
    }
};

struct ModelState {
    Matrix W;  // d x k projection
    Vector b;  // k bias
    Matrix Q;  // n x n sample self-expression, nonnegative
    Matrix U;  // k x k dimension self-expression, nonnegative
    Vector D;  // d reweighting diagonal for ||W||_{2,1}
    Vector V;  // k reweighting diagonal for ||U||_{2,1}
    int iter = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // [0] is the objective before any update
};

// Centering matrix I - (1/n) 1 1^T; symmetric and idempotent.
Matrix compute_centering(Index n);

// Per row i: 1 / (2 sqrt(||row_i||^2 + epsilon)).
Vector reweight_diagonal(const Matrix& m, double epsilon);

// Sum of Euclidean row norms.
double l21_norm(const Matrix& m);

// Alternating optimizer: closed-form W, multiplicative nonnegative updates
// for Q and U, reweighted l2,1 diagonals, objective tracking.
//
// Update order per iteration: D, V, W, Q, U. Q and U stay elementwise
// nonnegative because numerators are clamped at zero and denominators at
// epsilon_div before the elementwise division.
class AdselSolver {
public:
    AdselSolver(const Dataset& ds, Hyperparams hp);

    // W ~ 0.01 * Gaussian, Q and U ~ Uniform(0,1), all from `seed`;
    // in the no_dual_se ablation Q and U are pinned to identity.
    ModelState init_state() const;

    void update_reweights(ModelState& s) const;  // D from W, then V from U
    void update_w(ModelState& s) const;
    void update_q(ModelState& s) const;  // no-op under no_dual_se
    void update_u(ModelState& s) const;  // no-op under no_dual_se
    void compute_bias(ModelState& s) const;

    double objective(const ModelState& s) const;
    ObjectiveTerms objective_terms(const ModelState& s) const;

    // Gradient of the W subproblem at fixed D; zero at the update_w solution.
    Matrix w_gradient(const ModelState& s) const;

    ModelState fit() const;

    const Matrix& centering() const { return H_; }
    const Matrix& laplacian() const { return L_; }
    const Matrix& redundancy_matrix() const { return A_; }
    const Hyperparams& params() const { return hp_; }

private:
    Matrix reconstruction(const ModelState& s) const { return s.Q * (Y_ * s.U); }
    static void check_finite(const Matrix& m, const char* name);

    Matrix X_;   // d x n
    Matrix Y_;   // n x k
    Matrix P_;   // n x k indicator
    Hyperparams hp_;

    Matrix H_;     // n x n centering
    Matrix HXt_;   // H X^T
    Matrix XHXt_;  // X H X^T
    Matrix PY_;    // P .* Y
    Matrix L_;     // graph Laplacian; zero when the manifold weight is off
    Matrix A_;     // redundancy matrix; zero when the redundancy weight is off
};

}  // namespace adsel
