#include "adsel/solver.hpp"

#include <cmath>
#include <random>

#include "adsel/graph.hpp"
#include "adsel/redundancy.hpp"

namespace adsel {

std::string to_string(Ablation a) {
    switch (a) {
        case Ablation::full: return "full";
        case Ablation::no_dual_se: return "no_dual_se";
        case Ablation::no_gfrl: return "no_gfrl";
        case Ablation::no_gmr: return "no_gmr";
    }
    return "full";
}

Ablation ablation_from_string(const std::string& s) {
    if (s == "full") return Ablation::full;
    if (s == "no_dual_se") return Ablation::no_dual_se;
    if (s == "no_gfrl") return Ablation::no_gfrl;
    if (s == "no_gmr") return Ablation::no_gmr;
    throw ParameterError("unknown ablation mode: " + s);
}

void Hyperparams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ParameterError(std::string(name) + " must be positive");
    };
    positive(lambda, "lambda");
    positive(alpha, "alpha");
    positive(delta, "delta");
    if (ablation != Ablation::no_gmr) positive(beta, "beta");
    if (ablation != Ablation::no_gfrl) positive(mu, "mu");
    positive(epsilon, "epsilon");
    positive(epsilon_div, "epsilon_div");
    if (max_iter < 1) throw ParameterError("max_iter must be >= 1");
    if (tol < 0.0) throw ParameterError("tol must be >= 0");
    if (q < 1) throw ParameterError("q must be >= 1");
}

Matrix compute_centering(Index n) {
    if (n < 1) throw ParameterError("centering needs n >= 1");
    Matrix h = Matrix::Constant(n, n, -1.0 / static_cast<double>(n));
    h.diagonal().array() += 1.0;
    return h;
}

Vector reweight_diagonal(const Matrix& m, double epsilon) {
    Vector d(m.rows());
    for (Index i = 0; i < m.rows(); ++i)
        d(i) = 1.0 / (2.0 * std::sqrt(m.row(i).squaredNorm() + epsilon));
    return d;
}

double l21_norm(const Matrix& m) {
    double total = 0.0;
    for (Index i = 0; i < m.rows(); ++i) total += m.row(i).norm();
    return total;
}

AdselSolver::AdselSolver(const Dataset& ds, Hyperparams hp)
    : X_(ds.features.values),
      Y_(ds.labels.values),
      P_(ds.mask.values),
      hp_(std::move(hp)) {
    require_valid(ds);
    const Index n = X_.cols();
    const Index d = X_.rows();

    H_ = compute_centering(n);
    HXt_ = H_ * X_.transpose();
    XHXt_ = X_ * HXt_;
    PY_ = P_.cwiseProduct(Y_);

    if (hp_.effective_beta() > 0.0)
        L_ = build_laplacian(build_affinity(ds.features, hp_.q, hp_.sigma)).L;
    else
        L_ = Matrix::Zero(n, n);

    if (hp_.effective_mu() > 0.0)
        A_ = build_redundancy(ds.features).A;
    else
        A_ = Matrix::Zero(d, d);
}

ModelState AdselSolver::init_state() const {
    const Index d = X_.rows();
    const Index n = X_.cols();
    const Index k = Y_.cols();

    std::mt19937_64 rng(hp_.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ModelState s;
    s.W.resize(d, k);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < k; ++j) s.W(i, j) = 0.01 * gauss(rng);

    if (hp_.ablation == Ablation::no_dual_se) {
        s.Q = Matrix::Identity(n, n);
        s.U = Matrix::Identity(k, k);
    } else {
        s.Q.resize(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) s.Q(i, j) = unif(rng);
        s.U.resize(k, k);
        for (Index i = 0; i < k; ++i)
            for (Index j = 0; j < k; ++j) s.U(i, j) = unif(rng);
    }

    s.b = Vector::Zero(k);
    update_reweights(s);
    return s;
}

void AdselSolver::update_reweights(ModelState& s) const {
    s.D = reweight_diagonal(s.W, hp_.epsilon);
    s.V = reweight_diagonal(s.U, hp_.epsilon);
}

void AdselSolver::update_w(ModelState& s) const {
    const Matrix m = reconstruction(s);
    const Matrix rhs = HXt_.transpose() * m;  // X H (Q Y U)
    Matrix lhs = XHXt_ + hp_.effective_mu() * A_;
    lhs += (hp_.delta * s.D).asDiagonal();

    auto solve_ok = [&](const Matrix& a, Matrix& w) {
        Eigen::LDLT<Matrix> ldlt(a);
        if (ldlt.info() != Eigen::Success) return false;
        w = ldlt.solve(rhs);
        const double resid = (a * w - rhs).norm();
        return w.allFinite() && resid <= 1e-8 * (1.0 + rhs.norm());
    };

    Matrix w;
    if (!solve_ok(lhs, w)) {
        // jitter retry for (near-)singular systems
        const double tau = 1e-8 * lhs.trace() / static_cast<double>(lhs.rows());
        Matrix jittered = lhs;
        jittered.diagonal().array() += tau;
        if (!solve_ok(jittered, w))
            throw SolverError("W update: linear system is singular beyond jitter repair");
    }
    s.W = std::move(w);
}

void AdselSolver::check_finite(const Matrix& m, const char* name) {
    if (m.allFinite()) return;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j)))
                throw SolverError(std::string(name) + " update: non-finite value at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
}

void AdselSolver::update_q(ModelState& s) const {
    if (hp_.ablation == Ablation::no_dual_se) return;  // Q pinned to identity

    const Matrix r = Y_ * s.U;        // n x k
    const Matrix m = s.Q * r;         // QYU
    const Matrix rt = r.transpose();  // U^T Y^T

    const Matrix num = (HXt_ * s.W + hp_.lambda * PY_) * rt;
    const Matrix den =
        (H_ * m + hp_.effective_beta() * (L_ * m) + hp_.lambda * P_.cwiseProduct(m)) * rt;

    s.Q = s.Q.cwiseProduct(
        num.cwiseMax(0.0).cwiseQuotient(den.cwiseMax(hp_.epsilon_div)));
    check_finite(s.Q, "Q");
}

void AdselSolver::update_u(ModelState& s) const {
    if (hp_.ablation == Ablation::no_dual_se) return;  // U pinned to identity

    const Matrix nmat = (s.Q * Y_).transpose();  // Y^T Q^T, k x n
    const Matrix m = s.Q * (Y_ * s.U);

    const Matrix num = nmat * (HXt_ * s.W + hp_.lambda * PY_);
    Matrix den =
        nmat * (H_ * m + hp_.effective_beta() * (L_ * m) + hp_.lambda * P_.cwiseProduct(m));
    den += hp_.alpha * s.V.asDiagonal() * s.U;

    s.U = s.U.cwiseProduct(
        num.cwiseMax(0.0).cwiseQuotient(den.cwiseMax(hp_.epsilon_div)));
    check_finite(s.U, "U");
}

void AdselSolver::compute_bias(ModelState& s) const {
    const Matrix m = reconstruction(s);
    const double n = static_cast<double>(X_.cols());
    s.b = (m.colwise().sum().transpose() - s.W.transpose() * X_.rowwise().sum()) / n;
}

ObjectiveTerms AdselSolver::objective_terms(const ModelState& s) const {
    const Matrix m = reconstruction(s);
    ObjectiveTerms t;
    t.fit = (HXt_ * s.W - H_ * m).squaredNorm();
    t.w_sparsity = hp_.delta * l21_norm(s.W);
    t.reconstruction = hp_.lambda * P_.cwiseProduct(Y_ - m).squaredNorm();
    t.u_sparsity = hp_.alpha * l21_norm(s.U);
    t.manifold = hp_.effective_beta() * (m.transpose() * (L_ * m)).trace();
    t.redundancy = hp_.effective_mu() * (s.W.transpose() * (A_ * s.W)).trace();
    return t;
}

double AdselSolver::objective(const ModelState& s) const {
    return objective_terms(s).total();
}

Matrix AdselSolver::w_gradient(const ModelState& s) const {
    const Matrix m = reconstruction(s);
    return 2.0 * (XHXt_ * s.W) - 2.0 * (HXt_.transpose() * m) +
           2.0 * hp_.effective_mu() * (A_ * s.W) +
           2.0 * hp_.delta * (s.D.asDiagonal() * s.W);
}

ModelState AdselSolver::fit() const {
    hp_.validate();
    ModelState s = init_state();
    double prev = objective(s);
    s.objective_trace.push_back(prev);

    for (int it = 1; it <= hp_.max_iter; ++it) {
        try {
            update_reweights(s);
            update_w(s);
            update_q(s);
            update_u(s);
        } catch (const SolverError& e) {
            throw SolverError("iteration " + std::to_string(it) + ": " + e.what());
        }
        const double obj = objective(s);
        if (!std::isfinite(obj))
            throw SolverError("iteration " + std::to_string(it) + ": non-finite objective");
        s.objective_trace.push_back(obj);
        s.iter = it;
        if (std::abs(obj - prev) / std::max(1.0, prev) < hp_.tol) {
            s.converged = true;
            break;
        }
        prev = obj;
    }

    compute_bias(s);
    return s;
}

}  // namespace adsel
