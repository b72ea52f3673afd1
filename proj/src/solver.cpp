#include "mifem/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

namespace mifem {

namespace {

double dotp(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dotp(a, a)); }

std::vector<double> inverse_diagonal(const CsrMatrix& A)
{
    auto d = A.diagonal();
    for (double& v : d) {
        v = v != 0.0 ? 1.0 / v : 1.0;
    }
    return d;
}

void residual(const CsrMatrix& A, std::span<const double> x, std::span<const double> b,
              std::vector<double>& r)
{
    A.multiply(x, r);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = b[i] - r[i];
    }
}

SolveReport conjugate_gradient(const CsrMatrix& A, std::span<const double> b, const SolverOptions& opt,
                               int max_iter)
{
    const std::size_t n = b.size();
    const double bnorm = norm2(b);
    const auto dinv = inverse_diagonal(A);
    SolveReport rep;
    rep.method = SolverMethod::cg;
    rep.solution.assign(n, 0.0);
    auto& x = rep.solution;
    std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
    std::vector<double> history;

    auto restart = [&] {
        residual(A, x, b, r);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = dinv[i] * r[i];
        }
        p = z;
        return dotp(r, z);
    };
    double rz = restart();
    double rel = norm2(r) / bnorm;
    int it = 0;
    while (rel > opt.tolerance) {
        if (it >= max_iter) {
            throw SolverError("cg: no convergence after " + std::to_string(it) + " iterations (residual " +
                                  std::to_string(rel) + ")",
                              std::move(history));
        }
        A.multiply(p, q);
        const double pq = dotp(p, q);
        if (!(pq > 0.0)) {
            throw SolverError("cg: breakdown, matrix not positive definite", std::move(history));
        }
        const double alpha = rz / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        ++it;
        rel = norm2(r) / bnorm;
        history.push_back(rel);
        if (rel <= opt.tolerance) {
            // confirm with the true residual; drifted recursions restart
            residual(A, x, b, r);
            rel = norm2(r) / bnorm;
            if (rel > opt.tolerance) {
                rz = restart();
            }
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = dinv[i] * r[i];
        }
        const double rz_new = dotp(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = z[i] + beta * p[i];
        }
    }
    rep.iterations = it;
    return rep;
}

SolveReport bicgstab(const CsrMatrix& A, std::span<const double> b, const SolverOptions& opt, int max_iter)
{
    const std::size_t n = b.size();
    const double bnorm = norm2(b);
    const auto dinv = inverse_diagonal(A);
    SolveReport rep;
    rep.method = SolverMethod::nonsymmetric;
    rep.solution.assign(n, 0.0);
    auto& x = rep.solution;
    std::vector<double> r(b.begin(), b.end()), rhat, p(n, 0.0), v(n, 0.0), phat(n), s(n), shat(n), t(n);
    std::vector<double> history;

    double rho = 1.0, alpha = 1.0, omega = 1.0;
    auto restart = [&] {
        residual(A, x, b, r);
        rhat = r;
        std::fill(p.begin(), p.end(), 0.0);
        std::fill(v.begin(), v.end(), 0.0);
        rho = alpha = omega = 1.0;
    };
    restart();
    double rel = norm2(r) / bnorm;
    int it = 0;
    int restarts = 0;
    while (rel > opt.tolerance) {
        if (it >= max_iter) {
            throw SolverError("bicgstab: no convergence after " + std::to_string(it) +
                                  " iterations (residual " + std::to_string(rel) + ")",
                              std::move(history));
        }
        const double rho_new = dotp(rhat, r);
        if (std::abs(rho_new) < 1e-300 || omega == 0.0) {
            if (++restarts > 50) {
                throw SolverError("bicgstab: repeated breakdown", std::move(history));
            }
            restart();
            continue;
        }
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
            phat[i] = dinv[i] * p[i];
        }
        A.multiply(phat, v);
        const double rv = dotp(rhat, v);
        if (rv == 0.0) {
            if (++restarts > 50) {
                throw SolverError("bicgstab: repeated breakdown", std::move(history));
            }
            restart();
            continue;
        }
        alpha = rho / rv;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = r[i] - alpha * v[i];
        }
        ++it;
        if (norm2(s) / bnorm <= opt.tolerance) {
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * phat[i];
            }
            residual(A, x, b, r);
            rel = norm2(r) / bnorm;
            history.push_back(rel);
            if (rel > opt.tolerance) {
                restart();
            }
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            shat[i] = dinv[i] * s[i];
        }
        A.multiply(shat, t);
        const double tt = dotp(t, t);
        omega = tt > 0.0 ? dotp(t, s) / tt : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        rel = norm2(r) / bnorm;
        history.push_back(rel);
        if (rel <= opt.tolerance) {
            residual(A, x, b, r);
            rel = norm2(r) / bnorm;
            if (rel > opt.tolerance) {
                restart();
            }
        }
    }
    rep.iterations = it;
    return rep;
}

SolveReport dense_direct(const CsrMatrix& A, std::span<const double> b, const SolverOptions& opt)
{
    const int n = A.size();
    if (n > opt.direct_limit) {
        throw std::invalid_argument("direct solve limited to " + std::to_string(opt.direct_limit) +
                                    " unknowns");
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            M(i, cols[k]) = vals[k];
        }
    }
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), n);
    const Eigen::VectorXd x = M.partialPivLu().solve(rhs);
    SolveReport rep;
    rep.method = SolverMethod::direct;
    rep.solution.assign(x.data(), x.data() + n);
    return rep;
}

} // namespace

const char* to_string(SolverMethod m)
{
    switch (m) {
    case SolverMethod::automatic: return "auto";
    case SolverMethod::cg: return "cg";
    case SolverMethod::nonsymmetric: return "nonsym";
    case SolverMethod::direct: return "direct";
    }
    return "?";
}

SolverMethod parse_solver_method(const std::string& s)
{
    if (s == "auto") return SolverMethod::automatic;
    if (s == "cg") return SolverMethod::cg;
    if (s == "nonsym") return SolverMethod::nonsymmetric;
    if (s == "direct") return SolverMethod::direct;
    throw std::invalid_argument("unknown solver method '" + s + "'");
}

double relative_residual(const CsrMatrix& matrix, std::span<const double> x, std::span<const double> b)
{
    std::vector<double> r(b.size());
    residual(matrix, x, b, r);
    const double bn = norm2(b);
    return bn > 0.0 ? norm2(r) / bn : norm2(r);
}

SolveReport solve(const CsrMatrix& matrix, std::span<const double> rhs, bool symmetric,
                  const SolverOptions& options)
{
    const int n = matrix.size();
    if (static_cast<std::size_t>(n) != rhs.size()) {
        throw std::invalid_argument("solve: dimension mismatch");
    }
    if (norm2(rhs) == 0.0) {
        SolveReport rep;
        rep.solution.assign(n, 0.0);
        rep.method = options.method;
        return rep;
    }
    SolverMethod method = options.method;
    if (method == SolverMethod::automatic) {
        if (symmetric && matrix.max_asymmetry() > 1e-12 * matrix.max_abs()) {
            throw std::invalid_argument("solve: refusing CG on a matrix flagged symmetric that is not");
        }
        method = symmetric ? SolverMethod::cg : SolverMethod::nonsymmetric;
    }
    const int max_iter = options.max_iterations > 0 ? options.max_iterations : std::max(n, 1);

    SolveReport rep;
    switch (method) {
    case SolverMethod::cg: rep = conjugate_gradient(matrix, rhs, options, max_iter); break;
    case SolverMethod::nonsymmetric: rep = bicgstab(matrix, rhs, options, max_iter); break;
    default: rep = dense_direct(matrix, rhs, options); break;
    }
    rep.relative_residual = relative_residual(matrix, rep.solution, rhs);
    return rep;
}

SolveReport solve(const GlobalSystem& system, const SolverOptions& options)
{
    return solve(system.matrix, system.rhs, system.symmetric(), options);
}

} // namespace mifem
