#pragma once

#include "mifem/assembly.hpp"
#include "mifem/sparse.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mifem {

enum class SolverMethod { automatic, cg, nonsymmetric, direct };

const char* to_string(SolverMethod m);
SolverMethod parse_solver_method(const std::string& s);

struct SolverOptions {
    double tolerance = 1e-10;      // on ||Ax - b|| / ||b||
    int max_iterations = 0;        // 0: system dimension
    SolverMethod method = SolverMethod::automatic;
    int direct_limit = 4000;       // largest system the dense fallback accepts
};

struct SolveReport {
    std::vector<double> solution;
    int iterations = 0;
    double relative_residual = 0.0;   // recomputed from the returned solution
    SolverMethod method = SolverMethod::automatic;
};

/// Breakdown or iteration limit; carries the residual history.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history))
    {
    }
    std::vector<double> residual_history;
};

/// Jacobi-preconditioned CG for symmetric systems, BiCGSTAB otherwise, dense LU
/// for small systems on request. In automatic mode CG is chosen only when the
/// system is flagged symmetric, and a flagged system whose entries are not
/// symmetric is refused.
SolveReport solve(const CsrMatrix& matrix, std::span<const double> rhs, bool symmetric,
                  const SolverOptions& options = {});
SolveReport solve(const GlobalSystem& system, const SolverOptions& options = {});

double relative_residual(const CsrMatrix& matrix, std::span<const double> x, std::span<const double> b);

} // namespace mifem
