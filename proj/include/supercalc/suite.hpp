#pragma once

// Checks wrapped as reports, shared by the command-line tool and the
// bundled reference suite.

#include <cstdint>
#include <vector>

#include "supercalc/algebra.hpp"
#include "supercalc/diff_operator.hpp"
#include "supercalc/io.hpp"
#include "supercalc/modes.hpp"

namespace supercalc {

struct RunOptions {
    unsigned jobs = 1;
    std::size_t witness_limit = 1;
    /// Record wall-clock seconds in reports; off by default so reports
    /// stay byte-identical between runs.
    bool timing = false;
    std::uint64_t seed = 20240601;
};

Report algebra_report(const AlgebraSpec& spec, AlgebraClass cls, const RunOptions& options);
Report skew_report(const MatrixDiffOperator& H);
Report hamiltonian_report(const MatrixDiffOperator& H, const RunOptions& options);
Report schouten_report(const MatrixDiffOperator& A, const MatrixDiffOperator& B, const RunOptions& options);
Report pair_report(const MatrixDiffOperator& A, const MatrixDiffOperator& B, const RunOptions& options);
/// The induced table in the output lines; passes iff the table is
/// super skew-symmetric and satisfies the super Jacobi identity.
Report induce_report(const LinearOperatorData& data, int window, const RunOptions& options);
/// One output line per family: (Phi_a)_t = ...
Report evolution_report(const MatrixDiffOperator& H, const SuperPolynomial& density);

/// Fixed examples with known verdicts; one entry is expected to fail.
std::vector<Report> reference_suite(const RunOptions& options);

/// Super-KdV Hamiltonian operator -D^5 + 2 Phi D^2 + 2 Phi(2) D + 2 Phi(3)
/// and its density (1/2) Phi Phi(2).
MatrixDiffOperator super_kdv_operator();
SuperPolynomial super_kdv_density();

}  // namespace supercalc
