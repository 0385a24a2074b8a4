#pragma once

// Exact linear algebra used by the decision procedures: linear systems
// over Z/N and over Z, GF(2) elimination, rational rank, and exact sums
// of roots of unity.

#include "gerbecat/phase.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace gerbecat {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<long long>>;

/// Result of solving A x = b over Z/N.
struct ModSolution {
    bool solvable = false;
    std::vector<long long> x;            ///< a solution when solvable
    std::vector<long long> certificate;  ///< lambda with lambda A = 0, lambda b != 0 (mod N)
};

/**
 * Solve A x = b (mod N) by diagonalising A with unimodular row and column
 * operations over Z/N. Entries stay reduced, so there is no coefficient
 * growth. When no solution exists the certificate is an integer row
 * functional killing the column space but not b.
 */
ModSolution solve_mod(IntMatrix A, std::vector<long long> b, long long N);

/// Diagonal form D = U A V of an integer matrix.
struct SmithForm {
    std::vector<BigInt> diag;               ///< length min(m,n); zeros past the rank
    std::vector<std::vector<BigInt>> V;     ///< n x n column transform
    std::vector<std::vector<BigInt>> rhs;   ///< U applied to the supplied right-hand sides
    int rank = 0;
};

/// Diagonalises A; `rhs` is an m x p matrix that receives the row operations.
SmithForm smith_diagonal(const IntMatrix& A, const IntMatrix& rhs = {});

/// Invariant factors d_1 | d_2 | ... (units dropped) of the cokernel of A,
/// plus the free rank.
struct CokernelShape {
    std::vector<BigInt> torsion;
    int free_rank = 0;
};
CokernelShape cokernel(const IntMatrix& A, int ncols);

/// Rank over GF(2). Rows are 0/1 vectors.
int f2_rank(std::vector<std::vector<std::uint8_t>> rows);

/// Row-reduced echelon basis of the span of `rows` over GF(2).
struct F2Basis {
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<int> pivots;
    int dim = 0;
    /// Reduce v modulo the span; the result is the canonical coset representative.
    std::vector<std::uint8_t> reduce(std::vector<std::uint8_t> v) const;
};
F2Basis f2_span(const std::vector<std::vector<std::uint8_t>>& rows, int ncols);

/// Solve A x = b over GF(2); A is given by rows.
std::optional<std::vector<std::uint8_t>> f2_solve(const std::vector<std::vector<std::uint8_t>>& A,
                                                  const std::vector<std::uint8_t>& b, int ncols);

/// Rank of a rational matrix.
int rational_rank(std::vector<std::vector<Rational>> M);

/// Exact value of sum_k coeff_k exp(2 pi i r_k).
struct CyclotomicValue {
    bool is_rational = false;
    Rational value{0};   ///< meaningful when is_rational
    cplx approx{0, 0};
};
CyclotomicValue cyclotomic_sum(const std::vector<std::pair<Rational, long long>>& terms);

/// Cyclotomic polynomial Phi_n with integer coefficients, lowest degree first.
std::vector<long long> cyclotomic_polynomial(int n);

}  // namespace gerbecat
