/**
 * Exact linear algebra over Q and GF(2).
 *
 * Elimination runs fraction-free on integer rows (each row is scaled to
 * integers and kept primitive), so no gcd is taken per entry.  All results
 * are returned in canonical form: a nonzero row space is reported by its
 * reduced row echelon basis, which is unique.
 */
#pragma once

#include "stresslab/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace stresslab::linalg {

struct SparseRow {
    std::vector<std::pair<std::uint32_t, Rational>> entries;  // strictly increasing columns
};

using SparseMatrix = std::vector<SparseRow>;
using DenseMatrix = std::vector<RowVector>;

SparseRow to_sparse(const RowVector& row);
RowVector to_dense(const SparseRow& row, std::size_t ncols);

/** Reduced row echelon basis of the row space (zero rows dropped). */
DenseMatrix rref(const DenseMatrix& rows, std::size_t ncols);
DenseMatrix rref(const SparseMatrix& rows, std::size_t ncols);

std::size_t rank(const SparseMatrix& rows, std::size_t ncols);
std::size_t rank(const DenseMatrix& rows, std::size_t ncols);

/** Canonical (RREF) basis of {x : row . x = 0 for every row}. */
DenseMatrix nullspace(const SparseMatrix& rows, std::size_t ncols);
DenseMatrix nullspace(const DenseMatrix& rows, std::size_t ncols);

/**
 * Some x with A x = b, or nullopt when inconsistent.  Free variables are set
 * to zero, so the answer is deterministic.
 */
std::optional<RowVector> solve(const SparseMatrix& a, const RowVector& b, std::size_t ncols);

/** Pivot columns of an RREF basis. */
std::vector<std::size_t> pivot_columns(const DenseMatrix& rref_rows);

/** Residue of v after reduction by an RREF basis; zero iff v is in the span. */
RowVector reduce(const DenseMatrix& rref_rows, RowVector v);

bool is_zero(const RowVector& v);

/** Inverse of a square matrix, nullopt when singular. */
std::optional<DenseMatrix> inverse(const DenseMatrix& m);

Rational determinant(const DenseMatrix& m);

/** Rank over GF(2); each row lists the columns holding a 1. */
std::size_t rank_gf2(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t ncols);

}  // namespace stresslab::linalg
