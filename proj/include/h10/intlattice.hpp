#ifndef H10_INTLATTICE_HPP
#define H10_INTLATTICE_HPP

#include <optional>
#include <vector>

#include "h10/algebra.hpp"

// Exact Z-lattice arithmetic on column generators: lower-triangular column
// HNF, membership tests, canonical coset representatives, and solving
// A x == b (mod lattice).  Dimensions here are tiny (n <= 4).

namespace h10 {

// Column-major matrix: mat[j] is column j, all columns of equal length n.
using IntMat = std::vector<std::vector<Int>>;

IntMat identity_mat(int n);

// c = a * b over a ring given by column action: returns A*x for column x.
std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& x);

// Lower-triangular column HNF of the full-rank lattice spanned by the columns
// of gens: result H has H[j][j] > 0, H[i][j] = 0 for i < j, and
// 0 <= H[i][j] < H[i][i] for j < i.  Throws if the span has rank < n.
IntMat hnf_lower(const IntMat& gens);

// Is x in the lattice with HNF basis H?
bool lattice_contains(const IntMat& H, const std::vector<Int>& x);

// Canonical representative of x modulo the lattice: the unique vector in the
// box prod_i [0, H[i][i]) congruent to x.
std::vector<Int> lattice_reduce(const IntMat& H, const std::vector<Int>& x);

// Lattice generated by the union of two generator sets.
IntMat lattice_sum(const IntMat& a, const IntMat& b);

// Solve A x == b (mod lattice H): returns some integer solution x, or nullopt
// if b is not in  A Z^n + H Z^n.
std::optional<std::vector<Int>> solve_mod_lattice(const IntMat& A, const IntMat& H,
                                                  const std::vector<Int>& b);

// Determinant of a lower-triangular HNF (product of the diagonal).
Int hnf_det(const IntMat& H);

}  // namespace h10

#endif
