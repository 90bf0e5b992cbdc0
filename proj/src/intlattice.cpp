#include "h10/intlattice.hpp"

#include <algorithm>

namespace h10 {

IntMat identity_mat(int n) {
    IntMat m(size_t(n), std::vector<Int>(size_t(n), 0));
    for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = 1;
    return m;
}

std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& x) {
    size_t n = a[0].size();
    std::vector<Int> out(n, 0);
    for (size_t j = 0; j < a.size(); ++j)
        for (size_t i = 0; i < n; ++i) out[i] += a[j][i] * x[j];
    return out;
}

namespace {

// In-place column HNF of work (n rows, any number of columns >= n).
// aux, when nonempty, receives the same column operations (used to track
// combinations of the original columns).
void hnf_cols(std::vector<std::vector<Int>>& work, std::vector<std::vector<Int>>* aux,
              size_t nrows) {
    size_t ncols = work.size();
    auto col_sub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t i = 0; i < nrows; ++i) work[dst][i] -= q * work[src][i];
        if (aux)
            for (size_t i = 0; i < (*aux)[dst].size(); ++i)
                (*aux)[dst][i] -= q * (*aux)[src][i];
    };
    auto col_swap = [&](size_t a, size_t b) {
        std::swap(work[a], work[b]);
        if (aux) std::swap((*aux)[a], (*aux)[b]);
    };
    auto col_negate = [&](size_t a) {
        for (auto& v : work[a]) v = -v;
        if (aux)
            for (auto& v : (*aux)[a]) v = -v;
    };

    for (size_t row = 0, piv = 0; row < nrows; ++row, ++piv) {
        if (piv >= ncols) throw MathError("hnf: rank deficient");
        // gcd out entries in this row among columns >= piv
        while (true) {
            size_t best = ncols;
            for (size_t j = piv; j < ncols; ++j) {
                if (work[j][row] == 0) continue;
                if (best == ncols || abs(work[j][row]) < abs(work[best][row])) best = j;
            }
            if (best == ncols) throw MathError("hnf: rank deficient");
            col_swap(piv, best);
            bool done = true;
            for (size_t j = piv + 1; j < ncols; ++j) {
                if (work[j][row] == 0) continue;
                Int q = work[j][row] / work[piv][row];  // truncated division
                col_sub(j, piv, q);
                if (work[j][row] != 0) done = false;
            }
            if (done) break;
        }
        if (work[piv][row] < 0) col_negate(piv);
        // normalize earlier columns against this pivot
        for (size_t j = 0; j < piv; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), work[j][row].get_mpz_t(), work[piv][row].get_mpz_t());
            if (q != 0) col_sub(j, piv, q);
        }
    }
}

}  // namespace

IntMat hnf_lower(const IntMat& gens) {
    if (gens.empty()) throw MathError("hnf: empty generator set");
    size_t n = gens[0].size();
    std::vector<std::vector<Int>> work = gens;
    hnf_cols(work, nullptr, n);
    work.resize(n);
    return work;
}

bool lattice_contains(const IntMat& H, const std::vector<Int>& x) {
    size_t n = x.size();
    std::vector<Int> v = x;
    for (size_t i = 0; i < n; ++i) {
        if (v[i] % H[i][i] != 0) return false;
        Int q = v[i] / H[i][i];
        for (size_t k = i; k < n; ++k) v[k] -= q * H[i][k];
    }
    return true;
}

std::vector<Int> lattice_reduce(const IntMat& H, const std::vector<Int>& x) {
    size_t n = x.size();
    std::vector<Int> v = x;
    for (size_t i = 0; i < n; ++i) {
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v[i].get_mpz_t(), H[i][i].get_mpz_t());
        for (size_t k = i; k < n; ++k) v[k] -= q * H[i][k];
    }
    return v;
}

IntMat lattice_sum(const IntMat& a, const IntMat& b) {
    IntMat gens = a;
    gens.insert(gens.end(), b.begin(), b.end());
    return hnf_lower(gens);
}

std::optional<std::vector<Int>> solve_mod_lattice(const IntMat& A, const IntMat& H,
                                                  const std::vector<Int>& b) {
    size_t n = b.size();
    size_t m = A.size();
    std::vector<std::vector<Int>> work;
    std::vector<std::vector<Int>> aux;
    for (size_t j = 0; j < m; ++j) {
        work.push_back(A[j]);
        std::vector<Int> e(m, 0);
        e[j] = 1;
        aux.push_back(e);
    }
    for (const auto& col : H) {
        work.push_back(col);
        aux.emplace_back(m, 0);
    }
    hnf_cols(work, &aux, n);
    // forward substitution of b against the lower-triangular basis
    std::vector<Int> v = b, x(m, 0);
    for (size_t i = 0; i < n; ++i) {
        if (v[i] % work[i][i] != 0) return std::nullopt;
        Int q = v[i] / work[i][i];
        for (size_t k = i; k < n; ++k) v[k] -= q * work[i][k];
        for (size_t k = 0; k < m; ++k) x[k] += q * aux[i][k];
    }
    return x;
}

Int hnf_det(const IntMat& H) {
    Int d = 1;
    for (size_t i = 0; i < H.size(); ++i) d *= H[i][i];
    return d;
}

}  // namespace h10
