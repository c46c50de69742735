#pragma once

// Independent reference computations used only by the test suites. Nothing
// here calls into the routines it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

/// Determinant by Gaussian elimination over Q.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
    const std::size_t n = m.size();
    mpq_class det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            mpq_class f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Resultant as the Sylvester determinant; inputs in ascending degree, nonzero leads.
inline mpq_class sylvester_resultant(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    const std::size_t size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<mpq_class>> s(size, std::vector<mpq_class>(size, 0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = a[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = b[n - i];
    return determinant(s);
}

/// Monic polynomial with the given integer roots, ascending degree.
inline std::vector<mpz_class> from_roots(const std::vector<long>& roots) {
    std::vector<mpz_class> p{1};
    for (long r : roots) {
        std::vector<mpz_class> q(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= p[i] * r;
        }
        p = q;
    }
    return p;
}

/// Evaluates an integer polynomial modulo p.
inline std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    return acc;
}

/// Every monic polynomial of degree `deg` over F_p, ascending coefficients.
inline std::vector<std::vector<std::uint64_t>> all_monic(std::uint64_t p, std::size_t deg) {
    std::vector<std::vector<std::uint64_t>> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < deg; ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::uint64_t> c(deg + 1, 0);
        std::size_t t = code;
        for (std::size_t i = 0; i < deg; ++i) {
            c[i] = t % p;
            t /= p;
        }
        c[deg] = 1;
        out.push_back(c);
    }
    return out;
}

/// Schoolbook product mod p.
inline std::vector<std::uint64_t> mul_mod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                          std::uint64_t p) {
    std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

/// Brute-force irreducibility over F_p: no monic factor of degree 1..deg/2.
inline bool brute_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const std::size_t n = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= n; ++d)
        for (const auto& a : all_monic(p, d))
            for (const auto& b : all_monic(p, n - d))
                if (mul_mod(a, b, p) == f) return false;
    return true;
}

}  // namespace oracle

namespace oracle {

/// Matrix of multiplication by num(c)/den on the basis 1, c, ..., c^(n-1) of Q[c]/(g), g monic.
inline std::vector<std::vector<mpq_class>> multiplication_matrix(const std::vector<mpz_class>& g,
                                                                 const std::vector<mpz_class>& num,
                                                                 const mpz_class& den) {
    const std::size_t n = g.size() - 1;
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        // x * c^j, then reduce top-down with c^n = -(g_0 + ... + g_{n-1} c^{n-1})
        std::vector<mpq_class> prod(n + num.size() + 1, 0);
        for (std::size_t i = 0; i < num.size(); ++i) prod[i + j] += mpq_class(num[i], den);
        for (std::size_t k = prod.size(); k-- > n;) {
            if (prod[k] == 0) continue;
            mpq_class t = prod[k];
            prod[k] = 0;
            for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= t * g[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            mpq_class v = prod[i];
            v.canonicalize();
            m[i][j] = v;
        }
    }
    return m;
}

}  // namespace oracle
