#include "gerbecat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace gerbecat {

namespace {

long long mod(long long a, long long N) {
    a %= N;
    return a < 0 ? a + N : a;
}

// s*a + t*b = g for a,b >= 0
long long ext_gcd(long long a, long long b, long long& s, long long& t) {
    long long old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (r != 0) {
        long long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, ss) = std::make_pair(ss, old_s - q * ss);
        std::tie(old_t, tt) = std::make_pair(tt, old_t - q * tt);
    }
    s = old_s;
    t = old_t;
    return old_r;
}

BigInt ext_gcd_big(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
    BigInt old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * ss;
        old_s = ss;
        ss = tmp;
        tmp = old_t - q * tt;
        old_t = tt;
        tt = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

// Row operation record: new_r1 = a*r1 + b*r2, new_r2 = c*r1 + d*r2.
struct RowOp {
    int r1, r2;
    long long a, b, c, d;
    bool swap;
};

}  // namespace

ModSolution solve_mod(IntMatrix A, std::vector<long long> rhs, long long N) {
    if (N <= 0) throw Error("modulus must be positive");
    const int m = static_cast<int>(A.size());
    const int n = m == 0 ? 0 : static_cast<int>(A[0].size());
    if (static_cast<int>(rhs.size()) != m) throw Error("right-hand side length mismatch");
    for (auto& row : A)
        for (auto& v : row) v = mod(v, N);
    for (auto& v : rhs) v = mod(v, N);

    std::vector<std::vector<long long>> V(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) V[i][i] = 1;
    std::vector<RowOp> log;

    auto row_combine = [&](int r1, int r2, long long a, long long b, long long c, long long d) {
        auto& x = A[r1];
        auto& y = A[r2];
        for (int j = 0; j < n; ++j) {
            long long u = x[j], w = y[j];
            if (u == 0 && w == 0) continue;
            x[j] = mod(a * u + b * w, N);
            y[j] = mod(c * u + d * w, N);
        }
        long long u = rhs[r1], w = rhs[r2];
        rhs[r1] = mod(a * u + b * w, N);
        rhs[r2] = mod(c * u + d * w, N);
        log.push_back({r1, r2, a, b, c, d, false});
    };
    auto row_swap = [&](int r1, int r2) {
        if (r1 == r2) return;
        std::swap(A[r1], A[r2]);
        std::swap(rhs[r1], rhs[r2]);
        log.push_back({r1, r2, 0, 0, 0, 0, true});
    };
    // columns: new_c1 = a*c1 + c*c2, new_c2 = b*c1 + d*c2 (right multiplication)
    auto col_combine = [&](int c1, int c2, long long a, long long b, long long c, long long d) {
        for (int i = 0; i < m; ++i) {
            long long u = A[i][c1], w = A[i][c2];
            if (u == 0 && w == 0) continue;
            A[i][c1] = mod(a * u + c * w, N);
            A[i][c2] = mod(b * u + d * w, N);
        }
        for (int i = 0; i < n; ++i) {
            long long u = V[i][c1], w = V[i][c2];
            V[i][c1] = mod(a * u + c * w, N);
            V[i][c2] = mod(b * u + d * w, N);
        }
    };
    auto col_swap = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int i = 0; i < m; ++i) std::swap(A[i][c1], A[i][c2]);
        for (int i = 0; i < n; ++i) std::swap(V[i][c1], V[i][c2]);
    };

    int t = 0;
    for (; t < std::min(m, n); ++t) {
        int pi = -1, pj = -1;
        for (int j = t; j < n && pi < 0; ++j)
            for (int i = t; i < m; ++i)
                if (A[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            for (int i = t + 1; i < m; ++i) {
                long long c = A[i][t];
                if (c == 0) continue;
                long long a = A[t][t];
                if (c % a == 0) {
                    row_combine(t, i, 1, 0, -(c / a), 1);
                } else {
                    long long s, u;
                    long long g = ext_gcd(a, c, s, u);
                    row_combine(t, i, s, u, c / g, -(a / g));
                }
            }
            bool dirty = false;
            for (int j = t + 1; j < n; ++j) {
                long long c = A[t][j];
                if (c == 0) continue;
                long long a = A[t][t];
                if (c % a == 0) {
                    col_combine(t, j, 1, -(c / a), 0, 1);
                } else {
                    long long s, u;
                    long long g = ext_gcd(a, c, s, u);
                    col_combine(t, j, s, c / g, u, -(a / g));
                    dirty = true;
                }
            }
            if (!dirty) break;
            bool below = false;
            for (int i = t + 1; i < m && !below; ++i) below = A[i][t] != 0;
            if (!below) break;
        }
    }
    const int rank = t;

    ModSolution out;
    std::vector<long long> y(n, 0);
    int bad_row = -1;
    long long bad_scale = 1;
    for (int i = 0; i < m && bad_row < 0; ++i) {
        long long d = i < rank ? A[i][i] : 0;
        long long g = std::gcd(d, N);
        if (rhs[i] % g != 0) {
            bad_row = i;
            bad_scale = N / g;
            break;
        }
        if (i < rank) {
            long long Ng = N / g;
            long long s, u;
            ext_gcd(mod(d / g, Ng), Ng, s, u);
            y[i] = mod((rhs[i] / g) % Ng * mod(s, Ng), Ng);
        }
    }
    if (bad_row < 0) {
        out.solvable = true;
        out.x.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            long long acc = 0;
            for (int j = 0; j < n; ++j) acc = mod(acc + V[i][j] * y[j], N);
            out.x[i] = acc;
        }
        return out;
    }
    // lambda = bad_scale * (row bad_row of U)
    std::vector<long long> v(m, 0);
    v[bad_row] = 1;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        if (it->swap) {
            std::swap(v[it->r1], v[it->r2]);
            continue;
        }
        long long v1 = v[it->r1], v2 = v[it->r2];
        v[it->r1] = mod(v1 * it->a + v2 * it->c, N);
        v[it->r2] = mod(v1 * it->b + v2 * it->d, N);
    }
    for (auto& e : v) e = mod(e * bad_scale, N);
    out.certificate = std::move(v);
    return out;
}

SmithForm smith_diagonal(const IntMatrix& Ain, const IntMatrix& rhs_in) {
    const int m = static_cast<int>(Ain.size());
    const int n = m == 0 ? 0 : static_cast<int>(Ain[0].size());
    std::vector<std::vector<BigInt>> A(m, std::vector<BigInt>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = Ain[i][j];
    const int p = rhs_in.empty() ? 0 : static_cast<int>(rhs_in[0].size());
    std::vector<std::vector<BigInt>> R(m, std::vector<BigInt>(p));
    for (int i = 0; i < m && p > 0; ++i)
        for (int j = 0; j < p; ++j) R[i][j] = rhs_in[i][j];
    std::vector<std::vector<BigInt>> V(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i) V[i][i] = 1;

    auto rows = [&](int r1, int r2, const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
        for (int j = 0; j < n; ++j) {
            BigInt u = A[r1][j], w = A[r2][j];
            A[r1][j] = a * u + b * w;
            A[r2][j] = c * u + d * w;
        }
        for (int j = 0; j < p; ++j) {
            BigInt u = R[r1][j], w = R[r2][j];
            R[r1][j] = a * u + b * w;
            R[r2][j] = c * u + d * w;
        }
    };
    auto cols = [&](int c1, int c2, const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
        for (int i = 0; i < m; ++i) {
            BigInt u = A[i][c1], w = A[i][c2];
            A[i][c1] = a * u + c * w;
            A[i][c2] = b * u + d * w;
        }
        for (int i = 0; i < n; ++i) {
            BigInt u = V[i][c1], w = V[i][c2];
            V[i][c1] = a * u + c * w;
            V[i][c2] = b * u + d * w;
        }
    };

    int t = 0;
    for (; t < std::min(m, n); ++t) {
        // smallest nonzero pivot keeps entries small
        int pi = -1, pj = -1;
        BigInt best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (A[i][j] != 0 && (pi < 0 || abs(A[i][j]) < best)) {
                    best = abs(A[i][j]);
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != t) {
            std::swap(A[pi], A[t]);
            std::swap(R[pi], R[t]);
        }
        if (pj != t) {
            for (int i = 0; i < m; ++i) std::swap(A[i][pj], A[i][t]);
            for (int i = 0; i < n; ++i) std::swap(V[i][pj], V[i][t]);
        }
        for (;;) {
            for (int i = t + 1; i < m; ++i) {
                if (A[i][t] == 0) continue;
                BigInt a = A[t][t], c = A[i][t];
                if (c % a == 0) {
                    rows(t, i, 1, 0, -(c / a), 1);
                } else {
                    BigInt s, u;
                    BigInt g = ext_gcd_big(a, c, s, u);
                    rows(t, i, s, u, c / g, -(a / g));
                }
            }
            bool dirty = false;
            for (int j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                BigInt a = A[t][t], c = A[t][j];
                if (c % a == 0) {
                    cols(t, j, 1, -(c / a), 0, 1);
                } else {
                    BigInt s, u;
                    BigInt g = ext_gcd_big(a, c, s, u);
                    cols(t, j, s, c / g, u, -(a / g));
                    dirty = true;
                }
            }
            if (!dirty) break;
            bool below = false;
            for (int i = t + 1; i < m && !below; ++i) below = A[i][t] != 0;
            if (!below) break;
        }
        if (A[t][t] < 0) {
            for (int j = 0; j < n; ++j) A[t][j] = -A[t][j];
            for (int j = 0; j < p; ++j) R[t][j] = -R[t][j];
        }
    }
    SmithForm out;
    out.rank = t;
    out.diag.assign(std::min(m, n), BigInt(0));
    for (int i = 0; i < t; ++i) out.diag[i] = A[i][i];
    out.V = std::move(V);
    out.rhs = std::move(R);
    return out;
}

CokernelShape cokernel(const IntMatrix& A, int ncols) {
    CokernelShape out;
    if (A.empty()) {
        out.free_rank = ncols;
        return out;
    }
    SmithForm s = smith_diagonal(A);
    std::vector<BigInt> d;
    for (int i = 0; i < s.rank; ++i) d.push_back(s.diag[i]);
    // normalise into a divisibility chain
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            BigInt g = boost::multiprecision::gcd(d[i], d[j]);
            BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    for (auto& v : d)
        if (v != 1) out.torsion.push_back(v);
    out.free_rank = ncols - s.rank;
    return out;
}

F2Basis f2_span(const std::vector<std::vector<std::uint8_t>>& rows, int ncols) {
    F2Basis B;
    for (auto r : rows) {
        r.resize(ncols, 0);
        r = B.reduce(r);
        int piv = -1;
        for (int j = 0; j < ncols; ++j)
            if (r[j]) {
                piv = j;
                break;
            }
        if (piv < 0) continue;
        // keep fully reduced: clear the new pivot from existing rows
        for (auto& b : B.rows)
            if (b[piv])
                for (int j = 0; j < ncols; ++j) b[j] ^= r[j];
        B.rows.push_back(r);
        B.pivots.push_back(piv);
    }
    B.dim = static_cast<int>(B.rows.size());
    return B;
}

std::vector<std::uint8_t> F2Basis::reduce(std::vector<std::uint8_t> v) const {
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (v[pivots[k]])
            for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= rows[k][j];
    return v;
}

int f2_rank(std::vector<std::vector<std::uint8_t>> rows) {
    int ncols = 0;
    for (auto& r : rows) ncols = std::max<int>(ncols, static_cast<int>(r.size()));
    return f2_span(rows, ncols).dim;
}

std::optional<std::vector<std::uint8_t>> f2_solve(const std::vector<std::vector<std::uint8_t>>& A,
                                                  const std::vector<std::uint8_t>& b, int ncols) {
    const int m = static_cast<int>(A.size());
    std::vector<std::vector<std::uint8_t>> M(m, std::vector<std::uint8_t>(ncols + 1, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < ncols && j < static_cast<int>(A[i].size()); ++j) M[i][j] = A[i][j] & 1;
        M[i][ncols] = b[i] & 1;
    }
    std::vector<int> piv_col;
    int r = 0;
    for (int c = 0; c < ncols && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (M[i][c]) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(M[p], M[r]);
        for (int i = 0; i < m; ++i)
            if (i != r && M[i][c])
                for (int j = c; j <= ncols; ++j) M[i][j] ^= M[r][j];
        piv_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (M[i][ncols]) return std::nullopt;
    std::vector<std::uint8_t> x(ncols, 0);
    for (int i = 0; i < r; ++i) x[piv_col[i]] = M[i][ncols];
    return x;
}

int rational_rank(std::vector<std::vector<Rational>> M) {
    const int m = static_cast<int>(M.size());
    const int n = m == 0 ? 0 : static_cast<int>(M[0].size());
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (M[i][c].numerator() != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(M[p], M[r]);
        for (int i = r + 1; i < m; ++i) {
            if (M[i][c].numerator() == 0) continue;
            Rational f = M[i][c] / M[r][c];
            for (int j = c; j < n; ++j) M[i][j] -= f * M[r][j];
        }
        ++r;
    }
    return r;
}

namespace {

// Polynomials over Z, lowest degree first.
using Poly = std::vector<long long>;

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// quotient of a by a monic b (exact division expected)
Poly divide_exact(Poly a, const Poly& b) {
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    const int da = static_cast<int>(a.size()) - 1;
    if (da < db) return {0};
    Poly q(da - db + 1, 0);
    for (int k = da; k >= db; --k) {
        long long coef = a[k];
        q[k - db] = coef;
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= coef * b[j];
    }
    return q;
}

Poly remainder_monic(Poly a, const Poly& b) {
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        long long coef = a[k];
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= coef * b[j];
    }
    a.resize(std::max(db, 1));
    return a;
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(int n) {
    static std::map<int, Poly> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
    trim(p);
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = p;
    return p;
}

CyclotomicValue cyclotomic_sum(const std::vector<std::pair<Rational, long long>>& terms) {
    CyclotomicValue out;
    long long N = 1;
    for (auto& [r, c] : terms)
        if (c != 0) N = lcm_ll(N, Phase(r).denominator());
    Poly p(N, 0);
    for (auto& [r, c] : terms) {
        if (c == 0) continue;
        Phase ph(r);
        long long j = ph.value().numerator() * (N / ph.denominator());
        p[j] += c;
        out.approx += static_cast<double>(c) * ph.to_complex();
    }
    Poly rem = N == 1 ? p : remainder_monic(p, cyclotomic_polynomial(static_cast<int>(N)));
    bool constant = true;
    for (std::size_t k = 1; k < rem.size(); ++k)
        if (rem[k] != 0) constant = false;
    out.is_rational = constant;
    if (constant) {
        out.value = Rational(rem[0]);
        out.approx = cplx(static_cast<double>(rem[0]), 0.0);
    }
    return out;
}

}  // namespace gerbecat
