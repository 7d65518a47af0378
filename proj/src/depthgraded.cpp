#include <mzv/depthgraded.hpp>

#include <map>
#include <stdexcept>
#include <tuple>

namespace mzv {

Z lambda_entry(long n, long k) {
    return binom(n, k) + binom(n - 1, k);
}

Z p_coeff(int n, int i, int j) {
    // Contribution of H = F G, where F enumerates words V of T-weight j
    // (j = #x in V + 2 #y in V) and G the remainder, plus the
    // contribution of y T^2 H.  Both are finite binomial sums.
    Z total = 0;
    for (int alpha = 0; 2 * alpha <= j; ++alpha)
        total += binom(j - alpha, alpha) * binom(n - j + alpha, i - alpha);
    for (int alpha = 0; 2 * alpha <= j - 2; ++alpha)
        total +=
            binom(j - 2 - alpha, alpha) * binom(n + 1 - j + alpha, i - 1 - alpha);
    return total;
}

Z q_coeff(int n, int i, int j) {
    // Q = P + X P, so the coefficient splits into the weight-n and
    // weight-(n-1) coefficients of P.
    return p_coeff(n, i, j) + p_coeff(n - 1, i, j);
}

namespace {

// Truncated polynomials in commuting X, Y, T: exponent triple -> coeff.
using TriPoly = std::map<std::tuple<int, int, int>, Z>;

TriPoly mul_trunc(const TriPoly& a, const TriPoly& b, int max_xy, int max_t) {
    TriPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            int x = std::get<0>(ea) + std::get<0>(eb);
            int y = std::get<1>(ea) + std::get<1>(eb);
            int t = std::get<2>(ea) + std::get<2>(eb);
            if (x + y > max_xy || t > max_t) continue;
            r[{x, y, t}] += ca * cb;
        }
    return r;
}

TriPoly geometric(const TriPoly& base, int max_xy, int max_t) {
    // 1 + base + base^2 + ... until further powers vanish under truncation.
    TriPoly sum{{{0, 0, 0}, Z(1)}};
    TriPoly pw{{{0, 0, 0}, Z(1)}};
    for (;;) {
        pw = mul_trunc(pw, base, max_xy, max_t);
        if (pw.empty()) break;
        for (const auto& [e, c] : pw) sum[e] += c;
    }
    return sum;
}

TriPoly series_P(int max_xy, int max_t) {
    TriPoly f_base{{{1, 0, 1}, Z(1)}, {{0, 1, 2}, Z(1)}};  // XT + YT^2
    TriPoly g_base{{{1, 0, 0}, Z(1)}, {{0, 1, 0}, Z(1)}};  // X + Y
    TriPoly f = geometric(f_base, max_xy, max_t);
    TriPoly g = geometric(g_base, max_xy, max_t);
    TriPoly h = mul_trunc(f, g, max_xy, max_t);
    TriPoly pre{{{0, 0, 0}, Z(1)}, {{0, 1, 2}, Z(1)}};  // 1 + YT^2
    return mul_trunc(pre, h, max_xy, max_t);
}

}  // namespace

Z p_series_coeff(int n, int i, int j) {
    TriPoly p = series_P(n, j);
    auto it = p.find({n - i, i, j});
    return it == p.end() ? Z(0) : it->second;
}

Z q_series_coeff(int n, int i, int j) {
    TriPoly p = series_P(n, j);
    TriPoly pre{{{0, 0, 0}, Z(1)}, {{1, 0, 0}, Z(1)}};  // 1 + X
    TriPoly q = mul_trunc(pre, p, n, j);
    auto it = q.find({n - i, i, j});
    return it == q.end() ? Z(0) : it->second;
}

std::vector<Z> vec_A(int k) {
    std::vector<Z> v;
    for (int m = 0; 2 * m <= k; ++m) v.push_back(lambda_entry(k - m, m));
    return v;
}

std::vector<Z> vec_D(int j, int z) {
    std::vector<Z> v(z, Z(0));
    for (int l = 0; 2 * l <= j; ++l)
        v.push_back(lambda_entry(j / 2 + (j % 2) + l, (j % 2) + 2 * l));
    return v;
}

ScalarAD scalar_AD(int k, int j, int z) {
    ScalarAD r;
    r.coeff = 0;
    for (int m = z; 2 * m <= k; ++m) {
        int l = m - z;
        if (2 * l > j) break;
        r.coeff += lambda_entry(k - m, m) *
                   lambda_entry(j / 2 + (j % 2) + l, (j % 2) + 2 * l);
    }
    r.xdeg = k + j - 2 * (j / 2) - 2 * z;
    r.ydeg = j / 2 + z;
    r.tdeg = j;
    return r;
}

Q b_from_a(const std::vector<Q>& a, int i) {
    Q b = 0;
    for (int j = 0; j <= i && j < static_cast<int>(a.size()); ++j) {
        Z c = binom(j + 1, i - j) + binom(j, i - j - 1);
        b += a[j] * Q(((i - j) % 2 == 0) ? c : -c);
    }
    return b;
}

namespace {

int m_size(int n) { return (n % 2 == 1) ? (n - 1) / 2 : (n - 2) / 2; }

}  // namespace

QMatrix build_M(int n) {
    int sz = m_size(n);
    QMatrix m(sz, sz);
    for (int i = 1; i <= sz; ++i)
        for (int j = 1; j <= sz; ++j) {
            Z t1 = binom(j, i - j) + binom(j - 1, i - j - 1);
            Z t2 = binom(j, n - i - j) + binom(j - 1, n - 1 - i - j);
            Z val = (((i - j) % 2 + 2) % 2 == 0 ? t1 : -t1) +
                    (((n - i - j) % 2 + 2) % 2 == 0 ? t2 : -t2);
            if (val != 0) m.set(i - 1, j - 1, Q(val));
        }
    return m;
}

QMatrix build_N(int n) {
    int sz = m_size(n);
    QMatrix N(sz, sz);
    for (int d = 0; d < sz; ++d) N.set(d, d, Q(1));
    bool odd = (n % 2 == 1);
    int kmax = odd ? (n - 5) / 6 : (n - 8) / 6;
    for (int k = 0; k <= kmax; ++k) {
        int col = sz - k;                       // 1-based column index
        int zeros = odd ? 2 * k : 2 * k + 1;    // leading zeros in the column
        int ak = odd ? (n - 3) / 2 - 3 * k : (n - 6) / 2 - 3 * k;
        if (ak < 0) continue;
        std::vector<Z> a = vec_A(ak);
        for (int t = 0; t < static_cast<int>(a.size()); ++t) {
            int row = zeros + t + 1;  // 1-based row index
            if (row > sz) break;
            int sgn_exp = odd ? (row + col) : (row + col - 1);
            Q val((sgn_exp % 2 == 0) ? a[t] : -a[t]);
            if (row == col) val += 1;  // keep the identity diagonal
            N.set(row - 1, col - 1, val);
        }
    }
    return N;
}

std::pair<int, int> depth_graded_dims(int n) {
    if (n < 3) return {0, 0};
    int d1 = (n % 2 == 1) ? 1 : 0;
    int d2;
    if (n % 2 == 1) {
        // M invertible: unique solution, no depth-2 freedom.
        QMatrix m = build_M(n);
        if (rank(m) != m.rows)
            throw std::runtime_error("depth_graded_dims: M unexpectedly singular");
        d2 = 0;
    } else {
        QMatrix m = build_M(n);
        int nullity = m.cols - rank(m);
        if (nullity != (n - 2) / 6)
            throw std::runtime_error(
                "depth_graded_dims: nullity disagrees with closed formula");
        d2 = nullity;
    }
    return {d1, d2};
}

Q depth_two_reduction(int i, int j) {
    if ((i + j) % 2 == 0)
        throw std::domain_error("depth_two_reduction: weight must be odd");
    Z c = binom(i + j, j);
    Z num = (j % 2 == 1 ? c : -c) - 1;
    return Q(num) / 2;
}

std::vector<Q> depth_two_solution(int n) {
    if (n % 2 == 0 || n < 5)
        throw std::domain_error("depth_two_solution: odd n >= 5 required");
    std::vector<Q> a;
    for (int i = 0; i <= (n - 3) / 2; ++i) {
        Q v = Q(binom(n - i - 1, i + 1)) / 2;
        a.push_back(i % 2 == 0 ? v : -v);
    }
    return a;
}

}  // namespace mzv
