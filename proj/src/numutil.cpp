#include "cyarith/numutil.hpp"
#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cyarith {

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<bool> comp(size_t(n) + 1, false);
    for (i64 p = 2; p <= n; ++p) {
        if (comp[size_t(p)]) continue;
        out.push_back(p);
        for (i64 q = p * p; q <= n; q += p) comp[size_t(q)] = true;
    }
    return out;
}

static i64 mul_mod(i64 a, i64 b, i64 m) { return i64((i128(a) * b) % m); }

i64 mod_pow(i64 a, i64 e, i64 m) {
    a %= m;
    if (a < 0) a += m;
    i64 r = 1 % m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic for n < 3.3e24
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

i64 mod_inv(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = a % m;
    if (a1 < 0) a1 += m;
    while (a1 != 0) {
        i64 q = g / a1;
        g -= q * a1; std::swap(g, a1);
        x -= q * x1; std::swap(x, x1);
    }
    if (g != 1) throw std::invalid_argument("mod_inv: arguments not coprime");
    return x < 0 ? x + m : x;
}

std::optional<i64> sqrt_mod(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (p == 2 || a == 0) return a;
    if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    i64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    i64 z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
    i64 m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        i64 t2 = t;
        int i = 0;
        while (t2 != 1) { t2 = mul_mod(t2, t2, p); ++i; }
        i64 b = mod_pow(c, i64(1) << (m - i - 1), p);
        r = mul_mod(r, b, p);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        m = i;
    }
    return r;
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be positive odd");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            if (n % 8 == 3 || n % 8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    while ((n & 1) == 0) {
        n >>= 1;
        if ((a & 1) == 0) return 0;
        i64 am = a % 8;
        if (am < 0) am += 8;
        if (am == 3 || am == 5) result = -result;
    }
    return result * jacobi(a, n);
}

static i64 pollard_rho(i64 n) {
    if (n % 2 == 0) return 2;
    for (i64 c = 1;; ++c) {
        i64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            d = std::gcd(iabs(x - y), n);
        }
        if (d != n) return d;
    }
}

static void factor_rec(i64 n, std::vector<i64>& primes) {
    if (n == 1) return;
    if (is_prime(n)) { primes.push_back(n); return; }
    i64 d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

std::vector<std::pair<i64, int>> factor_int(i64 n) {
    n = iabs(n);
    if (n == 0) throw std::invalid_argument("factor_int: zero");
    std::vector<std::pair<i64, int>> out;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        std::vector<i64> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.emplace_back(rest[i], int(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cyarith
