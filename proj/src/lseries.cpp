#include "cyarith/lseries.hpp"
#include "cyarith/curves.hpp"
#include "cyarith/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <unistd.h>

namespace cyarith {

namespace {

i64 checked(i128 v) {
    if (v > (i128(1) << 62) || v < -(i128(1) << 62))
        throw numeric_error("coefficient exceeds 64-bit range");
    return i64(v);
}

i64 ipow(i64 b, int e) {
    i128 v = 1;
    for (int i = 0; i < e; ++i) v = i128(checked(v)) * b;
    return checked(v);
}

} // namespace

i64 cube_trace(i64 a_p, i64 p) {
    return checked(i128(a_p) * a_p * a_p - 3 * i128(p) * a_p);
}

i64 power_trace(i64 a_p, i64 p, int n) {
    if (n < 0) throw std::invalid_argument("power_trace: negative power");
    i128 s0 = 2, s1 = a_p;
    if (n == 0) return 2;
    for (int k = 2; k <= n; ++k) {
        i128 s2 = i128(a_p) * checked(s1) - i128(p) * checked(s0);
        s0 = s1;
        s1 = s2;
    }
    return checked(s1);
}

CoefficientTable hecke_qexpansion(const HeckeCharacter& chi, i64 N) {
    if (N < 1) throw std::invalid_argument("hecke_qexpansion: bound must be >= 1");
    if (std::log2(double(N)) * chi.power > 60)
        throw numeric_error("hecke_qexpansion: coefficients exceed 64-bit range");
    CoefficientTable t;
    t.weight = chi.power;
    t.level = chi.level;
    t.origin = "ideal-sum";
    std::vector<QuadInt> sums(size_t(N) + 1, qi(chi.field, 0, 0));
    for (auto [gen, norm] : ideals_by_norm(chi.field, N))
        sums[size_t(norm)] = qi_add(sums[size_t(norm)], evaluate(chi, gen));
    t.a.assign(size_t(N) + 1, 0);
    for (i64 n = 1; n <= N; ++n) {
        if (sums[size_t(n)].b != 0)
            throw consistency_error("hecke_qexpansion: non-rational coefficient");
        t.a[size_t(n)] = sums[size_t(n)].a;
    }
    if (t.a[1] != 1) throw consistency_error("hecke_qexpansion: a_1 != 1");
    return t;
}

namespace {

// Coefficients at powers of one prime. Away from the raw modulus: the trace
// feeds the usual degree-2 recursion (0 at inert primes). On the raw modulus:
// direct ideal sums of the primitive character, so ramification is honest.
std::vector<i64> local_block(const HeckeCharacter& chi, i64 p, int maxk,
                             const std::function<i64(i64)>& split_trace) {
    std::vector<i64> c(size_t(maxk) + 1, 0);
    c[0] = 1;
    if (maxk == 0) return c;
    auto pf = factor_prime(chi.field, p);
    if (qi_norm(chi.raw_modulus) % p != 0) {
        if (pf.kind == PrimeKind::RAMIFIED)
            throw consistency_error("coefficient table: ramified prime off the raw modulus");
        i64 bp = pf.kind == PrimeKind::SPLIT ? split_trace(p) : 0;
        i64 pw = ipow(p, chi.power);
        c[1] = bp;
        for (int k = 2; k <= maxk; ++k)
            c[size_t(k)] = checked(i128(bp) * c[size_t(k) - 1] - i128(pw) * c[size_t(k) - 2]);
        return c;
    }
    for (int k = 1; k <= maxk; ++k) {
        QuadInt s = qi(chi.field, 0, 0);
        if (pf.kind == PrimeKind::SPLIT) {
            for (int i = 0; i <= k; ++i)
                s = qi_add(s, evaluate(chi, qi_mul(qi_pow(pf.pi, i), qi_pow(pf.pi_bar, k - i))));
        } else if (pf.kind == PrimeKind::INERT) {
            if (k % 2 == 0) s = evaluate(chi, qi_pow(qi(chi.field, p, 0), k / 2));
        } else {
            s = evaluate(chi, qi_pow(pf.pi, k));
        }
        if (s.b != 0) throw consistency_error("coefficient table: non-rational local value");
        c[size_t(k)] = s.a;
    }
    return c;
}

CoefficientTable trace_path_table(const HeckeCharacter& chi, i64 N,
                                  const std::function<i64(i64)>& split_trace) {
    if (N < 1) throw std::invalid_argument("coefficient table: bound must be >= 1");
    if (std::log2(double(N)) * chi.power > 60)
        throw numeric_error("coefficient table: entries exceed 64-bit range");
    CoefficientTable t;
    t.weight = chi.power;
    t.level = chi.level;
    t.origin = "point-count";
    t.a.assign(size_t(N) + 1, 0);
    t.a[1] = 1;
    std::vector<i64> spf(size_t(N) + 1, 0);
    for (i64 i = 2; i <= N; ++i)
        if (spf[size_t(i)] == 0)
            for (i64 j = i; j <= N; j += i)
                if (spf[size_t(j)] == 0) spf[size_t(j)] = i;
    std::map<i64, std::vector<i64>> blocks;
    for (i64 n = 2; n <= N; ++n) {
        i64 p = spf[size_t(n)], m = n;
        int v = 0;
        while (m % p == 0) {
            m /= p;
            ++v;
        }
        auto it = blocks.find(p);
        if (it == blocks.end()) {
            int maxk = 0;
            for (i128 q = p; q <= N; q *= p) ++maxk;
            it = blocks.emplace(p, local_block(chi, p, maxk, split_trace)).first;
        }
        t.a[size_t(n)] = checked(i128(t.a[size_t(m)]) * it->second[size_t(v)]);
    }
    return t;
}

} // namespace

CoefficientTable curve_coefficients(const CurveSpec& curve, i64 N) {
    HeckeCharacter chi = hecke_character_of(curve);
    return trace_path_table(chi, N, [&](i64 p) { return ap_via_cm(curve, p); });
}

CoefficientTable nfold_coefficients(int family, int n,
                                    const std::vector<std::pair<i64, int>>& twists, i64 N) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("nfold_coefficients: middle cohomology needs odd n");
    CurveSpec curve = make_curve(family, combined_twist(twists));
    CurveSpec base = make_curve(family, 1);
    HeckeCharacter chi = nfold_character(curve, n);
    return trace_path_table(chi, N, [&](i64 p) {
        QuadInt fr = qi_mul(cm_frobenius(curve, p), qi_pow(cm_frobenius(base, p), n - 1));
        return qi_trace(fr);
    });
}

CoefficientTable threefold_coefficients(int family, const std::vector<std::pair<i64, int>>& twists,
                                        i64 N) {
    return nfold_coefficients(family, 3, twists, N);
}

DirichletChar kronecker_char(i64 d) {
    if (d == 0) throw std::invalid_argument("kronecker_char: zero discriminant");
    i64 ad = d < 0 ? -d : d;
    i64 dm = ((d % 4) + 4) % 4;
    i64 M = (dm == 0 || dm == 1) ? ad : 4 * ad; // (d|.) has period |d| for discriminants

    DirichletChar psi;
    psi.modulus = M;
    psi.values.resize(size_t(M));
    for (i64 r = 0; r < M; ++r) psi.values[size_t(r)] = kronecker(d, r);
    return psi;
}

CoefficientTable twist_series(const CoefficientTable& table, const DirichletChar& psi) {
    if (psi.modulus < 1 || i64(psi.values.size()) != psi.modulus)
        throw std::invalid_argument("twist_series: malformed character");
    CoefficientTable out = table;
    out.origin = "twist";
    out.level = checked(i128(table.level) * psi.modulus * psi.modulus);
    for (i64 n = 1; n <= table.size(); ++n) out.a[size_t(n)] = table.at(n) * psi(n);
    return out;
}

EulerFactor euler_factor(const HeckeCharacter& chi, i64 p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("euler_factor: p must be prime");
    i64 pw = ipow(p, chi.power);
    auto pf = factor_prime(chi.field, p);
    auto linear_from = [&](QuadInt v) {
        if (v.b != 0) throw consistency_error("euler_factor: non-rational linear coefficient");
        if (i128(v.a) * v.a != i128(pw))
            throw consistency_error("euler_factor: linear root off the critical circle");
        return EulerFactor{-v.a, 0, 1};
    };
    if (pf.kind == PrimeKind::INERT) {
        QuadInt v = evaluate(chi, qi(chi.field, p, 0));
        if (qi_is_zero(v)) return {0, 0, 0};
        if (v.b != 0) throw consistency_error("euler_factor: non-rational inert value");
        return {0, -v.a, 2};
    }
    if (pf.kind == PrimeKind::RAMIFIED) {
        QuadInt v = evaluate(chi, pf.pi);
        if (qi_is_zero(v)) return {0, 0, 0};
        return linear_from(v);
    }
    QuadInt v1 = evaluate(chi, pf.pi), v2 = evaluate(chi, pf.pi_bar);
    if (qi_is_zero(v1) && qi_is_zero(v2)) return {0, 0, 0};
    if (qi_is_zero(v1) || qi_is_zero(v2)) return linear_from(qi_is_zero(v1) ? v2 : v1);
    QuadInt pr = qi_mul(v1, v2);
    if (pr.b != 0 || pr.a != pw)
        throw consistency_error("euler_factor: split values do not multiply to p^w");
    QuadInt s = qi_add(v1, v2);
    if (s.b != 0) throw consistency_error("euler_factor: non-rational trace");
    return {-s.a, pw, 2};
}

namespace {

struct LockFile {
    std::string path;
    int fd = -1;
    explicit LockFile(const std::string& target) : path(target + ".lock") {
        for (int tries = 0; tries < 100; ++tries) {
            fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
            if (fd >= 0) return;
            ::usleep(50 * 1000);
        }
        throw std::runtime_error("coefficient cache: lock timeout at " + path);
    }
    ~LockFile() {
        if (fd >= 0) {
            ::close(fd);
            ::unlink(path.c_str());
        }
    }
};

} // namespace

void write_coefficient_cache(const std::string& path, int family, i64 twist, int power,
                             const CoefficientTable& table) {
    LockFile lock(path);
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("coefficient cache: cannot write " + tmp);
        out << "# family=" << family << " twist=" << twist << " power=" << power
            << " level=" << table.level << " weight=" << table.weight << "\n";
        for (i64 n = 1; n <= table.size(); ++n) out << n << '\t' << table.at(n) << '\n';
        if (!out) throw std::runtime_error("coefficient cache: short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<CoefficientTable> read_coefficient_cache(const std::string& path, int family,
                                                       i64 twist, int power) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    if (header.empty() || header[0] != '#') return std::nullopt;
    std::map<std::string, i64> kv;
    std::istringstream hs(header.substr(1));
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) return std::nullopt;
        try {
            kv[tok.substr(0, eq)] = std::stoll(tok.substr(eq + 1));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    for (const char* key : {"family", "twist", "power", "level", "weight"})
        if (!kv.count(key)) return std::nullopt;
    if (kv["family"] != family || kv["twist"] != twist || kv["power"] != power)
        return std::nullopt;
    CoefficientTable t;
    t.weight = int(kv["weight"]);
    t.level = kv["level"];
    t.origin = "cache";
    t.a.assign(1, 0);
    i64 n = 0, v = 0, expect = 1;
    while (in >> n >> v) {
        if (n != expect++) return std::nullopt;
        t.a.push_back(v);
    }
    if (t.size() < 1) return std::nullopt;
    return t;
}

} // namespace cyarith
