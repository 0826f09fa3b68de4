#include "cyarith/lfunction.hpp"
#include "cyarith/errors.hpp"
#include <cmath>
#include <filesystem>
#include <numbers>

namespace cyarith {

using cplx = std::complex<double>;

namespace {

constexpr double PI = std::numbers::pi;

// Lanczos, g = 7, 9 terms; reflection below Re z = 1/2.
const double LANCZOS[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

} // namespace

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::invalid_argument("log_gamma: pole");
    if (z.real() < 0.5) {
        // log pi/sin(pi z) - log_gamma(1 - z)
        cplx s = std::sin(PI * z);
        if (std::abs(s) == 0.0) throw std::invalid_argument("log_gamma: pole");
        return std::log(PI / s) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = LANCZOS[0];
    for (int i = 1; i < 9; ++i) x += LANCZOS[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

namespace {

// Lentz continued fraction; valid for x > 0, best once x exceeds |s|.
cplx upper_gamma_cf(cplx s, double x) {
    const double tiny = 1e-290;
    cplx b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 400; ++i) {
        cplx an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        cplx del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) return std::exp(-x + s * std::log(x)) * h;
    }
    throw numeric_error("upper_gamma: continued fraction stalled");
}

// Gamma(0, x) = E_1(x) for 0 < x < 1 by the alternating series.
double exp_integral_small(double x) {
    double sum = -std::numbers::egamma - std::log(x), term = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -x / double(k);
        sum -= term / double(k);
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

} // namespace

cplx upper_gamma(cplx s, double x) {
    if (x < 0) throw std::invalid_argument("upper_gamma: x must be >= 0");
    if (x == 0) return std::exp(log_gamma(s));
    if (x >= std::abs(s) + 1.0) return upper_gamma_cf(s, x);
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
        // the complement route needs the complete Gamma, which has a pole
        // here; climb down from Gamma(0, x) instead
        double g = x >= 1.0 ? upper_gamma_cf(cplx(0, 0), x).real() : exp_integral_small(x);
        double e = std::exp(-x), xpow = 1.0 / x;
        for (i64 j = 1; j <= -i64(s.real()); ++j) {
            g = (g - xpow * e) / double(-j); // Gamma(t-1,x) = (Gamma(t,x) - x^{t-1}e^{-x})/(t-1)
            xpow /= x;
        }
        return cplx(g, 0);
    }
    // lower-gamma series, then complement
    cplx gs = std::exp(log_gamma(s));
    cplx term = 1.0 / s, sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= x / (s + double(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            return gs - sum * std::exp(-x + s * std::log(x));
    }
    throw numeric_error("upper_gamma: series stalled");
}

namespace {

// Smallest N with N^{pdeg} e^{-rate N} below e^{-drop}: fixed point of
// N = (drop + pdeg log N) / rate.
i64 solve_demand(double pdeg, double rate, double drop) {
    double N = std::max(50.0, 8.0 / rate);
    for (int i = 0; i < 80; ++i) N = (drop + pdeg * std::log(N)) / rate;
    return i64(std::ceil(N)) + 8;
}

double theta_sum(const CoefficientTable& t, double u, double A) {
    double s = 0;
    for (i64 n = t.size(); n >= 1; --n)
        if (t.at(n) != 0) s += double(t.at(n)) * std::exp(-double(n) * u / A);
    return s;
}

cplx lambda_split(const CompletedLFunction& L, cplx s, double x0) {
    int w = L.table.weight;
    double k = w + 1.0;
    double A = L.q_scale;
    i64 need = coefficient_demand(w, L.table.level, s);
    if (L.table.size() < need)
        throw numeric_error("completed_lambda: need " + std::to_string(need) +
                            " coefficients, table has " + std::to_string(L.table.size()));
    cplx sum1 = 0.0, sum2 = 0.0;
    for (i64 n = 1; n <= need; ++n) {
        i64 an = L.table.at(n);
        if (an == 0) continue;
        double nn = double(n);
        sum1 += double(an) * std::pow(cplx(A / nn), s) * upper_gamma(s, nn * x0 / A);
        sum2 += double(an) * std::pow(cplx(A / nn), k - s) * upper_gamma(k - s, nn / (x0 * A));
    }
    return 2.0 * sum1 + 2.0 * double(L.root) * sum2;
}

} // namespace

i64 coefficient_demand(int weight, i64 level, cplx s) {
    if (level < 1) throw std::invalid_argument("coefficient_demand: level must be positive");
    double A = std::sqrt(double(level)) / (2.0 * PI);
    double sig = std::max({std::abs(s.real()), std::abs(weight + 1.0 - s.real()), 1.0}) +
                 std::abs(s.imag());
    // |a_n| <= d(n) n^{w/2}; Gamma(sigma, x) ~ x^{sigma-1} e^{-x}
    double pdeg = weight / 2.0 + sig + 1.0;
    double rate = 0.75 / A; // worst split point 3/4
    double drop = 30.0 + sig * std::log(A + 2.0);
    return solve_demand(pdeg, rate, drop);
}

i64 sign_demand(int weight, i64 level) {
    if (level < 1) throw std::invalid_argument("sign_demand: level must be positive");
    const double u0 = 1.25;
    double A = std::sqrt(double(level)) / (2.0 * PI);
    return solve_demand(weight / 2.0 + 2.0, (1.0 / u0) / A,
                        25.0 + 2.0 * PI * u0 / std::sqrt(double(level)));
}

CompletedLFunction make_lfunction(const CoefficientTable& table) {
    if (table.level < 1 || table.weight < 1 || table.size() < 1)
        throw std::invalid_argument("make_lfunction: malformed table");
    CompletedLFunction L;
    L.table = table;
    L.q_scale = std::sqrt(double(table.level)) / (2.0 * PI);

    const double u0 = 1.25;
    i64 need = sign_demand(table.weight, table.level);
    if (table.size() < need)
        throw numeric_error("make_lfunction: root number needs " + std::to_string(need) +
                            " coefficients, table has " + std::to_string(table.size()));
    double fu = theta_sum(table, u0, L.q_scale);
    double fv = theta_sum(table, 1.0 / u0, L.q_scale);
    if (std::abs(fu) < 1e-12)
        throw numeric_error("make_lfunction: theta sum vanished at the probe point");
    double wn = fv / (std::pow(u0, table.weight + 1) * fu);
    L.root_margin = std::abs(std::abs(wn) - 1.0);
    if (L.root_margin > 1e-6)
        throw numeric_error("make_lfunction: functional-equation sign did not stabilize (|W| = " +
                            std::to_string(std::abs(wn)) + ")");
    L.root = wn > 0 ? 1 : -1;
    return L;
}

cplx completed_lambda(const CompletedLFunction& L, cplx s) { return lambda_split(L, s, 1.0); }

double fe_residual(const CompletedLFunction& L, cplx s) {
    cplx k = cplx(L.table.weight + 1.0, 0.0);
    return std::abs(lambda_split(L, s, 1.0) - double(L.root) * lambda_split(L, k - s, 4.0 / 3.0));
}

CentralValue central_value(const CompletedLFunction& L) {
    double s0 = (L.table.weight + 1.0) / 2.0;
    if (L.root == -1) return {0.0, true};
    cplx lam = completed_lambda(L, s0);
    cplx val = lam * std::pow(cplx(2.0 * PI), s0) /
               (2.0 * std::pow(double(L.table.level), s0 / 2.0) * std::exp(log_gamma(s0)));
    if (std::abs(val.imag()) > 1e-8 * (1.0 + std::abs(val)))
        throw consistency_error("central_value: real table produced a complex value");
    return {val.real(), false};
}

int root_number(const CurveSpec& curve, int n) {
    if (n < 1) throw std::invalid_argument("root_number: power must be >= 1");
    HeckeCharacter chi = hecke_character_of(curve);
    int wb = make_lfunction(hecke_qexpansion(chi, sign_demand(1, chi.level))).root;
    if (n == 1) return wb;

    HeckeCharacter chin = power_character(chi, n);
    int wn = make_lfunction(hecke_qexpansion(chin, sign_demand(n, chin.level))).root;
    int theory = n % 2 == 0 ? 1 : (((n - 1) / 2) % 2 == 0 ? wb : -wb);
    if (wn != theory)
        throw consistency_error("root_number: numerical sign disagrees with the power map");
    return wn;
}

i64 half_integral_coefficient(i64 D) {
    // f1 = q - 3q^9 - 4q^17 + 25q^25 - 4q^33 - 48q^41 + q^49 + 20q^57
    //        + 48q^65 - 4q^73 - 27q^81 + 68q^89 - 76q^97 + O(q^105)
    static const i64 f1[13] = {1, -3, -4, 25, -4, -48, 1, 20, 48, -4, -27, 68, -76};
    // f2 = -q^3 + 5q^11 - 7q^19 + 2q^35 + q^43 + 14q^51 - 13q^59 + q^67
    //        - 27q^75 + 7q^83 + 26q^91 + 15q^99 + O(q^107)
    static const i64 f2[13] = {-1, 5, -7, 0, 2, 1, 14, -13, 1, -27, 7, 26, 15};
    if (D >= 1 && D % 8 == 1 && D < 105) return f1[(D - 1) / 8];
    if (D >= 3 && D % 8 == 3 && D < 107) return f2[(D - 3) / 8];
    throw std::invalid_argument("half_integral_coefficient: D outside the printed expansions");
}

double waldspurger_ratio(i64 D, const std::string& cache_dir) {
    if (D < 1 || D % 2 == 0) throw precondition_error("waldspurger_ratio: D must be odd positive");
    for (auto [p, e] : factor_int(D))
        if (e > 1) throw precondition_error("waldspurger_ratio: D must be squarefree");
    if (D % 8 != 1 && D % 8 != 3)
        throw precondition_error("waldspurger_ratio: no statement covers D = 5, 7 (mod 8)");
    i64 coef = half_integral_coefficient(D);
    if (coef == 0) throw precondition_error("waldspurger_ratio: printed coefficient vanishes");

    // X(-D) sits over the cube of the quadratic twist of y^2 = x^3 - x by -D,
    // which is y^2 = x^3 - D^2 x in the quartic parametrisation.
    i64 T = make_curve(4, combined_twist({{D * D, 3}})).normalized_twist;
    HeckeCharacter chi = nfold_character(make_curve(4, T), 3);
    i64 need = std::max(coefficient_demand(3, chi.level, 2.0),
                        solve_demand(3.5, 0.8 / (std::sqrt(double(chi.level)) / (2.0 * PI)), 27.0));

    CoefficientTable table;
    bool fetched = false;
    std::string path;
    if (!cache_dir.empty()) {
        path = cache_dir + "/fam4_t" + std::to_string(T) + "_p3.tsv";
        if (auto got = read_coefficient_cache(path, 4, T, 3); got && got->size() >= need) {
            table = *got;
            fetched = true;
        }
    }
    if (!fetched) {
        table = threefold_coefficients(4, {{D * D, 3}}, need);
        if (!path.empty()) {
            std::filesystem::create_directories(cache_dir);
            write_coefficient_cache(path, 4, T, 3, table);
        }
    }

    CentralValue cv = central_value(make_lfunction(table));
    return cv.value * std::pow(double(D), 1.5) / double(coef * coef);
}

} // namespace cyarith
