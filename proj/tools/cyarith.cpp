// Command-line front door: every library computation behind one binary with
// machine-readable output. Exit codes: 0 success, 2 usage error,
// 3 mathematical precondition violated, 4 numerical non-convergence.
#include "CLI11.hpp"
#include "json.hpp"

#include "cyarith/curves.hpp"
#include "cyarith/errors.hpp"
#include "cyarith/hecke.hpp"
#include "cyarith/jacobian.hpp"
#include "cyarith/lfunction.hpp"
#include "cyarith/lseries.hpp"
#include "cyarith/orbifold.hpp"

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cyarith;
using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

i64 parse_int(const std::string& text) {
    size_t used = 0;
    i64 v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
}

// "a,b,c;d,e,f" -> one generator per semicolon-separated triple
std::vector<GroupElement> parse_generators(const std::string& text) {
    std::vector<GroupElement> out;
    for (const std::string& row : split(text, ';')) {
        auto parts = split(row, ',');
        if (parts.size() != 3)
            throw std::invalid_argument("generator '" + row + "' must have three components");
        out.push_back({int(parse_int(parts[0])), int(parse_int(parts[1])), int(parse_int(parts[2]))});
    }
    if (out.empty()) throw std::invalid_argument("at least one generator is required");
    return out;
}

// "D^k" entries with optional sign, comma-separated; a bare D means k = 1
std::vector<std::pair<i64, int>> parse_twist_list(const std::string& text) {
    std::vector<std::pair<i64, int>> out;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) throw std::invalid_argument("empty twist entry");
        auto caret = item.find('^');
        i64 d = parse_int(item.substr(0, caret));
        i64 k = caret == std::string::npos ? 1 : parse_int(item.substr(caret + 1));
        if (k < 1 || k > 64) throw std::invalid_argument("twist exponent out of range: '" + item + "'");
        out.push_back({d, int(k)});
    }
    return out;
}

std::string resolve_cache(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("CYARITH_CACHE"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cyarith";
    return ".cyarith";
}

// Point-count-route table for the n-fold, through the on-disk cache. Never
// shrinks a cache entry: a longer table always replaces a shorter one.
CoefficientTable cached_nfold(int family, const std::vector<std::pair<i64, int>>& factors,
                              int power, i64 need, const std::string& dir) {
    i64 T = make_curve(family, combined_twist(factors)).normalized_twist;
    std::string path = dir + "/fam" + std::to_string(family) + "_t" + std::to_string(T) + "_p" +
                       std::to_string(power) + ".tsv";
    if (auto got = read_coefficient_cache(path, family, T, power); got && got->size() >= need)
        return *got;
    CoefficientTable t = power == 1 ? curve_coefficients(q_model(family, factors), need)
                                    : nfold_coefficients(family, power, factors, need);
    std::filesystem::create_directories(dir);
    write_coefficient_cache(path, family, T, power, t);
    return t;
}

// Ideal-sum-route table, cached under its own namespace so the two
// construction routes never feed each other.
CoefficientTable cached_qexp(int family, i64 twist, int power, i64 need, const std::string& dir) {
    CurveSpec curve = make_curve(family, twist);
    i64 T = curve.normalized_twist;
    std::string path = dir + "/ideal_fam" + std::to_string(family) + "_t" + std::to_string(T) +
                       "_p" + std::to_string(power) + ".tsv";
    if (auto got = read_coefficient_cache(path, family, T, power); got && got->size() >= need)
        return *got;
    HeckeCharacter chi = power == 1 ? hecke_character_of(curve) : nfold_character(curve, power);
    CoefficientTable t = hecke_qexpansion(chi, need);
    std::filesystem::create_directories(dir);
    write_coefficient_cache(path, family, T, power, t);
    return t;
}

json twists_json(const std::vector<std::pair<i64, int>>& factors) {
    json rows = json::array();
    for (auto [d, k] : factors) rows.push_back({{"d", d}, {"k", k}});
    return rows;
}

json table_json(const CoefficientTable& t) {
    json coef = json::array();
    for (i64 n = 1; n <= t.size(); ++n) coef.push_back(t.at(n));
    return {{"weight", t.weight}, {"level", t.level}, {"coefficients", std::move(coef)}};
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_table_csv(const CoefficientTable& t, const char* key) {
    std::cout << key << ",value\n";
    for (i64 n = 1; n <= t.size(); ++n) std::cout << n << "," << t.at(n) << "\n";
}

struct Options {
    int family = 4;
    std::string gens, twists = "1,1,1", dlist, format = "json", cache;
    i64 twist = 1, bound = 100;
    int power = 3, n = 3;
    double s_re = 0.0, s_im = 0.0;
    bool has_s = false;
};

void run_hodge(const Options& opt) {
    GroupAction action = make_action(opt.family, parse_generators(opt.gens));
    if (!is_admissible(action)) {
        for (int c = 0; c < 3; ++c) {
            bool moved = false;
            for (const GroupElement& g : action.elements) moved = moved || g[c] != 0;
            if (!moved)
                throw precondition_error("inadmissible action: coordinate " + std::to_string(c + 1) +
                                         " is fixed by every element, so the quotient keeps a "
                                         "curve factor and is not Calabi-Yau");
        }
        throw precondition_error("inadmissible action");
    }
    HodgeDiamond hd = chen_ruan_hodge(action);
    json sectors = json::array();
    for (const SectorSummary& sec : twisted_sectors(action)) {
        json contrib = json::array();
        for (auto& [pq, dim] : sec.contribution)
            contrib.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", dim}});
        sectors.push_back({{"g", {sec.g[0], sec.g[1], sec.g[2]}},
                           {"dimension", sec.dimension},
                           {"components", sec.components},
                           {"age", sec.age},
                           {"contribution", std::move(contrib)}});
    }
    json diamond = json::array();
    for (int p = 0; p < 4; ++p) {
        json row = json::array();
        for (int q = 0; q < 4; ++q) row.push_back(hd.h[p][q]);
        diamond.push_back(std::move(row));
    }
    emit_json({{"schema", 1},
               {"request", {{"subcommand", "hodge"}, {"family", opt.family}, {"gens", opt.gens}}},
               {"elements", action.elements.size()},
               {"h11", hd.h11()},
               {"h21", hd.h21()},
               {"rigid", is_rigid(action)},
               {"diamond", std::move(diamond)},
               {"sectors", std::move(sectors)}});
}

void run_ap(const Options& opt) {
    CurveSpec curve = make_curve(opt.family, opt.twist);
    json coef = json::object();
    std::vector<std::pair<i64, i64>> rows;
    for (i64 p : good_primes(curve, opt.bound)) rows.push_back({p, ap_via_cm(curve, p)});
    if (opt.format == "csv") {
        std::cout << "p,a_p\n";
        for (auto [p, a] : rows) std::cout << p << "," << a << "\n";
        return;
    }
    for (auto [p, a] : rows) coef[std::to_string(p)] = a;
    emit_json({{"schema", 1},
               {"request",
                {{"subcommand", "ap"},
                 {"family", opt.family},
                 {"twist", opt.twist},
                 {"bound", opt.bound}}},
               {"normalized_twist", curve.normalized_twist},
               {"a_p", std::move(coef)}});
}

void run_qexp(const Options& opt, const std::string& cache) {
    CoefficientTable t = cached_qexp(opt.family, opt.twist, opt.power, opt.bound, cache);
    if (opt.format == "csv") {
        emit_table_csv(t, "n");
        return;
    }
    json out = {{"schema", 1},
                {"request",
                 {{"subcommand", "qexp"},
                  {"family", opt.family},
                  {"twist", opt.twist},
                  {"power", opt.power},
                  {"bound", opt.bound}}}};
    out.update(table_json(t));
    emit_json(out);
}

void run_threefold(const Options& opt, const std::string& cache) {
    auto factors = parse_twist_list(opt.twists);
    if (factors.size() != 3)
        throw std::invalid_argument("threefold needs exactly three twist entries");
    CoefficientTable t = cached_nfold(opt.family, factors, 3, opt.bound, cache);
    if (opt.format == "csv") {
        emit_table_csv(t, "n");
        return;
    }
    json out = {{"schema", 1},
                {"request",
                 {{"subcommand", "threefold"},
                  {"family", opt.family},
                  {"twists", opt.twists},
                  {"bound", opt.bound}}},
                {"factors", twists_json(factors)},
                {"total_twist", combined_twist(factors)},
                {"normalized_twist", make_curve(opt.family, combined_twist(factors)).normalized_twist}};
    out.update(table_json(t));
    emit_json(out);
}

void run_yui(const Options& opt) {
    auto factors = parse_twist_list(opt.twists);
    YuiVerdict v = opt.n == 3 ? yui_verdict(opt.family, factors)
                              : nfold_verdict(opt.family, opt.n, factors);
    CurveSpec model = q_model(opt.family, factors);
    emit_json({{"schema", 1},
               {"request",
                {{"subcommand", "yui"},
                 {"family", opt.family},
                 {"twists", opt.twists},
                 {"n", opt.n}}},
               {"holds", v.holds},
               {"order", v.character_order},
               {"total_twist", v.total_twist},
               {"reason", v.reason},
               {"q_model", {{"family", model.family}, {"twist", model.normalized_twist}}}});
}

void run_lvalue(const Options& opt, const std::string& cache) {
    auto factors = parse_twist_list(opt.twists);
    if (opt.power < 1 || opt.power % 2 == 0)
        throw std::invalid_argument("lvalue needs an odd positive power");
    CurveSpec curve = make_curve(opt.family, combined_twist(factors));
    HeckeCharacter chi =
        opt.power == 1 ? hecke_character_of(q_model(opt.family, factors))
                       : nfold_character(curve, opt.power);
    int weight = opt.power;
    std::complex<double> s = opt.has_s ? std::complex<double>(opt.s_re, opt.s_im)
                                       : std::complex<double>((weight + 1.0) / 2.0, 0.0);
    i64 need = std::max(coefficient_demand(weight, chi.level, s), sign_demand(weight, chi.level));
    CoefficientTable t = cached_nfold(opt.family, factors, opt.power, need, cache);
    CompletedLFunction L = make_lfunction(t);
    json out = {{"schema", 1},
                {"request",
                 {{"subcommand", "lvalue"},
                  {"family", opt.family},
                  {"twists", opt.twists},
                  {"power", opt.power},
                  {"s", opt.has_s ? json({{"re", opt.s_re}, {"im", opt.s_im}}) : json(nullptr)}}},
                {"level", t.level},
                {"weight", t.weight},
                {"root_number", L.root},
                {"root_margin", L.root_margin},
                {"coefficients_used", need},
                {"truncation_target", 1e-12}};
    if (!opt.has_s) {
        CentralValue cv = central_value(L);
        out["central"] = {{"s", (weight + 1.0) / 2.0},
                          {"value", cv.value},
                          {"vanishes_by_sign", cv.vanishes_by_sign}};
    } else {
        std::complex<double> lam = completed_lambda(L, s);
        std::complex<double> gamma_part =
            std::pow(std::complex<double>(double(t.level), 0), s / 2.0) * 2.0 *
            std::pow(std::complex<double>(2.0 * std::numbers::pi, 0), -s) * std::exp(log_gamma(s));
        std::complex<double> lv = lam / gamma_part;
        out["lambda"] = {{"re", lam.real()}, {"im", lam.imag()}};
        out["lvalue"] = {{"re", lv.real()}, {"im", lv.imag()}};
        out["fe_residual"] = fe_residual(L, s);
    }
    emit_json(out);
}

void run_waldspurger(const Options& opt, const std::string& cache) {
    json rows = json::array();
    for (const std::string& item : split(opt.dlist, ',')) {
        i64 d = parse_int(item);
        double ratio = waldspurger_ratio(d, cache); // validates d before the table lookup
        rows.push_back({{"d", d}, {"coefficient", half_integral_coefficient(d)}, {"ratio", ratio}});
    }
    if (rows.empty()) throw std::invalid_argument("waldspurger needs a nonempty --dlist");
    emit_json({{"schema", 1},
               {"request", {{"subcommand", "waldspurger"}, {"dlist", opt.dlist}}},
               {"rows", std::move(rows)}});
}

void run_classify(const Options& opt) {
    json rows = json::array();
    for (const ClassifiedAction& row : classify_subgroups(opt.family)) {
        json gens = json::array();
        for (const GroupElement& g : row.action.generators) gens.push_back({g[0], g[1], g[2]});
        rows.push_back({{"generators", std::move(gens)},
                        {"elements", row.action.elements.size()},
                        {"h11", row.h11},
                        {"h21", row.h21},
                        {"rigid", row.h21 == 0}});
    }
    emit_json({{"schema", 1},
               {"request", {{"subcommand", "classify"}, {"family", opt.family}}},
               {"count", rows.size()},
               {"rows", std::move(rows)}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetic of rigid Calabi-Yau threefolds over CM elliptic curves"};
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_cache = [&](CLI::App* cmd) {
        cmd->add_option("--cache", opt.cache, "cache directory (default $CYARITH_CACHE or ~/.cyarith)");
    };

    CLI::App* hodge = app.add_subcommand("hodge", "orbifold Hodge numbers of a quotient");
    hodge->add_option("--family", opt.family, "automorphism order: 3, 4 or 6")->required();
    hodge->add_option("--gens", opt.gens, "generators 'a,b,c;d,e,f'")->required();

    CLI::App* ap = app.add_subcommand("ap", "curve trace of Frobenius at good primes");
    ap->add_option("--family", opt.family)->required();
    ap->add_option("--twist", opt.twist);
    ap->add_option("--bound", opt.bound);
    add_format(ap);

    CLI::App* qexp = app.add_subcommand("qexp", "q-expansion of the power character (ideal sums)");
    qexp->add_option("--family", opt.family)->required();
    qexp->add_option("--twist", opt.twist);
    qexp->add_option("--power", opt.power);
    qexp->add_option("--bound", opt.bound);
    add_format(qexp);
    add_cache(qexp);

    CLI::App* threefold =
        app.add_subcommand("threefold", "middle-cohomology coefficients of a twisted threefold");
    threefold->add_option("--family", opt.family)->required();
    threefold->add_option("--twists", opt.twists, "three entries 'D^k,D^k,D^k'");
    threefold->add_option("--bound", opt.bound);
    add_format(threefold);
    add_cache(threefold);

    CLI::App* yui = app.add_subcommand("yui", "does the n-fold L-function match its Jacobian's curve");
    yui->add_option("--family", opt.family)->required();
    yui->add_option("--twists", opt.twists);
    yui->add_option("--n", opt.n, "odd power, default 3");

    CLI::App* lvalue = app.add_subcommand("lvalue", "completed L-function values");
    lvalue->add_option("--family", opt.family)->required();
    lvalue->add_option("--twists", opt.twists);
    lvalue->add_option("--power", opt.power);
    CLI::Option* s_re = lvalue->add_option("--s", opt.s_re, "evaluation point (default: the center)");
    lvalue->add_option("--im", opt.s_im, "imaginary part of s");
    add_cache(lvalue);

    CLI::App* wald = app.add_subcommand("waldspurger", "central-value ratios against printed coefficients");
    wald->add_option("--dlist", opt.dlist, "comma-separated odd squarefree D")->required();
    add_cache(wald);

    CLI::App* classify = app.add_subcommand("classify", "all admissible subgroup classes");
    classify->add_option("--family", opt.family)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        opt.has_s = s_re->count() > 0;
        std::string cache = resolve_cache(opt.cache);
        if (opt.format == "csv" && !(ap->parsed() || qexp->parsed() || threefold->parsed()))
            throw std::invalid_argument("csv output is only available for coefficient tables");
        if (hodge->parsed()) run_hodge(opt);
        else if (ap->parsed()) run_ap(opt);
        else if (qexp->parsed()) run_qexp(opt, cache);
        else if (threefold->parsed()) run_threefold(opt, cache);
        else if (yui->parsed()) run_yui(opt);
        else if (lvalue->parsed()) run_lvalue(opt, cache);
        else if (wald->parsed()) run_waldspurger(opt, cache);
        else if (classify->parsed()) run_classify(opt);
        return 0;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
