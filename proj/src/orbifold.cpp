#include "cyarith/orbifold.hpp"
#include "cyarith/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cyarith {

namespace {

Field field_of_order(int j) { return j == 4 ? Field::GAUSS : Field::EISENSTEIN; }

// zeta_j^k as a unit of the acting CM order.
QuadInt zeta_pow(int j, int k) {
    int scale = j == 4 ? 1 : 6 / j;
    return unit_root(field_of_order(j), scale * k);
}

void check_order(int j) {
    if (j != 3 && j != 4 && j != 6)
        throw std::invalid_argument("group order must be one of 3, 4, 6");
}

// Residue representatives of O/(zeta^a - 1): the fixed points of zeta^a on E.
struct TorsionModule {
    QuadInt divisor;
    std::vector<QuadInt> points;
};

TorsionModule torsion_module(int j, int a) {
    TorsionModule m;
    m.divisor = qi_sub(zeta_pow(j, a), qi(field_of_order(j), 1, 0));
    i64 n = qi_norm(m.divisor);
    for (i64 x = -4; x <= 4 && i64(m.points.size()) < n; ++x)
        for (i64 y = -4; y <= 4; ++y) {
            QuadInt c = qi(field_of_order(j), x, y);
            bool seen = false;
            for (const QuadInt& r : m.points)
                if (qi_divides(m.divisor, qi_sub(c, r))) seen = true;
            if (!seen) m.points.push_back(c);
        }
    if (i64(m.points.size()) != n) throw consistency_error("torsion module has the wrong size");
    return m;
}

const QuadInt& reduce_mod(const TorsionModule& m, QuadInt x) {
    for (const QuadInt& r : m.points)
        if (qi_divides(m.divisor, qi_sub(x, r))) return r;
    throw consistency_error("torsion reduction found no representative");
}

int age_of(int j, const GroupElement& g) {
    int s = (g[0] % j + j) % j + (g[1] % j + j) % j + (g[2] % j + j) % j;
    if (s % j != 0) throw consistency_error("age is not integral on a 3-form-preserving element");
    return s / j;
}

SectorSummary sector_contribution(const GroupAction& action, const GroupElement& g) {
    int j = action.order;
    SectorSummary sec;
    sec.g = g;
    sec.age = age_of(j, g);

    std::vector<int> curve_coords, point_coords;
    for (int i = 0; i < 3; ++i) (g[i] % j == 0 ? curve_coords : point_coords).push_back(i);
    sec.dimension = int(curve_coords.size());

    std::map<int, TorsionModule> mods;
    for (int i : point_coords) mods.emplace(i, torsion_module(j, ((g[i] % j) + j) % j));

    // Components of the fixed locus: one torsion point per moved coordinate.
    using Component = std::vector<std::pair<i64, i64>>;
    std::vector<Component> comps{{}};
    for (int i : point_coords) {
        std::vector<Component> next;
        for (const Component& c : comps)
            for (const QuadInt& pt : mods.at(i).points) {
                Component ext = c;
                ext.emplace_back(pt.a, pt.b);
                next.push_back(std::move(ext));
            }
        comps = std::move(next);
    }
    sec.components = i64(comps.size());

    auto act = [&](const GroupElement& h, const Component& c) {
        Component out;
        for (size_t idx = 0; idx < point_coords.size(); ++idx) {
            const TorsionModule& m = mods.at(point_coords[idx]);
            QuadInt pt = qi(field_of_order(j), c[idx].first, c[idx].second);
            QuadInt moved = reduce_mod(m, qi_mul(zeta_pow(j, h[point_coords[idx]]), pt));
            out.emplace_back(moved.a, moved.b);
        }
        return out;
    };

    // Orbits of the full group on components; each orbit contributes the
    // stabilizer-invariant part of H^{p,q} of the curve factors once.
    std::set<Component> unseen(comps.begin(), comps.end());
    while (!unseen.empty()) {
        Component c0 = *unseen.begin();
        std::set<Component> orbit{c0};
        std::vector<Component> frontier{c0};
        while (!frontier.empty()) {
            Component c = frontier.back();
            frontier.pop_back();
            for (const GroupElement& h : action.elements) {
                Component c2 = act(h, c);
                if (orbit.insert(c2).second) frontier.push_back(c2);
            }
        }
        for (const Component& c : orbit) unseen.erase(c);
        std::vector<GroupElement> stab;
        for (const GroupElement& h : action.elements)
            if (act(h, c0) == c0) stab.push_back(h);
        if (i64(stab.size()) * i64(orbit.size()) != i64(action.elements.size()))
            throw consistency_error("orbit-stabilizer mismatch on a fixed-locus component");

        // Basis of H^*(curve factors): 1, dz, dzbar, dz^dzbar per coordinate,
        // with character exponents 0, +1, -1, 0.
        static const struct {
            int p, q, chi;
        } kinds[4] = {{0, 0, 0}, {1, 0, 1}, {0, 1, -1}, {1, 1, 0}};
        int nfree = int(curve_coords.size());
        std::vector<int> choice(size_t(nfree), 0);
        for (;;) {
            int p = 0, q = 0;
            for (int k = 0; k < nfree; ++k) {
                p += kinds[choice[size_t(k)]].p;
                q += kinds[choice[size_t(k)]].q;
            }
            bool invariant = true;
            for (const GroupElement& h : stab) {
                int tot = 0;
                for (int k = 0; k < nfree; ++k)
                    tot += h[curve_coords[size_t(k)]] * kinds[choice[size_t(k)]].chi;
                if ((tot % j + j) % j != 0) {
                    invariant = false;
                    break;
                }
            }
            if (invariant) sec.contribution[{p + sec.age, q + sec.age}] += 1;
            int k = 0;
            while (k < nfree && ++choice[size_t(k)] == 4) choice[size_t(k++)] = 0;
            if (k == nfree) break;
        }
    }
    return sec;
}

GroupElement inverse_of(int j, const GroupElement& g) {
    return {((-g[0]) % j + j) % j, ((-g[1]) % j + j) % j, ((-g[2]) % j + j) % j};
}

int nontrivial_coords(int j, const GroupElement& g) {
    return int(g[0] % j != 0) + int(g[1] % j != 0) + int(g[2] % j != 0);
}

} // namespace

std::vector<GroupElement> enumerate_group(int j, const std::vector<GroupElement>& generators) {
    check_order(j);
    for (const GroupElement& g : generators)
        if (((g[0] + g[1] + g[2]) % j + j) % j != 0)
            throw std::invalid_argument("generator does not preserve the holomorphic 3-form");
    std::set<GroupElement> elems{{0, 0, 0}};
    std::vector<GroupElement> frontier{{0, 0, 0}};
    while (!frontier.empty()) {
        GroupElement cur = frontier.back();
        frontier.pop_back();
        for (const GroupElement& g : generators) {
            GroupElement nxt{((cur[0] + g[0]) % j + j) % j, ((cur[1] + g[1]) % j + j) % j,
                             ((cur[2] + g[2]) % j + j) % j};
            if (elems.insert(nxt).second) frontier.push_back(nxt);
        }
    }
    return {elems.begin(), elems.end()};
}

GroupAction make_action(int j, const std::vector<GroupElement>& generators) {
    GroupAction a;
    a.order = j;
    a.generators = generators;
    a.elements = enumerate_group(j, generators);
    return a;
}

bool is_admissible(const GroupAction& action) {
    for (int i = 0; i < 3; ++i) {
        bool moved = false;
        for (const GroupElement& g : action.elements)
            if (g[i] % action.order != 0) moved = true;
        if (!moved) return false;
    }
    return true;
}

i64 fixed_points_count(int j, int a) {
    check_order(j);
    if (a <= 0 || a >= j)
        throw std::invalid_argument("fixed_points_count: exponent must lie strictly between 0 and j");
    return qi_norm(qi_sub(zeta_pow(j, a), qi(field_of_order(j), 1, 0)));
}

std::vector<SectorSummary> twisted_sectors(const GroupAction& action) {
    check_order(action.order);
    std::vector<SectorSummary> out;
    for (const GroupElement& g : action.elements) {
        out.push_back(sector_contribution(action, g));
        int a = out.back().age;
        int ainv = age_of(action.order, inverse_of(action.order, g));
        if (a + ainv != nontrivial_coords(action.order, g))
            throw consistency_error("age pairing violated");
    }
    return out;
}

HodgeDiamond untwisted_hodge(const GroupAction& action) {
    check_order(action.order);
    HodgeDiamond d;
    SectorSummary id = sector_contribution(action, {0, 0, 0});
    for (auto [pq, v] : id.contribution) d.h[size_t(pq.first)][size_t(pq.second)] += v;
    d.ledger[{0, 0, 0}] = id.contribution;
    return d;
}

HodgeDiamond chen_ruan_hodge(const GroupAction& action) {
    if (!is_admissible(action))
        throw precondition_error("chen_ruan_hodge: action fixes a coordinate, quotient is not Calabi-Yau");
    HodgeDiamond d;
    for (const SectorSummary& sec : twisted_sectors(action)) {
        for (auto [pq, v] : sec.contribution) {
            if (pq.first > 3 || pq.second > 3)
                throw consistency_error("sector contribution outside the diamond");
            d.h[size_t(pq.first)][size_t(pq.second)] += v;
        }
        d.ledger[sec.g] = sec.contribution;
    }
    return d;
}

bool is_rigid(const GroupAction& action) { return chen_ruan_hodge(action).h21() == 0; }

std::vector<ClassifiedAction> classify_subgroups(int j) {
    check_order(j);
    std::vector<GroupElement> gamma;
    for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b) gamma.push_back({a, b, ((-a - b) % j + j) % j});

    // Subgroups of a rank-2 abelian group: closures of all generator pairs.
    std::set<std::vector<GroupElement>> subgroups;
    for (const GroupElement& g1 : gamma)
        for (const GroupElement& g2 : gamma) subgroups.insert(enumerate_group(j, {g1, g2}));

    std::vector<int> units;
    for (int u = 1; u < j; ++u)
        if (std::gcd(u, j) == 1) units.push_back(u);
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto canonical = [&](const std::vector<GroupElement>& elems) {
        std::vector<GroupElement> best;
        for (int u : units)
            for (const auto& perm : perms) {
                std::vector<GroupElement> image;
                image.reserve(elems.size());
                for (const GroupElement& g : elems)
                    image.push_back({u * g[perm[0]] % j, u * g[perm[1]] % j, u * g[perm[2]] % j});
                std::sort(image.begin(), image.end());
                if (best.empty() || image < best) best = std::move(image);
            }
        return best;
    };

    std::set<std::vector<GroupElement>> seen;
    std::vector<ClassifiedAction> out;
    for (const auto& elems : subgroups) {
        GroupAction action;
        action.order = j;
        action.elements = elems;
        if (!is_admissible(action)) continue;
        if (!seen.insert(canonical(elems)).second) continue;
        // Small generating set for display: one element if cyclic, else a pair.
        for (const GroupElement& g : elems) {
            if (g == GroupElement{0, 0, 0}) continue;
            if (enumerate_group(j, {g}) == elems) {
                action.generators = {g};
                break;
            }
        }
        if (action.generators.empty()) {
            for (const GroupElement& g1 : elems) {
                for (const GroupElement& g2 : elems) {
                    if (enumerate_group(j, {g1, g2}) == elems) {
                        action.generators = {g1, g2};
                        break;
                    }
                }
                if (!action.generators.empty()) break;
            }
        }
        HodgeDiamond d = chen_ruan_hodge(action);
        out.push_back({std::move(action), d.h11(), d.h21()});
    }
    std::sort(out.begin(), out.end(), [](const ClassifiedAction& x, const ClassifiedAction& y) {
        return std::tuple(x.action.elements.size(), x.h11, x.h21, x.action.elements) <
               std::tuple(y.action.elements.size(), y.h11, y.h21, y.action.elements);
    });
    return out;
}

} // namespace cyarith
