#pragma once
#include "cyarith/quadint.hpp"

#include <array>
#include <map>
#include <vector>

namespace cyarith {

// Diagonal automorphism of E_j^3: coordinate i is multiplied by zeta_j^{g[i]}.
using GroupElement = std::array<int, 3>;

struct GroupAction {
    int order = 6; // j in {3, 4, 6}
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements; // closure, sorted
};

// Closure under addition mod j. Every generator must satisfy
// a1+a2+a3 = 0 (mod j), else the holomorphic 3-form is not preserved.
std::vector<GroupElement> enumerate_group(int j, const std::vector<GroupElement>& generators);
GroupAction make_action(int j, const std::vector<GroupElement>& generators);

// Every coordinate must be moved by some element, otherwise the quotient
// carries a curve factor and is not Calabi-Yau.
bool is_admissible(const GroupAction& action);

// |E[zeta_j^a - 1]| = N(zeta_j^a - 1).
i64 fixed_points_count(int j, int a);

struct SectorSummary {
    GroupElement g{};
    int dimension = 0;  // number of coordinates fixed as full curves
    i64 components = 0; // product of the torsion set sizes on the moved coordinates
    int age = 0;
    std::map<std::pair<int, int>, i64> contribution; // (p,q) -> invariant dimensions
};

// One entry per group element; the identity sector carries the untwisted
// (Kuenneth-invariant) classes at shift (0,0).
std::vector<SectorSummary> twisted_sectors(const GroupAction& action);

struct HodgeDiamond {
    std::array<std::array<i64, 4>, 4> h{}; // h[p][q]
    std::map<GroupElement, std::map<std::pair<int, int>, i64>> ledger;

    i64 h11() const { return h[1][1]; }
    i64 h21() const { return h[2][1]; }
};

HodgeDiamond untwisted_hodge(const GroupAction& action);
HodgeDiamond chen_ruan_hodge(const GroupAction& action);
bool is_rigid(const GroupAction& action);

struct ClassifiedAction {
    GroupAction action;
    i64 h11 = 0, h21 = 0;
};

// All admissible subgroups up to coordinate permutation and a unit of Z/j.
std::vector<ClassifiedAction> classify_subgroups(int j);

} // namespace cyarith
