#pragma once

#include <optional>
#include <vector>

#include "grssd/gf.hpp"

namespace grssd {

// theta^offset * <theta^step>, i.e. all exponents congruent to offset mod step
struct Coset {
    u64 offset = 0;  // normalized to [0, step)
    u64 step = 1;    // divides q-1
    u64 order = 1;   // q-1

    u64 size() const { return order / step; }
    bool contains_log(u64 e) const { return e % step == offset; }
    bool operator==(const Coset& o) const { return offset == o.offset && step == o.step && order == o.order; }
};

struct CosetUnion {
    std::vector<Coset> pieces;
    bool include_zero = false;
};

Coset make_coset(const Field& F, i64 offset, u64 step);
Coset subgroup_of_size(const Field& F, u64 l);
Coset h_coset(const Field& F, u64 l, u64 s, u64 k);
Coset norm_fiber(const Field& F, u64 l, u64 i);
std::vector<Elem> fiber_field_intersection(const Field& F, u64 l, u64 i);

bool contains(const Field& F, const Coset& c, Elem x);
bool contains(const Field& F, const CosetUnion& u, Elem x);

Elem pi_at(const Field& F, const Coset& c, Elem x);
Elem delta_at(const Field& F, const Coset& c, Elem x);

// pieces must be pairwise disjoint
Elem pi_at(const Field& F, const CosetUnion& u, Elem x);
Elem delta_at(const Field& F, const CosetUnion& u, Elem x);

std::vector<Elem> materialize(const Field& F, const Coset& c);
std::vector<Elem> materialize(const Field& F, const CosetUnion& u);

std::optional<Coset> intersect(const Coset& a, const Coset& b);
CosetUnion intersect(const CosetUnion& a, const CosetUnion& b);
bool pieces_disjoint(const CosetUnion& u);

struct IntersectionCounts {
    u64 ab = 0, bc = 0, ca = 0, abc = 0;
    u64 s_prime = 0, t_prime = 0, f_prime = 0;
};

// |A|=s(q-1)/u style pairwise count for A_i = theta^(iv)<theta^u>, B_j = theta^(ju)<theta^v>
u64 intersection_card2(u64 order, u64 u, u64 v, u64 s, u64 t);
IntersectionCounts intersection_card3(u64 order, u64 u, u64 v, u64 w, u64 s, u64 t, u64 f);

}
