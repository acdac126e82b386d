#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "quad.hpp"

namespace dc {

struct StaircaseReport {
    std::vector<CycleRef> well_slanted;
    std::vector<int> vertical;  // indices whose diagonal is vertical
};

inline bool is_well_slanted(const Quadrangulation& q, const CycleRef& c) {
    const Slant want = c.side == Side::Left ? Slant::LeftSlanted : Slant::RightSlanted;
    for (int i : c.indices) {
        if (slant(q, i) != want) return false;
    }
    return true;
}

inline StaircaseReport staircase_report(const Quadrangulation& q) {
    StaircaseReport rep;
    for (const CycleRef& c : all_cycles(q.datum)) {
        if (is_well_slanted(q, c)) rep.well_slanted.push_back(c);
    }
    for (int i = 1; i <= q.k(); ++i) {
        if (slant(q, i) == Slant::VerticalDiagonal) rep.vertical.push_back(i);
    }
    return rep;
}

inline std::vector<CycleRef> well_slanted_staircases(const Quadrangulation& q) {
    return staircase_report(q).well_slanted;
}

// Dense 0/1 matrix on the basis (1,l),(1,r),...,(k,l),(k,r).
struct MoveMatrix {
    int n = 0;
    std::vector<int> entries;  // row-major

    int at(int row, int col) const { return entries[row * n + col]; }
    int& at(int row, int col) { return entries[row * n + col]; }
};

inline int basis_index(int i, Side s) { return 2 * (i - 1) + (s == Side::Left ? 0 : 1); }

inline MoveMatrix move_matrix(const Datum& d, const CycleRef& cyc) {
    CycleRef c = canonical_cycle(d, cyc);
    MoveMatrix m;
    m.n = 2 * d.k();
    m.entries.assign(m.n * m.n, 0);
    for (int r = 0; r < m.n; ++r) m.at(r, r) = 1;
    for (int i : c.indices) {
        if (c.side == Side::Right) {
            m.at(basis_index(i, Side::Left), basis_index(d.left()(i), Side::Right)) += 1;
        } else {
            m.at(basis_index(i, Side::Right), basis_index(d.right()(i), Side::Left)) += 1;
        }
    }
    return m;
}

// Exact integer determinant by fraction-free elimination.
inline mpz_class determinant(const MoveMatrix& m) {
    const int n = m.n;
    std::vector<mpz_class> a(m.entries.begin(), m.entries.end());
    auto A = [&](int r, int c) -> mpz_class& { return a[r * n + c]; };
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        while (pivot < n && A(pivot, k) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (int c = 0; c < n; ++c) std::swap(A(k, c), A(pivot, c));
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                A(r, c) = (A(r, c) * A(k, k) - A(r, k) * A(k, c)) / prev;
            }
            A(r, k) = 0;
        }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

inline std::vector<Vec2> flatten_sides(const Quadrangulation& q) {
    std::vector<Vec2> v;
    for (const Wedge& w : q.wedges) {
        v.push_back(w.left);
        v.push_back(w.right);
    }
    return v;
}

inline std::vector<Vec2> apply_matrix(const MoveMatrix& m, const std::vector<Vec2>& v) {
    std::vector<Vec2> out(v.size());
    for (int r = 0; r < m.n; ++r) {
        for (int c = 0; c < m.n; ++c) {
            int e = m.at(r, c);
            if (e != 0) out[r] += Scalar(e) * v[c];
        }
    }
    return out;
}

inline Quadrangulation apply_move(const Quadrangulation& q, const CycleRef& cyc) {
    CycleRef c = canonical_cycle(q.datum, cyc);
    for (int i : c.indices) {
        if (slant(q, i) == Slant::VerticalDiagonal) {
            throw VerticalDiagonal("diagonal " + std::to_string(i) + " is vertical in " + c.str());
        }
    }
    if (!is_well_slanted(q, c)) throw NotWellSlanted(c.str());
    Quadrangulation out = q;
    for (int i : c.indices) out.wedge(i).side(opposite(c.side)) = diagonal(q, i);
    out.datum = act_move(q.datum, c);
    return out;
}

// Moves in pairwise disjoint well-slanted staircases; order does not matter.
inline Quadrangulation apply_simultaneous(const Quadrangulation& q, const std::vector<CycleRef>& cycles) {
    Quadrangulation out = q;
    for (const CycleRef& c : cycles) out = apply_move(out, c);
    return out;
}

inline Quadrangulation rotate(const Quadrangulation& q) {
    Quadrangulation out;
    out.datum = rotate_datum(q.datum);
    out.wedges.resize(q.k());
    Perm li = q.datum.left().inverse();
    for (int i = 1; i <= q.k(); ++i) {
        out.wedge(i).left = quarter_turn(q.side(i, Side::Right));
        out.wedge(i).right = -quarter_turn(q.side(li(i), Side::Left));
    }
    return out;
}

inline Quadrangulation rotate_inverse(const Quadrangulation& q) {
    Quadrangulation out;
    out.datum = rotate_datum_inverse(q.datum);
    out.wedges.resize(q.k());
    Perm ri = q.datum.right().inverse();
    for (int i = 1; i <= q.k(); ++i) {
        out.wedge(i).left = quarter_turn(q.side(ri(i), Side::Right));
        out.wedge(i).right = -quarter_turn(q.side(i, Side::Left));
    }
    return out;
}

// Staircases of q that can be undone: well-slanted staircases of the rotated
// quadrangulation, expressed as cycles of q.
inline std::vector<CycleRef> backward_staircases(const Quadrangulation& q) {
    std::vector<CycleRef> out;
    for (const CycleRef& c : well_slanted_staircases(rotate(q))) {
        out.push_back(cycle_prime_inverse(q.datum, c));
    }
    return out;
}

inline Quadrangulation backward_move(const Quadrangulation& q, const CycleRef& c) {
    CycleRef cp = cycle_prime(q.datum, c);
    Quadrangulation r = rotate(q);
    if (!is_well_slanted(r, cp)) throw NotBackwardApplicable(canonical_cycle(q.datum, c).str());
    return rotate_inverse(apply_move(r, cp));
}

inline Quadrangulation backward_simultaneous(const Quadrangulation& q, const std::vector<CycleRef>& cycles) {
    Quadrangulation r = rotate(q);
    for (const CycleRef& c : cycles) {
        CycleRef cp = cycle_prime(q.datum, c);
        if (!is_well_slanted(r, cp)) throw NotBackwardApplicable(c.str());
        r = apply_move(r, cp);
    }
    return rotate_inverse(r);
}

}  // namespace dc
