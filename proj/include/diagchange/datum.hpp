#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"

namespace dc {

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline char side_char(Side s) { return s == Side::Left ? 'l' : 'r'; }
inline char side_letter(Side s) { return s == Side::Left ? 'L' : 'R'; }

// Combinatorial datum (pi_l, pi_r) of a labelled quadrangulation.
class Datum {
public:
    Datum() = default;
    Datum(Perm left, Perm right) : left_(std::move(left)), right_(std::move(right)) {
        if (left_.size() != right_.size() || left_.size() == 0) {
            throw SyntaxError("datum permutations must have equal positive size");
        }
    }

    static Datum identity(int k) { return {Perm::identity(k), Perm::identity(k)}; }

    int k() const { return left_.size(); }
    const Perm& left() const { return left_; }
    const Perm& right() const { return right_; }
    const Perm& perm(Side s) const { return s == Side::Left ? left_ : right_; }

    bool is_transitive() const {
        std::vector<bool> seen(k() + 1, false);
        std::vector<int> stack{1};
        seen[1] = true;
        int count = 1;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j : {left_(i), right_(i), left_.inverse()(i), right_.inverse()(i)}) {
                if (!seen[j]) {
                    seen[j] = true;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == k();
    }

    std::string str() const {
        return "k=" + std::to_string(k()) + "; perm_l=" + left_.one_line() + "; perm_r=" + right_.one_line();
    }

    friend bool operator==(const Datum& a, const Datum& b) { return a.left_ == b.left_ && a.right_ == b.right_; }
    friend bool operator!=(const Datum& a, const Datum& b) { return !(a == b); }
    friend bool operator<(const Datum& a, const Datum& b) {
        if (a.left_ != b.left_) return a.left_ < b.left_;
        return a.right_ < b.right_;
    }

private:
    Perm left_;
    Perm right_;
};

// A cycle of pi_l (Left) or pi_r (Right), indexing a staircase.
struct CycleRef {
    Side side = Side::Left;
    std::vector<int> indices;

    bool contains(int i) const { return std::find(indices.begin(), indices.end(), i) != indices.end(); }
    std::set<int> as_set() const { return {indices.begin(), indices.end()}; }

    std::string str() const {
        std::string s(1, side_letter(side));
        s += "{";
        for (std::size_t j = 0; j < indices.size(); ++j) {
            if (j) s += ",";
            s += std::to_string(indices[j]);
        }
        return s + "}";
    }

    friend bool operator==(const CycleRef& a, const CycleRef& b) {
        return a.side == b.side && a.as_set() == b.as_set();
    }
    friend bool operator!=(const CycleRef& a, const CycleRef& b) { return !(a == b); }
    friend bool operator<(const CycleRef& a, const CycleRef& b) {
        if (a.side != b.side) return a.side < b.side;
        return a.as_set() < b.as_set();
    }
};

// The cycle of the given side through i, listed from its minimum.
inline CycleRef cycle_through(const Datum& d, Side side, int i) {
    const Perm& p = d.perm(side);
    for (auto& c : p.cycles()) {
        if (std::find(c.begin(), c.end(), i) != c.end()) return {side, c};
    }
    throw NotACycle("index out of range");
}

inline std::vector<CycleRef> all_cycles(const Datum& d) {
    std::vector<CycleRef> out;
    for (Side s : {Side::Left, Side::Right}) {
        for (auto& c : d.perm(s).cycles()) out.push_back({s, c});
    }
    return out;
}

// Checks c is a cycle of its side and returns it in canonical order.
inline CycleRef canonical_cycle(const Datum& d, const CycleRef& c) {
    if (c.indices.empty()) throw NotACycle("empty cycle");
    for (int i : c.indices) {
        if (i < 1 || i > d.k()) throw NotACycle("index out of range in " + c.str());
    }
    CycleRef full = cycle_through(d, c.side, c.indices.front());
    if (full.as_set() != c.as_set() || full.indices.size() != c.indices.size()) {
        throw NotACycle(c.str() + " is not a cycle of " + d.str());
    }
    return full;
}

// c . pi
inline Datum act_move(const Datum& d, const CycleRef& cyc) {
    CycleRef c = canonical_cycle(d, cyc);
    std::vector<int> left = d.left().images();
    std::vector<int> right = d.right().images();
    for (int i : c.indices) {
        if (c.side == Side::Right) {
            left[i - 1] = d.left()(d.right()(i));
        } else {
            right[i - 1] = d.right()(d.left()(i));
        }
    }
    return {Perm(std::move(left)), Perm(std::move(right))};
}

inline Datum rotate_datum(const Datum& d) {
    Perm li = d.left().inverse();
    return {d.left() * d.right() * li, li};
}

inline Datum rotate_datum_inverse(const Datum& d) {
    Perm ri = d.right().inverse();
    return {ri, d.right() * d.left() * ri};
}

// Staircase of the rotated datum corresponding to c; the side flips.
inline CycleRef cycle_prime(const Datum& d, const CycleRef& cyc) {
    CycleRef c = canonical_cycle(d, cyc);
    Datum rd = rotate_datum(d);
    if (c.side == Side::Left) {
        return canonical_cycle(rd, {Side::Right, c.indices});
    }
    std::vector<int> image;
    for (int i : c.indices) image.push_back(d.left()(i));
    return canonical_cycle(rd, {Side::Left, image});
}

// Inverse of cycle_prime: a staircase of rotate_datum(d) pulled back to d.
inline CycleRef cycle_prime_inverse(const Datum& d, const CycleRef& rotated) {
    Datum rd = rotate_datum(d);
    CycleRef c = canonical_cycle(rd, rotated);
    if (c.side == Side::Right) {
        return canonical_cycle(d, {Side::Left, c.indices});
    }
    Perm li = d.left().inverse();
    std::vector<int> image;
    for (int i : c.indices) image.push_back(li(i));
    return canonical_cycle(d, {Side::Right, image});
}

// ---------------------------------------------------------------------------
// Trees of relations

struct TreeOfRelations {
    Perm sigma_l;
    Perm sigma_r;
    Perm sigma_d;

    int k() const { return sigma_l.size(); }
};

// Empty string when valid, otherwise the first violated condition.
inline std::string tree_violation(const TreeOfRelations& t) {
    const int k = t.k();
    if (t.sigma_r.size() != k || t.sigma_d.size() != k) return "sizes differ";
    if (!t.sigma_l.is_involution() || !t.sigma_r.is_involution() || !t.sigma_d.is_involution()) {
        return "not all involutions";
    }
    std::vector<int> parent(k + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int edges = 0;
    for (const Perm* s : {&t.sigma_l, &t.sigma_r, &t.sigma_d}) {
        for (int i = 1; i <= k; ++i) {
            int j = (*s)(i);
            if (j <= i) continue;
            ++edges;
            int a = find(i), b = find(j);
            if (a == b) return "dual graph has a cycle";
            parent[a] = b;
        }
    }
    if (edges != k - 1) return "dual graph is not connected";
    if (!(t.sigma_l * t.sigma_r * t.sigma_d).is_full_cycle()) return "product is not a k-cycle";
    return {};
}

inline bool is_valid_tree(const TreeOfRelations& t) { return tree_violation(t).empty(); }

inline Datum datum_from_tree(const TreeOfRelations& t) {
    if (auto v = tree_violation(t); !v.empty()) throw InvalidTree(v);
    return {t.sigma_r * t.sigma_d, t.sigma_l * t.sigma_d};
}

inline TreeOfRelations tree_from_involution(const Datum& d, const Perm& iota) {
    return {d.right() * iota, d.left() * iota, iota};
}

// Exhaustive search over involutions; the result, if any, is the hyperelliptic involution.
inline std::optional<Perm> find_involution(const Datum& d) {
    const Perm li = d.left().inverse();
    const Perm ri = d.right().inverse();
    for (const Perm& iota : all_involutions(d.k())) {
        if (iota * d.left() * iota != li || iota * d.right() * iota != ri) continue;
        if (is_valid_tree(tree_from_involution(d, iota))) return iota;
    }
    return std::nullopt;
}

// pi_l pi_r iota; constant along moves, so it labels a connected component.
inline Perm invariant_cycle(const Datum& d, const Perm& iota) { return d.left() * d.right() * iota; }

// sigma_l sigma_r sigma_d, the k-cycle of the tree. Not preserved by moves.
inline Perm tree_product(const Datum& d, const Perm& iota) { return d.right() * iota * d.left(); }

}  // namespace dc
